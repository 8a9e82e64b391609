#include "codenet/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

namespace codenet {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> folder_order(const std::set<std::string>& present) {
    std::vector<std::string> out;
    for (const auto& f : default_folders())
        if (present.count(f)) out.push_back(f);
    for (const auto& f : present)
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    return out;
}

struct Accumulator {
    std::size_t count = 0;
    std::size_t lines = 0;
    void add(std::size_t line_count) {
        ++count;
        lines += line_count;
    }
    SubsetSummary summary() const {
        return {count, count ? static_cast<double>(lines) / static_cast<double>(count) : 0.0};
    }
};

DatasetRow dataset_row(const std::string& label, const std::vector<const Sample*>& samples) {
    Accumulator overall, files, gold, steps, sumry;
    std::set<std::string> groups;
    for (const Sample* s : samples) {
        const std::size_t len = s->record.line_count;
        overall.add(len);
        if (s->labels.file_group_id) {
            files.add(len);
            groups.insert(*s->labels.file_group_id);
        }
        if (s->labels.in_gold) gold.add(len);
        if (s->labels.in_steps) steps.add(len);
        if (s->labels.in_sumry) sumry.add(len);
    }
    DatasetRow row{label, overall.summary(), files.summary(), gold.summary(), steps.summary(), sumry.summary()};
    row.files.count = groups.size();  // the files subset counts files, not functions
    return row;
}

TokenRow token_row(const std::string& label, const std::vector<const MetricsRecord*>& metrics) {
    TokenRow row;
    row.folder = label;
    row.samples = metrics.size();
    if (metrics.empty()) return row;
    for (const MetricsRecord* m : metrics) {
        row.tokens += static_cast<double>(m->tokens.total);
        row.keywords += static_cast<double>(m->tokens.keyword);
        row.names += static_cast<double>(m->tokens.name);
        row.punctuation += static_cast<double>(m->tokens.punctuation);
        row.operators += static_cast<double>(m->tokens.op);
        row.nodes += static_cast<double>(m->n);
        row.max_dc += m->max_dc;
        row.mean_distance += m->mean_distance;
    }
    const double n = static_cast<double>(metrics.size());
    for (double* v : {&row.tokens, &row.keywords, &row.names, &row.punctuation, &row.operators, &row.nodes,
                      &row.max_dc, &row.mean_distance})
        *v /= n;
    return row;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width, bool left = false) {
    if (s.size() >= width) return s;
    return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::vector<DatasetRow> dataset_table(const std::vector<Sample>& samples) {
    std::map<std::string, std::vector<const Sample*>> by_folder;
    std::vector<const Sample*> all;
    std::set<std::string> present;
    for (const auto& s : samples) {
        by_folder[s.record.folder].push_back(&s);
        all.push_back(&s);
        present.insert(s.record.folder);
    }
    std::vector<DatasetRow> rows{dataset_row("Overall", all)};
    for (const auto& folder : folder_order(present)) rows.push_back(dataset_row(folder, by_folder[folder]));
    return rows;
}

std::vector<TokenRow> token_table(const std::vector<MetricsRecord>& metrics) {
    std::map<std::string, std::vector<const MetricsRecord*>> by_folder;
    std::vector<const MetricsRecord*> all;
    std::set<std::string> present;
    for (const auto& m : metrics) {
        by_folder[m.folder].push_back(&m);
        all.push_back(&m);
        present.insert(m.folder);
    }
    std::vector<TokenRow> rows{token_row("Overall", all)};
    for (const auto& folder : folder_order(present)) rows.push_back(token_row(folder, by_folder[folder]));
    return rows;
}

std::string render_dataset_table(const std::vector<DatasetRow>& rows) {
    std::string out;
    out += pad("", 12, true) + pad("Overall", 10) + pad("Files", 10) + pad("Gold", 10) + pad("Steps", 10) +
           pad("Sumry", 10) + "\n";
    if (!rows.empty()) {
        const DatasetRow& o = rows.front();
        out += pad("Avg Length", 12, true) + pad(fixed(o.overall.avg_length, 2), 10) +
               pad(fixed(o.files.avg_length, 2), 10) + pad(fixed(o.gold.avg_length, 2), 10) +
               pad(fixed(o.steps.avg_length, 2), 10) + pad(fixed(o.sumry.avg_length, 2), 10) + "\n";
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const DatasetRow& r = rows[k];
        const std::string label = k == 0 ? "Sample Num" : r.folder;
        out += pad(label, 12, true) + pad(std::to_string(r.overall.count), 10) +
               pad(std::to_string(r.files.count), 10) + pad(std::to_string(r.gold.count), 10) +
               pad(std::to_string(r.steps.count), 10) + pad(std::to_string(r.sumry.count), 10) + "\n";
        if (k == 0 && rows.size() > 1) out += "from folders:\n";
    }
    return out;
}

std::string render_token_table(const std::vector<TokenRow>& rows) {
    std::string out = pad("", 16, true) + pad("Token Num", 11) + pad("Keyw Num", 10) + pad("Name Num", 10) +
                      pad("Punc Num", 10) + pad("Operator Num", 14) + pad("Node Num", 10) + pad("Max DC", 8) +
                      pad("Mean Dist", 11) + "\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const TokenRow& r = rows[k];
        out += pad(k == 0 ? "Overall Dataset" : r.folder, 16, true) + pad(fixed(r.tokens, 2), 11) +
               pad(fixed(r.keywords, 2), 10) + pad(fixed(r.names, 2), 10) + pad(fixed(r.punctuation, 2), 10) +
               pad(fixed(r.operators, 2), 14) + pad(fixed(r.nodes, 2), 10) + pad(fixed(r.max_dc, 2), 8) +
               pad(fixed(r.mean_distance, 2), 11) + "\n";
        if (k == 0 && rows.size() > 1) out += "from folders:\n";
    }
    return out;
}

std::string dataset_table_records(const std::vector<DatasetRow>& rows) {
    std::string out;
    auto subset = [](const SubsetSummary& s) {
        json j;
        j["count"] = s.count;
        j["avg_length"] = round6(s.avg_length);
        return j;
    };
    for (const auto& r : rows) {
        json j;
        j["folder"] = r.folder;
        j["overall"] = subset(r.overall);
        j["files"] = subset(r.files);
        j["gold"] = subset(r.gold);
        j["steps"] = subset(r.steps);
        j["sumry"] = subset(r.sumry);
        out += j.dump() + "\n";
    }
    return out;
}

std::string token_table_records(const std::vector<TokenRow>& rows) {
    std::string out;
    for (const auto& r : rows) {
        json j;
        j["folder"] = r.folder;
        j["samples"] = r.samples;
        j["tokens"] = round6(r.tokens);
        j["keywords"] = round6(r.keywords);
        j["names"] = round6(r.names);
        j["punctuation"] = round6(r.punctuation);
        j["operators"] = round6(r.operators);
        j["nodes"] = round6(r.nodes);
        j["max_dc"] = round6(r.max_dc);
        j["mean_distance"] = round6(r.mean_distance);
        out += j.dump() + "\n";
    }
    return out;
}

}  // namespace codenet
