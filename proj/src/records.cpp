#include "codenet/records.hpp"

#include <cmath>
#include <istream>

#include <json.hpp>

namespace codenet {

namespace {

using json = nlohmann::ordered_json;

json span_json(const Span& s) { return json::array({s.begin, s.end}); }
Span span_from(const json& j) { return {j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()}; }

json comment_json(const CommentBlock& c) {
    json j;
    j["span"] = span_json(c.span);
    j["style"] = c.style == CommentStyle::Block ? "block" : "line";
    j["text"] = c.text;
    j["is_doc"] = c.is_doc;
    return j;
}

CommentBlock comment_from(const json& j) {
    CommentBlock c;
    c.span = span_from(j.at("span"));
    c.style = j.at("style").get<std::string>() == "line" ? CommentStyle::Line : CommentStyle::Block;
    c.text = j.at("text").get<std::string>();
    c.is_doc = j.at("is_doc").get<bool>();
    return c;
}

json optional_comment(const std::optional<CommentBlock>& c) { return c ? comment_json(*c) : json(nullptr); }

json comments_json(const std::vector<CommentBlock>& cs) {
    json arr = json::array();
    for (const auto& c : cs) arr.push_back(comment_json(c));
    return arr;
}

}  // namespace

double round6(double value) noexcept { return std::round(value * 1e6) / 1e6; }

std::string sample_to_line(const Sample& sample) {
    const FunctionRecord& r = sample.record;
    json j;
    j["id"] = r.id();
    j["file"] = r.file;
    j["folder"] = r.folder;
    j["name"] = r.name;
    j["span"] = span_json(r.span);
    j["code"] = r.code;
    j["header_comment"] = optional_comment(r.header_comment);
    j["internal_comments"] = comments_json(r.internal_comments);
    json labels;
    labels["gold"] = sample.labels.in_gold;
    labels["steps"] = sample.labels.in_steps;
    labels["sumry"] = sample.labels.in_sumry;
    labels["file_group_id"] = sample.labels.file_group_id ? json(*sample.labels.file_group_id) : json(nullptr);
    j["labels"] = std::move(labels);
    j["line_count"] = r.line_count;
    return j.dump();
}

Sample sample_from_line(const std::string& line) {
    const json j = json::parse(line);
    Sample s;
    FunctionRecord& r = s.record;
    r.file = j.at("file").get<std::string>();
    r.folder = j.at("folder").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.span = span_from(j.at("span"));
    r.code = j.at("code").get<std::string>();
    if (!j.at("header_comment").is_null()) r.header_comment = comment_from(j["header_comment"]);
    for (const auto& c : j.at("internal_comments")) r.internal_comments.push_back(comment_from(c));
    r.line_count = j.at("line_count").get<std::size_t>();
    const json& labels = j.at("labels");
    s.labels.in_gold = labels.at("gold").get<bool>();
    s.labels.in_steps = labels.at("steps").get<bool>();
    s.labels.in_sumry = labels.at("sumry").get<bool>();
    if (!labels.at("file_group_id").is_null()) s.labels.file_group_id = labels["file_group_id"].get<std::string>();
    return s;
}

std::string file_sample_to_line(const FileSample& fs) {
    json j;
    j["file"] = fs.file;
    j["folder"] = fs.folder;
    json members = json::array();
    for (const auto& m : fs.members) {
        json mj;
        mj["id"] = m.id();
        mj["name"] = m.name;
        mj["span"] = span_json(m.span);
        mj["code"] = m.code;
        mj["header_comment"] = optional_comment(m.header_comment);
        mj["line_count"] = m.line_count;
        members.push_back(std::move(mj));
    }
    j["members"] = std::move(members);
    return j.dump();
}

std::string network_to_line(const std::string& id, const StructureNetwork& net) {
    json j;
    j["id"] = id;
    j["root"] = net.root();
    json nodes = json::array();
    for (const auto& n : net.nodes()) {
        if (n.is_token())
            nodes.push_back(json::array({n.id, std::string(to_string(n.token().kind)), n.token().lexeme}));
        else
            nodes.push_back(json::array({n.id, "interpretive", std::string(to_string(n.construct()))}));
    }
    j["nodes"] = std::move(nodes);
    json edges = json::array();
    for (const auto& [a, b] : net.edges()) edges.push_back(json::array({a, b}));
    j["edges"] = std::move(edges);
    return j.dump();
}

std::string metrics_to_line(const MetricsRecord& m) {
    json j;
    j["id"] = m.id;
    j["folder"] = m.folder;
    j["name"] = m.name;
    j["n"] = m.n;
    j["max_dc"] = round6(m.max_dc);
    j["mean_distance"] = round6(m.mean_distance);
    json t;
    t["total"] = m.tokens.total;
    t["keyword"] = m.tokens.keyword;
    t["name"] = m.tokens.name;
    t["operator"] = m.tokens.op;
    t["punctuation"] = m.tokens.punctuation;
    t["literal"] = m.tokens.literal;
    t["other"] = m.tokens.other;
    j["tokens"] = std::move(t);
    return j.dump();
}

MetricsRecord metrics_from_line(const std::string& line) {
    const json j = json::parse(line);
    MetricsRecord m;
    m.id = j.at("id").get<std::string>();
    m.folder = j.at("folder").get<std::string>();
    m.name = j.at("name").get<std::string>();
    m.n = j.at("n").get<std::size_t>();
    m.max_dc = j.at("max_dc").get<double>();
    m.mean_distance = j.at("mean_distance").get<double>();
    const json& t = j.at("tokens");
    m.tokens.total = t.at("total").get<std::size_t>();
    m.tokens.keyword = t.at("keyword").get<std::size_t>();
    m.tokens.name = t.at("name").get<std::size_t>();
    m.tokens.op = t.at("operator").get<std::size_t>();
    m.tokens.punctuation = t.at("punctuation").get<std::size_t>();
    m.tokens.literal = t.at("literal").get<std::size_t>();
    m.tokens.other = t.at("other").get<std::size_t>();
    return m;
}

std::vector<Sample> read_samples(std::istream& in) {
    std::vector<Sample> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(sample_from_line(line));
    return out;
}

std::vector<MetricsRecord> read_metrics(std::istream& in) {
    std::vector<MetricsRecord> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(metrics_from_line(line));
    return out;
}

}  // namespace codenet
