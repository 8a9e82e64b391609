#include "codenet/knowledge_base.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "codenet/diagnostics.hpp"

namespace codenet {

namespace {

using json = nlohmann::ordered_json;

// Longer text wins; equal lengths fall back to lexicographic order.
void offer_meaning(std::optional<std::string>& current, const std::string& candidate) {
    if (candidate.empty()) return;
    if (!current || candidate.size() > current->size() ||
        (candidate.size() == current->size() && candidate < *current))
        current = candidate;
}

}  // namespace

KbSample make_kb_sample(const FunctionRecord& record, std::vector<Token> tokens) {
    KbSample s;
    s.function_name = record.name;
    if (record.header_comment) s.summary = summary_line(*record.header_comment);
    s.tokens = std::move(tokens);
    return s;
}

void add_sample(KnowledgeBase& kb, const KbSample& sample) {
    ++kb.sample_count;
    std::set<std::string_view> names;
    for (const auto& t : sample.tokens)
        if (t.kind == TokenKind::Name) names.insert(t.lexeme);

    std::vector<KbEntry*> entries;
    entries.reserve(names.size());
    for (std::string_view name : names) {
        auto it = kb.entries.find(name);
        if (it == kb.entries.end()) {
            it = kb.entries.emplace(std::string(name), KbEntry{}).first;
            it->second.name = std::string(name);
        }
        ++it->second.occurrence_count;
        entries.push_back(&it->second);
    }
    for (std::size_t a = 0; a < entries.size(); ++a)
        for (std::size_t b = a + 1; b < entries.size(); ++b) {
            ++entries[a]->relations[entries[b]->name];
            ++entries[b]->relations[entries[a]->name];
        }
    if (names.count(sample.function_name)) offer_meaning(kb.entries.find(sample.function_name)->second.meaning, sample.summary);
}

KnowledgeBase build_kb(std::span<const KbSample> samples) {
    KnowledgeBase kb;
    for (const auto& s : samples) add_sample(kb, s);
    return kb;
}

KnowledgeBase merge_kb(const KnowledgeBase& a, const KnowledgeBase& b) {
    KnowledgeBase out = a;
    out.sample_count += b.sample_count;
    for (const auto& [name, entry] : b.entries) {
        auto [it, inserted] = out.entries.try_emplace(name, entry);
        if (inserted) continue;
        KbEntry& dst = it->second;
        dst.occurrence_count += entry.occurrence_count;
        for (const auto& [partner, count] : entry.relations) dst.relations[partner] += count;
        if (entry.meaning) offer_meaning(dst.meaning, *entry.meaning);
    }
    return out;
}

const KbEntry* lookup(const KnowledgeBase& kb, std::string_view name) {
    const auto it = kb.entries.find(name);
    return it == kb.entries.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> related_names(const KnowledgeBase& kb,
                                                                 std::string_view name, std::size_t limit) {
    const KbEntry* entry = lookup(kb, name);
    if (!entry) throw AbsentNameError("name not in knowledge base: " + std::string(name));
    std::vector<std::pair<std::string, std::uint64_t>> out(entry->relations.begin(), entry->relations.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
    if (out.size() > limit) out.resize(limit);
    return out;
}

KbStatistics kb_statistics(const KnowledgeBase& kb) {
    KbStatistics s;
    s.entries = kb.entries.size();
    std::size_t relation_total = 0;
    for (const auto& [name, entry] : kb.entries) {
        if (entry.meaning) ++s.with_meaning;
        relation_total += entry.relations.size();
    }
    s.mean_relations = s.entries ? static_cast<double>(relation_total) / static_cast<double>(s.entries) : 0.0;
    return s;
}

bool relations_symmetric(const KnowledgeBase& kb) {
    for (const auto& [name, entry] : kb.entries) {
        if (entry.relations.count(name)) return false;
        for (const auto& [partner, count] : entry.relations) {
            const KbEntry* other = lookup(kb, partner);
            if (!other) return false;
            const auto back = other->relations.find(name);
            if (back == other->relations.end() || back->second != count) return false;
        }
    }
    return true;
}

void save_kb(const KnowledgeBase& kb, std::ostream& out) {
    out << json{{"sample_count", kb.sample_count}}.dump() << '\n';
    for (const auto& [name, entry] : kb.entries) {
        json rec;
        rec["name"] = entry.name;
        if (entry.meaning) rec["meaning"] = *entry.meaning;
        rec["occurrence_count"] = entry.occurrence_count;
        json rel = json::array();
        for (const auto& [partner, count] : entry.relations) rel.push_back(json::array({partner, count}));
        rec["relations"] = std::move(rel);
        out << rec.dump() << '\n';
    }
}

KnowledgeBase load_kb(std::istream& in) {
    KnowledgeBase kb;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json rec = json::parse(line);
        if (header) {
            kb.sample_count = rec.at("sample_count").get<std::uint64_t>();
            header = false;
            continue;
        }
        KbEntry entry;
        entry.name = rec.at("name").get<std::string>();
        if (rec.contains("meaning")) entry.meaning = rec["meaning"].get<std::string>();
        entry.occurrence_count = rec.at("occurrence_count").get<std::uint64_t>();
        for (const auto& pair : rec.at("relations"))
            entry.relations.emplace(pair.at(0).get<std::string>(), pair.at(1).get<std::uint64_t>());
        std::string key = entry.name;
        kb.entries.emplace(std::move(key), std::move(entry));
    }
    return kb;
}

}  // namespace codenet
