#pragma once

// Repository-wide store of name tokens: what each one means (taken from the
// header summary of the function it names) and which other names appear in
// the same functions.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codenet/corpus.hpp"
#include "codenet/lexer.hpp"

namespace codenet {

struct KbEntry {
    std::string name;
    std::optional<std::string> meaning;
    std::map<std::string, std::uint64_t, std::less<>> relations;  // partner -> #functions with both
    std::uint64_t occurrence_count = 0;                           // #functions containing name

    friend bool operator==(const KbEntry&, const KbEntry&) = default;
};

struct KnowledgeBase {
    std::map<std::string, KbEntry, std::less<>> entries;
    std::uint64_t sample_count = 0;

    friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

/// One function's contribution: its name, its header summary (may be empty)
/// and its tokens.
struct KbSample {
    std::string function_name;
    std::string summary;
    std::vector<Token> tokens;
};

KbSample make_kb_sample(const FunctionRecord& record, std::vector<Token> tokens);

/// Adds a single function to an existing store.
void add_sample(KnowledgeBase& kb, const KbSample& sample);

KnowledgeBase build_kb(std::span<const KbSample> samples);

/// Entry union with summed counts; the longer meaning wins, then the
/// lexicographically smaller one. Associative and commutative.
KnowledgeBase merge_kb(const KnowledgeBase& a, const KnowledgeBase& b);

const KbEntry* lookup(const KnowledgeBase& kb, std::string_view name);

/// Partners by descending count, ties in lexicographic order, at most
/// `limit` of them. Throws AbsentNameError for an unknown name.
std::vector<std::pair<std::string, std::uint64_t>> related_names(const KnowledgeBase& kb,
                                                                 std::string_view name, std::size_t limit);

struct KbStatistics {
    std::size_t entries = 0;
    std::size_t with_meaning = 0;
    double mean_relations = 0.0;
};

KbStatistics kb_statistics(const KnowledgeBase& kb);

/// Checks that every relation is mirrored with the same count and that no
/// entry relates to itself.
bool relations_symmetric(const KnowledgeBase& kb);

/// Line-delimited records sorted by name, preceded by one header line that
/// carries the sample count.
void save_kb(const KnowledgeBase& kb, std::ostream& out);
KnowledgeBase load_kb(std::istream& in);

}  // namespace codenet
