// Acceptance driver. `codenet_acceptance N` runs criterion N and prints one
// PASS/FAIL/SKIP line; with no argument every criterion runs in turn.
//
// Criteria that need a real kernel tree read it from CODENET_KERNEL_ROOT and
// are skipped (exit 77) when it is unset. The full-kernel check additionally
// needs CODENET_FULL_KERNEL=1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "codenet/complexity.hpp"
#include "codenet/corpus.hpp"
#include "codenet/knowledge_base.hpp"
#include "codenet/lexer.hpp"
#include "codenet/pipeline.hpp"
#include "codenet/records.hpp"
#include "codenet/stats.hpp"
#include "codenet/structure_net.hpp"
#include "support.hpp"

using namespace codenet;
namespace fs = std::filesystem;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
    Verdict verdict;
    std::string detail;
};

struct Criterion {
    int number;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

bool within_rel(double got, double want, double rel) { return std::abs(got - want) <= rel * want; }

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::optional<fs::path> kernel_root() {
    const char* env = std::getenv("CODENET_KERNEL_ROOT");
    if (!env || !*env) return std::nullopt;
    return fs::path(env);
}

// Collects failures while letting every check run.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    Outcome outcome(const std::string& summary) const {
        if (failures_.empty()) return {Verdict::Pass, summary};
        std::string detail = summary + " | failed:";
        for (const auto& f : failures_) detail += " " + f + ";";
        return {Verdict::Fail, detail};
    }

private:
    std::vector<std::string> failures_;
};

// -- 1 -----------------------------------------------------------------------

Outcome metric_fixtures() {
    Checks c;
    const auto star = analyze(testing::shape(4, testing::star(4)));
    const auto path4 = analyze(testing::shape(4, testing::path(4)));
    const auto path3 = analyze(testing::shape(3, testing::path(3)));
    c.expect(std::abs(star.max_dc - 1.0) <= 1e-12, "star max_dc");
    c.expect(std::abs(star.mean_distance - 1.5) <= 1e-12, "star MD");
    c.expect(std::abs(path4.max_dc - 2.0 / 3.0) <= 1e-12, "path-4 max_dc");
    c.expect(std::abs(path4.mean_distance - 5.0 / 3.0) <= 1e-12, "path-4 MD");
    c.expect(std::abs(path3.mean_distance - 4.0 / 3.0) <= 1e-12, "path-3 MD");
    return c.outcome("star-4 (" + fmt(star.max_dc, 12) + ", " + fmt(star.mean_distance, 12) + "), path-4 (" +
                     fmt(path4.max_dc, 12) + ", " + fmt(path4.mean_distance, 12) + "), path-3 MD " +
                     fmt(path3.mean_distance, 12));
}

// -- 2 -----------------------------------------------------------------------

Outcome oracle_equivalence() {
    std::mt19937_64 rng(0xC0DE);
    std::uniform_int_distribution<std::size_t> size(2, 300);
    constexpr int kTrees = 200;
    int matrix_mismatch = 0, md_mismatch = 0;
    double worst = 0;
    for (int t = 0; t < kTrees; ++t) {
        const std::size_t n = size(rng);
        const auto edges = oracle::random_tree(n, rng);
        const auto dist = all_pairs_shortest_paths(testing::shape(n, edges));
        const auto want = oracle::bfs_all_pairs(n, edges);
        bool same = true;
        for (std::size_t i = 0; i < n && same; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (dist.at(i, j) != want[i][j]) {
                    same = false;
                    break;
                }
        matrix_mismatch += !same;
        const double err = std::abs(mean_distance(dist) - oracle::tree_mean_distance(n, edges));
        worst = std::max(worst, err);
        md_mismatch += err > 1e-9;
    }
    Checks c;
    c.expect(matrix_mismatch == 0, std::to_string(matrix_mismatch) + " distance matrices differ");
    c.expect(md_mismatch == 0, std::to_string(md_mismatch) + " MD values off by more than 1e-9");
    return c.outcome(std::to_string(kTrees) + " random trees (n<=300, isa " +
                     std::string(kernels::to_string(kernels::active_isa())) + "), worst MD error " +
                     std::to_string(worst));
}

// -- 3 -----------------------------------------------------------------------

Outcome structural_invariants() {
    const auto root = kernel_root();
    if (!root) return {Verdict::Skip, "set CODENET_KERNEL_ROOT to a kernel source tree"};
    std::vector<Sample> samples;
    for (const auto& folder : default_folders()) {
        const auto files = scan_repository(*root, {folder});
        auto more = ingest_files(files, {}, workers());
        samples.insert(samples.end(), more.begin(), more.end());
        if (samples.size() >= 1000) break;
    }
    if (samples.size() < 1000)
        return {Verdict::Fail, "only " + std::to_string(samples.size()) + " functions found under " + root->string()};

    std::size_t ok = 0, failed = 0;
    for (const auto& s : samples) {
        try {
            const auto tokens = tokenize(s.record.code);
            const auto net = parse_structure(tokens);
            const auto check = check_structure(net, tokens);
            (check.connected && check.tree_edge_count && check.leaf_complete) ? ++ok : ++failed;
        } catch (const std::exception&) {
            ++failed;
        }
    }
    Checks c;
    c.expect(failed == 0, std::to_string(failed) + " networks violate the tree invariants");
    return c.outcome(std::to_string(ok) + "/" + std::to_string(samples.size()) + " networks valid");
}

// -- 4 -----------------------------------------------------------------------

Outcome ipc_reproduction() {
    const auto root = kernel_root();
    if (!root) return {Verdict::Skip, "set CODENET_KERNEL_ROOT to a Linux v5.8.11 source tree"};
    testing::TempDir out("ipc");
    RunConfig config;
    config.repo = *root;
    config.folders = {"ipc"};
    config.out = out.path();
    config.workers = workers();
    run_ingest(config);
    run_analyze(config);

    std::ifstream sin(out.path() / artifacts::kSamples);
    const auto table1 = dataset_table(read_samples(sin));
    std::ifstream min(out.path() / artifacts::kMetrics);
    const auto table2 = token_table(read_metrics(min));
    const DatasetRow& d = table1.front();
    const TokenRow& t = table2.front();

    Checks c;
    auto count = [&](const char* what, std::size_t got, double want) {
        c.expect(within_rel(static_cast<double>(got), want, 0.20),
                 std::string(what) + " " + std::to_string(got) + " vs " + fmt(want, 0));
    };
    auto mean = [&](const char* what, double got, double want) {
        c.expect(within_rel(got, want, 0.20), std::string(what) + " " + fmt(got, 2) + " vs " + fmt(want, 2));
    };
    count("samples", d.overall.count, 306);
    count("files", d.files.count, 11);
    count("gold", d.gold.count, 33);
    count("steps", d.steps.count, 42);
    count("sumry", d.sumry.count, 78);
    mean("tokens", t.tokens, 139.91);
    mean("keywords", t.keywords, 11.21);
    mean("names", t.names, 46.39);
    mean("punctuation", t.punctuation, 47.09);
    mean("operators", t.operators, 32.70);
    mean("nodes", t.nodes, 159.91);
    c.expect(std::abs(t.max_dc - 0.21) <= 0.05, "max_dc " + fmt(t.max_dc, 3) + " vs 0.21+-0.05");
    c.expect(std::abs(t.mean_distance - 4.02) <= 0.8, "MD " + fmt(t.mean_distance, 3) + " vs 4.02+-0.8");
    return c.outcome("samples " + std::to_string(d.overall.count) + ", files " + std::to_string(d.files.count) +
                     ", gold " + std::to_string(d.gold.count) + ", steps " + std::to_string(d.steps.count) +
                     ", sumry " + std::to_string(d.sumry.count) + ", tokens " + fmt(t.tokens, 2) + " (kw " +
                     fmt(t.keywords, 2) + ", name " + fmt(t.names, 2) + ", punc " + fmt(t.punctuation, 2) +
                     ", op " + fmt(t.operators, 2) + "), nodes " + fmt(t.nodes, 2) + ", max_dc " +
                     fmt(t.max_dc, 3) + ", MD " + fmt(t.mean_distance, 3));
}

// -- 5 -----------------------------------------------------------------------

Outcome full_kernel() {
    const auto root = kernel_root();
    const char* opt_in = std::getenv("CODENET_FULL_KERNEL");
    if (!root || !opt_in || std::string(opt_in) != "1")
        return {Verdict::Skip, "long-running; set CODENET_KERNEL_ROOT and CODENET_FULL_KERNEL=1"};
    testing::TempDir out("full");
    RunConfig config;
    config.repo = *root;
    config.out = out.path();
    config.workers = workers();
    run_ingest(config);
    run_analyze(config);
    run_kb_build(config);

    std::ifstream sin(out.path() / artifacts::kSamples);
    const auto d = dataset_table(read_samples(sin)).front();
    std::ifstream min(out.path() / artifacts::kMetrics);
    const auto t = token_table(read_metrics(min)).front();
    std::ifstream kin(out.path() / artifacts::kKb);
    const auto kb = kb_statistics(load_kb(kin));

    Checks c;
    auto near = [&](const char* what, double got, double want) {
        c.expect(within_rel(got, want, 0.25), std::string(what) + " " + fmt(got, 2) + " vs " + fmt(want, 2));
    };
    near("samples", static_cast<double>(d.overall.count), 136428);
    near("avg length", d.overall.avg_length, 23.04);
    near("tokens", t.tokens, 157.58);
    near("nodes", t.nodes, 183.43);
    near("max_dc", t.max_dc, 0.23);
    near("MD", t.mean_distance, 4.11);
    near("kb entries", static_cast<double>(kb.entries), 50016);
    near("kb meanings", static_cast<double>(kb.with_meaning), 9029);
    near("kb mean relations", kb.mean_relations, 85.31);
    return c.outcome("samples " + std::to_string(d.overall.count) + ", tokens " + fmt(t.tokens, 2) + ", nodes " +
                     fmt(t.nodes, 2) + ", max_dc " + fmt(t.max_dc, 3) + ", MD " + fmt(t.mean_distance, 3) +
                     ", kb (" + std::to_string(kb.entries) + ", " + std::to_string(kb.with_meaning) + ", " +
                     fmt(kb.mean_relations, 2) + ")");
}

// -- 6 -----------------------------------------------------------------------

Outcome kb_properties() {
    Checks c;
    std::mt19937_64 rng(0x6B62);
    std::uniform_int_distribution<std::size_t> size(1, 80);
    std::size_t asymmetric = 0, merge_mismatch = 0, roundtrip_mismatch = 0;
    constexpr int kCorpora = 50;
    for (int k = 0; k < kCorpora; ++k) {
        const auto corpus = testing::random_kb_corpus(rng, size(rng));
        const std::span<const KbSample> all(corpus);
        const auto whole = build_kb(all);
        asymmetric += !relations_symmetric(whole);

        // Random partition into up to four contiguous parts, merged in shuffled order.
        std::uniform_int_distribution<std::size_t> parts_dist(1, 4);
        const std::size_t parts = std::min(parts_dist(rng), corpus.size());
        std::vector<KnowledgeBase> pieces;
        for (std::size_t p = 0; p < parts; ++p) {
            const std::size_t lo = corpus.size() * p / parts;
            const std::size_t hi = corpus.size() * (p + 1) / parts;
            pieces.push_back(build_kb(all.subspan(lo, hi - lo)));
        }
        std::shuffle(pieces.begin(), pieces.end(), rng);
        KnowledgeBase merged;
        for (const auto& piece : pieces) merged = merge_kb(merged, piece);
        merge_mismatch += !(merged == whole);

        std::stringstream buf;
        save_kb(whole, buf);
        roundtrip_mismatch += !(load_kb(buf) == whole);
    }

    // The same properties on the knowledge base of the fixture repository.
    const auto files = scan_repository(testing::fixture_repo(), default_folders());
    std::vector<KbSample> real;
    for (const auto& s : ingest_files(files, {}, 1)) real.push_back(make_kb_sample(s.record, tokenize(s.record.code)));
    const auto fixture_kb = build_kb(real);
    asymmetric += !relations_symmetric(fixture_kb);
    std::stringstream buf;
    save_kb(fixture_kb, buf);
    roundtrip_mismatch += !(load_kb(buf) == fixture_kb);

    c.expect(asymmetric == 0, std::to_string(asymmetric) + " asymmetric stores");
    c.expect(merge_mismatch == 0, std::to_string(merge_mismatch) + " partition merges differ");
    c.expect(roundtrip_mismatch == 0, std::to_string(roundtrip_mismatch) + " round-trips differ");
    return c.outcome(std::to_string(kCorpora) + " random corpora + fixture repository: symmetry, merge, round-trip");
}

// -- 7 -----------------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> full_run(const fs::path& out, unsigned worker_count) {
    RunConfig config;
    config.repo = testing::fixture_repo();
    config.out = out;
    config.workers = worker_count;
    run_ingest(config);
    run_analyze(config);
    std::ostringstream text;
    run_stats(config, text);
    run_kb_build(config);
    for (const auto& subset : export_subsets()) {
        config.subset = subset;
        run_export(config);
    }
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& entry : fs::directory_iterator(out))
        files.emplace_back(entry.path().filename().string(), testing::slurp(entry.path()));
    files.emplace_back("stats.txt", text.str());
    std::sort(files.begin(), files.end());
    return files;
}

Outcome determinism() {
    testing::TempDir a("runA");
    testing::TempDir b("runB");
    const auto first = full_run(a.path(), 1);
    const auto second = full_run(b.path(), 4);
    Checks c;
    c.expect(first.size() == second.size(), "artifact sets differ");
    std::size_t differing = 0;
    for (std::size_t k = 0; k < std::min(first.size(), second.size()); ++k)
        if (first[k] != second[k]) {
            ++differing;
            c.expect(false, first[k].first + " differs");
        }
    return c.outcome(std::to_string(first.size()) + " artifacts compared across two runs (1 and 4 workers), " +
                     std::to_string(differing) + " differ");
}

// -- 8 -----------------------------------------------------------------------

Outcome lexer_goldens() {
    Checks c;
    const auto add = tokenize("int add(int a, int b) { return a + b; }");
    const auto counts = count_tokens(add);
    c.expect(add.size() == 16, "add token count " + std::to_string(add.size()));
    c.expect(counts.keyword == 4 && counts.name == 5 && counts.op == 1 && counts.punctuation == 6 &&
                 counts.literal == 0 && counts.other == 0,
             "add category counts");

    const auto dir = testing::data_dir() / "golden" / "lexer";
    std::size_t matched = 0, snippets = 0;
    for (int k = 1; k <= 20; ++k) {
        char stem[8];
        std::snprintf(stem, sizeof stem, "%02d", k);
        const fs::path code = dir / (std::string(stem) + ".c");
        const fs::path golden = dir / (std::string(stem) + ".tokens");
        if (!fs::exists(code) || !fs::exists(golden)) {
            c.expect(false, std::string("missing snippet ") + stem);
            continue;
        }
        ++snippets;
        std::vector<Token> want;
        std::istringstream lines(testing::slurp(golden));
        for (std::string line; std::getline(lines, line);) {
            const auto j = nlohmann::json::parse(line);
            want.push_back(Token{*token_kind_from_string(j[1].get<std::string>()), j[2].get<std::string>(),
                                 j[0].get<std::size_t>()});
        }
        if (tokenize(testing::slurp(code)) == want)
            ++matched;
        else
            c.expect(false, std::string("snippet ") + stem);
    }
    return c.outcome("add: 16 tokens (4,5,1,6,0,0); " + std::to_string(matched) + "/" + std::to_string(snippets) +
                     " golden snippets match token-for-token");
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "metric fixtures", 1.0, metric_fixtures},
        {2, "Floyd-Warshall vs BFS oracle on random trees", 30.0, oracle_equivalence},
        {3, "structural invariants on real kernel functions", 60.0, structural_invariants},
        {4, "ipc folder reproduction", 300.0, ipc_reproduction},
        {5, "full-kernel figures (optional)", 1e9, full_kernel},
        {6, "knowledge-base properties", 30.0, kb_properties},
        {7, "pipeline determinism", 1e9, determinism},
        {8, "lexer goldens", 1e9, lexer_goldens},
    };
    return all;
}

int run_one(const Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = c.run();
    } catch (const std::exception& e) {
        outcome = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.verdict == Verdict::Pass && seconds > c.budget_seconds) {
        outcome.verdict = Verdict::Fail;
        outcome.detail += " | over the " + fmt(c.budget_seconds, 0) + " s budget";
    }
    const char* tag = outcome.verdict == Verdict::Pass ? "PASS" : outcome.verdict == Verdict::Fail ? "FAIL" : "SKIP";
    std::cout << "[" << tag << "] criterion " << c.number << " (" << c.title << "): " << outcome.detail << " ["
              << fmt(seconds, 2) << " s]" << std::endl;
    return outcome.verdict == Verdict::Pass ? 0 : outcome.verdict == Verdict::Skip ? 77 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 2) {
        std::cerr << "usage: codenet_acceptance [criterion-number]\n";
        return 2;
    }
    if (argc == 2) {
        const int wanted = std::atoi(argv[1]);
        for (const auto& c : criteria())
            if (c.number == wanted) return run_one(c);
        std::cerr << "no criterion " << argv[1] << "\n";
        return 2;
    }
    int failures = 0;
    for (const auto& c : criteria()) failures += run_one(c) == 1;
    return failures ? 1 : 0;
}
