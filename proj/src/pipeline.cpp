#include "codenet/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "codenet/complexity.hpp"
#include "codenet/corpus.hpp"
#include "codenet/knowledge_base.hpp"
#include "codenet/lexer.hpp"
#include "codenet/records.hpp"
#include "codenet/stats.hpp"
#include "codenet/structure_net.hpp"
#include "parallel.hpp"

namespace codenet {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
    if (!out) throw ConfigError("write failed: " + path.string());
}

fs::path require_artifact(const RunConfig& config, const char* name, const char* stage) {
    const fs::path path = config.out / name;
    if (!fs::is_regular_file(path))
        throw MissingArtifactError(std::string("missing ") + path.string() + " (run '" + stage + "' first)");
    return path;
}

std::vector<Sample> load_samples(const RunConfig& config) {
    std::ifstream in(require_artifact(config, artifacts::kSamples, "ingest"), std::ios::binary);
    return read_samples(in);
}

void ensure_out_dir(const RunConfig& config) {
    std::error_code ec;
    fs::create_directories(config.out, ec);
    if (!fs::is_directory(config.out)) throw ConfigError("cannot create output directory " + config.out.string());
}

}  // namespace

const std::vector<std::string>& export_subsets() {
    static const std::vector<std::string> subsets{"gold", "steps", "sumry", "files"};
    return subsets;
}

IngestSummary run_ingest(const RunConfig& config) {
    const auto& folders = config.folders.empty() ? default_folders() : config.folders;
    Diagnostics diag;
    const auto files = scan_repository(config.repo, folders, &diag);
    ensure_out_dir(config);

    const ClassifyOptions options{config.steps_threshold};
    const auto samples = ingest_files(files, options, config.workers, &diag);
    const auto file_samples = build_file_samples(samples);

    std::string sample_lines;
    for (const auto& s : samples) sample_lines += sample_to_line(s) + "\n";
    std::string file_lines;
    for (const auto& f : file_samples) file_lines += file_sample_to_line(f) + "\n";
    write_file(config.out / artifacts::kSamples, sample_lines);
    write_file(config.out / artifacts::kFiles, file_lines);

    struct FolderCounts {
        std::size_t files = 0, samples = 0, gold = 0, steps = 0, sumry = 0;
    };
    std::map<std::string, FolderCounts> counts;
    for (const auto& f : files) ++counts[f.folder].files;
    for (const auto& s : samples) {
        auto& c = counts[s.record.folder];
        ++c.samples;
        c.gold += s.labels.in_gold;
        c.steps += s.labels.in_steps;
        c.sumry += s.labels.in_sumry;
    }
    std::ostringstream log;
    log << "folder\tfiles\tsamples\tgold\tsteps\tsumry\n";
    for (const auto& [folder, c] : counts)
        log << folder << '\t' << c.files << '\t' << c.samples << '\t' << c.gold << '\t' << c.steps << '\t'
            << c.sumry << '\n';
    log << "total\t" << files.size() << '\t' << samples.size() << "\n\ndiagnostics: " << diag.messages().size()
        << '\n';
    for (const auto& m : diag.messages()) log << m << '\n';
    write_file(config.out / artifacts::kIngestLog, log.str());

    return {files.size(), samples.size(), file_samples.size(), diag.messages().size()};
}

AnalyzeSummary run_analyze(const RunConfig& config) {
    const auto samples = load_samples(config);

    struct Result {
        bool ok = false;
        std::string network;
        MetricsRecord metrics;
        std::string problem;
        bool violation = false;
    };
    std::vector<Result> results(samples.size());
    detail::parallel_for(samples.size(), config.workers, [&](std::size_t k) {
        const FunctionRecord& rec = samples[k].record;
        Result& r = results[k];
        try {
            const auto tokens = tokenize(rec.code);
            const auto net = parse_structure(tokens);
            const auto check = check_structure(net, tokens);
            if (!check.ok()) {
                r.violation = true;
                r.problem = "structure invariant violated";
                return;
            }
            const auto report = analyze(net);
            r.metrics = {rec.id(), rec.folder, rec.name, report.n, report.max_dc, report.mean_distance,
                         count_tokens(tokens)};
            r.network = network_to_line(rec.id(), net);
            r.ok = true;
        } catch (const std::exception& e) {
            r.problem = e.what();
        }
    });

    AnalyzeSummary summary;
    std::string networks, metrics, log;
    for (std::size_t k = 0; k < results.size(); ++k) {
        const Result& r = results[k];
        if (r.ok) {
            ++summary.analyzed;
            networks += r.network + "\n";
            metrics += metrics_to_line(r.metrics) + "\n";
        } else {
            ++summary.failed;
            summary.invariant_violations += r.violation;
            log += samples[k].record.id() + " (" + samples[k].record.name + "): " + r.problem + "\n";
        }
    }
    write_file(config.out / artifacts::kNetworks, networks);
    write_file(config.out / artifacts::kMetrics, metrics);
    write_file(config.out / artifacts::kAnalyzeLog,
               "analyzed " + std::to_string(summary.analyzed) + "\nfailed " + std::to_string(summary.failed) +
                   "\n" + log);
    return summary;
}

void run_stats(const RunConfig& config, std::ostream& text) {
    const bool want1 = config.table == "1" || config.table == "all";
    const bool want2 = config.table == "2" || config.table == "all";
    if (!want1 && !want2) throw ConfigError("unknown table '" + config.table + "' (expected 1, 2 or all)");

    if (want1) {
        const auto rows = dataset_table(load_samples(config));
        write_file(config.out / artifacts::kTable1, dataset_table_records(rows));
        text << render_dataset_table(rows);
    }
    if (want2) {
        std::ifstream in(require_artifact(config, artifacts::kMetrics, "analyze"), std::ios::binary);
        const auto rows = token_table(read_metrics(in));
        write_file(config.out / artifacts::kTable2, token_table_records(rows));
        if (want1) text << '\n';
        text << render_token_table(rows);
    }
}

void run_kb_build(const RunConfig& config) {
    const auto samples = load_samples(config);
    const std::size_t shards = std::clamp<std::size_t>(config.workers, 1, std::max<std::size_t>(1, samples.size()));
    std::vector<KnowledgeBase> partial(shards);
    detail::parallel_for(shards, config.workers, [&](std::size_t shard) {
        const std::size_t lo = samples.size() * shard / shards;
        const std::size_t hi = samples.size() * (shard + 1) / shards;
        for (std::size_t k = lo; k < hi; ++k)
            add_sample(partial[shard], make_kb_sample(samples[k].record, tokenize(samples[k].record.code)));
    });
    KnowledgeBase kb;
    for (const auto& p : partial) kb = merge_kb(kb, p);

    std::ostringstream out;
    save_kb(kb, out);
    write_file(config.out / artifacts::kKb, out.str());
}

void run_kb_query(const RunConfig& config, std::ostream& text) {
    if (config.name.empty()) throw ConfigError("kb query needs --name");
    std::ifstream in(require_artifact(config, artifacts::kKb, "kb build"), std::ios::binary);
    const KnowledgeBase kb = load_kb(in);
    const KbEntry* entry = lookup(kb, config.name);
    if (!entry) throw AbsentNameError("name not in knowledge base: " + config.name);
    text << "name: " << entry->name << '\n';
    text << "meaning: " << entry->meaning.value_or("") << '\n';
    text << "occurrences: " << entry->occurrence_count << '\n';
    const auto related = related_names(kb, config.name, config.limit);
    text << "related: " << related.size() << '\n';
    for (const auto& [partner, count] : related) text << "  " << partner << '\t' << count << '\n';
}

void run_export(const RunConfig& config) {
    const auto& names = export_subsets();
    if (std::find(names.begin(), names.end(), config.subset) == names.end())
        throw ConfigError("unknown subset '" + config.subset + "' (expected gold, steps, sumry or files)");
    const fs::path target = config.out / ("subset_" + config.subset + ".jsonl");
    if (config.subset == "files") {
        std::ifstream in(require_artifact(config, artifacts::kFiles, "ingest"), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        write_file(target, buf.str());
        return;
    }
    std::string lines;
    for (const auto& s : load_samples(config)) {
        const bool keep = (config.subset == "gold" && s.labels.in_gold) ||
                          (config.subset == "steps" && s.labels.in_steps) ||
                          (config.subset == "sumry" && s.labels.in_sumry);
        if (keep) lines += sample_to_line(s) + "\n";
    }
    write_file(target, lines);
}

}  // namespace codenet
