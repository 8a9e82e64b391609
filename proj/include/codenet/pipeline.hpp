#pragma once

// Stage orchestration behind the command-line tool. Each stage reads its
// inputs from and writes its artifacts to the output directory:
//
//   ingest   -> samples.jsonl, files.jsonl, ingest_log.txt
//   analyze  -> networks.jsonl, metrics.jsonl, analyze_log.txt
//   stats    -> stats_table1.jsonl and/or stats_table2.jsonl (+ text on stdout)
//   kb build -> kb.jsonl
//   export   -> subset_<name>.jsonl

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace codenet {

enum class ExitCode : int {
    Success = 0,
    Internal = 1,
    Config = 2,
    MissingArtifact = 3,
    AbsentName = 4,
};

struct RunConfig {
    std::filesystem::path repo;
    std::vector<std::string> folders;  // empty means the default twelve
    std::filesystem::path out = "codenet-out";
    std::size_t steps_threshold = 1;
    std::string subset;
    std::string table = "all";  // "1", "2" or "all"
    unsigned workers = 1;
    std::string name;
    std::size_t limit = 10;
};

namespace artifacts {
inline constexpr const char* kSamples = "samples.jsonl";
inline constexpr const char* kFiles = "files.jsonl";
inline constexpr const char* kIngestLog = "ingest_log.txt";
inline constexpr const char* kNetworks = "networks.jsonl";
inline constexpr const char* kMetrics = "metrics.jsonl";
inline constexpr const char* kAnalyzeLog = "analyze_log.txt";
inline constexpr const char* kTable1 = "stats_table1.jsonl";
inline constexpr const char* kTable2 = "stats_table2.jsonl";
inline constexpr const char* kKb = "kb.jsonl";
}  // namespace artifacts

struct IngestSummary {
    std::size_t files = 0;
    std::size_t samples = 0;
    std::size_t file_samples = 0;
    std::size_t diagnostics = 0;
};

struct AnalyzeSummary {
    std::size_t analyzed = 0;
    std::size_t failed = 0;
    std::size_t invariant_violations = 0;
};

IngestSummary run_ingest(const RunConfig& config);
AnalyzeSummary run_analyze(const RunConfig& config);
void run_stats(const RunConfig& config, std::ostream& text);
void run_kb_build(const RunConfig& config);
void run_kb_query(const RunConfig& config, std::ostream& text);
void run_export(const RunConfig& config);

const std::vector<std::string>& export_subsets();

}  // namespace codenet
