#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "codenet/diagnostics.hpp"
#include "codenet/pipeline.hpp"

using codenet::ExitCode;

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

int fail(ExitCode c, const std::string& message) {
    std::cerr << "codenet: " << message << '\n';
    return code(c);
}

}  // namespace

int main(int argc, char** argv) {
    codenet::RunConfig config;

    CLI::App app{"Kernel-style C corpus builder: comment/function pairs, structure networks, knowledge base"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--repo", config.repo, "Repository root to ingest");
    app.add_option("--folders", config.folders, "Top-level folders to scan (default: the twelve kernel folders)")
        ->delimiter(',');
    app.add_option("--out", config.out, "Artifact directory")->capture_default_str();
    app.add_option("--steps-threshold", config.steps_threshold, "Internal comments needed for the steps subset")
        ->capture_default_str();
    app.add_option("--subset", config.subset, "Subset to export: gold, steps, sumry or files");
    app.add_option("--table", config.table, "Table to emit: 1, 2 or all")->capture_default_str();
    app.add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--name", config.name, "Name to look up in the knowledge base");
    app.add_option("--limit", config.limit, "Maximum related names to print")->capture_default_str();

    auto* ingest = app.add_subcommand("ingest", "Extract functions and comments into samples");
    auto* analyze = app.add_subcommand("analyze", "Build structure networks and complexity metrics");
    auto* stats = app.add_subcommand("stats", "Print dataset and token tables");
    auto* kb = app.add_subcommand("kb", "Knowledge base operations");
    kb->require_subcommand(1);
    auto* kb_build = kb->add_subcommand("build", "Build the knowledge base from samples");
    auto* kb_query = kb->add_subcommand("query", "Look up a name and its related names");
    auto* exporter = app.add_subcommand("export", "Write one subset as a standalone file");
    for (auto* sub : {ingest, analyze, stats, kb, kb_build, kb_query, exporter}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(ExitCode::Config);
    }

    try {
        if (ingest->parsed()) {
            if (config.repo.empty()) return fail(ExitCode::Config, "ingest needs --repo");
            const auto s = codenet::run_ingest(config);
            std::cout << "ingested " << s.samples << " samples from " << s.files << " files (" << s.file_samples
                      << " file samples, " << s.diagnostics << " diagnostics)\n";
        } else if (analyze->parsed()) {
            const auto s = codenet::run_analyze(config);
            std::cout << "analyzed " << s.analyzed << " samples, " << s.failed << " failed\n";
        } else if (stats->parsed()) {
            codenet::run_stats(config, std::cout);
        } else if (kb_build->parsed()) {
            codenet::run_kb_build(config);
            std::cout << "wrote " << (config.out / codenet::artifacts::kKb).string() << '\n';
        } else if (kb_query->parsed()) {
            codenet::run_kb_query(config, std::cout);
        } else if (exporter->parsed()) {
            if (config.subset.empty()) return fail(ExitCode::Config, "export needs --subset");
            codenet::run_export(config);
        }
    } catch (const codenet::ConfigError& e) {
        return fail(ExitCode::Config, e.what());
    } catch (const codenet::MissingArtifactError& e) {
        return fail(ExitCode::MissingArtifact, e.what());
    } catch (const codenet::AbsentNameError& e) {
        return fail(ExitCode::AbsentName, e.what());
    } catch (const std::exception& e) {
        return fail(ExitCode::Internal, e.what());
    }
    return code(ExitCode::Success);
}
