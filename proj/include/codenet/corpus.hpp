#pragma once

// Repository ingestion: finding C files, pulling out comments and function
// definitions, pairing them up and sorting the result into dataset subsets.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codenet/diagnostics.hpp"

namespace codenet {

/// Half-open byte range [begin, end) into a file's text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - begin; }
    bool contains(const Span& inner) const noexcept {
        return begin <= inner.begin && inner.end <= end;
    }
    friend bool operator==(const Span&, const Span&) = default;
};

struct SourceFile {
    std::string path;    // repository-relative, '/' separated
    std::string folder;  // first path component
    std::string text;    // valid UTF-8
};

enum class CommentStyle { Block, Line };

struct CommentBlock {
    Span span;
    CommentStyle style = CommentStyle::Block;
    std::string text;  // delimiters and leading '*' decoration stripped
    bool is_doc = false;

    friend bool operator==(const CommentBlock&, const CommentBlock&) = default;
};

struct FunctionRecord {
    std::string file;
    std::string folder;
    std::string name;
    Span span;
    std::string code;
    std::optional<CommentBlock> header_comment;
    std::vector<CommentBlock> internal_comments;
    std::size_t line_count = 1;

    /// Stable identifier "<file>:<span.begin>".
    std::string id() const;

    friend bool operator==(const FunctionRecord&, const FunctionRecord&) = default;
};

struct SubsetLabels {
    bool in_gold = false;
    bool in_steps = false;
    bool in_sumry = false;
    std::optional<std::string> file_group_id;

    friend bool operator==(const SubsetLabels&, const SubsetLabels&) = default;
};

struct Sample {
    FunctionRecord record;
    SubsetLabels labels;

    friend bool operator==(const Sample&, const Sample&) = default;
};

struct FileSample {
    std::string file;
    std::string folder;
    std::vector<FunctionRecord> members;  // source order; header_comment carried on each
};

struct ClassifyOptions {
    std::size_t steps_threshold = 1;
};

/// The twelve folders the default configuration ingests.
const std::vector<std::string>& default_folders();

/// Replaces every malformed UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

/// Every ".c" file under root/<folder> for each folder, sorted by path.
/// Throws ConfigError when root is missing; unreadable files are skipped with
/// a diagnostic. Folders that do not exist contribute nothing.
std::vector<SourceFile> scan_repository(const std::filesystem::path& root,
                                        const std::vector<std::string>& folders,
                                        Diagnostics* diag = nullptr);

/// Block comments and runs of adjacent line comments, in source order.
std::vector<CommentBlock> extract_comments(const SourceFile& file, Diagnostics* diag = nullptr);

/// The text with comments, literal contents and preprocessor lines blanked
/// out (newlines kept), so byte offsets line up with the original.
std::string mask_non_code(std::string_view text, bool mask_preprocessor = true);

/// Top-level function definitions, in source order. Comments are not yet
/// attached.
std::vector<FunctionRecord> extract_functions(const SourceFile& file, Diagnostics* diag = nullptr);

/// Attaches header and internal comments. `text` is the owning file's text,
/// used to check that only whitespace separates a header from its function.
std::vector<FunctionRecord> associate_comments(std::vector<FunctionRecord> functions,
                                               const std::vector<CommentBlock>& comments,
                                               std::string_view text);

/// First meaningful line of a comment; kernel-doc "name() - " prefixes removed.
std::string summary_line(const CommentBlock& comment);

SubsetLabels classify_sample(const FunctionRecord& record, const ClassifyOptions& options = {});

/// One FileSample per file that has at least one function with a header
/// comment. Input must be grouped by file and ordered by span within a file.
std::vector<FileSample> build_file_samples(const std::vector<Sample>& samples);

/// extract_comments + extract_functions + associate_comments + classify_sample.
std::vector<Sample> ingest_file(const SourceFile& file, const ClassifyOptions& options = {},
                                Diagnostics* diag = nullptr);

/// Ingests every file (optionally on several threads) and returns samples
/// sorted by (path, span begin) with file_group_id filled in.
std::vector<Sample> ingest_files(const std::vector<SourceFile>& files,
                                 const ClassifyOptions& options, unsigned workers,
                                 Diagnostics* diag = nullptr);

}  // namespace codenet
