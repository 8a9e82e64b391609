#include "codenet/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>

#include "parallel.hpp"

namespace codenet {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t npos = std::string_view::npos;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool all_space(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return is_space(c); });
}

void blank(std::string& masked, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end && i < masked.size(); ++i)
        if (masked[i] != '\n') masked[i] = ' ';
}

struct RawComment {
    Span span;
    CommentStyle style;
    bool terminated = true;
};

struct LexicalScan {
    std::vector<RawComment> comments;
    std::string masked;
};

// Single pass that finds comments and blanks them, along with the contents of
// string and character literals.
LexicalScan scan_lexical(std::string_view text) {
    LexicalScan scan;
    scan.masked.assign(text);
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        const char c = text[i];
        const char next = i + 1 < n ? text[i + 1] : '\0';
        if (c == '/' && next == '*') {
            const std::size_t close = text.find("*/", i + 2);
            const bool terminated = close != npos;
            const std::size_t stop = terminated ? close + 2 : n;
            blank(scan.masked, i, stop);
            scan.comments.push_back({{i, stop}, CommentStyle::Block, terminated});
            i = stop;
        } else if (c == '/' && next == '/') {
            std::size_t eol = i;
            while (true) {
                eol = text.find('\n', eol);
                if (eol == npos) {
                    eol = n;
                    break;
                }
                std::size_t before = eol;
                if (before > i && text[before - 1] == '\r') --before;
                if (before > i + 2 && text[before - 1] == '\\') {
                    ++eol;
                    continue;
                }
                break;
            }
            std::size_t end = eol;
            if (end > i && text[end - 1] == '\r') --end;
            blank(scan.masked, i, end);
            scan.comments.push_back({{i, end}, CommentStyle::Line, true});
            i = eol;
        } else if (c == '"' || c == '\'') {
            std::size_t j = i + 1;
            while (j < n && text[j] != c && text[j] != '\n') j += (text[j] == '\\' && j + 1 < n) ? 2 : 1;
            const std::size_t stop = std::min(j, n);
            blank(scan.masked, i + 1, stop);
            i = (stop < n && text[stop] == c) ? stop + 1 : stop;
        } else {
            ++i;
        }
    }
    return scan;
}

void mask_preprocessor_lines(std::string& masked) {
    const std::size_t n = masked.size();
    std::size_t line = 0;
    while (line < n) {
        std::size_t eol = masked.find('\n', line);
        if (eol == npos) eol = n;
        std::size_t k = line;
        while (k < eol && (masked[k] == ' ' || masked[k] == '\t')) ++k;
        if (k < eol && masked[k] == '#') {
            // Directive plus any backslash continuation lines.
            while (true) {
                std::size_t last = eol;
                while (last > line && (masked[last - 1] == '\r' || masked[last - 1] == ' ' ||
                                       masked[last - 1] == '\t'))
                    --last;
                const bool continued = last > line && masked[last - 1] == '\\';
                blank(masked, line, eol);
                if (!continued || eol >= n) break;
                line = eol + 1;
                eol = masked.find('\n', line);
                if (eol == npos) eol = n;
            }
        }
        line = eol + 1;
    }
}

std::string clean_comment_lines(std::string_view body, bool strip_star) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t eol = body.find('\n', start);
        if (eol == npos) eol = body.size();
        std::string_view line = trim(body.substr(start, eol - start));
        if (strip_star && !line.empty() && line.front() == '*') line = trim(line.substr(1));
        lines.push_back(line);
        start = eol + 1;
    }
    while (!lines.empty() && lines.front().empty()) lines.erase(lines.begin());
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    std::string out;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        if (k) out.push_back('\n');
        out.append(lines[k]);
    }
    return out;
}

CommentBlock make_block(std::string_view text, const RawComment& raw) {
    CommentBlock block;
    block.span = raw.span;
    block.style = CommentStyle::Block;
    const std::string_view whole = text.substr(raw.span.begin, raw.span.size());
    std::string_view body = whole.substr(2, whole.size() - 2 - (raw.terminated ? 2 : 0));
    if (raw.terminated && whole.size() < 4) body = {};
    block.is_doc = whole.size() > 4 && whole.starts_with("/**");
    if (block.is_doc && !body.empty() && body.front() == '*') body.remove_prefix(1);
    block.text = clean_comment_lines(body, true);
    return block;
}

CommentBlock make_line_run(std::string_view text, Span span) {
    CommentBlock block;
    block.span = span;
    block.style = CommentStyle::Line;
    std::string body;
    std::size_t pos = span.begin;
    while (pos < span.end) {
        std::size_t eol = text.find('\n', pos);
        if (eol == npos || eol > span.end) eol = span.end;
        std::string_view line = text.substr(pos, eol - pos);
        const std::size_t mark = line.find("//");
        if (mark != npos) {
            line.remove_prefix(mark + 2);
            while (!line.empty() && line.front() == '/') line.remove_prefix(1);
        } else {
            line = {};  // continuation of a backslash-extended comment line
        }
        if (!body.empty() || pos != span.begin) body.push_back('\n');
        body.append(line);
        pos = eol + 1;
    }
    block.text = clean_comment_lines(body, false);
    return block;
}

std::size_t last_non_space(std::string_view s, std::size_t lo, std::size_t hi) {
    while (hi > lo) {
        --hi;
        if (!is_space(s[hi])) return hi;
    }
    return npos;
}

std::size_t first_non_space(std::string_view s, std::size_t lo, std::size_t hi) {
    for (; lo < hi; ++lo)
        if (!is_space(s[lo])) return lo;
    return npos;
}

std::size_t match_forward(std::string_view s, std::size_t open, char open_ch, char close_ch) {
    std::size_t depth = 0;
    for (std::size_t i = open; i < s.size(); ++i) {
        if (s[i] == open_ch) {
            ++depth;
        } else if (s[i] == close_ch) {
            if (--depth == 0) return i;
        }
    }
    return npos;
}

std::size_t match_backward(std::string_view s, std::size_t close, std::size_t lo) {
    std::size_t depth = 0;
    for (std::size_t i = close + 1; i-- > lo;) {
        if (s[i] == ')') {
            ++depth;
        } else if (s[i] == '(') {
            if (--depth == 0) return i;
        }
    }
    return npos;
}

bool has_top_level(std::string_view s, std::size_t lo, std::size_t hi, char needle) {
    int depth = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        if (s[i] == '(' || s[i] == '[') ++depth;
        else if (s[i] == ')' || s[i] == ']') --depth;
        else if (depth == 0 && s[i] == needle) return true;
    }
    return false;
}

bool is_non_function_word(std::string_view ident) {
    static constexpr std::string_view words[] = {
        "if",       "while",      "for",          "switch",    "return",   "sizeof",        "do",
        "else",     "case",       "__attribute__", "__attribute", "asm",   "__asm__",       "__asm",
        "typeof",   "__typeof__", "_Static_assert", "_Alignof", "_Generic", "struct",       "union",
        "enum"};
    return std::find(std::begin(words), std::end(words), ident) != std::end(words);
}

struct FunctionHead {
    std::size_t sig_begin;
    std::size_t name_begin;
    std::size_t name_end;
};

// Decides whether the text in [region, brace) is a function signature whose
// body opens at `brace`.
std::optional<FunctionHead> function_head(std::string_view masked, std::size_t region,
                                          std::size_t brace) {
    std::size_t close = last_non_space(masked, region, brace);
    if (close == npos || masked[close] != ')') return std::nullopt;
    for (int guard = 0; guard < 16; ++guard) {
        const std::size_t open = match_backward(masked, close, region);
        if (open == npos) return std::nullopt;
        const std::size_t last = last_non_space(masked, region, open);
        if (last == npos || !is_ident_char(masked[last])) return std::nullopt;
        std::size_t first = last;
        while (first > region && is_ident_char(masked[first - 1])) --first;
        const std::string_view ident = masked.substr(first, last + 1 - first);
        if (std::isdigit(static_cast<unsigned char>(ident.front()))) return std::nullopt;
        const std::size_t before = last_non_space(masked, region, first);
        if (before != npos && masked[before] == ')' && ident.starts_with("__")) {
            // Trailing annotation such as __acquires(lock); the real parameter
            // list is further left.
            close = before;
            continue;
        }
        if (is_non_function_word(ident)) return std::nullopt;
        if (has_top_level(masked, region, first, '=')) return std::nullopt;
        const std::size_t sig = first_non_space(masked, region, first);
        return FunctionHead{sig == npos ? first : sig, first, last + 1};
    }
    return std::nullopt;
}

std::size_t count_lines(std::string_view code) {
    return static_cast<std::size_t>(std::count(code.begin(), code.end(), '\n')) + 1;
}

bool istarts_with(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
    return true;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t eol = text.find('\n', start);
        if (eol == npos) eol = text.size();
        out.push_back(trim(text.substr(start, eol - start)));
        start = eol + 1;
    }
    return out;
}

// "name() - summary" / "struct name - summary" → "summary".
std::string_view strip_kernel_doc_prefix(std::string_view line) {
    std::string_view rest = line;
    for (std::string_view tag : {"struct ", "union ", "enum ", "typedef "})
        if (rest.starts_with(tag)) rest.remove_prefix(tag.size());
    std::size_t k = 0;
    while (k < rest.size() && is_ident_char(rest[k])) ++k;
    if (k == 0) return line;
    rest.remove_prefix(k);
    if (rest.starts_with("()")) rest.remove_prefix(2);
    const std::size_t lead = rest.find_first_not_of(" \t");
    if (lead == npos || rest[lead] != '-') return line;
    rest.remove_prefix(lead + 1);
    if (!rest.empty() && rest.front() != ' ' && rest.front() != '\t') return line;
    return trim(rest);
}

}  // namespace

std::string FunctionRecord::id() const { return file + ":" + std::to_string(span.begin); }

const std::vector<std::string>& default_folders() {
    static const std::vector<std::string> folders{"arch", "block", "crypto", "certs",
                                                  "fs",   "ipc",   "kernel", "lib",
                                                  "mm",   "net",   "security", "virt"};
    return folders;
}

std::string sanitize_utf8(std::string_view bytes) {
    static constexpr std::string_view replacement = "\xEF\xBF\xBD";
    std::string out;
    out.reserve(bytes.size());
    const std::size_t n = bytes.size();
    auto cont = [&](std::size_t k, unsigned lo = 0x80, unsigned hi = 0xBF) {
        if (k >= n) return false;
        const unsigned b = static_cast<unsigned char>(bytes[k]);
        return b >= lo && b <= hi;
    };
    // Each code point is checked byte by byte; a broken sequence becomes one
    // replacement character covering its longest valid prefix.
    std::size_t i = 0;
    while (i < n) {
        const unsigned b = static_cast<unsigned char>(bytes[i]);
        if (b < 0x80) {
            out.push_back(static_cast<char>(b));
            ++i;
            continue;
        }
        std::size_t len = 0;
        unsigned lo = 0x80, hi = 0xBF;
        if (b >= 0xC2 && b <= 0xDF) {
            len = 2;
        } else if (b >= 0xE0 && b <= 0xEF) {
            len = 3;
            if (b == 0xE0) lo = 0xA0;
            if (b == 0xED) hi = 0x9F;
        } else if (b >= 0xF0 && b <= 0xF4) {
            len = 4;
            if (b == 0xF0) lo = 0x90;
            if (b == 0xF4) hi = 0x8F;
        }
        std::size_t have = len ? 1 : 0;
        while (have > 0 && have < len && cont(i + have, have == 1 ? lo : 0x80, have == 1 ? hi : 0xBF)) ++have;
        if (len != 0 && have == len) {
            out.append(bytes.substr(i, len));
        } else {
            out.append(replacement);
        }
        i += std::max<std::size_t>(have, 1);
    }
    return out;
}

std::vector<SourceFile> scan_repository(const fs::path& root, const std::vector<std::string>& folders,
                                        Diagnostics* diag) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw ConfigError("repository root not found: " + root.string());
    if (folders.empty()) throw ConfigError("no folders selected");

    std::vector<std::string> paths;
    for (const auto& folder : folders) {
        const fs::path dir = root / folder;
        if (!fs::is_directory(dir, ec)) {
            report(diag, folder, "folder not present in repository");
            continue;
        }
        fs::recursive_directory_iterator it(dir, fs::directory_options::skip_permission_denied, ec);
        for (; !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
            if (it->is_regular_file(ec) && it->path().extension() == ".c")
                paths.push_back(fs::relative(it->path(), root, ec).generic_string());
        }
        if (ec) report(diag, folder, "directory walk stopped early: " + ec.message());
        ec.clear();
    }
    std::sort(paths.begin(), paths.end());
    paths.erase(std::unique(paths.begin(), paths.end()), paths.end());

    std::vector<SourceFile> files;
    files.reserve(paths.size());
    for (auto& rel : paths) {
        std::ifstream in(root / rel, std::ios::binary);
        if (!in) {
            report(diag, rel, "unreadable, skipped");
            continue;
        }
        std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        if (in.bad()) {
            report(diag, rel, "read error, skipped");
            continue;
        }
        SourceFile file;
        file.folder = rel.substr(0, rel.find('/'));
        file.path = std::move(rel);
        file.text = sanitize_utf8(bytes);
        files.push_back(std::move(file));
    }
    return files;
}

std::vector<CommentBlock> extract_comments(const SourceFile& file, Diagnostics* diag) {
    const std::string_view text = file.text;
    const LexicalScan scan = scan_lexical(text);
    std::vector<CommentBlock> out;
    for (std::size_t k = 0; k < scan.comments.size(); ++k) {
        const RawComment& raw = scan.comments[k];
        if (raw.style == CommentStyle::Block) {
            if (!raw.terminated)
                report_at(diag, file.path, raw.span.begin, "unterminated block comment runs to end of file");
            out.push_back(make_block(text, raw));
            continue;
        }
        // Merge line comments on consecutive lines with nothing but
        // whitespace between them.
        Span run = raw.span;
        while (k + 1 < scan.comments.size() && scan.comments[k + 1].style == CommentStyle::Line) {
            const Span next = scan.comments[k + 1].span;
            const std::string_view gap = text.substr(run.end, next.begin - run.end);
            if (!all_space(gap) || std::count(gap.begin(), gap.end(), '\n') != 1) break;
            run.end = next.end;
            ++k;
        }
        out.push_back(make_line_run(text, run));
    }
    return out;
}

std::string mask_non_code(std::string_view text, bool mask_preprocessor) {
    LexicalScan scan = scan_lexical(text);
    if (mask_preprocessor) mask_preprocessor_lines(scan.masked);
    return std::move(scan.masked);
}

std::vector<FunctionRecord> extract_functions(const SourceFile& file, Diagnostics* diag) {
    const std::string masked = mask_non_code(file.text);
    const std::string_view m = masked;
    std::vector<FunctionRecord> out;
    std::size_t region = 0;
    std::size_t i = 0;
    while (i < m.size()) {
        const char c = m[i];
        if (c == ';') {
            region = i + 1;
        } else if (c == '(') {
            const std::size_t close = match_forward(m, i, '(', ')');
            if (close != npos) {
                i = close + 1;
                continue;
            }
        } else if (c == '}') {
            report_at(diag, file.path, i, "unmatched '}' at file scope");
            region = i + 1;
        } else if (c == '{') {
            const auto head = function_head(m, region, i);
            const std::size_t close = match_forward(m, i, '{', '}');
            if (close == npos) {
                report_at(diag, file.path, head ? head->sig_begin : i,
                          head ? "unbalanced braces; incomplete trailing function discarded"
                               : "unbalanced braces at file scope");
                break;
            }
            if (head) {
                FunctionRecord rec;
                rec.file = file.path;
                rec.folder = file.folder;
                rec.name = file.text.substr(head->name_begin, head->name_end - head->name_begin);
                rec.span = {head->sig_begin, close + 1};
                rec.code = file.text.substr(rec.span.begin, rec.span.size());
                rec.line_count = count_lines(rec.code);
                out.push_back(std::move(rec));
            }
            i = close + 1;
            region = i;
            continue;
        }
        ++i;
    }
    return out;
}

std::vector<FunctionRecord> associate_comments(std::vector<FunctionRecord> functions,
                                               const std::vector<CommentBlock>& comments,
                                               std::string_view text) {
    std::vector<bool> used(comments.size(), false);
    for (auto& fn : functions) {
        fn.header_comment.reset();
        fn.internal_comments.clear();
        // Header: the nearest preceding comment separated only by whitespace.
        for (std::size_t k = comments.size(); k-- > 0;) {
            const CommentBlock& c = comments[k];
            if (c.span.end > fn.span.begin) continue;
            if (!used[k] && all_space(text.substr(c.span.end, fn.span.begin - c.span.end))) {
                fn.header_comment = c;
                used[k] = true;
            }
            break;
        }
        for (std::size_t k = 0; k < comments.size(); ++k) {
            const CommentBlock& c = comments[k];
            if (used[k] || c.span.begin <= fn.span.begin || c.span.end >= fn.span.end) continue;
            fn.internal_comments.push_back(c);
            used[k] = true;
        }
    }
    return functions;
}

std::string summary_line(const CommentBlock& comment) {
    for (std::string_view line : split_lines(comment.text)) {
        if (line.empty() || line.front() == '@') continue;
        const std::string_view summary = strip_kernel_doc_prefix(line);
        if (!summary.empty()) return std::string(summary);
    }
    return {};
}

SubsetLabels classify_sample(const FunctionRecord& record, const ClassifyOptions& options) {
    SubsetLabels labels;
    if (!record.header_comment) return labels;
    const CommentBlock& header = *record.header_comment;
    labels.in_sumry = !summary_line(header).empty();
    if (!labels.in_sumry) return labels;

    bool has_param = false;
    bool has_return = false;
    for (std::string_view line : split_lines(header.text)) {
        const bool is_return = istarts_with(line, "return") || istarts_with(line, "@return");
        has_return = has_return || is_return;
        has_param = has_param || (!is_return && line.starts_with('@'));
    }
    labels.in_gold = header.is_doc && has_param && has_return;
    labels.in_steps = record.internal_comments.size() >= options.steps_threshold;
    return labels;
}

std::vector<FileSample> build_file_samples(const std::vector<Sample>& samples) {
    std::vector<FileSample> out;
    std::size_t k = 0;
    while (k < samples.size()) {
        std::size_t end = k;
        bool commented = false;
        while (end < samples.size() && samples[end].record.file == samples[k].record.file) {
            commented = commented || samples[end].record.header_comment.has_value();
            ++end;
        }
        if (commented) {
            FileSample fs;
            fs.file = samples[k].record.file;
            fs.folder = samples[k].record.folder;
            for (std::size_t j = k; j < end; ++j) fs.members.push_back(samples[j].record);
            out.push_back(std::move(fs));
        }
        k = end;
    }
    return out;
}

std::vector<Sample> ingest_file(const SourceFile& file, const ClassifyOptions& options,
                                Diagnostics* diag) {
    const auto comments = extract_comments(file, diag);
    auto functions = associate_comments(extract_functions(file, diag), comments, file.text);
    std::vector<Sample> out;
    out.reserve(functions.size());
    for (auto& fn : functions) {
        SubsetLabels labels = classify_sample(fn, options);
        out.push_back({std::move(fn), std::move(labels)});
    }
    return out;
}

std::vector<Sample> ingest_files(const std::vector<SourceFile>& files, const ClassifyOptions& options,
                                 unsigned workers, Diagnostics* diag) {
    std::vector<std::vector<Sample>> per_file(files.size());
    std::vector<Diagnostics> per_diag(files.size());
    detail::parallel_for(files.size(), workers, [&](std::size_t k) {
        per_file[k] = ingest_file(files[k], options, &per_diag[k]);
    });

    std::vector<Sample> samples;
    for (std::size_t k = 0; k < files.size(); ++k) {
        if (diag) diag->append(per_diag[k]);
        std::move(per_file[k].begin(), per_file[k].end(), std::back_inserter(samples));
    }
    std::stable_sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
        return std::tie(a.record.file, a.record.span.begin) < std::tie(b.record.file, b.record.span.begin);
    });
    std::set<std::string> grouped;
    for (const auto& fs : build_file_samples(samples)) grouped.insert(fs.file);
    for (auto& s : samples)
        if (grouped.count(s.record.file)) s.labels.file_group_id = s.record.file;
    return samples;
}

}  // namespace codenet
