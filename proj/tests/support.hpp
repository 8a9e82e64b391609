#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "codenet/knowledge_base.hpp"
#include "codenet/structure_net.hpp"
#include "oracles.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return CODENET_TEST_DATA_DIR; }
inline std::filesystem::path fixture_repo() { return data_dir() / "fixtures" / "repo"; }

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << text;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("codenet-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// A network whose nodes are all interpretive placeholders, for metric
/// fixtures that only care about shape.
inline codenet::StructureNetwork shape(std::size_t n, const oracle::EdgeList& edges) {
    std::vector<codenet::NetNode> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i].id = static_cast<codenet::NodeId>(i);
        nodes[i].role = codenet::Construct::CompoundStatement;
    }
    std::vector<codenet::Edge> es(edges.begin(), edges.end());
    return codenet::StructureNetwork(std::move(nodes), std::move(es), 0);
}

inline oracle::EdgeList star(std::size_t n) {
    oracle::EdgeList e;
    for (std::uint32_t v = 1; v < n; ++v) e.emplace_back(0, v);
    return e;
}

inline oracle::EdgeList path(std::size_t n) {
    oracle::EdgeList e;
    for (std::uint32_t v = 1; v < n; ++v) e.emplace_back(v - 1, v);
    return e;
}

// Random corpus over a small vocabulary so names recur across functions.
inline std::vector<codenet::KbSample> random_kb_corpus(std::mt19937_64& rng, std::size_t functions) {
    static const char* vocab[] = {"msg", "sem", "shm", "ns", "q", "err", "len", "buf", "kfree", "kmalloc",
                                  "lock", "unlock", "idx", "ptr", "next", "prev", "list", "ops", "id", "rc"};
    static const char* summaries[] = {"", "", "free it", "take the lock", "drop", "look up an id", "copy out"};
    std::uniform_int_distribution<std::size_t> word(0, std::size(vocab) - 1);
    std::uniform_int_distribution<std::size_t> count(0, 12);
    std::uniform_int_distribution<std::size_t> summary(0, std::size(summaries) - 1);
    std::vector<codenet::KbSample> out;
    for (std::size_t f = 0; f < functions; ++f) {
        codenet::KbSample s;
        s.function_name = vocab[word(rng)];
        s.summary = summaries[summary(rng)];
        s.tokens.push_back(codenet::Token{codenet::TokenKind::Name, s.function_name, 0});
        const std::size_t n = count(rng);
        for (std::size_t k = 0; k < n; ++k) {
            s.tokens.push_back(codenet::Token{codenet::TokenKind::Punctuation, ",", 0});
            s.tokens.push_back(codenet::Token{codenet::TokenKind::Name, vocab[word(rng)], 0});
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace testing
