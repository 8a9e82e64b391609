#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace codenet {

/// Collects non-fatal messages produced while scanning and parsing. Passing a
/// null sink to any stage silently drops them.
class Diagnostics {
public:
    void report(std::string_view where, std::string_view message);
    void report_at(std::string_view where, std::size_t offset, std::string_view message);

    const std::vector<std::string>& messages() const noexcept { return messages_; }
    bool empty() const noexcept { return messages_.empty(); }
    void append(const Diagnostics& other);

private:
    std::vector<std::string> messages_;
};

inline void report(Diagnostics* sink, std::string_view where, std::string_view message) {
    if (sink) sink->report(where, message);
}

inline void report_at(Diagnostics* sink, std::string_view where, std::size_t offset,
                      std::string_view message) {
    if (sink) sink->report_at(where, offset, message);
}

// Error hierarchy. Each one maps onto a distinct CLI exit code.

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingArtifactError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AbsentNameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t offset, const std::string& what)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

/// A metric was requested on a network too small for it to be defined.
struct UndefinedMetricError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DisconnectedGraphError : std::runtime_error {
    explicit DisconnectedGraphError(std::size_t components)
        : std::runtime_error("network is disconnected: " + std::to_string(components) +
                             " components"),
          components(components) {}
    std::size_t components;
};

}  // namespace codenet
