#include "codenet/diagnostics.hpp"

namespace codenet {

void Diagnostics::report(std::string_view where, std::string_view message) {
    std::string line;
    line.reserve(where.size() + message.size() + 2);
    line.append(where).append(": ").append(message);
    messages_.push_back(std::move(line));
}

void Diagnostics::report_at(std::string_view where, std::size_t offset, std::string_view message) {
    std::string line;
    line.append(where).append(":").append(std::to_string(offset)).append(": ").append(message);
    messages_.push_back(std::move(line));
}

void Diagnostics::append(const Diagnostics& other) {
    messages_.insert(messages_.end(), other.messages_.begin(), other.messages_.end());
}

}  // namespace codenet
