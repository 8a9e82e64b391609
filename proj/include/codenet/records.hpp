#pragma once

// On-disk record formats. Every artifact is UTF-8 with one JSON object per
// line and a fixed field order, so identical inputs give identical bytes.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "codenet/complexity.hpp"
#include "codenet/corpus.hpp"
#include "codenet/lexer.hpp"
#include "codenet/structure_net.hpp"

namespace codenet {

/// Per-sample analysis result as written to the metrics file.
struct MetricsRecord {
    std::string id;
    std::string folder;
    std::string name;
    std::size_t n = 0;
    double max_dc = 0.0;         // rounded to 6 decimals on output
    double mean_distance = 0.0;  // rounded to 6 decimals on output
    TokenCounts tokens;

    friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

double round6(double value) noexcept;

std::string sample_to_line(const Sample& sample);
Sample sample_from_line(const std::string& line);

std::string file_sample_to_line(const FileSample& fs);

std::string network_to_line(const std::string& id, const StructureNetwork& net);

std::string metrics_to_line(const MetricsRecord& m);
MetricsRecord metrics_from_line(const std::string& line);

std::vector<Sample> read_samples(std::istream& in);
std::vector<MetricsRecord> read_metrics(std::istream& in);

}  // namespace codenet
