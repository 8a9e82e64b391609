#pragma once

// Corpus summaries shaped like the dataset tables: per-folder and overall
// subset counts with mean function length, and per-folder token, node and
// complexity means.

#include <cstddef>
#include <string>
#include <vector>

#include "codenet/corpus.hpp"
#include "codenet/records.hpp"

namespace codenet {

struct SubsetSummary {
    std::size_t count = 0;
    double avg_length = 0.0;
};

struct DatasetRow {
    std::string folder;  // "Overall" for the aggregate row
    SubsetSummary overall, files, gold, steps, sumry;
};

struct TokenRow {
    std::string folder;
    std::size_t samples = 0;
    double tokens = 0.0;
    double keywords = 0.0;
    double names = 0.0;
    double punctuation = 0.0;
    double operators = 0.0;
    double nodes = 0.0;
    double max_dc = 0.0;
    double mean_distance = 0.0;
};

/// Overall row first, then one row per folder (known folders in their usual
/// order, any others alphabetically).
std::vector<DatasetRow> dataset_table(const std::vector<Sample>& samples);
std::vector<TokenRow> token_table(const std::vector<MetricsRecord>& metrics);

std::string render_dataset_table(const std::vector<DatasetRow>& rows);
std::string render_token_table(const std::vector<TokenRow>& rows);

/// One JSON object per row.
std::string dataset_table_records(const std::vector<DatasetRow>& rows);
std::string token_table_records(const std::vector<TokenRow>& rows);

}  // namespace codenet
