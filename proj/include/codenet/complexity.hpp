#pragma once

// Density and scale metrics for structure networks: degree centrality
// k_i / (n - 1) and mean shortest-path distance over ordered node pairs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "codenet/kernels.hpp"
#include "codenet/structure_net.hpp"

namespace codenet {

/// Symmetric all-pairs distance matrix in edge counts, stored row-major with
/// a padded stride.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    std::size_t stride() const noexcept { return stride_; }
    std::int32_t at(std::size_t i, std::size_t j) const { return data_[i * stride_ + j]; }
    std::int32_t& at(std::size_t i, std::size_t j) { return data_[i * stride_ + j]; }

    std::span<std::int32_t> raw() noexcept { return data_; }
    std::span<const std::int32_t> raw() const noexcept { return data_; }

    friend bool operator==(const DistanceMatrix& a, const DistanceMatrix& b);

private:
    std::size_t n_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::int32_t> data_;
};

struct ComplexityReport {
    std::size_t n = 0;
    double max_dc = 0.0;
    double mean_distance = 0.0;
    NodeId argmax_node = 0;
};

struct MaxCentrality {
    double value = 0.0;
    NodeId node = 0;
};

/// degree(node) / (n - 1). Throws UndefinedMetricError when n < 2.
double degree_centrality(const StructureNetwork& net, NodeId node);

/// Largest degree centrality; ties go to the smallest node id.
MaxCentrality max_degree_centrality(const StructureNetwork& net);

/// Floyd–Warshall over the unweighted network using the given kernel
/// variant. Throws DisconnectedGraphError if some pair is unreachable.
DistanceMatrix all_pairs_shortest_paths(const StructureNetwork& net, kernels::Isa isa);
DistanceMatrix all_pairs_shortest_paths(const StructureNetwork& net);

/// Same, for an arbitrary edge list over n nodes (no tree assumption).
DistanceMatrix all_pairs_shortest_paths(std::size_t n, std::span<const Edge> edges, kernels::Isa isa);

/// Sum over i != j of d(i, j), divided by n (n - 1).
double mean_distance(const DistanceMatrix& dist, kernels::Isa isa);
double mean_distance(const DistanceMatrix& dist);

/// Mean distance from one breadth-first sweep per source, without storing
/// the matrix. Throws DisconnectedGraphError if some pair is unreachable.
double mean_distance_streaming(const StructureNetwork& net);

/// Networks above this size skip the dense matrix in analyze(); the cubic
/// pass and its n * n storage stop being practical there.
inline constexpr std::size_t kFloydNodeLimit = 2048;

ComplexityReport analyze(const StructureNetwork& net);

}  // namespace codenet
