#include "codenet/complexity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "codenet/diagnostics.hpp"

namespace codenet {

DistanceMatrix::DistanceMatrix(std::size_t n)
    : n_(n), stride_(kernels::padded_stride(n)), data_(n * kernels::padded_stride(n), 0) {}

bool operator==(const DistanceMatrix& a, const DistanceMatrix& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t j = 0; j < a.n_; ++j)
            if (a.at(i, j) != b.at(i, j)) return false;
    return true;
}

namespace {

void require_defined(std::size_t n, const char* metric) {
    if (n < 2) throw UndefinedMetricError(std::string(metric) + " is undefined for fewer than 2 nodes");
}

std::size_t count_components(std::size_t n, std::span<const Edge> edges) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::size_t components = n;
    for (const auto& [a, b] : edges) {
        const std::size_t ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[ra] = rb;
            --components;
        }
    }
    return components;
}

}  // namespace

double degree_centrality(const StructureNetwork& net, NodeId node) {
    require_defined(net.size(), "degree centrality");
    return static_cast<double>(net.degree(node)) / static_cast<double>(net.size() - 1);
}

MaxCentrality max_degree_centrality(const StructureNetwork& net) {
    require_defined(net.size(), "degree centrality");
    NodeId best = 0;
    for (NodeId v = 1; v < net.size(); ++v)
        if (net.degree(v) > net.degree(best)) best = v;
    return {degree_centrality(net, best), best};
}

DistanceMatrix all_pairs_shortest_paths(std::size_t n, std::span<const Edge> edges, kernels::Isa isa) {
    DistanceMatrix dist(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist.at(i, j) = i == j ? 0 : kernels::kUnreachable;
    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n) throw std::invalid_argument("edge endpoint out of range");
        if (a == b) continue;
        dist.at(a, b) = 1;
        dist.at(b, a) = 1;
    }
    kernels::floyd_warshall(dist.raw(), n, dist.stride(), isa);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (dist.at(i, j) >= kernels::kUnreachable) throw DisconnectedGraphError(count_components(n, edges));
    return dist;
}

DistanceMatrix all_pairs_shortest_paths(const StructureNetwork& net, kernels::Isa isa) {
    return all_pairs_shortest_paths(net.size(), net.edges(), isa);
}

DistanceMatrix all_pairs_shortest_paths(const StructureNetwork& net) {
    return all_pairs_shortest_paths(net, kernels::active_isa());
}

double mean_distance(const DistanceMatrix& dist, kernels::Isa isa) {
    const std::size_t n = dist.size();
    require_defined(n, "mean distance");
    // Diagonal is zero, so the full sum equals the sum over i != j.
    const std::int64_t total = kernels::matrix_sum(dist.raw(), n, dist.stride(), isa);
    return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double mean_distance(const DistanceMatrix& dist) { return mean_distance(dist, kernels::active_isa()); }

double mean_distance_streaming(const StructureNetwork& net) {
    const std::size_t n = net.size();
    require_defined(n, "mean distance");
    std::vector<std::int32_t> depth(n);
    std::vector<NodeId> queue(n);
    std::int64_t total = 0;
    for (NodeId source = 0; source < n; ++source) {
        std::fill(depth.begin(), depth.end(), -1);
        depth[source] = 0;
        std::size_t head = 0, tail = 0;
        queue[tail++] = source;
        while (head < tail) {
            const NodeId v = queue[head++];
            total += depth[v];
            for (NodeId w : net.neighbors(v))
                if (depth[w] < 0) {
                    depth[w] = depth[v] + 1;
                    queue[tail++] = w;
                }
        }
        if (tail != n) throw DisconnectedGraphError(count_components(n, net.edges()));
    }
    return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

ComplexityReport analyze(const StructureNetwork& net) {
    const MaxCentrality dc = max_degree_centrality(net);
    ComplexityReport report;
    report.n = net.size();
    report.max_dc = dc.value;
    report.argmax_node = dc.node;
    report.mean_distance = net.size() <= kFloydNodeLimit ? mean_distance(all_pairs_shortest_paths(net))
                                                         : mean_distance_streaming(net);
    return report;
}

}  // namespace codenet
