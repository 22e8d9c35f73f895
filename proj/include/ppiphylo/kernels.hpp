#pragma once

// Hot loops behind graph_stats. Every kernel has an OpenMP version used in
// production and a plain serial version kept as a reference for tests and
// benchmarks. The two use different algorithms where that is cheap, so
// agreement is a meaningful check.

#include <cstdint>
#include <span>
#include <vector>

#include "ppiphylo/graph.hpp"

namespace ppiphylo::kernels {

/// Result of breadth-first searches from a set of sources.
struct BfsSummary {
    /// histogram[d] = number of (source, target) pairs at hop distance d >= 1.
    std::vector<std::uint64_t> histogram;
    /// Largest finite distance seen from any source.
    std::uint32_t max_distance = 0;

    friend bool operator==(const BfsSummary&, const BfsSummary&) = default;
};

/// Sums over the symmetrized edge list (each edge in both orientations) of
/// endpoint degrees x, y: sum x, sum x^2, sum x*y. Exact integers.
struct EndpointMoments {
    std::uint64_t count = 0;
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    std::uint64_t sum_product = 0;

    friend bool operator==(const EndpointMoments&, const EndpointMoments&) = default;
};

/// Hop distances from `source`; unreachable nodes get kUnreached.
inline constexpr std::uint32_t kUnreached = ~std::uint32_t{0};
void bfs_distances(const Graph& g, NodeIndex source, std::vector<std::uint32_t>& dist,
                   std::vector<NodeIndex>& queue);

namespace serial {

std::vector<std::uint64_t> triangles_per_node(const Graph& g);
BfsSummary bfs_from_sources(const Graph& g, std::span<const NodeIndex> sources);
std::vector<std::uint32_t> core_numbers(const Graph& g);
EndpointMoments endpoint_moments(const Graph& g);

}  // namespace serial

namespace parallel {

std::vector<std::uint64_t> triangles_per_node(const Graph& g);
BfsSummary bfs_from_sources(const Graph& g, std::span<const NodeIndex> sources);
std::vector<std::uint32_t> core_numbers(const Graph& g);
EndpointMoments endpoint_moments(const Graph& g);

}  // namespace parallel

}  // namespace ppiphylo::kernels
