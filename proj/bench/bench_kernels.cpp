// Serial reference vs OpenMP kernels on a skewed random graph of PPI-like
// size. Run with OMP_NUM_THREADS to vary the thread count.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "ppiphylo/graph_stats.hpp"
#include "ppiphylo/kernels.hpp"

using namespace ppiphylo;

namespace {

// Endpoints drawn with weight ~ 1/sqrt(rank) give a heavy-tailed degree
// distribution, closer to interaction networks than G(n, p).
Graph skewed_graph(NodeIndex n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> w(n);
    for (NodeIndex i = 0; i < n; ++i) w[i] = 1.0 / std::sqrt(1.0 + i);
    std::discrete_distribution<NodeIndex> pick(w.begin(), w.end());
    std::vector<Edge> edges;
    edges.reserve(m);
    while (edges.size() < m) {
        const NodeIndex a = pick(rng), b = pick(rng);
        if (a != b) edges.push_back({a, b});
    }
    return Graph::from_edges(n, edges);
}

const Graph& graph() {
    static const Graph g = skewed_graph(8000, 60000, 1);
    return g;
}

std::vector<NodeIndex> sources() {
    std::vector<NodeIndex> s;
    for (NodeIndex i = 0; i < 256; ++i) s.push_back(i * 31 % graph().num_nodes());
    return s;
}

void BM_TrianglesSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::triangles_per_node(graph()));
}
void BM_TrianglesParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::parallel::triangles_per_node(graph()));
}
void BM_BfsSerial(benchmark::State& st) {
    const auto s = sources();
    for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::bfs_from_sources(graph(), s));
}
void BM_BfsParallel(benchmark::State& st) {
    const auto s = sources();
    for (auto _ : st) benchmark::DoNotOptimize(kernels::parallel::bfs_from_sources(graph(), s));
}
void BM_CoresSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::core_numbers(graph()));
}
void BM_CoresParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::parallel::core_numbers(graph()));
}
void BM_MomentsSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::endpoint_moments(graph()));
}
void BM_MomentsParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::parallel::endpoint_moments(graph()));
}

void BM_ComputeStats(benchmark::State& st) {
    StatConfig cfg;
    cfg.backend = st.range(0) ? Backend::parallel : Backend::serial;
    cfg.exact_threshold = 0;
    for (auto _ : st) benchmark::DoNotOptimize(compute_stats(graph(), cfg));
}

}  // namespace

BENCHMARK(BM_TrianglesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrianglesParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BfsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BfsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoresSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoresParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeStats)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
