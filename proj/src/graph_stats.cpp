#include "ppiphylo/graph_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "ppiphylo/detail/random.hpp"
#include "ppiphylo/error.hpp"
#include "ppiphylo/kernels.hpp"

namespace ppiphylo {

namespace {

std::vector<std::uint64_t> triangles(const Graph& g, Backend b) {
    return b == Backend::parallel ? kernels::parallel::triangles_per_node(g)
                                  : kernels::serial::triangles_per_node(g);
}

kernels::BfsSummary bfs(const Graph& g, std::span<const NodeIndex> sources, Backend b) {
    return b == Backend::parallel ? kernels::parallel::bfs_from_sources(g, sources)
                                  : kernels::serial::bfs_from_sources(g, sources);
}

std::uint64_t choose2(std::uint64_t d) { return d < 2 ? 0 : d * (d - 1) / 2; }
std::uint64_t choose3(std::uint64_t d) { return d < 3 ? 0 : d * (d - 1) / 2 * (d - 2) / 3; }

double global_from_triangles(const Graph& g, std::span<const std::uint64_t> tri) {
    std::uint64_t closed = 0, triads = 0;
    for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
        closed += tri[v];
        triads += choose2(g.degree(v));
    }
    return triads == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triads);
}

double local_from_triangles(const Graph& g, std::span<const std::uint64_t> tri) {
    double sum = 0;
    for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
        const auto pairs = choose2(g.degree(v));
        if (pairs > 0) sum += static_cast<double>(tri[v]) / static_cast<double>(pairs);
    }
    return sum / static_cast<double>(g.num_nodes());
}

// Exact diameter by eccentricity bounds (Takes & Kosters): a node whose
// upper bound cannot beat the best lower bound is never searched from.
std::uint32_t bounding_diameter(const Graph& g) {
    const NodeIndex n = g.num_nodes();
    if (n <= 1) return 0;
    constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> lower(n, 0), upper(n, kInf);
    std::vector<std::uint8_t> candidate(n, 1);
    std::vector<std::uint32_t> dist;
    std::vector<NodeIndex> queue;
    std::uint32_t best_lower = 0, best_upper = kInf;
    NodeIndex remaining = n;
    bool pick_upper = true;

    while (remaining > 0 && best_lower < best_upper) {
        NodeIndex v = n;
        for (NodeIndex w = 0; w < n; ++w) {
            if (!candidate[w]) continue;
            if (v == n) {
                v = w;
                continue;
            }
            const bool better = pick_upper
                ? (upper[w] > upper[v] || (upper[w] == upper[v] && g.degree(w) > g.degree(v)))
                : (lower[w] < lower[v] || (lower[w] == lower[v] && g.degree(w) > g.degree(v)));
            if (better) v = w;
        }
        pick_upper = !pick_upper;

        kernels::bfs_distances(g, v, dist, queue);
        const std::uint32_t ecc = dist[queue.back()];
        best_lower = std::max(best_lower, ecc);
        best_upper = std::min(best_upper, 2 * ecc);

        std::uint32_t max_upper = 0;
        for (NodeIndex w = 0; w < n; ++w) {
            const auto d = dist[w];
            lower[w] = std::max({lower[w], d, ecc - d});
            upper[w] = std::min(upper[w], ecc + d);
            max_upper = std::max(max_upper, upper[w]);
        }
        best_upper = std::min(best_upper, max_upper);
        for (NodeIndex w = 0; w < n; ++w) {
            if (candidate[w] && upper[w] <= best_lower) {
                candidate[w] = 0;
                --remaining;
            }
        }
    }
    return best_lower;
}

struct DistanceSummary {
    std::uint32_t diameter = 0;
    double effective = 0;
};

DistanceSummary distances_of_component(const Graph& lcc, const StatConfig& cfg) {
    DistanceSummary out;
    const NodeIndex n = lcc.num_nodes();
    if (n <= 1) return out;
    if (n <= cfg.exact_threshold) {
        std::vector<NodeIndex> all(n);
        std::iota(all.begin(), all.end(), NodeIndex{0});
        auto summary = bfs(lcc, all, cfg.backend);
        // Each unordered pair was counted from both ends.
        for (auto& c : summary.histogram) c /= 2;
        out.diameter = summary.max_distance;
        out.effective = histogram_quantile(summary.histogram, cfg.quantile);
        return out;
    }
    out.diameter = bounding_diameter(lcc);
    std::vector<NodeIndex> pool(n);
    std::iota(pool.begin(), pool.end(), NodeIndex{0});
    detail::Rng rng(cfg.seed);
    const auto take = std::min<std::size_t>(std::max<std::uint32_t>(cfg.num_sources, 1), n);
    for (std::size_t i = 0; i < take; ++i) {
        const auto j = i + static_cast<std::size_t>(detail::uniform_below(rng, n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(take);
    std::sort(pool.begin(), pool.end());
    const auto summary = bfs(lcc, pool, cfg.backend);
    out.effective = histogram_quantile(summary.histogram, cfg.quantile);
    return out;
}

void check_nonempty(const Graph& g) {
    if (g.empty()) throw DomainError("graph has no nodes");
}

}  // namespace

std::array<std::optional<double>, kNumStats> StatVector::values() const {
    auto d = [](std::uint64_t x) { return std::optional<double>(static_cast<double>(x)); };
    return {d(nodes),           d(edges),          average_degree, d(maximum_degree),
            density,            d(num_components), max_component_fraction,
            d(full_diameter),   effective_diameter, global_clustering,
            clustering_coefficient, star_density_2, star_density_3,
            gini_degree,        edge_entropy,      assortative_mixing,
            d(kcore_max_k),     d(kcore_nodes),    d(kcore_edges)};
}

StatVector StatVector::from_values(const std::array<std::optional<double>, kNumStats>& v) {
    auto real = [&](std::size_t i) {
        if (!v[i]) throw DataError("statistic '" + std::string(kStatNames[i]) + "' is missing");
        return *v[i];
    };
    auto count = [&](std::size_t i) {
        const double x = real(i);
        if (x < 0 || !std::isfinite(x)) throw DataError("statistic '" + std::string(kStatNames[i]) + "' must be a count");
        return static_cast<std::uint64_t>(std::llround(x));
    };
    StatVector s;
    s.nodes = count(0);
    s.edges = count(1);
    s.average_degree = real(2);
    s.maximum_degree = count(3);
    s.density = real(4);
    s.num_components = count(5);
    s.max_component_fraction = real(6);
    s.full_diameter = count(7);
    s.effective_diameter = real(8);
    s.global_clustering = real(9);
    s.clustering_coefficient = real(10);
    s.star_density_2 = real(11);
    s.star_density_3 = real(12);
    s.gini_degree = real(13);
    s.edge_entropy = real(14);
    s.assortative_mixing = v[15];
    s.kcore_max_k = count(16);
    s.kcore_nodes = count(17);
    s.kcore_edges = count(18);
    return s;
}

DegreeDistribution DegreeDistribution::of(const Graph& g) {
    DegreeDistribution d;
    d.degrees.reserve(g.num_nodes());
    for (NodeIndex v = 0; v < g.num_nodes(); ++v) d.degrees.push_back(g.degree(v));
    return d;
}

Components connected_components(const Graph& g) {
    check_nonempty(g);
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    Components c;
    c.labels.assign(g.num_nodes(), kNone);
    std::vector<NodeIndex> queue;
    std::uint32_t best_label = 0;
    std::size_t best_size = 0;
    for (NodeIndex s = 0; s < g.num_nodes(); ++s) {
        if (c.labels[s] != kNone) continue;
        const auto label = c.count++;
        queue.assign(1, s);
        c.labels[s] = label;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (NodeIndex v : g.neighbors(queue[head]))
                if (c.labels[v] == kNone) {
                    c.labels[v] = label;
                    queue.push_back(v);
                }
        // Strict '>' keeps the earliest (smallest-index) component on ties.
        if (queue.size() > best_size) {
            best_size = queue.size();
            best_label = label;
        }
    }
    for (NodeIndex v = 0; v < g.num_nodes(); ++v)
        if (c.labels[v] == best_label) c.largest_nodes.push_back(v);
    c.max_fraction = static_cast<double>(best_size) / static_cast<double>(g.num_nodes());
    c.largest = c.largest_nodes.size() == g.num_nodes() ? g : g.induced_subgraph(c.largest_nodes);
    return c;
}

double histogram_quantile(std::span<const std::uint64_t> histogram, double q) {
    std::uint64_t total = 0;
    for (auto c : histogram) total += c;
    if (total == 0) return 0.0;
    const double h = static_cast<double>(total - 1) * q;
    const auto lo_rank = static_cast<std::uint64_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo_rank);
    // Value of the element at 0-based rank r in the sorted multiset.
    auto value_at = [&](std::uint64_t r) {
        std::uint64_t seen = 0;
        for (std::size_t d = 0; d < histogram.size(); ++d) {
            seen += histogram[d];
            if (r < seen) return static_cast<double>(d);
        }
        return static_cast<double>(histogram.size() - 1);
    };
    const double lo = value_at(lo_rank);
    if (frac == 0.0 || lo_rank + 1 >= total) return lo;
    const double hi = value_at(lo_rank + 1);
    return lo + frac * (hi - lo);
}

std::uint32_t full_diameter(const Graph& g, const StatConfig& cfg) {
    const auto comps = connected_components(g);
    return distances_of_component(comps.largest, cfg).diameter;
}

double effective_diameter(const Graph& g, const StatConfig& cfg) {
    if (!(cfg.quantile > 0.0 && cfg.quantile <= 1.0)) throw DomainError("quantile must lie in (0, 1]");
    const auto comps = connected_components(g);
    return distances_of_component(comps.largest, cfg).effective;
}

double global_clustering(const Graph& g, Backend backend) {
    check_nonempty(g);
    const auto tri = triangles(g, backend);
    return global_from_triangles(g, tri);
}

double mean_local_clustering(const Graph& g, Backend backend) {
    check_nonempty(g);
    const auto tri = triangles(g, backend);
    return local_from_triangles(g, tri);
}

double star_density(const Graph& g, unsigned k) {
    if (k != 2 && k != 3) throw DomainError("star density is defined for k = 2 or 3");
    const std::uint64_t n = g.num_nodes();
    if (n <= k) {
        warn("star density with k = " + std::to_string(k) + " needs more than " + std::to_string(k) +
             " nodes; reporting 0");
        return 0.0;
    }
    auto choose = [k](std::uint64_t d) { return k == 2 ? choose2(d) : choose3(d); };
    std::uint64_t present = 0;
    for (NodeIndex v = 0; v < n; ++v) present += choose(g.degree(v));
    const double possible = static_cast<double>(n) * static_cast<double>(choose(n - 1));
    return static_cast<double>(present) / possible;
}

double degree_gini(const DegreeDistribution& d) {
    if (d.degrees.empty()) throw DomainError("empty degree distribution");
    std::vector<std::uint32_t> sorted = d.degrees;
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<std::int64_t>(sorted.size());
    std::int64_t total = 0;
    std::int64_t weighted = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        total += sorted[i];
        weighted += (2 * i - n + 1) * static_cast<std::int64_t>(sorted[i]);
    }
    if (total == 0) return 0.0;
    // sum_i sum_j |d_i - d_j| = 2 * weighted; divided by 2 n^2 mean = 2 n total.
    return static_cast<double>(weighted) / (static_cast<double>(n) * static_cast<double>(total));
}

double degree_entropy(const DegreeDistribution& d) {
    if (d.degrees.empty()) throw DomainError("empty degree distribution");
    std::map<std::uint32_t, std::uint64_t> histogram;
    for (auto x : d.degrees) ++histogram[x];
    const double n = static_cast<double>(d.degrees.size());
    double h = 0;
    for (const auto& [degree, count] : histogram) {
        const double p = static_cast<double>(count) / n;
        h -= p * std::log2(p);
    }
    return h == 0.0 ? 0.0 : h;
}

std::optional<double> assortativity(const Graph& g, Backend backend) {
    const auto m = backend == Backend::parallel ? kernels::parallel::endpoint_moments(g)
                                                : kernels::serial::endpoint_moments(g);
    if (m.count == 0) return std::nullopt;
    using Wide = __int128;
    const Wide c = m.count;
    const Wide s = m.sum;
    const Wide variance = c * static_cast<Wide>(m.sum_sq) - s * s;
    if (variance == 0) return std::nullopt;
    const Wide covariance = c * static_cast<Wide>(m.sum_product) - s * s;
    return static_cast<double>(static_cast<long double>(covariance) / static_cast<long double>(variance));
}

KCoreSummary max_kcore(const Graph& g, Backend backend) {
    check_nonempty(g);
    const auto core = backend == Backend::parallel ? kernels::parallel::core_numbers(g)
                                                   : kernels::serial::core_numbers(g);
    KCoreSummary out;
    out.k = *std::max_element(core.begin(), core.end());
    for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
        if (core[v] != out.k) continue;
        ++out.nodes;
        for (NodeIndex u : g.neighbors(v))
            if (u > v && core[u] == out.k) ++out.edges;
    }
    return out;
}

StatVector compute_stats(const Graph& g, const StatConfig& cfg) {
    check_nonempty(g);
    if (!(cfg.quantile > 0.0 && cfg.quantile <= 1.0)) throw DomainError("quantile must lie in (0, 1]");
    StatVector s;
    const double n = g.num_nodes();
    s.nodes = g.num_nodes();
    s.edges = g.num_edges();
    s.average_degree = 2.0 * static_cast<double>(s.edges) / n;
    for (NodeIndex v = 0; v < g.num_nodes(); ++v) s.maximum_degree = std::max<std::uint64_t>(s.maximum_degree, g.degree(v));
    s.density = s.nodes < 2 ? 0.0 : 2.0 * static_cast<double>(s.edges) / (n * (n - 1.0));

    const auto comps = connected_components(g);
    s.num_components = comps.count;
    s.max_component_fraction = comps.max_fraction;
    const auto dist = distances_of_component(comps.largest, cfg);
    s.full_diameter = dist.diameter;
    s.effective_diameter = dist.effective;

    const auto tri = triangles(g, cfg.backend);
    s.global_clustering = global_from_triangles(g, tri);
    s.clustering_coefficient = local_from_triangles(g, tri);
    s.star_density_2 = star_density(g, 2);
    s.star_density_3 = star_density(g, 3);

    const auto degrees = DegreeDistribution::of(g);
    s.gini_degree = degree_gini(degrees);
    s.edge_entropy = degree_entropy(degrees);
    s.assortative_mixing = assortativity(g, cfg.backend);

    const auto core = max_kcore(g, cfg.backend);
    s.kcore_max_k = core.k;
    s.kcore_nodes = core.nodes;
    s.kcore_edges = core.edges;
    return s;
}

}  // namespace ppiphylo
