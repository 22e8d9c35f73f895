#include <doctest.h>

#include <cmath>
#include <sstream>

#include "capture.hpp"
#include "oracles.hpp"
#include "ppiphylo/error.hpp"
#include "ppiphylo/graph_stats.hpp"
#include "ppiphylo/stats_io.hpp"
#include "synthetic.hpp"

using namespace ppiphylo;
using synth::graph;

namespace {

using Frozen = std::array<std::optional<double>, kNumStats>;
constexpr std::optional<double> U = std::nullopt;

// Values computed once by the brute-force oracle and frozen here.
const std::vector<std::tuple<const char*, Graph, Frozen>>& known() {
    static const std::vector<std::tuple<const char*, Graph, Frozen>> table = {
        {"K3", graph(3, {{0, 1}, {1, 2}, {0, 2}}),
         {3, 3, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, U, 2, 3, 3}},
        {"K4-e", graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}),
         {4, 5, 2.5, 3, 5.0 / 6, 1, 1, 2, 1.5, 0.75, 5.0 / 6, 2.0 / 3, 0.5, 0.1, 1, -2.0 / 3, 2, 4, 5}},
        {"P4", graph(4, {{0, 1}, {1, 2}, {2, 3}}),
         {4, 3, 1.5, 2, 0.5, 1, 1, 3, 2.5, 0, 0, 1.0 / 6, 0, 1.0 / 6, 1, -0.5, 1, 4, 3}},
        {"K1,3", graph(4, {{0, 1}, {0, 2}, {0, 3}}),
         {4, 3, 1.5, 3, 0.5, 1, 1, 2, 2, 0, 0, 0.25, 0.25, 0.25, 0.81127812445913283, -1, 1, 4, 3}},
        {"K5", graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}),
         {5, 10, 4, 4, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, U, 4, 5, 10}},
        {"triangle+pendant", graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}}),
         {4, 4, 2, 3, 2.0 / 3, 1, 1, 2, 2, 0.6, 7.0 / 12, 5.0 / 12, 0.25, 0.1875, 1.5, -5.0 / 7, 2, 3, 3}},
    };
    return table;
}

void check_equal(const StatVector& got, const Frozen& want, double tol = 1e-12) {
    const auto v = got.values();
    for (std::size_t i = 0; i < kNumStats; ++i) {
        CAPTURE(kStatNames[i]);
        REQUIRE(v[i].has_value() == want[i].has_value());
        if (v[i]) CHECK(std::abs(*v[i] - *want[i]) <= tol);
    }
}

void check_equal(const StatVector& got, const StatVector& want, double tol = 1e-9) { check_equal(got, want.values(), tol); }

}  // namespace

TEST_CASE("oracle reproduces the frozen known-value table") {
    for (const auto& [name, g, want] : known()) {
        CAPTURE(name);
        check_equal(oracle::stats(g), want);
    }
}

TEST_CASE("compute_stats matches the known-value table on both backends") {
    for (auto backend : {Backend::serial, Backend::parallel}) {
        StatConfig cfg;
        cfg.backend = backend;
        for (const auto& [name, g, want] : known()) {
            CAPTURE(name);
            check_equal(compute_stats(g, cfg), want);
        }
    }
}

TEST_CASE("compute_stats agrees with the oracle on random small graphs") {
    std::uint64_t seed = 7;
    for (double p : {0.2, 0.5, 0.8})
        for (std::uint32_t n = 1; n <= 12; ++n) {
            const auto g = synth::random_graph(n, p, seed++);
            CAPTURE(n);
            CAPTURE(p);
            check_equal(compute_stats(g), oracle::stats(g));
        }
}

TEST_CASE("connected components") {
    SUBCASE("P3 and K2") {
        const auto c = connected_components(graph(5, {{0, 1}, {1, 2}, {3, 4}}));
        CHECK(c.count == 2);
        CHECK(c.max_fraction == doctest::Approx(0.6));
        CHECK(c.largest.num_nodes() == 3);
        CHECK(c.largest.num_edges() == 2);
    }
    SUBCASE("connected graph is its own largest component") {
        const auto g = graph(4, {{0, 1}, {1, 2}, {2, 3}});
        const auto c = connected_components(g);
        CHECK(c.count == 1);
        CHECK(c.max_fraction == 1.0);
        CHECK(c.largest.edge_list() == g.edge_list());
    }
    SUBCASE("isolated nodes") {
        const auto c = connected_components(graph(5, {}));
        CHECK(c.count == 5);
        CHECK(c.max_fraction == doctest::Approx(0.2));
        CHECK(c.largest_nodes == std::vector<NodeIndex>{0});
    }
    SUBCASE("equal sizes keep the component with the smallest node") {
        const auto c = connected_components(graph(4, {{1, 3}, {0, 2}}));
        CHECK(c.largest_nodes == std::vector<NodeIndex>{0, 2});
    }
}

TEST_CASE("diameters are measured on the largest component") {
    CHECK(full_diameter(graph(4, {{0, 1}, {1, 2}, {2, 3}})) == 3);
    CHECK(full_diameter(graph(5, {{0, 1}, {1, 2}, {3, 4}})) == 2);
    CHECK(full_diameter(graph(1, {})) == 0);
    CHECK(effective_diameter(graph(2, {{0, 1}})) == 1.0);
    CHECK(effective_diameter(graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})) == 1.0);
}

TEST_CASE("bounding diameter matches all-source BFS above the threshold") {
    StatConfig exact;
    StatConfig bounded;
    bounded.exact_threshold = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto g = synth::random_graph(60, 0.04 + 0.002 * static_cast<double>(seed), seed);
        CAPTURE(seed);
        CHECK(full_diameter(g, exact) == full_diameter(g, bounded));
    }
}

TEST_CASE("sampled effective diameter on P10") {
    std::vector<Edge> e;
    for (NodeIndex i = 0; i + 1 < 10; ++i) e.emplace_back(i, i + 1);
    const auto p10 = Graph::from_edges(10, e);
    const double exact = effective_diameter(p10);
    CHECK(exact == doctest::Approx(oracle::stats(p10).effective_diameter));
    StatConfig cfg;
    cfg.exact_threshold = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        cfg.seed = seed;
        const double est = effective_diameter(p10, cfg);
        CHECK(est <= 9.0);
        CHECK(est >= exact - 1.0);
    }
    // Few sources: no accuracy promise, but the estimate stays deterministic.
    cfg.num_sources = 3;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        cfg.seed = seed;
        const double est = effective_diameter(p10, cfg);
        CHECK(est <= 9.0);
        CHECK(est == effective_diameter(p10, cfg));
    }
}

TEST_CASE("quantile 1 gives the full diameter on connected graphs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = synth::random_graph(12, 0.4, seed);
        if (connected_components(g).count != 1) continue;
        StatConfig cfg;
        cfg.quantile = 1.0;
        CHECK(effective_diameter(g, cfg) == static_cast<double>(full_diameter(g)));
    }
}

TEST_CASE("histogram quantile interpolates") {
    const std::vector<std::uint64_t> h{0, 5, 1};
    CHECK(histogram_quantile(h, 0.9) == doctest::Approx(1.5));
    CHECK(histogram_quantile(h, 0.5) == 1.0);
    CHECK(histogram_quantile(std::vector<std::uint64_t>{}, 0.9) == 0.0);
}

TEST_CASE("clustering, stars, degree summaries") {
    const auto star = graph(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(global_clustering(star) == 0.0);
    CHECK(star_density(graph(3, {{0, 1}, {1, 2}, {0, 2}}), 2) == 1.0);
    CHECK(star_density(star, 2) == doctest::Approx(0.25));
    CHECK(star_density(graph(4, {{0, 1}, {1, 2}, {2, 3}}), 3) == 0.0);
    CHECK(mean_local_clustering(graph(3, {{0, 1}, {1, 2}})) == 0.0);

    CHECK(degree_gini({{3, 1, 1, 1}}) == doctest::Approx(0.25));
    CHECK(degree_gini({{2, 2, 1, 1}}) == doctest::Approx(1.0 / 6));
    CHECK(degree_gini({{2, 2, 2}}) == 0.0);
    CHECK(degree_gini({{0, 0}}) == 0.0);
    CHECK(degree_entropy({{3, 1, 1, 1}}) == doctest::Approx(0.8113).epsilon(1e-4));
    CHECK(degree_entropy({{2, 2, 1, 1}}) == doctest::Approx(1.0));
    CHECK(degree_entropy({{4, 4, 4}}) == 0.0);
}

TEST_CASE("star density with too few nodes warns and returns 0") {
    WarningCapture w;
    CHECK(star_density(graph(3, {{0, 1}, {1, 2}}), 3) == 0.0);
    CHECK(w.count() == 1);
}

TEST_CASE("assortativity sentinel") {
    CHECK(*assortativity(graph(4, {{0, 1}, {0, 2}, {0, 3}})) == doctest::Approx(-1.0));
    CHECK_FALSE(assortativity(graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}})).has_value());
    CHECK_FALSE(assortativity(graph(4, {{0, 1}, {2, 3}})).has_value());
}

TEST_CASE("k-core") {
    CHECK(max_kcore(graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}})) ==
          KCoreSummary{4, 5, 10});
    CHECK(max_kcore(graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}})) == KCoreSummary{2, 3, 3});
    CHECK(max_kcore(graph(6, {{0, 1}, {0, 2}, {2, 3}, {2, 4}, {4, 5}})) == KCoreSummary{1, 6, 5});
}

TEST_CASE("empty graph is a domain error") { CHECK_THROWS_AS(compute_stats(Graph{}), DomainError); }

TEST_CASE("statistics are invariant under relabeling") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = synth::random_graph(11, 0.35, seed);
        std::vector<NodeIndex> perm(g.num_nodes());
        for (NodeIndex i = 0; i < perm.size(); ++i) perm[i] = static_cast<NodeIndex>((i * 7 + 3) % perm.size());
        std::vector<Edge> e;
        for (auto [u, v] : g.edge_list()) e.emplace_back(perm[u], perm[v]);
        const auto h = Graph::from_edges(g.num_nodes(), e);
        check_equal(compute_stats(h), compute_stats(g), 1e-12);
    }
}

TEST_CASE("adding an edge is monotone for counts and density") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = synth::random_graph(10, 0.3, seed);
        auto e = g.edge_list();
        for (NodeIndex u = 0; u < g.num_nodes(); ++u)
            for (NodeIndex v = u + 1; v < g.num_nodes(); ++v)
                if (!g.has_edge(u, v)) {
                    auto f = e;
                    f.emplace_back(u, v);
                    const auto a = compute_stats(g);
                    const auto b = compute_stats(Graph::from_edges(g.num_nodes(), f));
                    CHECK(b.edges > a.edges);
                    CHECK(b.average_degree >= a.average_degree);
                    CHECK(b.density >= a.density);
                    CHECK(b.kcore_max_k >= a.kcore_max_k);
                    CHECK(b.num_components <= a.num_components);
                    u = v = g.num_nodes();
                }
    }
}

TEST_CASE("stats CSV round trip with undefined assortativity") {
    StatTable t;
    t["9606"] = compute_stats(graph(4, {{0, 1}, {0, 2}, {0, 3}}));
    t["511145"] = compute_stats(graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
    std::stringstream ss;
    write_stats_csv(ss, t);
    const auto text = ss.str();
    CHECK(text.rfind("species_id,nodes,edges,average_degree,maximum_degree,density,num_components,"
                     "max_component_fraction,full_diameter,effective_diameter,global_clustering,"
                     "clustering_coefficient,star_density_2,star_density_3,gini_degree,edge_entropy,"
                     "assortative_mixing,kcore_max_k,kcore_nodes,kcore_edges\n",
                     0) == 0);
    CHECK(text.find(",,") != std::string::npos);
    const auto back = read_stats_csv(ss);
    REQUIRE(back.size() == 2);
    CHECK_FALSE(back.at("511145").assortative_mixing.has_value());
    check_equal(back.at("9606"), t.at("9606"), 1e-9);
}

TEST_CASE("stats CSV rejects bad input") {
    std::istringstream dup("species_id,nodes,edges,average_degree,maximum_degree,density,num_components,"
                           "max_component_fraction,full_diameter,effective_diameter,global_clustering,"
                           "clustering_coefficient,star_density_2,star_density_3,gini_degree,edge_entropy,"
                           "assortative_mixing,kcore_max_k,kcore_nodes,kcore_edges\n"
                           "1,3,3,2,2,1,1,1,1,1,1,1,1,0,0,0,,2,3,3\n"
                           "1,3,3,2,2,1,1,1,1,1,1,1,1,0,0,0,,2,3,3\n");
    CHECK_THROWS_AS(read_stats_csv(dup), DataError);
    std::istringstream bad_header("species,nodes\n");
    CHECK_THROWS_AS(read_stats_csv(bad_header), FormatError);
}
