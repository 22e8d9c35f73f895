#include <doctest.h>

#include "ppiphylo/graph.hpp"
#include "synthetic.hpp"

using namespace ppiphylo;

TEST_CASE("from_edges drops self-loops and duplicates") {
    const auto g = synth::graph(4, {{0, 1}, {1, 0}, {2, 2}, {1, 3}, {3, 1}});
    CHECK(g.num_nodes() == 4);
    CHECK(g.num_edges() == 2);
    CHECK(g.degree(2) == 0);
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(2, 2));
    CHECK(g.edge_list() == std::vector<Edge>{{0, 1}, {1, 3}});
}

TEST_CASE("adjacency is sorted and symmetric") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = synth::random_graph(15, 0.3, seed);
        std::uint64_t total = 0;
        for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
            const auto nb = g.neighbors(v);
            total += nb.size();
            CHECK(std::is_sorted(nb.begin(), nb.end()));
            CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
            for (auto u : nb) {
                CHECK(u != v);
                CHECK(g.has_edge(u, v));
            }
        }
        CHECK(total == 2 * g.num_edges());
    }
}

TEST_CASE("induced subgraph keeps ids and relabels densely") {
    const auto g = Graph::from_edges("9606", {"a", "b", "c", "d"}, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const std::vector<NodeIndex> keep{1, 2, 3};
    const auto h = g.induced_subgraph(keep);
    CHECK(h.species_id() == "9606");
    CHECK(h.node_ids() == std::vector<std::string>{"b", "c", "d"});
    CHECK(h.edge_list() == std::vector<Edge>{{0, 1}, {1, 2}});
}
