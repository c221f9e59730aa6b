#include <set>

#include "doctest.h"
#include "motifscan/null_model.hpp"
#include "test_support.hpp"

using namespace motifscan;

namespace {

void check_preserved(const DirectedGraph& g, const DirectedGraph& r, NullModel model) {
    CHECK(r.node_count() == g.node_count());
    CHECK(r.edge_count() == g.edge_count());
    CHECK(r.in_degrees() == g.in_degrees());
    CHECK(r.out_degrees() == g.out_degrees());
    if (model == NullModel::conserve_mutual) CHECK(r.mutual_dyad_count() == g.mutual_dyad_count());
    for (auto [u, v] : r.edges()) CHECK(u != v);
}

}  // namespace

TEST_CASE("forced single swap") {
    auto g = DirectedGraph::from_edges(5, {{1, 2}, {3, 4}});
    SwapChain chain(g, NullModel::conserve_mutual);
    REQUIRE(chain.swap_single(0, 1));
    auto r = chain.to_graph();
    CHECK(r.has_edge(1, 4));
    CHECK(r.has_edge(3, 2));
    CHECK(r.edge_count() == 2);
    check_preserved(g, r, NullModel::conserve_mutual);
}

TEST_CASE("swap rejections") {
    // (0->1, 1->2) would give 0->2 and 1->1.
    auto loop = DirectedGraph::from_edges(3, {{0, 1}, {1, 2}});
    SwapChain a(loop, NullModel::degrees_only);
    CHECK_FALSE(a.swap_single(0, 1));

    // (0->1, 2->3) would duplicate an existing 0->3.
    auto dup = DirectedGraph::from_edges(4, {{0, 1}, {2, 3}, {0, 3}});
    SwapChain b(dup, NullModel::degrees_only);
    const auto& e = b.single_edges();
    std::size_t i = 0, j = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == std::pair<NodeIndex, NodeIndex>{0, 1}) i = k;
        if (e[k] == std::pair<NodeIndex, NodeIndex>{2, 3}) j = k;
    }
    CHECK_FALSE(b.swap_single(i, j));

    // (0->1, 2->3) gives 0->3 and 2->1; with 3->0 present it would create a mutual dyad.
    auto recip = DirectedGraph::from_edges(4, {{0, 1}, {2, 3}, {3, 0}});
    auto find = [](const SwapChain& c, std::pair<NodeIndex, NodeIndex> want) {
        const auto& s = c.single_edges();
        return static_cast<std::size_t>(std::find(s.begin(), s.end(), want) - s.begin());
    };
    SwapChain strict(recip, NullModel::conserve_mutual);
    CHECK_FALSE(strict.swap_single(find(strict, {0, 1}), find(strict, {2, 3})));
    SwapChain loose(recip, NullModel::degrees_only);
    CHECK(loose.swap_single(find(loose, {0, 1}), find(loose, {2, 3})));
    CHECK(loose.to_graph().mutual_dyad_count() == 1);
}

TEST_CASE("mutual swap keeps dyads mutual") {
    auto g = DirectedGraph::from_edges(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    SwapChain chain(g, NullModel::conserve_mutual);
    REQUIRE(chain.mutual_pairs().size() == 2);
    CHECK(chain.single_edges().empty());
    REQUIRE(chain.swap_mutual(0, 1, false));
    auto r = chain.to_graph();
    CHECK(r.has_edge(0, 3));
    CHECK(r.has_edge(3, 0));
    CHECK(r.has_edge(2, 1));
    CHECK(r.has_edge(1, 2));
    CHECK(r.mutual_dyad_count() == 2);
}

TEST_CASE("randomization preserves degrees and mutual count") {
    for (auto model : {NullModel::conserve_mutual, NullModel::degrees_only}) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto g = testing::random_digraph(60, 0.08, seed);
            RandomizationConfig cfg{20, 2, seed * 31, model};
            auto r = edge_swap_randomize(g, cfg, seed);
            check_preserved(g, r, model);
        }
    }
}

TEST_CASE("too few swappable edges leaves the class untouched") {
    auto g = DirectedGraph::from_edges(4, {{0, 1}, {1, 0}, {2, 3}});
    RandomizationConfig cfg{50, 2, 1, NullModel::conserve_mutual};
    SwapReport report;
    auto r = edge_swap_randomize(g, cfg, 0, &report);
    CHECK(report.single_class_frozen);
    CHECK(report.mutual_class_frozen);
    CHECK(report.accepted == 0);
    CHECK(r == g);
}

TEST_CASE("randomization changes the triad spectrum") {
    auto g = testing::heavy_tailed_digraph(200, 600, 4);
    RandomizationConfig cfg{17, 2, 99, NullModel::conserve_mutual};  // ~10^4 attempts
    SwapReport report;
    auto r = edge_swap_randomize(g, cfg, 0, &report);
    CHECK(report.attempted == 17 * 600);
    CHECK(report.accepted > 1000);
    check_preserved(g, r, cfg.model);
    CHECK(full_census(r).counts != full_census(g).counts);
}

TEST_CASE("ensembles are deterministic and order independent") {
    auto g = testing::heavy_tailed_digraph(120, 400, 8);
    RandomizationConfig cfg{10, 3, 2024, NullModel::conserve_mutual};
    auto a = ensemble_censuses(g, cfg, 1);
    auto b = ensemble_censuses(g, cfg, 1);
    auto c = ensemble_censuses(g, cfg, 3);
    CHECK(a == b);
    CHECK(a == c);
    // Replica 2 alone reproduces the ensemble entry.
    CHECK(full_census(edge_swap_randomize(g, cfg, 2)) == a[2]);
    generate_ensemble(g, cfg, 2, [&](std::uint64_t, const DirectedGraph& r) {
        CHECK(r.in_degrees() == g.in_degrees());
        CHECK(r.out_degrees() == g.out_degrees());
    });
}

TEST_CASE("replica censuses vary") {
    auto g = testing::heavy_tailed_digraph(500, 1500, 12);
    RandomizationConfig cfg{10, 5, 7, NullModel::conserve_mutual};
    auto censuses = ensemble_censuses(g, cfg);
    bool varies = false;
    for (int t = 3; t <= 15; ++t) {
        std::set<std::uint64_t> values;
        for (const auto& c : censuses) values.insert(c.count(t));
        varies = varies || values.size() > 1;
    }
    CHECK(varies);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS((RandomizationConfig{0, 10, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((RandomizationConfig{1, 1, 1}.validate()), std::invalid_argument);
    CHECK_NOTHROW((RandomizationConfig{1, 2, 1}.validate()));
    CHECK(parse_null_model("degrees-only") == NullModel::degrees_only);
    CHECK_THROWS_AS(parse_null_model("stubs"), std::invalid_argument);
}
