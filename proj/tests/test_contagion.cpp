#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "motifscan/catalog.hpp"
#include "motifscan/census.hpp"
#include "motifscan/contagion.hpp"
#include "test_support.hpp"

using namespace motifscan;

namespace {

DirectedGraph shape_of(int type_id) {
    const auto& t = subgraph_type(type_id);
    std::vector<std::pair<NodeIndex, NodeIndex>> edges;
    if (t.size == 2) {
        edges.emplace_back(0, 1);
        if (type_id == kMutualDyad) edges.emplace_back(1, 0);
        return DirectedGraph::from_edges(2, edges);
    }
    static constexpr std::pair<NodeIndex, NodeIndex> kBits[6] = {{0, 1}, {1, 0}, {0, 2},
                                                                 {2, 0}, {1, 2}, {2, 1}};
    for (int b = 0; b < 6; ++b) {
        if (t.canonical_code & (1u << b)) edges.push_back(kBits[b]);
    }
    return DirectedGraph::from_edges(3, edges);
}

// Nodes with a directed path to `target`, via Floyd-Warshall reachability.
std::vector<NodeIndex> ancestors(const DirectedGraph& g, NodeIndex target) {
    const auto n = g.node_count();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges()) reach[u][v] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = 1;
    std::vector<NodeIndex> out;
    for (NodeIndex u = 0; u < n; ++u) {
        if (u == target || reach[u][target]) out.push_back(u);
    }
    return out;
}

bool subset(const std::vector<NodeIndex>& a, const std::vector<NodeIndex>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("single link: only the guarantor can be dragged in") {
    const auto g = DirectedGraph::from_edges(2, std::vector<std::pair<NodeIndex, NodeIndex>>{{0, 1}});
    CascadeConfig cfg;
    NodeIndex borrower = 1, guarantor = 0;
    auto r = simulate_cascade(g, std::span(&borrower, 1), cfg);
    CHECK(r.defaulted == std::vector<NodeIndex>{0, 1});
    CHECK(r.additional_defaults == 1);
    CHECK(r.rounds == 1);
    r = simulate_cascade(g, std::span(&guarantor, 1), cfg);
    CHECK(r.defaulted == std::vector<NodeIndex>{0});
    CHECK(r.rounds == 0);
}

TEST_CASE("cyclic triangle defaults completely in two rounds") {
    const auto g = shape_of(9);
    CascadeConfig cfg;
    for (NodeIndex s = 0; s < 3; ++s) {
        auto r = simulate_cascade(g, std::span(&s, 1), cfg);
        CHECK(r.defaulted.size() == 3);
        CHECK(r.rounds == 2);
    }
    cfg.max_rounds = 1;
    NodeIndex s = 0;
    CHECK(simulate_cascade(g, std::span(&s, 1), cfg).additional_defaults == 1);
}

TEST_CASE("deterministic abilities of every shape match hand enumeration") {
    const std::map<int, double> expected = {
        {1, 0.5},       {2, 1.0},       {3, 2.0 / 3.0}, {4, 2.0 / 3.0}, {5, 1.0},
        {6, 4.0 / 3.0}, {7, 4.0 / 3.0}, {8, 1.0},       {9, 2.0},       {10, 2.0},
        {11, 4.0 / 3.0}, {12, 4.0 / 3.0}, {13, 2.0},    {14, 2.0},      {15, 2.0}};
    CascadeConfig cfg;
    for (const auto& [type, value] : expected) {
        CAPTURE(type);
        const auto g = shape_of(type);
        const auto a = contagion_ability(g, type, cfg);
        REQUIRE(a.ability);
        CHECK(a.occurrences == 1);
        CHECK(*a.ability == doctest::Approx(value).epsilon(1e-12));

        double oracle = 0.0;
        for (NodeIndex s = 0; s < g.node_count(); ++s) oracle += ancestors(g, s).size() - 1.0;
        CHECK(*a.ability == doctest::Approx(oracle / g.node_count()).epsilon(1e-12));
    }
}

TEST_CASE("certain transmission reaches exactly the ancestors") {
    CascadeConfig cfg;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = testing::random_digraph(40, 0.04, seed);
        for (NodeIndex s = 0; s < g.node_count(); s += 3) {
            CAPTURE(seed);
            CAPTURE(s);
            CHECK(simulate_cascade(g, std::span(&s, 1), cfg).defaulted == ancestors(g, s));
        }
    }
}

TEST_CASE("mutual dyad at half transmission averages one half") {
    const auto g = shape_of(kMutualDyad);
    CascadeConfig cfg{.transmission_probability = 0.5, .trials = 10000, .seed = 7};
    const auto a = contagion_ability(g, kMutualDyad, cfg);
    REQUIRE(a.ability);
    CHECK(a.trials == 10000);
    CHECK(*a.ability == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("outcomes grow with transmission probability and stay within the ancestors") {
    const auto g = testing::random_digraph(60, 0.05, 3);
    const double ps[] = {0.1, 0.3, 0.5, 0.8, 1.0};
    for (NodeIndex s = 0; s < g.node_count(); s += 7) {
        const auto top = ancestors(g, s);
        for (std::uint64_t trial = 0; trial < 20; ++trial) {
            std::vector<NodeIndex> prev{s};
            for (double p : ps) {
                CascadeConfig cfg{.transmission_probability = p, .seed = 11};
                const auto r = simulate_cascade(g, std::span(&s, 1), cfg, trial);
                CHECK(subset(prev, r.defaulted));
                CHECK(subset(r.defaulted, top));
                prev = r.defaulted;
            }
        }
    }
}

TEST_CASE("embedded scope never reports less than induced") {
    const auto g = testing::random_digraph(50, 0.06, 5);
    CascadeConfig cfg;
    for (int t = 1; t <= kTypeCount; ++t) {
        const auto in = contagion_ability(g, t, cfg, ContagionScope::induced);
        const auto em = contagion_ability(g, t, cfg, ContagionScope::embedded, 3);
        CHECK(in.occurrences == em.occurrences);
        if (in.ability) CHECK(*em.ability >= *in.ability - 1e-12);
    }
}

TEST_CASE("abilities are thread-count independent") {
    const auto g = testing::random_digraph(50, 0.06, 9);
    CascadeConfig cfg{.transmission_probability = 0.4, .trials = 50, .seed = 3};
    const auto a = rank_structures_by_contagion(g, cfg, ContagionScope::embedded, 1);
    const auto b = rank_structures_by_contagion(g, cfg, ContagionScope::embedded, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].type_id == b[i].type_id);
        CHECK(*a[i].ability == *b[i].ability);
    }
}

TEST_CASE("ranking is ascending and skips absent types") {
    const auto g = shape_of(9);
    const auto r = rank_structures_by_contagion(g, CascadeConfig{});
    REQUIRE(r.size() == 2);
    CHECK(r[0].type_id == 1);
    CHECK(r[1].type_id == 9);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(*r[i - 1].ability <= *r[i].ability);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS((CascadeConfig{.transmission_probability = 0.0}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((CascadeConfig{.transmission_probability = 1.5}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((CascadeConfig{.trials = 0}.validate()), std::invalid_argument);
    CHECK(CascadeConfig{}.effective_trials() == 1);
    CHECK(CascadeConfig{.transmission_probability = 0.5}.effective_trials() == 1000);
    CHECK(parse_contagion_scope("embedded") == ContagionScope::embedded);
    CHECK_THROWS_AS(parse_contagion_scope("global"), std::invalid_argument);
}
