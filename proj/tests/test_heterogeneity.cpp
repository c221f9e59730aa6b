#include <cmath>
#include <numeric>

#include "doctest.h"
#include "motifscan/heterogeneity.hpp"
#include "test_support.hpp"

using namespace motifscan;

namespace {

// Exact two-sided p by enumerating every split of the pooled values; U by pair counting.
double enumerated_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n = pooled.size(), n1 = a.size();
    auto u_of = [&](const std::vector<bool>& in_first) {
        double u = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!in_first[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (in_first[j]) continue;
                u += pooled[i] > pooled[j] ? 1.0 : (pooled[i] == pooled[j] ? 0.5 : 0.0);
            }
        }
        return u;
    };
    const double mu = static_cast<double>(n1 * (n - n1)) / 2.0;
    std::vector<bool> observed(n, false);
    for (std::size_t i = 0; i < n1; ++i) observed[i] = true;
    const double obs = std::abs(u_of(observed) - mu);
    std::size_t extreme = 0, total = 0;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != n1) continue;
        std::vector<bool> split(n);
        for (std::size_t i = 0; i < n; ++i) split[i] = (mask >> i) & 1U;
        ++total;
        if (std::abs(u_of(split) - mu) >= obs - 1e-9) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

AttributeMap assets_for(const DirectedGraph& g, const std::vector<double>& assets) {
    AttributeMap m;
    for (NodeIndex u = 0; u < g.node_count(); ++u) m[g.id(u)] = {g.id(u), assets[u], false};
    return m;
}

}  // namespace

TEST_CASE("complete separation") {
    const std::vector<double> a{1, 2, 3}, b{10, 20, 30};
    auto c = compare_roles(a, b);
    CHECK(c.median_ratio == doctest::Approx(0.1));
    CHECK(c.p_value == doctest::Approx(0.1));
    CHECK(c.statistic == 0.0);
    CHECK(enumerated_p(a, b) == doctest::Approx(0.1));
}

TEST_CASE("identical samples") {
    const std::vector<double> a{3, 1, 4, 1, 5, 9, 2, 6};
    auto c = compare_roles(a, a);
    CHECK(c.p_value == doctest::Approx(1.0).epsilon(0.02));
    CHECK(c.median_ratio == 1.0);
    const std::vector<double> flat{2, 2, 2};
    auto t = mann_whitney(flat, flat);
    CHECK(t.p_value == 1.0);
    CHECK(t.statistic == 4.5);
    CHECK_THROWS_AS(mann_whitney(std::vector<double>{}, flat), std::invalid_argument);
}

TEST_CASE("small-sample rank sum matches enumeration") {
    Rng rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n1 = 1 + rng.below(8), n2 = 1 + rng.below(8);
        std::vector<double> a(n1), b(n2);
        // Coarse values force ties.
        for (auto& x : a) x = static_cast<double>(rng.below(6));
        for (auto& x : b) x = static_cast<double>(rng.below(6)) + (trial % 3 == 0 ? 1.5 : 0.0);
        auto res = mann_whitney(a, b);
        CAPTURE(trial);
        CHECK(res.exact);
        CHECK(std::abs(res.p_value - enumerated_p(a, b)) <= 0.02);
    }
}

TEST_CASE("normal approximation for larger samples") {
    std::vector<double> a, b;
    for (int i = 0; i < 30; ++i) {
        a.push_back(i);
        b.push_back(i + 100);
    }
    auto res = mann_whitney(a, b);
    CHECK_FALSE(res.exact);
    CHECK(res.p_value < 1e-8);
    CHECK(mann_whitney(a, a).p_value == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("comparison antisymmetry") {
    Rng rng(2);
    std::vector<double> a(20), b(15);
    for (auto& x : a) x = std::exp(rng.normal());
    for (auto& x : b) x = std::exp(rng.normal() + 0.5);
    auto ab = compare_roles(a, b);
    auto ba = compare_roles(b, a);
    CHECK(ab.median_ratio * ba.median_ratio == doctest::Approx(1.0));
    CHECK(ab.p_value == doctest::Approx(ba.p_value));
}

TEST_CASE("quartiles") {
    auto q = quartiles({1, 2, 3, 4, 5});
    REQUIRE(q);
    CHECK(q->q1 == 2.0);
    CHECK(q->median == 3.0);
    CHECK(q->q3 == 4.0);
    CHECK_FALSE(quartiles({}).has_value());
}

TEST_CASE("role profile of a single star") {
    auto g = DirectedGraph::from_edges(3, {{0, 1}, {0, 2}});
    auto attrs = assets_for(g, {100, 5, 7});
    auto center = role_profile(g, attrs, kOutStar, 0);
    CHECK(center.occurrences == 1);
    CHECK(center.asset_quartiles->median == 100.0);
    CHECK(center.coverage == 1.0);
    auto leaves = role_profile(g, attrs, kOutStar, 2);
    CHECK(leaves.position == 1);
    CHECK(leaves.slots == 2);
    CHECK(leaves.asset_quartiles->median == 6.0);

    auto bare = role_profile(g, AttributeMap{}, kOutStar, 0);
    CHECK(bare.coverage == 0.0);
    CHECK_FALSE(bare.asset_quartiles.has_value());
    auto none = role_profile(g, attrs, kMutualDyad, 0);
    CHECK(none.occurrences == 0);
    CHECK_THROWS_AS(role_profile(g, attrs, kMutualDyad, 2), std::out_of_range);
}

TEST_CASE("role slots add up over position classes") {
    auto g = testing::random_digraph(40, 0.1, 21);
    std::vector<double> assets(40);
    std::iota(assets.begin(), assets.end(), 1.0);
    auto attrs = assets_for(g, assets);
    for (const auto& t : catalog()) {
        std::uint64_t slots = 0, occurrences = 0;
        for (int pos : t.position_classes()) {
            auto p = role_profile(g, attrs, t.type_id, pos);
            slots += p.samples.size();
            occurrences = p.occurrences;
        }
        CHECK(slots == occurrences * static_cast<std::uint64_t>(t.size));
    }
}

TEST_CASE("planted asset shift on star centers") {
    Rng rng(4);
    std::vector<std::pair<NodeIndex, NodeIndex>> edges;
    std::vector<double> assets;
    NodeIndex next = 0;
    for (int s = 0; s < 40; ++s) {
        const NodeIndex c = next++, l1 = next++, l2 = next++;
        edges.emplace_back(c, l1);
        edges.emplace_back(c, l2);
        assets.push_back(10.0 * std::exp(rng.normal()));
        assets.push_back(std::exp(rng.normal()));
        assets.push_back(std::exp(rng.normal()));
    }
    auto g = DirectedGraph::from_edges(next, edges);
    auto attrs = assets_for(g, assets);
    auto centers = role_profile(g, attrs, kOutStar, 0);
    auto leaves = role_profile(g, attrs, kOutStar, 1);
    auto cmp = compare_roles(centers.samples, leaves.samples, "3:0", "3:1");
    CHECK(cmp.median_ratio > 5.0);
    CHECK(cmp.p_value < 0.01);
}

TEST_CASE("default risk ranking") {
    // Node 0 sits in five mutual dyads; node 6 is a plain borrower; node 7 is isolated.
    std::vector<std::pair<NodeIndex, NodeIndex>> e;
    for (NodeIndex v = 1; v <= 5; ++v) {
        e.emplace_back(0, v);
        e.emplace_back(v, 0);
    }
    e.emplace_back(1, 6);
    auto g = DirectedGraph::from_edges(8, e);
    MotifStatistics mutual;
    mutual.type_id = 2;
    mutual.is_motif = true;
    std::vector<MotifStatistics> stats{mutual};
    auto ranking = default_risk_ranking(g, stats, AttributeMap{});
    REQUIRE(ranking.size() == 8);
    CHECK(ranking.front().firm == g.id(0));
    CHECK(ranking.front().appearances[2] == 5);
    for (const auto& r : ranking) {
        if (r.firm == g.id(7) || r.firm == g.id(6)) CHECK(r.score == 0.0);
    }
    // Without a flagged motif nobody scores.
    stats[0].is_motif = false;
    for (const auto& r : default_risk_ranking(g, stats, AttributeMap{})) CHECK(r.score == 0.0);
}

TEST_CASE("planted mutual cluster tops the risk ranking") {
    auto base = testing::random_digraph(100, 0.03, 6);
    std::vector<std::pair<NodeIndex, NodeIndex>> e(base.edges().begin(), base.edges().end());
    for (NodeIndex a = 0; a < 8; ++a)
        for (NodeIndex b = 0; b < 8; ++b)
            if (a != b) e.emplace_back(a, b);
    auto g = DirectedGraph::from_edges(100, e);
    std::vector<MotifStatistics> stats;
    for (int t : high_risk_types()) {
        MotifStatistics s;
        s.type_id = t;
        s.is_motif = true;
        stats.push_back(s);
    }
    auto ranking = default_risk_ranking(g, stats, AttributeMap{});
    std::set<std::string> top;
    for (std::size_t i = 0; i < 10; ++i) top.insert(ranking[i].firm);
    for (NodeIndex a = 0; a < 8; ++a) CHECK(top.count(g.id(a)) == 1);

    // Relabelling permutes firms but not their scores.
    std::vector<std::pair<std::string, std::string>> labelled;
    for (auto [u, v] : g.edges()) labelled.emplace_back("z" + g.id(u), "z" + g.id(v));
    auto relabelled = default_risk_ranking(DirectedGraph::from_labelled_edges(labelled), stats, {});
    std::map<std::string, double> original;
    for (const auto& r : ranking) original["z" + r.firm] = r.score;
    for (const auto& r : relabelled) {
        if (original.count(r.firm)) CHECK(r.score == original[r.firm]);
    }
}
