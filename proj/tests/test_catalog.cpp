#include <map>
#include <set>

#include "doctest.h"
#include "motifscan/catalog.hpp"

using namespace motifscan;

namespace {

// Independent orbit enumeration: relabel by explicit edge-set permutation.
std::set<std::pair<int, int>> edge_set(int code) {
    static const int from[6] = {0, 1, 0, 2, 1, 2};
    static const int to[6] = {1, 0, 2, 0, 2, 1};
    std::set<std::pair<int, int>> e;
    for (int b = 0; b < 6; ++b)
        if (code & (1 << b)) e.emplace(from[b], to[b]);
    return e;
}

std::vector<std::set<int>> orbits() {
    std::vector<int> perm{0, 1, 2};
    std::vector<std::set<std::pair<int, int>>> sets;
    for (int c = 0; c < 64; ++c) sets.push_back(edge_set(c));
    std::vector<int> orbit_of(64, -1);
    std::vector<std::set<int>> result;
    for (int c = 0; c < 64; ++c) {
        if (orbit_of[c] >= 0) continue;
        std::set<int> orbit;
        std::vector<int> p{0, 1, 2};
        do {
            std::set<std::pair<int, int>> image;
            for (auto [a, b] : sets[c]) image.emplace(p[a], p[b]);
            for (int d = 0; d < 64; ++d)
                if (sets[d] == image) orbit.insert(d);
        } while (std::next_permutation(p.begin(), p.end()));
        for (int d : orbit) orbit_of[d] = static_cast<int>(result.size());
        result.push_back(orbit);
    }
    return result;
}

bool weakly_connected(int code) {
    auto e = edge_set(code);
    auto adj = [&](int a, int b) { return e.count({a, b}) || e.count({b, a}); };
    return (adj(0, 1) + adj(0, 2) + adj(1, 2)) >= 2;
}

}  // namespace

TEST_CASE("classification agrees with permutation orbits over all 64 codes") {
    const auto orbit_list = orbits();
    CHECK(orbit_list.size() == 16);
    std::set<int> connected_types;
    std::set<TriadClass> classes;
    for (const auto& orbit : orbit_list) {
        const auto first = static_cast<TriadCode>(*orbit.begin());
        const auto cls = triad_class_of(first);
        classes.insert(cls);
        for (int c : orbit) {
            CHECK(triad_class_of(static_cast<TriadCode>(c)) == cls);
            CHECK(canonical_triad_code(static_cast<TriadCode>(c)) == *orbit.begin());
        }
        const auto t = classify_triad(first);
        CHECK(t.has_value() == weakly_connected(first));
        if (t) connected_types.insert(*t);
    }
    CHECK(classes.size() == 16);
    CHECK(connected_types.size() == 13);
    CHECK(*connected_types.begin() == 3);
    CHECK(*connected_types.rbegin() == 15);
}

TEST_CASE("class labels match the standard triad code table") {
    // Class index (M-A-N order, 1-based) for each 6-bit code in the usual bit layout.
    const int reference[64] = {1, 2, 2, 3, 2, 4, 6, 8, 2, 6, 5, 7, 3, 8, 7, 11,
                               2, 6, 4, 8, 5, 9, 9, 13, 6, 10, 9, 14, 7, 14, 12, 15,
                               2, 5, 6, 7, 6, 9, 10, 14, 4, 9, 9, 12, 8, 13, 14, 15,
                               3, 7, 8, 11, 7, 12, 14, 15, 8, 14, 13, 15, 11, 15, 15, 16};
    for (int c = 0; c < 64; ++c) {
        CAPTURE(c);
        CHECK(static_cast<int>(triad_class_of(static_cast<TriadCode>(c))) + 1 == reference[c]);
    }
}

TEST_CASE("named shapes") {
    // A->B, A->C: 2-out-star.
    CHECK(triad_class_of(0b000101) == TriadClass::t021D);
    CHECK(classify_triad(0b000101) == kOutStar);
    // A->B, B->C, C->A: cyclic.
    CHECK(triad_class_of(0b011001) == TriadClass::t030C);
    CHECK(classify_triad(0b011001) == 9);
    CHECK(classify_triad(0) == std::nullopt);
    CHECK(classify_triad(0b000001) == std::nullopt);
    CHECK(classify_triad(0b000011) == std::nullopt);
    CHECK(classify_triad(63) == 15);
}

TEST_CASE("catalog layout") {
    auto c = catalog();
    REQUIRE(c.size() == 15);
    std::set<std::string_view> triangles;
    for (int t : {8, 9, 11, 12, 13, 14, 15}) triangles.insert(subgraph_type(t).census_name);
    CHECK(triangles ==
          std::set<std::string_view>{"030T", "030C", "120D", "120U", "120C", "210", "300"});
    CHECK(subgraph_type(3).census_name == "021D");
    CHECK(subgraph_type(10).census_name == "201");
    std::set<std::string_view> open;
    for (int t : {4, 5, 6, 7}) open.insert(subgraph_type(t).census_name);
    CHECK(open == std::set<std::string_view>{"021U", "021C", "111D", "111U"});
    for (const auto& t : c) {
        CHECK(t.size == (t.type_id <= 2 ? 2 : 3));
        if (t.size == 3) {
            CHECK(canonical_triad_code(t.canonical_code) == t.canonical_code);
            CHECK(triad_class_of(t.canonical_code) == *t.triad_class);
        }
    }
    CHECK_THROWS_AS((void)subgraph_type(0), std::out_of_range);
    CHECK_THROWS_AS((void)subgraph_type(16), std::out_of_range);
}

TEST_CASE("canonical positions") {
    // 2-out-star: center at position 0, leaves share a class.
    const auto& star = subgraph_type(3);
    CHECK(star.canonical_code == 0b000101);
    CHECK(star.position_classes() == std::vector<int>{0, 1});
    CHECK(star.position_class[2] == 1);
    CHECK(subgraph_type(9).position_classes() == std::vector<int>{0});   // cycle
    CHECK(subgraph_type(15).position_classes() == std::vector<int>{0});  // 300
    CHECK(subgraph_type(5).position_classes() == std::vector<int>{0, 1, 2});  // chain
    CHECK(subgraph_type(1).position_classes() == std::vector<int>{0, 1});
    CHECK(subgraph_type(2).position_classes() == std::vector<int>{0});

    for (int c = 0; c < 64; ++c) {
        const auto code = static_cast<TriadCode>(c);
        CHECK(permute_triad_code(code, canonical_triad_order(code)) == canonical_triad_code(code));
    }
}

TEST_CASE("dyad classification") {
    auto g = DirectedGraph::from_edges(4, {{0, 1}, {2, 3}, {3, 2}});
    CHECK(classify_dyad(g, 0, 1) == kSingleLink);
    CHECK(classify_dyad(g, 1, 0) == kSingleLink);
    CHECK(classify_dyad(g, 2, 3) == kMutualDyad);
    CHECK(classify_dyad(g, 0, 2) == std::nullopt);
    CHECK_THROWS_AS((void)classify_dyad(g, 1, 1), std::invalid_argument);
}
