#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "motifscan/graph.hpp"

namespace motifscan {

/// Six-bit adjacency code of an ordered node triple (x0, x1, x2):
///   bit 0: x0->x1   bit 1: x1->x0   bit 2: x0->x2
///   bit 3: x2->x0   bit 4: x1->x2   bit 5: x2->x1
using TriadCode = std::uint8_t;

/// The 16 isomorphism classes of directed triads in the usual M-A-N order.
enum class TriadClass : std::uint8_t {
    t003, t012, t102, t021D, t021U, t021C, t111D, t111U,
    t030T, t030C, t201, t120D, t120U, t120C, t210, t300,
};
inline constexpr std::size_t kTriadClassCount = 16;

std::string_view triad_class_name(TriadClass c);

inline constexpr int kTypeCount = 15;
inline constexpr int kSingleLink = 1;
inline constexpr int kMutualDyad = 2;
inline constexpr int kOutStar = 3;  // 021D

struct SubgraphType {
    int type_id = 0;
    int size = 0;
    std::uint8_t canonical_code = 0;  // 2-bit for dyads, 6-bit for triads
    std::string_view census_name;
    std::string_view description;
    std::optional<TriadClass> triad_class;  // empty for dyads
    /// position_class[i] is the smallest position equivalent to position i under the
    /// automorphisms of the canonical pattern.
    std::array<int, 3> position_class{0, 0, 0};

    /// Distinct position classes, in increasing order.
    [[nodiscard]] std::vector<int> position_classes() const;
};

/// The 15-entry catalog: 2 dyads then 13 weakly connected triads.
///
/// Type numbering: 1 single link, 2 mutual, 3 = 021D (2-out-star), 4-7 the other open
/// triads {021U, 021C, 111D, 111U} in that order (arbitrary, not fixed by any
/// observation), 8 = 030T, 9 = 030C, 10 = 201, 11 = 120D, 12 = 120U, 13 = 120C,
/// 14 = 210, 15 = 300. Types 8, 9 and 11-15 are exactly the triangle-closing classes.
std::span<const SubgraphType> catalog();
const SubgraphType& subgraph_type(int type_id);  // throws std::out_of_range

/// Catalog type for a connected triad class; empty for 003, 012 and 102.
std::optional<int> type_for_triad_class(TriadClass c);

/// Lexicographically smallest code over the six relabellings.
TriadCode canonical_triad_code(TriadCode code);
TriadClass triad_class_of(TriadCode code);

/// Catalog type id 3..15, or empty when the triad is disconnected.
std::optional<int> classify_triad(TriadCode code);

/// perm with canonical position i held by original slot perm[i]; first permutation in
/// lexicographic order that attains the canonical code.
std::array<std::uint8_t, 3> canonical_triad_order(TriadCode code);

/// Code of an arbitrary triple in `g`.
TriadCode triad_code(const DirectedGraph& g, NodeIndex x0, NodeIndex x1, NodeIndex x2);

/// Applies a relabelling: output edge (i -> j) exists iff input edge (perm[i] -> perm[j]).
TriadCode permute_triad_code(TriadCode code, const std::array<std::uint8_t, 3>& perm);

/// 1 single link, 2 mutual, empty when unconnected. Throws std::invalid_argument on u == v.
std::optional<int> classify_dyad(const DirectedGraph& g, NodeIndex u, NodeIndex v);

inline constexpr int kCatalogVersion = 1;

/// catalog.json content.
std::string catalog_json();

}  // namespace motifscan
