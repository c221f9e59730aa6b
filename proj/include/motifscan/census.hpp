#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "motifscan/catalog.hpp"
#include "motifscan/graph.hpp"

namespace motifscan {

/// Subgraph counts of one graph. Dyad-only and triad-only censuses leave the other
/// size class at zero.
struct CensusResult {
    std::array<std::uint64_t, kTypeCount + 1> counts{};  // indexed by type id; [0] unused
    std::uint64_t null_dyads = 0;
    std::array<std::uint64_t, 3> disconnected_triads{};  // 003, 012, 102
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;

    [[nodiscard]] std::uint64_t count(int type_id) const { return counts.at(type_id); }

    /// Count within the type's size class divided by the class total (connected dyads or
    /// connected triads); 0 when the class is empty.
    [[nodiscard]] double relative_freq(int type_id) const;
    [[nodiscard]] std::array<double, kTypeCount + 1> relative_freqs() const;

    [[nodiscard]] std::uint64_t connected_dyads() const { return counts[1] + counts[2]; }
    [[nodiscard]] std::uint64_t connected_triads() const;
    /// Count for any of the 16 triad classes.
    [[nodiscard]] std::uint64_t triad_class_count(TriadClass c) const;

    CensusResult& operator+=(const CensusResult& other);
    friend bool operator==(const CensusResult&, const CensusResult&) = default;
};

std::uint64_t choose2(std::uint64_t n);
std::uint64_t choose3(std::uint64_t n);

CensusResult dyad_census(const DirectedGraph& g);

/// Exact triad census touching only connected triples; the disconnected classes are
/// recovered from the node count. Work is split over `threads` node blocks.
CensusResult triad_census(const DirectedGraph& g, std::size_t threads = 1);

/// Dyad and triad census together.
CensusResult full_census(const DirectedGraph& g, std::size_t threads = 1);

class CensusTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kBruteForceLimit = 500;

/// Classifies every one of the C(n,3) triples. Throws CensusTooLarge above 500 nodes.
CensusResult triad_census_bruteforce(const DirectedGraph& g);

struct Occurrence {
    int type_id = 0;
    std::array<NodeIndex, 3> members{};  // canonical position order; size() entries used
    int size = 0;

    [[nodiscard]] std::span<const NodeIndex> nodes() const {
        return {members.data(), static_cast<std::size_t>(size)};
    }
    friend bool operator==(const Occurrence& a, const Occurrence& b) {
        return a.type_id == b.type_id && a.size == b.size &&
               std::equal(a.members.begin(), a.members.begin() + a.size, b.members.begin());
    }
    friend auto operator<=>(const Occurrence& a, const Occurrence& b) {
        if (auto c = a.type_id <=> b.type_id; c != 0) return c;
        return a.members <=> b.members;
    }
};

/// Visits every occurrence of `type_id` once, in a deterministic order.
void for_each_occurrence(const DirectedGraph& g, int type_id,
                         const std::function<void(const Occurrence&)>& visit);

std::vector<Occurrence> enumerate_occurrences(const DirectedGraph& g, int type_id);

/// Canonical member order for an arbitrary connected triple.
Occurrence canonical_triad_occurrence(const DirectedGraph& g, NodeIndex a, NodeIndex b,
                                      NodeIndex c);

}  // namespace motifscan
