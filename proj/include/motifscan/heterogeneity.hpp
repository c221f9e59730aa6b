#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motifscan/census.hpp"
#include "motifscan/graph.hpp"
#include "motifscan/significance.hpp"

namespace motifscan {

struct RankSumResult {
    double statistic = 0.0;  // U of the first sample
    double p_value = 1.0;    // two-sided
    bool exact = false;
};

inline constexpr std::size_t kExactRankSumLimit = 8;

/// Two-sided Mann-Whitney test. Exact permutation distribution (midranks for ties) when
/// both samples have at most 8 values, otherwise the normal approximation with tie
/// correction and continuity correction. Throws std::invalid_argument on an empty sample.
RankSumResult mann_whitney(std::span<const double> a, std::span<const double> b);

struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

/// Linear-interpolation quartiles; empty input gives nullopt.
std::optional<Quartiles> quartiles(std::vector<double> values);

/// Assets held by the firms at one canonical position class of one subgraph type.
struct RoleProfile {
    int type_id = 0;
    int position = 0;               // position class representative
    std::uint64_t occurrences = 0;  // n
    std::uint64_t slots = 0;        // position holders seen (occurrences x class size)
    std::vector<double> samples;    // one entry per slot with known assets
    double coverage = 0.0;          // samples / slots, 0 without slots
    std::optional<Quartiles> asset_quartiles;
};

/// Throws std::out_of_range for an unknown type or a position outside it.
RoleProfile role_profile(const DirectedGraph& g, const AttributeMap& attrs, int type_id,
                         int position);

/// Assets of every node of `g` that has attributes.
std::vector<double> population_assets(const DirectedGraph& g, const AttributeMap& attrs);

struct RoleComparison {
    std::string left;
    std::string right;
    double statistic = 0.0;
    double p_value = 1.0;
    double median_ratio = 0.0;  // NaN when the right median is not positive
    bool exact = false;
};

RoleComparison compare_roles(std::span<const double> left, std::span<const double> right,
                             std::string left_label = "left", std::string right_label = "right");

struct RiskEntry {
    std::string firm;
    double score = 0.0;
    std::size_t degree = 0;
    std::array<std::uint64_t, kTypeCount + 1> appearances{};  // per type id, high-risk types only
    std::optional<bool> known_default;
};

/// Types whose occurrences mark a firm as exposed: the mutual dyad and the seven
/// triangle classes.
std::span<const int> high_risk_types();

/// Firms scored by appearances in high-risk types that `stats` flags as motifs, divided by
/// total degree. Descending score, ties by firm id.
std::vector<RiskEntry> default_risk_ranking(const DirectedGraph& g,
                                            std::span<const MotifStatistics> stats,
                                            const AttributeMap& attrs);

}  // namespace motifscan
