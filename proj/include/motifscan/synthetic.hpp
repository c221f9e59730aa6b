#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <stdexcept>
#include <utility>
#include <vector>

#include "motifscan/graph.hpp"

namespace motifscan {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SyntheticConfig {
    std::size_t n_firms = 2000;
    int months = 63;
    Period start{2007, 1};
    double attachment_exponent_target = 2.5;
    std::size_t edges_per_firm = 2;
    double mutual_fraction = 0.05;
    std::size_t planted_star_centers = 20;
    double center_asset_multiplier = 10.0;
    double center_attachment_boost = 1.0;  // attachment weight factor of a center
    bool small_firm_mutuals = false;       // mutual-dyad members draw bottom-quartile assets
    double asset_log_mean = 3.0;
    double asset_log_sd = 1.0;
    double default_rate = 0.05;
    std::uint64_t seed = 0;

    /// Throws ConfigError when the settings cannot be realised.
    void validate() const;
};

struct SyntheticData {
    std::vector<GuaranteeRecord> records;
    AttributeMap attributes;
    std::vector<std::string> star_centers;  // sorted
};

/// Directed preferential-attachment growth. Firms arrive evenly over the months; each
/// attaches `edges_per_firm` guarantees to existing firms chosen with weight (k + A),
/// where k is total degree and A is set so the degree tail follows k^-lambda. A share
/// `mutual_fraction` of edges is reciprocated at once. The first `planted_star_centers`
/// firms are star centers: they act as guarantor on every link they take part in.
SyntheticData generate_synthetic(const SyntheticConfig& cfg);

struct PlantedMotifConfig {
    std::size_t n_nodes = 500;
    std::size_t target_edges = 2000;
    std::size_t mutual_dyads = 100;
    std::size_t out_stars = 50;
    std::size_t cyclic_triangles = 30;
    std::uint64_t seed = 0;

    void validate() const;
};

struct PlantedMotifGraph {
    DirectedGraph graph;
    std::vector<std::pair<NodeIndex, NodeIndex>> mutual_pairs;
    std::vector<std::array<NodeIndex, 3>> stars;      // center, leaf, leaf
    std::vector<std::array<NodeIndex, 3>> triangles;  // a->b->c->a
};

/// Heavy-tailed background plus planted mutual dyads, 2-out-stars and cyclic triangles.
PlantedMotifGraph generate_planted_motifs(const PlantedMotifConfig& cfg);

}  // namespace motifscan
