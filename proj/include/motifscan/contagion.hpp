#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "motifscan/graph.hpp"

namespace motifscan {

struct CascadeConfig {
    double transmission_probability = 1.0;
    std::optional<std::uint64_t> max_rounds;  // unbounded when empty
    std::optional<std::uint64_t> trials;      // default: 1 at p = 1, else 1000
    std::uint64_t seed = 0;

    [[nodiscard]] std::uint64_t effective_trials() const;
    /// Throws std::invalid_argument unless 0 < p <= 1 and trials / max_rounds are positive.
    void validate() const;
};

struct CascadeResult {
    std::vector<NodeIndex> seed_set;   // sorted
    std::vector<NodeIndex> defaulted;  // sorted, contains seed_set
    std::uint64_t rounds = 0;
    std::uint64_t additional_defaults = 0;
};

/// Synchronous default cascade. A borrower that defaults in one round makes each of its
/// guarantors (every a with a->b) default in the next round with the transmission
/// probability. Draws are keyed by (cfg.seed, trial, edge), so raising the probability
/// can only enlarge the outcome of a given trial.
CascadeResult simulate_cascade(const DirectedGraph& g, std::span<const NodeIndex> seeds,
                               const CascadeConfig& cfg, std::uint64_t trial = 0);

enum class ContagionScope {
    induced,   // cascade confined to the occurrence's own nodes and edges
    embedded,  // cascade runs on the whole graph
};

ContagionScope parse_contagion_scope(std::string_view text);
std::string_view to_string(ContagionScope s);

struct ContagionAbility {
    int type_id = 0;
    std::uint64_t occurrences = 0;
    std::optional<double> ability;  // empty without occurrences
    double probability = 1.0;
    std::uint64_t trials = 1;
};

/// Mean additional defaults per seeded member over all occurrences of `type_id`, every
/// member seeded in turn, averaged over trials.
ContagionAbility contagion_ability(const DirectedGraph& g, int type_id, const CascadeConfig& cfg,
                                   ContagionScope scope = ContagionScope::induced,
                                   std::size_t threads = 1);

/// Abilities of every type present in `g`, ascending; ties by type id.
std::vector<ContagionAbility> rank_structures_by_contagion(
    const DirectedGraph& g, const CascadeConfig& cfg,
    ContagionScope scope = ContagionScope::induced, std::size_t threads = 1);

}  // namespace motifscan
