#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "motifscan/census.hpp"
#include "motifscan/graph.hpp"
#include "motifscan/random.hpp"

namespace motifscan {

enum class NullModel {
    conserve_mutual,  // single edges and mutual dyads are rewired within their own class
    degrees_only,     // any two edges may swap; the mutual count floats
};

NullModel parse_null_model(std::string_view text);
std::string_view to_string(NullModel m);

struct RandomizationConfig {
    std::uint64_t swaps_per_edge = 100;
    std::uint64_t ensemble_size = 1000;
    std::uint64_t seed = 0;
    NullModel model = NullModel::conserve_mutual;

    /// Throws std::invalid_argument when swaps_per_edge < 1 or ensemble_size < 2.
    void validate() const;
};

struct SwapReport {
    std::uint64_t attempted = 0;
    std::uint64_t accepted = 0;
    bool single_class_frozen = false;  // fewer than two single edges
    bool mutual_class_frozen = false;  // fewer than two mutual dyads
};

/// One edge-swap Markov chain of swaps_per_edge x |E| attempts from `g`, seeded by
/// (cfg.seed, replica_index). Every node keeps its in- and out-degree; under
/// conserve_mutual the mutual-dyad count is also preserved.
DirectedGraph edge_swap_randomize(const DirectedGraph& g, const RandomizationConfig& cfg,
                                  std::uint64_t replica_index, SwapReport* report = nullptr);

/// Mutable rewiring state for one replica.
class SwapChain {
public:
    SwapChain(const DirectedGraph& g, NullModel model);
    ~SwapChain();
    SwapChain(SwapChain&&) noexcept;
    SwapChain& operator=(SwapChain&&) noexcept;

    /// Swaps single edges i and j: (a->b, c->d) => (a->d, c->b). Under degrees_only
    /// every edge is "single". Returns false, leaving the state untouched, when the
    /// result would contain a self-loop or duplicate, or (conserve_mutual) a new mutual pair.
    bool swap_single(std::size_t i, std::size_t j);

    /// Swaps mutual dyads i = {a,b} and j = {c,d} into {a,d} and {c,b} ({a,c}, {d,b} when
    /// `flip`). Same rejection rules as swap_single.
    bool swap_mutual(std::size_t i, std::size_t j, bool flip);

    /// Runs `attempts` proposals. The first edge is drawn uniformly over all directed
    /// edges and decides the class; the partner is drawn uniformly within that class.
    SwapReport run(Rng& rng, std::uint64_t attempts);

    [[nodiscard]] const std::vector<std::pair<NodeIndex, NodeIndex>>& single_edges() const {
        return singles_;
    }
    [[nodiscard]] const std::vector<std::pair<NodeIndex, NodeIndex>>& mutual_pairs() const {
        return mutuals_;
    }
    [[nodiscard]] DirectedGraph to_graph() const;

private:
    class EdgeIndex;

    const DirectedGraph* source_;
    NullModel model_;
    std::vector<std::pair<NodeIndex, NodeIndex>> singles_;
    std::vector<std::pair<NodeIndex, NodeIndex>> mutuals_;
    std::unique_ptr<EdgeIndex> index_;
};

/// Calls visit(r, replica) for every r < ensemble_size on up to `threads` workers.
/// Replica r depends only on (g, cfg, r).
void generate_ensemble(const DirectedGraph& g, const RandomizationConfig& cfg,
                       std::size_t threads,
                       const std::function<void(std::uint64_t, const DirectedGraph&)>& visit);

/// Full census of every replica, indexed by replica number.
std::vector<CensusResult> ensemble_censuses(const DirectedGraph& g, const RandomizationConfig& cfg,
                                            std::size_t threads = 1);

}  // namespace motifscan
