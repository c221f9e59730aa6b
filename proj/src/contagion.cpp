#include "motifscan/contagion.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "motifscan/census.hpp"
#include "motifscan/parallel.hpp"
#include "motifscan/random.hpp"

namespace motifscan {

std::uint64_t CascadeConfig::effective_trials() const {
    if (trials) return *trials;
    return transmission_probability >= 1.0 ? 1 : 1000;
}

void CascadeConfig::validate() const {
    if (!(transmission_probability > 0.0 && transmission_probability <= 1.0)) {
        throw std::invalid_argument("transmission probability must lie in (0, 1]");
    }
    if (trials && *trials == 0) {
        throw std::invalid_argument("trials must be positive");
    }
    if (max_rounds && *max_rounds == 0) {
        throw std::invalid_argument("max_rounds must be positive");
    }
}

CascadeResult simulate_cascade(const DirectedGraph& g, std::span<const NodeIndex> seeds,
                               const CascadeConfig& cfg, std::uint64_t trial) {
    const auto n = g.node_count();
    CascadeResult res;
    std::vector<char> defaulted(n, 0);
    std::vector<NodeIndex> frontier;
    for (auto s : seeds) {
        if (s >= n) throw std::out_of_range("cascade seed outside the graph");
        if (!defaulted[s]) {
            defaulted[s] = 1;
            frontier.push_back(s);
        }
    }
    res.seed_set = frontier;
    std::sort(res.seed_set.begin(), res.seed_set.end());

    const double p = cfg.transmission_probability;
    const std::uint64_t trial_key = derive_seed(cfg.seed, trial, 0xCA5CADE);
    std::vector<NodeIndex> next;
    while (!frontier.empty() && (!cfg.max_rounds || res.rounds < *cfg.max_rounds)) {
        next.clear();
        for (auto borrower : frontier) {
            for (auto guarantor : g.in_neighbors(borrower)) {
                if (defaulted[guarantor]) continue;
                if (p < 1.0) {
                    const auto edge = static_cast<std::uint64_t>(guarantor) * n + borrower;
                    if (hash_to_unit(splitmix64(trial_key ^ splitmix64(edge))) >= p) continue;
                }
                defaulted[guarantor] = 1;
                next.push_back(guarantor);
            }
        }
        if (next.empty()) break;
        ++res.rounds;
        frontier.swap(next);
    }
    for (NodeIndex u = 0; u < n; ++u) {
        if (defaulted[u]) res.defaulted.push_back(u);
    }
    res.additional_defaults = res.defaulted.size() - res.seed_set.size();
    return res;
}

ContagionScope parse_contagion_scope(std::string_view text) {
    if (text == "induced") return ContagionScope::induced;
    if (text == "embedded") return ContagionScope::embedded;
    throw std::invalid_argument("unknown contagion scope '" + std::string(text) + "'");
}

std::string_view to_string(ContagionScope s) {
    return s == ContagionScope::induced ? "induced" : "embedded";
}

ContagionAbility contagion_ability(const DirectedGraph& g, int type_id, const CascadeConfig& cfg,
                                   ContagionScope scope, std::size_t threads) {
    cfg.validate();
    ContagionAbility out;
    out.type_id = type_id;
    out.probability = cfg.transmission_probability;
    out.trials = cfg.effective_trials();

    const auto occurrences = enumerate_occurrences(g, type_id);
    out.occurrences = occurrences.size();
    if (occurrences.empty()) return out;

    const auto size = static_cast<std::uint64_t>(subgraph_type(type_id).size);
    const auto trials = out.trials;
    std::vector<std::uint64_t> totals(occurrences.size(), 0);
    parallel_for(occurrences.size(), threads, [&](std::size_t o) {
        const auto& occ = occurrences[o];
        std::vector<NodeIndex> members(occ.nodes().begin(), occ.nodes().end());
        std::sort(members.begin(), members.end());
        const DirectedGraph local =
            scope == ContagionScope::induced ? g.induced(members) : DirectedGraph{};
        const DirectedGraph& arena = scope == ContagionScope::induced ? local : g;
        for (std::uint64_t i = 0; i < size; ++i) {
            const NodeIndex seed =
                scope == ContagionScope::induced ? static_cast<NodeIndex>(i) : members[i];
            for (std::uint64_t t = 0; t < trials; ++t) {
                const auto trial = (o * size + i) * trials + t;
                totals[o] += simulate_cascade(arena, std::span(&seed, 1), cfg, trial)
                                 .additional_defaults;
            }
        }
    });
    std::uint64_t total = 0;
    for (auto t : totals) total += t;
    out.ability = static_cast<double>(total) /
                  static_cast<double>(occurrences.size() * size * trials);
    return out;
}

std::vector<ContagionAbility> rank_structures_by_contagion(const DirectedGraph& g,
                                                           const CascadeConfig& cfg,
                                                           ContagionScope scope,
                                                           std::size_t threads) {
    std::vector<ContagionAbility> out;
    for (const auto& t : catalog()) {
        auto a = contagion_ability(g, t.type_id, cfg, scope, threads);
        if (a.ability) out.push_back(a);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (*a.ability != *b.ability) return *a.ability < *b.ability;
        return a.type_id < b.type_id;
    });
    return out;
}

}  // namespace motifscan
