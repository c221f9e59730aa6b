#pragma once

#include <set>
#include <utility>
#include <vector>

#include "motifscan/graph.hpp"
#include "motifscan/random.hpp"

namespace motifscan::testing {

/// Directed Erdos-Renyi graph: each ordered pair present with probability `density`.
inline DirectedGraph random_digraph(std::size_t n, double density, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<NodeIndex, NodeIndex>> edges;
    for (NodeIndex u = 0; u < n; ++u) {
        for (NodeIndex v = 0; v < n; ++v) {
            if (u != v && rng.uniform() < density) edges.emplace_back(u, v);
        }
    }
    return DirectedGraph::from_edges(n, std::move(edges));
}

/// Directed graph whose out-endpoints follow a heavy-tailed degree sequence; endpoints are
/// picked with probability proportional to (degree + 1).
inline DirectedGraph heavy_tailed_digraph(std::size_t n, std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<NodeIndex> out_pool, in_pool;
    for (NodeIndex u = 0; u < n; ++u) {
        out_pool.push_back(u);
        in_pool.push_back(u);
    }
    std::set<std::pair<NodeIndex, NodeIndex>> edges;
    while (edges.size() < m) {
        const auto u = out_pool[rng.below(out_pool.size())];
        const auto v = in_pool[rng.below(in_pool.size())];
        if (u == v || !edges.emplace(u, v).second) continue;
        out_pool.push_back(u);
        in_pool.push_back(v);
    }
    return DirectedGraph::from_edges(n, {edges.begin(), edges.end()});
}

}  // namespace motifscan::testing
