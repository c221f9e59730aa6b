#include "motifscan/census.hpp"

#include <algorithm>
#include <string>

#include "motifscan/parallel.hpp"

namespace motifscan {

namespace {

constexpr std::size_t kDisconnected003 = 0, kDisconnected012 = 1, kDisconnected102 = 2;

void add_triad(CensusResult& r, TriadCode code) {
    const auto cls = triad_class_of(code);
    if (auto t = type_for_triad_class(cls)) {
        ++r.counts[static_cast<std::size_t>(*t)];
    } else if (cls == TriadClass::t012) {
        ++r.disconnected_triads[kDisconnected012];
    } else if (cls == TriadClass::t102) {
        ++r.disconnected_triads[kDisconnected102];
    } else {
        ++r.disconnected_triads[kDisconnected003];
    }
}

bool adjacent(const DirectedGraph& g, NodeIndex a, NodeIndex b) {
    auto n = g.neighbors(a);
    return std::binary_search(n.begin(), n.end(), b);
}

/// Walks the connected triples whose smallest-index dyad anchor lies in [begin, end).
/// Every connected triple is reported exactly once over the full node range; `on_dyad`
/// receives each connected pair (v < u) with the size of its joint neighbourhood.
template <typename OnDyad, typename OnTriple>
void walk_connected_triples(const DirectedGraph& g, NodeIndex begin, NodeIndex end,
                            OnDyad&& on_dyad, OnTriple&& on_triple) {
    for (NodeIndex v = begin; v < end; ++v) {
        auto nv = g.neighbors(v);
        for (auto u : nv) {
            if (u <= v) continue;
            auto nu = g.neighbors(u);
            // Merge N(u) and N(v) minus {u, v}.
            std::size_t joint = 0;
            auto a = nv.begin();
            auto b = nu.begin();
            while (a != nv.end() || b != nu.end()) {
                NodeIndex w;
                if (b == nu.end() || (a != nv.end() && *a < *b)) {
                    w = *a++;
                } else if (a == nv.end() || *b < *a) {
                    w = *b++;
                } else {
                    w = *a++;
                    ++b;
                }
                if (w == u || w == v) continue;
                ++joint;
                if (u < w || (v < w && w < u && !adjacent(g, v, w))) {
                    on_triple(v, u, w);
                }
            }
            on_dyad(v, u, joint);
        }
    }
}

}  // namespace

std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) / 2 * (n - 2) / 3; }

double CensusResult::relative_freq(int type_id) const {
    const auto total = type_id <= 2 ? connected_dyads() : connected_triads();
    if (total == 0) return 0.0;
    return static_cast<double>(count(type_id)) / static_cast<double>(total);
}

std::array<double, kTypeCount + 1> CensusResult::relative_freqs() const {
    std::array<double, kTypeCount + 1> f{};
    for (int t = 1; t <= kTypeCount; ++t) f[static_cast<std::size_t>(t)] = relative_freq(t);
    return f;
}

std::uint64_t CensusResult::connected_triads() const {
    std::uint64_t total = 0;
    for (int t = 3; t <= kTypeCount; ++t) total += counts[static_cast<std::size_t>(t)];
    return total;
}

std::uint64_t CensusResult::triad_class_count(TriadClass c) const {
    switch (c) {
        case TriadClass::t003: return disconnected_triads[kDisconnected003];
        case TriadClass::t012: return disconnected_triads[kDisconnected012];
        case TriadClass::t102: return disconnected_triads[kDisconnected102];
        default: return counts[static_cast<std::size_t>(*type_for_triad_class(c))];
    }
}

CensusResult& CensusResult::operator+=(const CensusResult& other) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    for (std::size_t i = 0; i < disconnected_triads.size(); ++i) {
        disconnected_triads[i] += other.disconnected_triads[i];
    }
    null_dyads += other.null_dyads;
    return *this;
}

CensusResult dyad_census(const DirectedGraph& g) {
    CensusResult r;
    r.n_nodes = g.node_count();
    r.n_edges = g.edge_count();
    const auto mutual = g.mutual_dyad_count();
    r.counts[kMutualDyad] = mutual;
    r.counts[kSingleLink] = g.edge_count() - 2 * mutual;
    r.null_dyads = choose2(g.node_count()) - r.counts[kSingleLink] - r.counts[kMutualDyad];
    return r;
}

CensusResult triad_census(const DirectedGraph& g, std::size_t threads) {
    const auto n = static_cast<NodeIndex>(g.node_count());
    // Fixed block layout keeps the reduction independent of the worker count.
    constexpr NodeIndex kBlock = 256;
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<CensusResult> partial(blocks);

    parallel_for(blocks, threads, [&](std::size_t b) {
        auto& r = partial[b];
        const auto begin = static_cast<NodeIndex>(b * kBlock);
        const auto end = std::min<NodeIndex>(n, begin + kBlock);
        walk_connected_triples(
            g, begin, end,
            [&](NodeIndex v, NodeIndex u, std::size_t joint) {
                // Triples made of this dyad plus a node adjacent to neither.
                const std::uint64_t lonely = n - joint - 2;
                const bool mutual = g.has_edge(v, u) && g.has_edge(u, v);
                r.disconnected_triads[mutual ? kDisconnected102 : kDisconnected012] += lonely;
            },
            [&](NodeIndex v, NodeIndex u, NodeIndex w) { add_triad(r, triad_code(g, v, u, w)); });
    });

    CensusResult total;
    for (const auto& p : partial) total += p;
    total.n_nodes = g.node_count();
    total.n_edges = g.edge_count();
    std::uint64_t seen = total.disconnected_triads[kDisconnected012] +
                         total.disconnected_triads[kDisconnected102] + total.connected_triads();
    total.disconnected_triads[kDisconnected003] = choose3(n) - seen;
    return total;
}

CensusResult full_census(const DirectedGraph& g, std::size_t threads) {
    auto r = triad_census(g, threads);
    const auto d = dyad_census(g);
    r.counts[kSingleLink] = d.counts[kSingleLink];
    r.counts[kMutualDyad] = d.counts[kMutualDyad];
    r.null_dyads = d.null_dyads;
    return r;
}

CensusResult triad_census_bruteforce(const DirectedGraph& g) {
    const auto n = static_cast<NodeIndex>(g.node_count());
    if (n > kBruteForceLimit) {
        throw CensusTooLarge("brute-force triad census refused for " + std::to_string(n) +
                             " nodes (limit " + std::to_string(kBruteForceLimit) +
                             "); use triad_census");
    }
    CensusResult r;
    r.n_nodes = n;
    r.n_edges = g.edge_count();
    for (NodeIndex a = 0; a < n; ++a) {
        for (NodeIndex b = a + 1; b < n; ++b) {
            for (NodeIndex c = b + 1; c < n; ++c) {
                add_triad(r, triad_code(g, a, b, c));
            }
        }
    }
    return r;
}

Occurrence canonical_triad_occurrence(const DirectedGraph& g, NodeIndex a, NodeIndex b,
                                      NodeIndex c) {
    std::array<NodeIndex, 3> x{a, b, c};
    std::sort(x.begin(), x.end());
    const auto code = triad_code(g, x[0], x[1], x[2]);
    const auto perm = canonical_triad_order(code);
    Occurrence occ;
    occ.type_id = classify_triad(code).value_or(0);
    occ.size = 3;
    occ.members = {x[perm[0]], x[perm[1]], x[perm[2]]};
    return occ;
}

void for_each_occurrence(const DirectedGraph& g, int type_id,
                         const std::function<void(const Occurrence&)>& visit) {
    const auto& type = subgraph_type(type_id);
    if (type.size == 2) {
        for (const auto& [u, v] : g.edges()) {
            const bool back = g.has_edge(v, u);
            if (type_id == kSingleLink && !back) {
                visit(Occurrence{type_id, {u, v, 0}, 2});
            } else if (type_id == kMutualDyad && back && u < v) {
                visit(Occurrence{type_id, {u, v, 0}, 2});
            }
        }
        return;
    }
    const auto wanted = *type.triad_class;
    walk_connected_triples(
        g, 0, static_cast<NodeIndex>(g.node_count()), [](NodeIndex, NodeIndex, std::size_t) {},
        [&](NodeIndex v, NodeIndex u, NodeIndex w) {
            if (triad_class_of(triad_code(g, v, u, w)) == wanted) {
                visit(canonical_triad_occurrence(g, v, u, w));
            }
        });
}

std::vector<Occurrence> enumerate_occurrences(const DirectedGraph& g, int type_id) {
    std::vector<Occurrence> out;
    for_each_occurrence(g, type_id, [&out](const Occurrence& o) { out.push_back(o); });
    return out;
}

}  // namespace motifscan
