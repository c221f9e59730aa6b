#include "motifscan/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace motifscan {

Period Period::parse(const std::string& text) {
    // Strict YYYY-MM.
    if (text.size() != 7 || text[4] != '-') {
        throw std::invalid_argument("period must be YYYY-MM: '" + text + "'");
    }
    for (std::size_t i : {0, 1, 2, 3, 5, 6}) {
        if (text[i] < '0' || text[i] > '9') {
            throw std::invalid_argument("period must be YYYY-MM: '" + text + "'");
        }
    }
    const int year = std::stoi(text.substr(0, 4));
    const int month = std::stoi(text.substr(5, 2));
    if (month < 1 || month > 12) {
        throw std::invalid_argument("month out of range in period '" + text + "'");
    }
    return Period{year, month};
}

std::string Period::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

DirectedGraph DirectedGraph::from_labelled_edges(
    std::span<const std::pair<std::string, std::string>> edges,
    std::vector<std::string> extra_nodes) {
    std::vector<std::string> ids = std::move(extra_nodes);
    ids.reserve(ids.size() + 2 * edges.size());
    for (const auto& [u, v] : edges) {
        ids.push_back(u);
        ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    auto lookup = [&ids](const std::string& s) {
        return static_cast<NodeIndex>(std::lower_bound(ids.begin(), ids.end(), s) - ids.begin());
    };
    std::vector<std::pair<NodeIndex, NodeIndex>> idx;
    idx.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        idx.emplace_back(lookup(u), lookup(v));
    }
    return from_index_edges(std::move(ids), std::move(idx));
}

DirectedGraph DirectedGraph::from_index_edges(std::vector<std::string> ids,
                                              std::vector<std::pair<NodeIndex, NodeIndex>> edges) {
    DirectedGraph g;
    g.ids_ = std::move(ids);
    const auto n = g.ids_.size();
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw std::out_of_range("edge endpoint outside node table");
        }
        if (u == v) {
            throw std::invalid_argument("self-loop on node '" + g.ids_[u] + "'");
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges_ = std::move(edges);
    g.index_.reserve(n);
    for (NodeIndex i = 0; i < n; ++i) {
        g.index_.emplace(g.ids_[i], i);
    }
    g.build_adjacency();
    return g;
}

DirectedGraph DirectedGraph::from_edges(std::size_t n,
                                        std::vector<std::pair<NodeIndex, NodeIndex>> edges) {
    // Zero-padding keeps lexicographic and numeric order aligned.
    std::vector<std::string> ids(n);
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "n%07zu", i);
        ids[i] = buf;
    }
    return from_index_edges(std::move(ids), std::move(edges));
}

void DirectedGraph::build_adjacency() {
    const auto n = ids_.size();
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++out_offsets_[u + 1];
        ++in_offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        out_offsets_[i + 1] += out_offsets_[i];
        in_offsets_[i + 1] += in_offsets_[i];
    }
    out_.resize(edges_.size());
    in_.resize(edges_.size());
    {
        auto out_pos = out_offsets_;
        auto in_pos = in_offsets_;
        // edges_ is sorted by (u, v), so out lists come out sorted; in lists are sorted
        // by source because sources are visited in increasing order.
        for (const auto& [u, v] : edges_) {
            out_[out_pos[u]++] = v;
            in_[in_pos[v]++] = u;
        }
    }
    und_offsets_.assign(n + 1, 0);
    und_.clear();
    und_.reserve(2 * edges_.size());
    for (NodeIndex u = 0; u < n; ++u) {
        auto o = out_neighbors(u);
        auto i = in_neighbors(u);
        std::set_union(o.begin(), o.end(), i.begin(), i.end(), std::back_inserter(und_));
        und_offsets_[u + 1] = und_.size();
    }
}

bool DirectedGraph::has_edge(NodeIndex u, NodeIndex v) const {
    auto out = out_neighbors(u);
    return std::binary_search(out.begin(), out.end(), v);
}

std::optional<NodeIndex> DirectedGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::size_t> DirectedGraph::in_degrees() const {
    std::vector<std::size_t> d(node_count());
    for (NodeIndex u = 0; u < d.size(); ++u) d[u] = in_degree(u);
    return d;
}

std::vector<std::size_t> DirectedGraph::out_degrees() const {
    std::vector<std::size_t> d(node_count());
    for (NodeIndex u = 0; u < d.size(); ++u) d[u] = out_degree(u);
    return d;
}

std::size_t DirectedGraph::mutual_dyad_count() const {
    std::size_t count = 0;
    for (const auto& [u, v] : edges_) {
        if (u < v && has_edge(v, u)) ++count;
    }
    return count;
}

DirectedGraph DirectedGraph::induced(std::span<const NodeIndex> members) const {
    std::vector<std::string> ids;
    ids.reserve(members.size());
    for (auto m : members) ids.push_back(ids_[m]);
    const bool sorted = std::is_sorted(members.begin(), members.end());
    std::vector<std::pair<NodeIndex, NodeIndex>> sub;
    for (NodeIndex i = 0; i < members.size(); ++i) {
        for (NodeIndex j = 0; j < members.size(); ++j) {
            if (i != j && has_edge(members[i], members[j])) sub.emplace_back(i, j);
        }
    }
    if (!sorted) {
        // Position order must survive, so fall back to positional ids.
        for (NodeIndex i = 0; i < ids.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "p%04u:", i);
            ids[i] = buf + ids[i];
        }
    }
    return from_index_edges(std::move(ids), std::move(sub));
}

DirectedGraph build_graph(std::span<const GuaranteeRecord> records, PeriodRange window) {
    std::vector<std::pair<std::string, std::string>> edges;
    if (window.empty()) {
        return {};
    }
    for (const auto& r : records) {
        if (window.contains(r.period)) {
            edges.emplace_back(r.guarantor_id, r.borrower_id);
        }
    }
    return DirectedGraph::from_labelled_edges(edges);
}

std::vector<std::pair<Period, DirectedGraph>> monthly_slices(
    std::span<const GuaranteeRecord> records, WindowMode mode) {
    std::vector<std::pair<Period, DirectedGraph>> slices;
    if (records.empty()) {
        return slices;
    }
    auto [lo, hi] = std::minmax_element(
        records.begin(), records.end(),
        [](const GuaranteeRecord& a, const GuaranteeRecord& b) { return a.period < b.period; });
    const Period first = lo->period;
    const Period last = hi->period;

    // Bucket once, then assemble per month.
    std::vector<std::vector<std::pair<std::string, std::string>>> buckets(
        static_cast<std::size_t>(last.index() - first.index() + 1));
    for (const auto& r : records) {
        buckets[static_cast<std::size_t>(r.period.index() - first.index())].emplace_back(
            r.guarantor_id, r.borrower_id);
    }
    std::vector<std::pair<std::string, std::string>> running;
    for (std::size_t m = 0; m < buckets.size(); ++m) {
        const Period p = Period::from_index(first.index() + static_cast<int>(m));
        if (mode == WindowMode::cumulative) {
            running.insert(running.end(), buckets[m].begin(), buckets[m].end());
            slices.emplace_back(p, DirectedGraph::from_labelled_edges(running));
        } else {
            slices.emplace_back(p, DirectedGraph::from_labelled_edges(buckets[m]));
        }
    }
    return slices;
}

double global_clustering_coefficient(const DirectedGraph& g) {
    // Each triangle is counted once, at its smallest vertex.
    std::uint64_t triangles = 0;
    std::uint64_t triples = 0;
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        auto nu = g.neighbors(u);
        const std::uint64_t d = nu.size();
        if (d >= 2) triples += d * (d - 1) / 2;
        for (auto v : nu) {
            if (v <= u) continue;
            auto nv = g.neighbors(v);
            auto a = std::upper_bound(nu.begin(), nu.end(), v);
            auto b = std::upper_bound(nv.begin(), nv.end(), v);
            while (a != nu.end() && b != nv.end()) {
                if (*a < *b) {
                    ++a;
                } else if (*b < *a) {
                    ++b;
                } else {
                    ++triangles;
                    ++a;
                    ++b;
                }
            }
        }
    }
    if (triples == 0) return 0.0;
    return 3.0 * static_cast<double>(triangles) / static_cast<double>(triples);
}

namespace {

std::size_t degree_of(const DirectedGraph& g, NodeIndex u, DegreeKind which) {
    switch (which) {
        case DegreeKind::in: return g.in_degree(u);
        case DegreeKind::out: return g.out_degree(u);
        case DegreeKind::total: return g.degree(u);
    }
    return 0;
}

}  // namespace

DegreeDistribution fit_power_law(const DirectedGraph& g, DegreeKind which, std::size_t k_min,
                                 std::size_t min_tail) {
    DegreeDistribution dist;
    dist.k_min = std::max<std::size_t>(k_min, 1);
    std::size_t k_max = 0;
    double sum_log = 0.0;
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        const auto k = degree_of(g, u, which);
        ++dist.histogram[k];
        if (k >= dist.k_min) {
            ++dist.n_tail;
            sum_log += std::log(static_cast<double>(k));
            k_max = std::max(k_max, k);
        }
    }
    std::size_t distinct_tail = 0;
    for (auto it = dist.histogram.lower_bound(dist.k_min); it != dist.histogram.end(); ++it) {
        ++distinct_tail;
    }
    if (dist.n_tail < min_tail || distinct_tail < 2) {
        return dist;
    }

    // Normalisation by truncated summation up to 10 x k_max.
    const std::size_t cutoff = 10 * k_max;
    const double n = static_cast<double>(dist.n_tail);
    auto neg_log_likelihood = [&](double lambda) {
        double z = 0.0;
        for (std::size_t k = cutoff; k >= dist.k_min; --k) {
            z += std::pow(static_cast<double>(k), -lambda);
        }
        return n * std::log(z) + lambda * sum_log;
    };

    // Golden-section search; the likelihood is log-concave in lambda.
    double lo = 1.0001, hi = 8.0;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = neg_log_likelihood(x1), f2 = neg_log_likelihood(x2);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = neg_log_likelihood(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = neg_log_likelihood(x2);
        }
    }
    const double lambda = 0.5 * (lo + hi);
    if (lambda > 1.0) {
        dist.fitted_exponent = lambda;
    }
    return dist;
}

}  // namespace motifscan
