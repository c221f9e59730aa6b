#include "motifscan/heterogeneity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace motifscan {

namespace {

/// Midranks of the pooled sample, doubled so that ties stay integral.
std::vector<long> doubled_midranks(std::span<const double> pooled,
                                   std::vector<std::size_t>* tie_sizes) {
    std::vector<std::size_t> order(pooled.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
    std::vector<long> ranks(pooled.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        // Ranks i+1 .. j+1 share (i+1 + j+1) / 2; doubled: i + j + 2.
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = static_cast<long>(i + j + 2);
        if (tie_sizes) tie_sizes->push_back(j - i + 1);
        i = j + 1;
    }
    return ranks;
}

double exact_two_sided(const std::vector<long>& ranks, std::size_t n1, long observed) {
    // ways[k][s]: subsets of size k with doubled rank sum s.
    const long max_sum = std::accumulate(ranks.begin(), ranks.end(), 0L);
    std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (long r : ranks) {
        for (std::size_t k = n1; k >= 1; --k) {
            for (long s = max_sum; s >= r; --s) ways[k][s] += ways[k - 1][s - r];
        }
    }
    const std::size_t n = ranks.size();
    // Doubled rank sums have mean n1 (n + 1).
    const long centre = static_cast<long>(n1 * (n + 1));
    const long observed_dev = std::labs(observed - centre);
    double extreme = 0.0, total = 0.0;
    for (long s = 0; s <= max_sum; ++s) {
        const double w = ways[n1][s];
        if (w == 0.0) continue;
        total += w;
        if (std::labs(s - centre) >= observed_dev) extreme += w;
    }
    return std::min(1.0, extreme / total);
}

double median_of(std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    return quartiles(std::move(s))->median;
}

}  // namespace

RankSumResult mann_whitney(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("rank-sum test needs two non-empty samples");
    }
    const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<std::size_t> ties;
    const auto ranks = doubled_midranks(pooled, &ties);
    const long doubled_r1 = std::accumulate(ranks.begin(), ranks.begin() + n1, 0L);

    RankSumResult res;
    const double r1 = doubled_r1 / 2.0;
    res.statistic = r1 - static_cast<double>(n1 * (n1 + 1)) / 2.0;
    const double mean_u = static_cast<double>(n1 * n2) / 2.0;

    if (ties.size() == 1) {
        // Everything tied.
        res.statistic = mean_u;
        res.p_value = 1.0;
        res.exact = n1 <= kExactRankSumLimit && n2 <= kExactRankSumLimit;
        return res;
    }
    if (n1 <= kExactRankSumLimit && n2 <= kExactRankSumLimit) {
        res.exact = true;
        res.p_value = exact_two_sided(ranks, n1, doubled_r1);
        return res;
    }

    double tie_term = 0.0;
    for (auto t : ties) {
        const double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double nd = static_cast<double>(n);
    const double var = static_cast<double>(n1 * n2) / 12.0 *
                       ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
    const double dev = std::max(0.0, std::abs(res.statistic - mean_u) - 0.5);
    const double z = dev / std::sqrt(var);
    res.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return res;
}

std::optional<Quartiles> quartiles(std::vector<double> values) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    auto at = [&](double q) {
        const double h = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const auto hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    return Quartiles{at(0.25), at(0.5), at(0.75)};
}

RoleProfile role_profile(const DirectedGraph& g, const AttributeMap& attrs, int type_id,
                         int position) {
    const auto& type = subgraph_type(type_id);
    if (position < 0 || position >= type.size) {
        throw std::out_of_range("position " + std::to_string(position) + " not in type " +
                                std::to_string(type_id));
    }
    RoleProfile p;
    p.type_id = type_id;
    p.position = type.position_class[position];
    std::vector<int> slots;
    for (int i = 0; i < type.size; ++i) {
        if (type.position_class[i] == p.position) slots.push_back(i);
    }
    for_each_occurrence(g, type_id, [&](const Occurrence& occ) {
        ++p.occurrences;
        for (int slot : slots) {
            ++p.slots;
            auto it = attrs.find(g.id(occ.members[slot]));
            if (it != attrs.end()) p.samples.push_back(it->second.total_assets);
        }
    });
    p.coverage = p.slots == 0 ? 0.0
                              : static_cast<double>(p.samples.size()) / static_cast<double>(p.slots);
    p.asset_quartiles = quartiles(p.samples);
    return p;
}

std::vector<double> population_assets(const DirectedGraph& g, const AttributeMap& attrs) {
    std::vector<double> out;
    for (const auto& id : g.ids()) {
        auto it = attrs.find(id);
        if (it != attrs.end()) out.push_back(it->second.total_assets);
    }
    return out;
}

RoleComparison compare_roles(std::span<const double> left, std::span<const double> right,
                             std::string left_label, std::string right_label) {
    const auto test = mann_whitney(left, right);
    RoleComparison c;
    c.left = std::move(left_label);
    c.right = std::move(right_label);
    c.statistic = test.statistic;
    c.p_value = test.p_value;
    c.exact = test.exact;
    const double ml = median_of(left);
    const double mr = median_of(right);
    c.median_ratio = mr > 0.0 ? ml / mr : std::numeric_limits<double>::quiet_NaN();
    return c;
}

std::span<const int> high_risk_types() {
    static constexpr std::array<int, 8> kTypes{2, 8, 9, 11, 12, 13, 14, 15};
    return kTypes;
}

std::vector<RiskEntry> default_risk_ranking(const DirectedGraph& g,
                                            std::span<const MotifStatistics> stats,
                                            const AttributeMap& attrs) {
    std::vector<RiskEntry> entries(g.node_count());
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        entries[u].firm = g.id(u);
        entries[u].degree = g.degree(u);
        if (auto it = attrs.find(g.id(u)); it != attrs.end()) {
            entries[u].known_default = it->second.default_flag;
        }
    }
    for (int t : high_risk_types()) {
        auto s = std::find_if(stats.begin(), stats.end(),
                              [t](const MotifStatistics& m) { return m.type_id == t; });
        if (s == stats.end() || !s->is_motif) continue;
        for_each_occurrence(g, t, [&](const Occurrence& occ) {
            for (auto m : occ.nodes()) ++entries[m].appearances[static_cast<std::size_t>(t)];
        });
    }
    for (auto& e : entries) {
        const auto total = std::accumulate(e.appearances.begin(), e.appearances.end(),
                                           std::uint64_t{0});
        e.score = e.degree == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(e.degree);
    }
    std::sort(entries.begin(), entries.end(), [](const RiskEntry& a, const RiskEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.firm < b.firm;
    });
    return entries;
}

}  // namespace motifscan
