#include "motifscan/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "motifscan/random.hpp"

namespace motifscan {

namespace {

// Weighted sampling over a changing weight vector.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0.0) {}

    void add(std::size_t i, double delta) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
    }

    [[nodiscard]] double total() const {
        double s = 0.0;
        for (std::size_t i = tree_.size() - 1; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

    // Smallest index whose prefix sum exceeds `target`, restricted to [0, limit).
    [[nodiscard]] std::size_t find(double target, std::size_t limit) const {
        std::size_t pos = 0;
        std::size_t step = 1;
        while (step * 2 < tree_.size()) step *= 2;
        for (; step > 0; step /= 2) {
            if (pos + step < tree_.size() && tree_[pos + step] <= target) {
                pos += step;
                target -= tree_[pos];
            }
        }
        return std::min(pos, limit - 1);
    }

private:
    std::vector<double> tree_;
};

// Static weights: prefix sums plus binary search.
class Sampler {
public:
    explicit Sampler(std::span<const double> w) : prefix_(w.size()) {
        std::partial_sum(w.begin(), w.end(), prefix_.begin());
    }
    std::size_t draw(Rng& rng) const {
        const double x = rng.uniform() * prefix_.back();
        const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), x);
        return std::min<std::size_t>(it - prefix_.begin(), prefix_.size() - 1);
    }

private:
    std::vector<double> prefix_;
};

std::uint64_t pair_key(NodeIndex a, NodeIndex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::string firm_name(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "F%06zu", i);
    return buf;
}

// Upper edge of the lowest quartile of a standard normal.
constexpr double kLowerQuartileZ = -0.6744897501960817;

double attachment_offset(const SyntheticConfig& cfg) {
    return (cfg.attachment_exponent_target - 3.0) * static_cast<double>(cfg.edges_per_firm) *
           (1.0 + cfg.mutual_fraction);
}

}  // namespace

void SyntheticConfig::validate() const {
    if (n_firms < 10) throw ConfigError("n_firms must be at least 10");
    if (months < 1) throw ConfigError("months must be at least 1");
    if (start.month < 1 || start.month > 12) throw ConfigError("start month out of range");
    if (!(mutual_fraction >= 0.0 && mutual_fraction <= 1.0)) {
        throw ConfigError("mutual_fraction must lie in [0, 1]");
    }
    if (edges_per_firm < 1 || edges_per_firm >= n_firms) {
        throw ConfigError("edges_per_firm must lie in [1, n_firms)");
    }
    if (planted_star_centers > n_firms) {
        throw ConfigError("planted_star_centers exceeds n_firms");
    }
    if (!(center_asset_multiplier > 0.0)) throw ConfigError("center_asset_multiplier must be positive");
    if (!(center_attachment_boost > 0.0)) throw ConfigError("center_attachment_boost must be positive");
    if (!(asset_log_sd >= 0.0)) throw ConfigError("asset_log_sd must be non-negative");
    if (!(default_rate >= 0.0 && default_rate <= 1.0)) {
        throw ConfigError("default_rate must lie in [0, 1]");
    }
    const double min_degree =
        static_cast<double>(edges_per_firm) * (mutual_fraction >= 1.0 ? 2.0 : 1.0);
    if (!(min_degree + attachment_offset(*this) > 0.0) ||
        !std::isfinite(attachment_exponent_target)) {
        throw ConfigError("attachment_exponent_target is unreachable with these settings");
    }
}

SyntheticData generate_synthetic(const SyntheticConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n_firms;
    const std::size_t m = cfg.edges_per_firm;
    const double offset = attachment_offset(cfg);
    Rng rng(derive_seed(cfg.seed, 0, 1));
    Rng attr_rng(derive_seed(cfg.seed, 0, 2));

    // The earliest firms become centers.
    std::vector<char> is_center(n, 0);
    for (std::size_t i = 0; i < cfg.planted_star_centers; ++i) is_center[i] = 1;

    std::vector<Period> arrival(n);
    for (std::size_t t = 0; t < n; ++t) {
        const auto month = static_cast<int>(t * static_cast<std::size_t>(cfg.months) / n);
        arrival[t] = Period::from_index(cfg.start.index() + month);
    }

    std::vector<std::size_t> degree(n, 0);
    Fenwick weights(n);
    auto weight_of = [&](std::size_t i) {
        const double w = static_cast<double>(degree[i]) + offset;
        return is_center[i] ? w * cfg.center_attachment_boost : w;
    };

    SyntheticData out;
    std::vector<char> in_mutual(n, 0);
    auto amount = [&] {
        return std::round(std::exp(cfg.asset_log_mean - 1.0 + 0.5 * rng.normal()) * 100.0) / 100.0;
    };
    auto link = [&](std::size_t newcomer, std::size_t other, Period when) {
        std::size_t g = newcomer, b = other;
        if (is_center[other] && !is_center[newcomer]) {
            std::swap(g, b);
        } else if (!is_center[newcomer] || is_center[other]) {
            if (rng.coin()) std::swap(g, b);
        }
        out.records.push_back({firm_name(g), firm_name(b), when, amount()});
        std::size_t added = 2;
        if (cfg.mutual_fraction > 0.0 && rng.uniform() < cfg.mutual_fraction) {
            out.records.push_back({firm_name(b), firm_name(g), when, amount()});
            in_mutual[g] = in_mutual[b] = 1;
            added = 4;
        }
        degree[g] += added / 2;
        degree[b] += added / 2;
    };

    // Seed clique.
    for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t j = 0; j < i; ++j) link(i, j, arrival[i]);
    }
    for (std::size_t i = 0; i <= m; ++i) weights.add(i, weight_of(i));

    std::vector<std::size_t> targets;
    for (std::size_t t = m + 1; t < n; ++t) {
        targets.clear();
        const double total = weights.total();
        while (targets.size() < m) {
            const auto v = weights.find(rng.uniform() * total, t);
            if (std::find(targets.begin(), targets.end(), v) == targets.end()) targets.push_back(v);
        }
        std::vector<double> before(targets.size());
        for (std::size_t k = 0; k < targets.size(); ++k) before[k] = weight_of(targets[k]);
        for (auto v : targets) link(t, v, arrival[t]);
        for (std::size_t k = 0; k < targets.size(); ++k) {
            weights.add(targets[k], weight_of(targets[k]) - before[k]);
        }
        weights.add(t, weight_of(t));
    }

    for (std::size_t i = 0; i < n; ++i) {
        double z = attr_rng.normal();
        if (cfg.small_firm_mutuals && in_mutual[i] && !is_center[i]) {
            while (z >= kLowerQuartileZ) z = attr_rng.normal();
        }
        double assets = std::exp(cfg.asset_log_mean + cfg.asset_log_sd * z);
        if (is_center[i]) assets *= cfg.center_asset_multiplier;
        const bool defaulted = attr_rng.uniform() < cfg.default_rate;
        const auto id = firm_name(i);
        out.attributes.emplace(id, FirmAttributes{id, assets, defaulted});
        if (is_center[i]) out.star_centers.push_back(id);
    }
    std::sort(out.star_centers.begin(), out.star_centers.end());
    return out;
}

void PlantedMotifConfig::validate() const {
    if (n_nodes < 2 * mutual_dyads + 10) {
        throw ConfigError("too few nodes for the planted mutual dyads");
    }
    const std::size_t core = n_nodes - 2 * mutual_dyads;
    if (cyclic_triangles * 3 > core || out_stars * 3 > core) {
        throw ConfigError("too few core nodes for the planted triads");
    }
    const std::size_t planted = 4 * mutual_dyads + 2 * out_stars + 3 * cyclic_triangles;
    if (target_edges < planted) throw ConfigError("target_edges below the planted edge count");
    if (target_edges - planted > core * (core - 1) / 4) {
        throw ConfigError("target_edges too dense for the background");
    }
}

PlantedMotifGraph generate_planted_motifs(const PlantedMotifConfig& cfg) {
    cfg.validate();
    Rng rng(derive_seed(cfg.seed, 0, 3));
    const std::size_t core = cfg.n_nodes - 2 * cfg.mutual_dyads;

    // Background firms: heavy-tailed guarantor weight, borrower weight falling with it.
    std::vector<double> w_out(core), w_in(core);
    for (std::size_t i = 0; i < core; ++i) {
        w_out[i] = std::pow(1.0 - rng.uniform(), -1.0 / 1.5);
        w_in[i] = 1.0 / (w_out[i] * w_out[i]);
    }
    const Sampler guarantors(w_out), borrowers(w_in);

    PlantedMotifGraph out;
    std::vector<std::pair<NodeIndex, NodeIndex>> edges;
    std::unordered_set<std::uint64_t> adjacent, reserved;
    auto linked = [&](NodeIndex a, NodeIndex b) { return adjacent.count(pair_key(a, b)) > 0; };
    auto add = [&](NodeIndex a, NodeIndex b) {
        edges.emplace_back(a, b);
        adjacent.insert(pair_key(a, b));
    };
    auto any_core = [&] { return static_cast<NodeIndex>(rng.below(core)); };
    const std::size_t max_tries = 1000 * cfg.target_edges + 100000;
    auto guard = [&](std::size_t& tries) {
        if (++tries > max_tries) throw ConfigError("planted construction did not converge");
    };

    std::size_t tries = 0;
    while (out.triangles.size() < cfg.cyclic_triangles) {
        guard(tries);
        const NodeIndex a = any_core(), b = any_core(), c = any_core();
        if (a == b || b == c || a == c || linked(a, b) || linked(b, c) || linked(a, c)) continue;
        add(a, b);
        add(b, c);
        add(c, a);
        out.triangles.push_back({a, b, c});
    }
    // Mutual pairs on dedicated firms, each pair co-guaranteeing one background borrower.
    for (std::size_t i = 0; i < cfg.mutual_dyads; ++i) {
        const auto a = static_cast<NodeIndex>(core + 2 * i);
        const auto b = static_cast<NodeIndex>(a + 1);
        const NodeIndex c = any_core();
        add(a, b);
        add(b, a);
        add(a, c);
        add(b, c);
        out.mutual_pairs.emplace_back(a, b);
    }
    while (out.stars.size() < cfg.out_stars) {
        guard(tries);
        const auto c = static_cast<NodeIndex>(guarantors.draw(rng));
        const NodeIndex x = any_core(), y = any_core();
        if (c == x || c == y || x == y || linked(c, x) || linked(c, y) || linked(x, y)) continue;
        add(c, x);
        add(c, y);
        reserved.insert(pair_key(x, y));
        out.stars.push_back({c, x, y});
    }
    while (edges.size() < cfg.target_edges) {
        guard(tries);
        const auto u = static_cast<NodeIndex>(guarantors.draw(rng));
        const auto v = static_cast<NodeIndex>(borrowers.draw(rng));
        if (u == v || linked(u, v) || reserved.count(pair_key(u, v))) continue;
        add(u, v);
    }
    out.graph = DirectedGraph::from_edges(cfg.n_nodes, std::move(edges));
    return out;
}

}  // namespace motifscan
