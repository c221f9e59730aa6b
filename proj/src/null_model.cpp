#include "motifscan/null_model.hpp"

#include <string>
#include <unordered_set>

#include "motifscan/parallel.hpp"

namespace motifscan {

NullModel parse_null_model(std::string_view text) {
    if (text == "conserve-mutual") return NullModel::conserve_mutual;
    if (text == "degrees-only") return NullModel::degrees_only;
    throw std::invalid_argument("unknown null model '" + std::string(text) + "'");
}

std::string_view to_string(NullModel m) {
    return m == NullModel::conserve_mutual ? "conserve-mutual" : "degrees-only";
}

void RandomizationConfig::validate() const {
    if (swaps_per_edge < 1) {
        throw std::invalid_argument("swaps_per_edge must be at least 1");
    }
    if (ensemble_size < 2) {
        throw std::invalid_argument("ensemble_size must be at least 2");
    }
}

/// Directed-edge membership: a bit matrix for small graphs, a hash set otherwise.
class SwapChain::EdgeIndex {
public:
    explicit EdgeIndex(std::size_t n) : n_(n) {
        if (n <= kDenseLimit) bits_.assign((n * n + 63) / 64, 0);
    }

    [[nodiscard]] bool has(NodeIndex u, NodeIndex v) const {
        const auto k = key(u, v);
        if (!bits_.empty()) return (bits_[k >> 6] >> (k & 63)) & 1U;
        return sparse_.count(k) != 0;
    }
    void add(NodeIndex u, NodeIndex v) {
        const auto k = key(u, v);
        if (!bits_.empty()) {
            bits_[k >> 6] |= std::uint64_t{1} << (k & 63);
        } else {
            sparse_.insert(k);
        }
    }
    void remove(NodeIndex u, NodeIndex v) {
        const auto k = key(u, v);
        if (!bits_.empty()) {
            bits_[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
        } else {
            sparse_.erase(k);
        }
    }

private:
    static constexpr std::size_t kDenseLimit = 4096;

    [[nodiscard]] std::uint64_t key(NodeIndex u, NodeIndex v) const {
        return static_cast<std::uint64_t>(u) * n_ + v;
    }

    std::size_t n_;
    std::vector<std::uint64_t> bits_;
    std::unordered_set<std::uint64_t> sparse_;
};

SwapChain::SwapChain(const DirectedGraph& g, NullModel model)
    : source_(&g), model_(model), index_(std::make_unique<EdgeIndex>(g.node_count())) {
    for (const auto& [u, v] : g.edges()) {
        index_->add(u, v);
        if (model_ == NullModel::conserve_mutual && g.has_edge(v, u)) {
            if (u < v) mutuals_.emplace_back(u, v);
        } else {
            singles_.emplace_back(u, v);
        }
    }
}

SwapChain::~SwapChain() = default;
SwapChain::SwapChain(SwapChain&&) noexcept = default;
SwapChain& SwapChain::operator=(SwapChain&&) noexcept = default;

bool SwapChain::swap_single(std::size_t i, std::size_t j) {
    const auto [a, b] = singles_[i];
    const auto [c, d] = singles_[j];
    if (a == c || b == d) return false;  // no-op
    if (a == d || c == b) return false;  // self-loop
    if (index_->has(a, d) || index_->has(c, b)) return false;
    if (model_ == NullModel::conserve_mutual && (index_->has(d, a) || index_->has(b, c))) {
        return false;
    }
    index_->remove(a, b);
    index_->remove(c, d);
    index_->add(a, d);
    index_->add(c, b);
    singles_[i] = {a, d};
    singles_[j] = {c, b};
    return true;
}

bool SwapChain::swap_mutual(std::size_t i, std::size_t j, bool flip) {
    const auto [a, b] = mutuals_[i];
    auto [c, d] = mutuals_[j];
    if (flip) std::swap(c, d);
    if (a == c || b == d) return false;
    if (a == d || c == b) return false;
    if (index_->has(a, d) || index_->has(d, a) || index_->has(c, b) || index_->has(b, c)) {
        return false;
    }
    index_->remove(a, b);
    index_->remove(b, a);
    index_->remove(c, d);
    index_->remove(d, c);
    index_->add(a, d);
    index_->add(d, a);
    index_->add(c, b);
    index_->add(b, c);
    mutuals_[i] = std::minmax(a, d);
    mutuals_[j] = std::minmax(c, b);
    return true;
}

SwapReport SwapChain::run(Rng& rng, std::uint64_t attempts) {
    SwapReport report;
    const std::uint64_t singles = singles_.size();
    const std::uint64_t total = singles + 2 * mutuals_.size();
    report.single_class_frozen = singles_.size() < 2;
    report.mutual_class_frozen = model_ == NullModel::conserve_mutual && mutuals_.size() < 2;
    if (total == 0) return report;
    for (std::uint64_t t = 0; t < attempts; ++t) {
        ++report.attempted;
        const auto k = rng.below(total);
        if (k < singles) {
            if (report.single_class_frozen) continue;
            const auto j = rng.below(singles);
            if (j != k && swap_single(k, j)) ++report.accepted;
        } else {
            if (report.mutual_class_frozen) continue;
            const auto i = (k - singles) / 2;
            const auto j = rng.below(mutuals_.size());
            const bool flip = rng.coin();
            if (j != i && swap_mutual(i, j, flip)) ++report.accepted;
        }
    }
    return report;
}

DirectedGraph SwapChain::to_graph() const {
    std::vector<std::pair<NodeIndex, NodeIndex>> edges;
    edges.reserve(singles_.size() + 2 * mutuals_.size());
    edges.insert(edges.end(), singles_.begin(), singles_.end());
    for (const auto& [u, v] : mutuals_) {
        edges.emplace_back(u, v);
        edges.emplace_back(v, u);
    }
    return DirectedGraph::from_index_edges(source_->ids(), std::move(edges));
}

DirectedGraph edge_swap_randomize(const DirectedGraph& g, const RandomizationConfig& cfg,
                                  std::uint64_t replica_index, SwapReport* report) {
    SwapChain chain(g, cfg.model);
    Rng rng(derive_seed(cfg.seed, replica_index));
    const auto r = chain.run(rng, cfg.swaps_per_edge * g.edge_count());
    if (report) *report = r;
    return chain.to_graph();
}

void generate_ensemble(const DirectedGraph& g, const RandomizationConfig& cfg,
                       std::size_t threads,
                       const std::function<void(std::uint64_t, const DirectedGraph&)>& visit) {
    cfg.validate();
    parallel_for(cfg.ensemble_size, threads, [&](std::size_t r) {
        const auto replica = edge_swap_randomize(g, cfg, r);
        visit(r, replica);
    });
}

std::vector<CensusResult> ensemble_censuses(const DirectedGraph& g, const RandomizationConfig& cfg,
                                            std::size_t threads) {
    std::vector<CensusResult> out(cfg.ensemble_size);
    generate_ensemble(g, cfg, threads, [&out](std::uint64_t r, const DirectedGraph& replica) {
        out[r] = full_census(replica);
    });
    return out;
}

}  // namespace motifscan
