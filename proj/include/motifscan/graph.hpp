#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace motifscan {

using NodeIndex = std::uint32_t;

/// Calendar month. Ordered chronologically.
struct Period {
    int year = 0;
    int month = 1;  // 1..12

    /// Months since year 0, used for arithmetic and ordering.
    [[nodiscard]] constexpr int index() const { return year * 12 + (month - 1); }
    [[nodiscard]] static constexpr Period from_index(int idx) {
        return Period{idx / 12, idx % 12 + 1};
    }
    [[nodiscard]] constexpr Period next() const { return from_index(index() + 1); }

    /// Parses `YYYY-MM`; throws std::invalid_argument on anything else.
    [[nodiscard]] static Period parse(const std::string& text);
    [[nodiscard]] std::string to_string() const;

    friend constexpr auto operator<=>(const Period& a, const Period& b) {
        return a.index() <=> b.index();
    }
    friend constexpr bool operator==(const Period& a, const Period& b) = default;
};

/// Inclusive range of months.
struct PeriodRange {
    Period first;
    Period last;

    [[nodiscard]] constexpr bool contains(Period p) const { return first <= p && p <= last; }
    [[nodiscard]] constexpr int months() const { return last.index() - first.index() + 1; }
    [[nodiscard]] constexpr bool empty() const { return last < first; }
};

/// One guarantee: `guarantor_id` assumes the loan obligation of `borrower_id`.
struct GuaranteeRecord {
    std::string guarantor_id;
    std::string borrower_id;
    Period period;
    std::optional<double> amount;

    friend bool operator==(const GuaranteeRecord&, const GuaranteeRecord&) = default;
};

struct FirmAttributes {
    std::string firm_id;
    double total_assets = 0.0;
    bool default_flag = false;

    friend bool operator==(const FirmAttributes&, const FirmAttributes&) = default;
};

using AttributeMap = std::map<std::string, FirmAttributes>;

/// Immutable simple digraph over dense indices. Node ids are kept sorted so that
/// index order is a function of the id set alone.
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Builds from string-labelled edges. Self-loops throw; duplicates collapse.
    static DirectedGraph from_labelled_edges(
        std::span<const std::pair<std::string, std::string>> edges,
        std::vector<std::string> extra_nodes = {});

    /// Builds from index pairs over an existing id table (ids must be sorted and unique).
    /// Duplicates collapse; self-loops throw.
    static DirectedGraph from_index_edges(std::vector<std::string> ids,
                                          std::vector<std::pair<NodeIndex, NodeIndex>> edges);

    /// Convenience for tests: nodes 0..n-1 labelled by zero-padded decimal ids.
    static DirectedGraph from_edges(std::size_t n,
                                    std::vector<std::pair<NodeIndex, NodeIndex>> edges);

    [[nodiscard]] std::size_t node_count() const { return ids_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] bool empty() const { return ids_.empty(); }

    [[nodiscard]] std::span<const NodeIndex> out_neighbors(NodeIndex u) const {
        return {out_.data() + out_offsets_[u], out_.data() + out_offsets_[u + 1]};
    }
    [[nodiscard]] std::span<const NodeIndex> in_neighbors(NodeIndex u) const {
        return {in_.data() + in_offsets_[u], in_.data() + in_offsets_[u + 1]};
    }
    /// Sorted union of in- and out-neighbours.
    [[nodiscard]] std::span<const NodeIndex> neighbors(NodeIndex u) const {
        return {und_.data() + und_offsets_[u], und_.data() + und_offsets_[u + 1]};
    }

    [[nodiscard]] std::size_t out_degree(NodeIndex u) const { return out_neighbors(u).size(); }
    [[nodiscard]] std::size_t in_degree(NodeIndex u) const { return in_neighbors(u).size(); }
    [[nodiscard]] std::size_t degree(NodeIndex u) const { return out_degree(u) + in_degree(u); }

    [[nodiscard]] bool has_edge(NodeIndex u, NodeIndex v) const;

    /// Edges sorted lexicographically by (source, target).
    [[nodiscard]] const std::vector<std::pair<NodeIndex, NodeIndex>>& edges() const {
        return edges_;
    }
    [[nodiscard]] const std::vector<std::string>& ids() const { return ids_; }
    [[nodiscard]] const std::string& id(NodeIndex u) const { return ids_[u]; }
    [[nodiscard]] std::optional<NodeIndex> index_of(const std::string& id) const;

    [[nodiscard]] std::vector<std::size_t> in_degrees() const;
    [[nodiscard]] std::vector<std::size_t> out_degrees() const;
    /// Number of node pairs connected in both directions.
    [[nodiscard]] std::size_t mutual_dyad_count() const;

    /// Subgraph induced by `members` (indices into this graph), relabelled 0..k-1 in the
    /// given order. Ids are preserved only when `members` is sorted.
    [[nodiscard]] DirectedGraph induced(std::span<const NodeIndex> members) const;

    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.ids_ == b.ids_ && a.edges_ == b.edges_;
    }

private:
    void build_adjacency();

    std::vector<std::string> ids_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<std::pair<NodeIndex, NodeIndex>> edges_;
    std::vector<std::size_t> out_offsets_, in_offsets_, und_offsets_;
    std::vector<NodeIndex> out_, in_, und_;
};

/// Snapshot of the distinct guarantor->borrower pairs whose period falls in `window`.
DirectedGraph build_graph(std::span<const GuaranteeRecord> records, PeriodRange window);

enum class WindowMode { monthly, cumulative };

/// One graph per calendar month from the earliest to the latest record period.
/// `cumulative` accumulates every record up to and including the month.
std::vector<std::pair<Period, DirectedGraph>> monthly_slices(
    std::span<const GuaranteeRecord> records, WindowMode mode = WindowMode::monthly);

/// 3 x triangles / connected triples on the undirected projection; 0 without triples.
double global_clustering_coefficient(const DirectedGraph& g);

enum class DegreeKind { in, out, total };

struct DegreeDistribution {
    std::map<std::size_t, std::size_t> histogram;
    std::optional<double> fitted_exponent;  // empty when the fit is refused
    std::size_t k_min = 2;
    std::size_t n_tail = 0;                 // nodes with degree >= k_min
};

/// Discrete power-law MLE over degrees >= k_min. Refuses the fit (histogram only) with
/// fewer than `min_tail` qualifying nodes or a single distinct tail degree.
DegreeDistribution fit_power_law(const DirectedGraph& g, DegreeKind which,
                                 std::size_t k_min = 2, std::size_t min_tail = 10);

}  // namespace motifscan
