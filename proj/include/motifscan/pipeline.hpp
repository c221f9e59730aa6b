#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motifscan/contagion.hpp"
#include "motifscan/graph.hpp"
#include "motifscan/heterogeneity.hpp"
#include "motifscan/io.hpp"
#include "motifscan/null_model.hpp"
#include "motifscan/significance.hpp"

namespace motifscan {

inline constexpr const char* kSoftwareName = "motifscan";
inline constexpr const char* kSoftwareVersion = "1.0.0";

struct MotifConfig {
    RandomizationConfig randomization;
    PValueMethod pvalue = PValueMethod::empirical;
    double motif_threshold = kDefaultMotifThreshold;
    std::uint64_t min_count = kDefaultMinCount;
};

/// Census, ensemble and statistics for one graph.
std::vector<MotifStatistics> analyze_graph(const DirectedGraph& g, const MotifConfig& cfg,
                                           std::size_t threads = 1);

/// One table per window. Window w uses ensemble seed derive_seed(seed, w).
std::vector<std::pair<Period, std::vector<MotifStatistics>>> analyze_windows(
    std::span<const std::pair<Period, DirectedGraph>> windows, const MotifConfig& cfg,
    std::size_t threads = 1);

/// Graph over every record regardless of period.
DirectedGraph union_graph(std::span<const GuaranteeRecord> records);

struct RoleAnalysis {
    std::vector<RoleProfile> roles;  // every (type, position class)
    std::vector<RoleComparison> comparisons;
};

/// Role profiles plus the standard comparisons: 2-out-star center, 2-out-star leaf and
/// mutual-dyad member against the population, center against leaf, guarantor against
/// borrower. Comparisons with an empty side are omitted.
RoleAnalysis analyze_roles(const DirectedGraph& g, const AttributeMap& attrs);

/// Label used in comparisons.csv for a role, e.g. "type3:pos0".
std::string role_label(int type_id, int position);

struct PipelineConfig {
    std::filesystem::path edges_path;
    std::optional<std::filesystem::path> firms_path;
    std::filesystem::path out_dir = ".";
    WindowMode window = WindowMode::monthly;
    MotifConfig motifs;
    bool roles = true;      // needs firms_path
    bool contagion = true;
    CascadeConfig cascade;
    ContagionScope scope = ContagionScope::induced;
    IngestOptions ingest;
    std::size_t threads = 0;  // 0: hardware concurrency
    bool full_precision = false;
};

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct PipelineResult {
    std::vector<MotifStatistics> table;
    std::vector<int> ranking;
    std::size_t windows = 0;
    RoleAnalysis roles;
    std::vector<ContagionAbility> contagion;
    std::vector<RiskEntry> risk;
    std::vector<std::string> outputs;  // file names written to out_dir
    std::vector<std::string> warnings;
    std::vector<StageTiming> timings;
};

/// ingest -> windows -> per-window statistics -> aggregation -> roles, contagion and risk
/// on the union graph -> files. Every output is rendered before any file is written;
/// if writing fails, files written so far are removed. Throws IngestError for input
/// problems and other exceptions for compute problems.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace motifscan
