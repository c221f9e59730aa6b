#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "motifscan/census.hpp"
#include "motifscan/graph.hpp"

namespace motifscan {

enum class PValueMethod {
    empirical,  // share of replicas with frequency >= the observed one
    normal,     // upper tail of the standard normal at z
};

PValueMethod parse_pvalue_method(std::string_view text);
std::string_view to_string(PValueMethod m);

/// One row of the motif table.
struct MotifStatistics {
    int type_id = 0;
    double freq_original = 0.0;
    double mean_freq_random = 0.0;
    double sd_random = 0.0;
    double z_score = 0.0;
    double p_value = 1.0;
    bool is_motif = false;
    /// Zero ensemble spread with a differing observation; z is then +/-infinity.
    bool degenerate_sd = false;

    std::uint64_t count_original = 0;
    /// Whether any replica contained the type.
    bool random_nonzero = false;
    /// Windows averaged into this row (1 for a single graph; 0 marks an empty row).
    int windows_contributing = 1;
};

/// Sample mean and sample SD (divisor N-1) of the ensemble, z and p.
/// Throws std::invalid_argument for fewer than two ensemble values.
MotifStatistics motif_statistics(double f_orig, std::span<const double> ensemble_freqs,
                                 PValueMethod method = PValueMethod::empirical);

inline constexpr double kDefaultMotifThreshold = 0.01;
inline constexpr std::uint64_t kDefaultMinCount = 4;

/// is_motif = z > 0 and p <= threshold and count_original >= min_count.
std::vector<MotifStatistics> classify_motifs(std::vector<MotifStatistics> stats,
                                             double motif_p_threshold = kDefaultMotifThreshold,
                                             std::uint64_t min_count = kDefaultMinCount);

/// Motif type ids by z descending, ties by type id ascending.
std::vector<int> rank_motifs(std::span<const MotifStatistics> stats);

/// All 15 rows for one graph against its ensemble censuses, classified.
std::vector<MotifStatistics> motif_table(const CensusResult& real,
                                         std::span<const CensusResult> ensemble,
                                         PValueMethod method = PValueMethod::empirical,
                                         double motif_p_threshold = kDefaultMotifThreshold,
                                         std::uint64_t min_count = kDefaultMinCount);

/// Column means per type over the windows where the type was seen in the real graph or in
/// some replica. Types never seen come back with windows_contributing = 0. count_original
/// is summed over contributing windows; is_motif is re-derived from the averaged row.
std::vector<MotifStatistics> aggregate_windows(
    std::span<const std::pair<Period, std::vector<MotifStatistics>>> per_window,
    double motif_p_threshold = kDefaultMotifThreshold,
    std::uint64_t min_count = kDefaultMinCount);

}  // namespace motifscan
