#include "motifscan/significance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace motifscan {

PValueMethod parse_pvalue_method(std::string_view text) {
    if (text == "empirical") return PValueMethod::empirical;
    if (text == "normal") return PValueMethod::normal;
    throw std::invalid_argument("unknown p-value method '" + std::string(text) + "'");
}

std::string_view to_string(PValueMethod m) {
    return m == PValueMethod::empirical ? "empirical" : "normal";
}

MotifStatistics motif_statistics(double f_orig, std::span<const double> ensemble_freqs,
                                 PValueMethod method) {
    const auto n = ensemble_freqs.size();
    if (n < 2) {
        throw std::invalid_argument("motif statistics need at least two replicas");
    }
    MotifStatistics s;
    s.freq_original = f_orig;

    const auto [lo, hi] = std::minmax_element(ensemble_freqs.begin(), ensemble_freqs.end());
    if (*lo == *hi) {
        // Constant ensemble: keep the mean exact so f_orig == mean compares cleanly.
        s.mean_freq_random = *lo;
        s.sd_random = 0.0;
    } else {
        double sum = 0.0;
        for (double f : ensemble_freqs) sum += f;
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (double f : ensemble_freqs) ss += (f - mean) * (f - mean);
        s.mean_freq_random = mean;
        s.sd_random = std::sqrt(ss / static_cast<double>(n - 1));
    }

    const double diff = f_orig - s.mean_freq_random;
    if (s.sd_random > 0.0) {
        s.z_score = diff / s.sd_random;
    } else if (diff == 0.0) {
        s.z_score = 0.0;
    } else {
        s.degenerate_sd = true;
        s.z_score = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }

    if (method == PValueMethod::empirical) {
        const auto at_least = std::count_if(ensemble_freqs.begin(), ensemble_freqs.end(),
                                            [f_orig](double f) { return f >= f_orig; });
        s.p_value = static_cast<double>(at_least) / static_cast<double>(n);
    } else {
        s.p_value = 0.5 * std::erfc(s.z_score / std::sqrt(2.0));
    }
    return s;
}

std::vector<MotifStatistics> classify_motifs(std::vector<MotifStatistics> stats,
                                             double motif_p_threshold, std::uint64_t min_count) {
    for (auto& s : stats) {
        s.is_motif = s.windows_contributing > 0 && s.z_score > 0.0 &&
                     s.p_value <= motif_p_threshold && s.count_original >= min_count;
    }
    return stats;
}

std::vector<int> rank_motifs(std::span<const MotifStatistics> stats) {
    std::vector<const MotifStatistics*> motifs;
    for (const auto& s : stats) {
        if (s.is_motif) motifs.push_back(&s);
    }
    std::sort(motifs.begin(), motifs.end(), [](const auto* a, const auto* b) {
        if (a->z_score != b->z_score) return a->z_score > b->z_score;
        return a->type_id < b->type_id;
    });
    std::vector<int> ids;
    ids.reserve(motifs.size());
    for (const auto* s : motifs) ids.push_back(s->type_id);
    return ids;
}

std::vector<MotifStatistics> motif_table(const CensusResult& real,
                                         std::span<const CensusResult> ensemble,
                                         PValueMethod method, double motif_p_threshold,
                                         std::uint64_t min_count) {
    std::vector<MotifStatistics> rows;
    rows.reserve(kTypeCount);
    std::vector<double> freqs(ensemble.size());
    for (int t = 1; t <= kTypeCount; ++t) {
        bool nonzero = false;
        for (std::size_t r = 0; r < ensemble.size(); ++r) {
            freqs[r] = ensemble[r].relative_freq(t);
            nonzero = nonzero || ensemble[r].count(t) > 0;
        }
        auto s = motif_statistics(real.relative_freq(t), freqs, method);
        s.type_id = t;
        s.count_original = real.count(t);
        s.random_nonzero = nonzero;
        rows.push_back(s);
    }
    return classify_motifs(std::move(rows), motif_p_threshold, min_count);
}

std::vector<MotifStatistics> aggregate_windows(
    std::span<const std::pair<Period, std::vector<MotifStatistics>>> per_window,
    double motif_p_threshold, std::uint64_t min_count) {
    std::vector<MotifStatistics> out;
    out.reserve(kTypeCount);
    for (int t = 1; t <= kTypeCount; ++t) {
        MotifStatistics agg;
        agg.type_id = t;
        agg.windows_contributing = 0;
        agg.freq_original = agg.mean_freq_random = agg.sd_random = agg.z_score = agg.p_value = 0.0;
        for (const auto& [period, rows] : per_window) {
            auto it = std::find_if(rows.begin(), rows.end(),
                                   [t](const MotifStatistics& s) { return s.type_id == t; });
            if (it == rows.end()) {
                throw std::invalid_argument("window " + period.to_string() + " lacks type " +
                                            std::to_string(t));
            }
            if (it->count_original == 0 && !it->random_nonzero) continue;
            ++agg.windows_contributing;
            agg.freq_original += it->freq_original;
            agg.mean_freq_random += it->mean_freq_random;
            agg.sd_random += it->sd_random;
            agg.z_score += it->z_score;
            agg.p_value += it->p_value;
            agg.count_original += it->count_original;
            agg.random_nonzero = agg.random_nonzero || it->random_nonzero;
            agg.degenerate_sd = agg.degenerate_sd || it->degenerate_sd;
        }
        if (agg.windows_contributing == 0) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            agg.freq_original = agg.mean_freq_random = agg.sd_random = agg.z_score =
                agg.p_value = nan;
        } else {
            const double k = agg.windows_contributing;
            agg.freq_original /= k;
            agg.mean_freq_random /= k;
            agg.sd_random /= k;
            agg.z_score /= k;
            agg.p_value /= k;
        }
        out.push_back(agg);
    }
    return classify_motifs(std::move(out), motif_p_threshold, min_count);
}

}  // namespace motifscan
