#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motifscan/contagion.hpp"
#include "motifscan/graph.hpp"
#include "motifscan/heterogeneity.hpp"
#include "motifscan/significance.hpp"

namespace motifscan {

/// Fatal input problem. `row` is the 1-based line number in the file (header = 1), or 0
/// when the problem concerns the file as a whole.
class IngestError : public std::runtime_error {
public:
    IngestError(std::string source, std::size_t row, const std::string& what);
    [[nodiscard]] const std::string& source() const { return source_; }
    [[nodiscard]] std::size_t row() const { return row_; }

private:
    std::string source_;
    std::size_t row_;
};

struct IngestOptions {
    std::optional<PeriodRange> validity;  // records outside are fatal
};

struct IngestResult {
    std::vector<GuaranteeRecord> records;
    AttributeMap attributes;
    std::vector<std::string> warnings;
};

inline constexpr std::string_view kEdgesHeader = "guarantor_id,borrower_id,period,amount";
inline constexpr std::string_view kFirmsHeader = "firm_id,total_assets,default_flag";

/// Splits one CSV line (RFC 4180 quoting). Throws std::invalid_argument on a stray quote.
std::vector<std::string> split_csv_line(std::string_view line);
/// Quotes a field when it holds a comma, quote or line break.
std::string csv_field(std::string_view text);

std::vector<GuaranteeRecord> read_edges(std::istream& in, const std::string& source,
                                        const IngestOptions& opts,
                                        std::vector<std::string>& warnings);
AttributeMap read_firms(std::istream& in, const std::string& source);

/// Reads edges.csv and, when given, firms.csv. Throws IngestError.
IngestResult ingest(const std::filesystem::path& edges_path,
                    const std::optional<std::filesystem::path>& firms_path,
                    const IngestOptions& opts = {});

/// Writers emit shortest round-trip decimals, so reading back is exact.
void write_edges(std::ostream& out, std::span<const GuaranteeRecord> records);
void write_firms(std::ostream& out, const AttributeMap& attrs);

/// Six significant digits, or the shortest round-trip form with `full_precision`.
/// Non-finite values print as nan, inf, -inf.
std::string format_number(double value, bool full_precision = false);

void write_table1(std::ostream& out, std::span<const MotifStatistics> rows, bool full_precision);
void write_ranking(std::ostream& out, std::span<const MotifStatistics> rows, bool full_precision);
/// Per-window statistics, one row per (period, type); count_original is the raw count.
void write_window_table(std::ostream& out,
                        std::span<const std::pair<Period, std::vector<MotifStatistics>>> windows,
                        bool full_precision);
/// Dense node index to firm id.
void write_nodes(std::ostream& out, const DirectedGraph& g);
void write_roles(std::ostream& out, std::span<const RoleProfile> roles, bool full_precision);
void write_comparisons(std::ostream& out, std::span<const RoleComparison> rows,
                       bool full_precision);
void write_contagion(std::ostream& out, std::span<const ContagionAbility> rows,
                     bool full_precision);
void write_risk(std::ostream& out, std::span<const RiskEntry> rows, bool full_precision);

std::string sha256_hex(std::string_view data);
/// Throws std::runtime_error when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace motifscan
