#include "motifscan/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace motifscan {

IngestError::IngestError(std::string source, std::size_t row, const std::string& what)
    : std::runtime_error(source + (row ? " row " + std::to_string(row) : std::string()) + ": " +
                         what),
      source_(std::move(source)),
      row_(row) {}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false, was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
            was_quoted = false;
        } else if (c == '"' && cur.empty() && !was_quoted) {
            quoted = was_quoted = true;
        } else if (c == '"' || was_quoted) {
            throw std::invalid_argument("malformed quoting");
        } else {
            cur += c;
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

// Yields (line number, fields) for each non-blank data row after checking the header.
template <typename Fn>
void for_each_row(std::istream& in, const std::string& source, std::string_view header,
                  std::size_t columns, Fn&& fn) {
    std::string line;
    std::size_t row = 0;
    if (!std::getline(in, line)) throw IngestError(source, 0, "empty file, expected header");
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (line != header) {
        throw IngestError(source, row, "expected header '" + std::string(header) + "'");
    }
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        try {
            fields = split_csv_line(line);
        } catch (const std::invalid_argument& e) {
            throw IngestError(source, row, e.what());
        }
        if (fields.size() != columns) {
            throw IngestError(source, row,
                              "expected " + std::to_string(columns) + " columns, found " +
                                  std::to_string(fields.size()));
        }
        fn(row, fields);
    }
}

std::optional<double> parse_double(const std::string& s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

std::vector<GuaranteeRecord> read_edges(std::istream& in, const std::string& source,
                                        const IngestOptions& opts,
                                        std::vector<std::string>& warnings) {
    std::vector<GuaranteeRecord> records;
    for_each_row(in, source, kEdgesHeader, 4, [&](std::size_t row, std::vector<std::string>& f) {
        if (f[0].empty() || f[1].empty()) throw IngestError(source, row, "empty firm id");
        GuaranteeRecord r;
        try {
            r.period = Period::parse(f[2]);
        } catch (const std::invalid_argument& e) {
            throw IngestError(source, row, e.what());
        }
        if (opts.validity && !opts.validity->contains(r.period)) {
            throw IngestError(source, row,
                              "period " + r.period.to_string() + " outside the validity range");
        }
        if (!f[3].empty()) {
            const auto amount = parse_double(f[3]);
            if (!amount || *amount < 0.0) {
                throw IngestError(source, row, "amount must be a non-negative number");
            }
            r.amount = amount;
        }
        if (f[0] == f[1]) {
            warnings.push_back(source + " row " + std::to_string(row) + ": self-guarantee by '" +
                               f[0] + "' skipped");
            return;
        }
        r.guarantor_id = std::move(f[0]);
        r.borrower_id = std::move(f[1]);
        records.push_back(std::move(r));
    });
    return records;
}

AttributeMap read_firms(std::istream& in, const std::string& source) {
    AttributeMap attrs;
    for_each_row(in, source, kFirmsHeader, 3, [&](std::size_t row, std::vector<std::string>& f) {
        if (f[0].empty()) throw IngestError(source, row, "empty firm id");
        const auto assets = parse_double(f[1]);
        if (!assets || *assets <= 0.0) {
            throw IngestError(source, row, "total_assets must be a positive number");
        }
        if (f[2] != "0" && f[2] != "1") throw IngestError(source, row, "default_flag must be 0 or 1");
        FirmAttributes a{f[0], *assets, f[2] == "1"};
        if (!attrs.emplace(f[0], std::move(a)).second) {
            throw IngestError(source, row, "duplicate firm '" + f[0] + "'");
        }
    });
    return attrs;
}

IngestResult ingest(const std::filesystem::path& edges_path,
                    const std::optional<std::filesystem::path>& firms_path,
                    const IngestOptions& opts) {
    IngestResult res;
    std::ifstream edges(edges_path);
    if (!edges) throw IngestError(edges_path.string(), 0, "cannot open file");
    res.records = read_edges(edges, edges_path.filename().string(), opts, res.warnings);
    if (firms_path) {
        std::ifstream firms(*firms_path);
        if (!firms) throw IngestError(firms_path->string(), 0, "cannot open file");
        res.attributes = read_firms(firms, firms_path->filename().string());
    }
    return res;
}

void write_edges(std::ostream& out, std::span<const GuaranteeRecord> records) {
    out << kEdgesHeader << '\n';
    for (const auto& r : records) {
        out << csv_field(r.guarantor_id) << ',' << csv_field(r.borrower_id) << ','
            << r.period.to_string() << ',' << (r.amount ? shortest(*r.amount) : "") << '\n';
    }
}

void write_firms(std::ostream& out, const AttributeMap& attrs) {
    out << kFirmsHeader << '\n';
    for (const auto& [id, a] : attrs) {
        out << csv_field(id) << ',' << shortest(a.total_assets) << ','
            << (a.default_flag ? '1' : '0') << '\n';
    }
}

std::string format_number(double value, bool full_precision) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (full_precision) return shortest(value);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

void write_table1(std::ostream& out, std::span<const MotifStatistics> rows, bool full) {
    out << "type,freq_original,mean_freq_random,sd_random,z_score,p_value,is_motif,"
           "windows_contributing\n";
    for (const auto& s : rows) {
        out << s.type_id << ',' << format_number(s.freq_original, full) << ','
            << format_number(s.mean_freq_random, full) << ',' << format_number(s.sd_random, full)
            << ',' << format_number(s.z_score, full) << ',' << format_number(s.p_value, full)
            << ',' << (s.is_motif ? 1 : 0) << ',' << s.windows_contributing << '\n';
    }
}

void write_ranking(std::ostream& out, std::span<const MotifStatistics> rows, bool full) {
    out << "rank,type,z_score\n";
    const auto order = rank_motifs(rows);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& s = *std::find_if(rows.begin(), rows.end(),
                                      [&](const MotifStatistics& m) { return m.type_id == order[i]; });
        out << i + 1 << ',' << s.type_id << ',' << format_number(s.z_score, full) << '\n';
    }
}

void write_window_table(std::ostream& out,
                        std::span<const std::pair<Period, std::vector<MotifStatistics>>> windows,
                        bool full) {
    out << "period,type,count_original,freq_original,mean_freq_random,sd_random,z_score,p_value,"
           "is_motif\n";
    for (const auto& [period, rows] : windows) {
        for (const auto& s : rows) {
            out << period.to_string() << ',' << s.type_id << ',' << s.count_original << ','
                << format_number(s.freq_original, full) << ','
                << format_number(s.mean_freq_random, full) << ','
                << format_number(s.sd_random, full) << ',' << format_number(s.z_score, full)
                << ',' << format_number(s.p_value, full) << ',' << (s.is_motif ? 1 : 0) << '\n';
        }
    }
}

void write_nodes(std::ostream& out, const DirectedGraph& g) {
    out << "index,firm_id\n";
    for (NodeIndex u = 0; u < g.node_count(); ++u) out << u << ',' << csv_field(g.id(u)) << '\n';
}

void write_roles(std::ostream& out, std::span<const RoleProfile> roles, bool full) {
    out << "type,position,n,coverage,assets_q1,assets_median,assets_q3\n";
    for (const auto& r : roles) {
        out << r.type_id << ',' << r.position << ',' << r.occurrences << ','
            << format_number(r.coverage, full);
        if (r.asset_quartiles) {
            out << ',' << format_number(r.asset_quartiles->q1, full) << ','
                << format_number(r.asset_quartiles->median, full) << ','
                << format_number(r.asset_quartiles->q3, full);
        } else {
            out << ",,,";
        }
        out << '\n';
    }
}

void write_comparisons(std::ostream& out, std::span<const RoleComparison> rows, bool full) {
    out << "left,right,statistic,p_value,median_ratio\n";
    for (const auto& c : rows) {
        out << csv_field(c.left) << ',' << csv_field(c.right) << ','
            << format_number(c.statistic, full) << ',' << format_number(c.p_value, full) << ','
            << format_number(c.median_ratio, full) << '\n';
    }
}

void write_contagion(std::ostream& out, std::span<const ContagionAbility> rows, bool full) {
    out << "type,occurrences,ability,probability,trials\n";
    for (const auto& a : rows) {
        out << a.type_id << ',' << a.occurrences << ','
            << (a.ability ? format_number(*a.ability, full) : "") << ','
            << format_number(a.probability, full) << ',' << a.trials << '\n';
    }
}

void write_risk(std::ostream& out, std::span<const RiskEntry> rows, bool full) {
    out << "rank,firm,score,degree";
    for (int t : high_risk_types()) out << ",type" << t;
    out << ",default_flag\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& e = rows[i];
        out << i + 1 << ',' << csv_field(e.firm) << ',' << format_number(e.score, full) << ','
            << e.degree;
        for (int t : high_risk_types()) out << ',' << e.appearances[static_cast<std::size_t>(t)];
        out << ',' << (e.known_default ? (*e.known_default ? "1" : "0") : "") << '\n';
    }
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 15];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(data);
}

}  // namespace motifscan
