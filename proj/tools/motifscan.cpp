#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "motifscan/catalog.hpp"
#include "motifscan/census.hpp"
#include "motifscan/contagion.hpp"
#include "motifscan/io.hpp"
#include "motifscan/parallel.hpp"
#include "motifscan/pipeline.hpp"
#include "motifscan/synthetic.hpp"

namespace fs = std::filesystem;
using namespace motifscan;

namespace {

enum Exit : int { kOk = 0, kUsage = 2, kIngest = 3, kCompute = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string edges;
    std::string firms;
    std::string out;
    std::string window = "monthly";
    std::string valid_from, valid_to;
    std::size_t threads = 0;
    bool full_precision = false;
};

struct Motif {
    std::uint64_t seed = 0;
    std::uint64_t random = 1000;
    std::uint64_t swaps = 100;
    std::string null_model = "conserve-mutual";
    std::string pvalue = "empirical";
    double threshold = kDefaultMotifThreshold;
    std::uint64_t min_count = kDefaultMinCount;
};

struct Cascade {
    double p = 1.0;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> max_rounds;
    std::string scope = "induced";
    std::vector<std::string> seed_firms;
};

std::size_t thread_count(const Common& c) {
    if (const char* env = std::getenv("MOTIFSCAN_THREADS"); env && *env) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used != std::strlen(env)) throw std::invalid_argument(env);
            return resolve_threads(v);
        } catch (const std::exception&) {
            throw UsageError(std::string("MOTIFSCAN_THREADS is not a count: ") + env);
        }
    }
    return resolve_threads(c.threads);
}

IngestOptions ingest_options(const Common& c) {
    IngestOptions o;
    if (c.valid_from.empty() != c.valid_to.empty()) {
        throw UsageError("--valid-from and --valid-to go together");
    }
    if (!c.valid_from.empty()) {
        try {
            o.validity = PeriodRange{Period::parse(c.valid_from), Period::parse(c.valid_to)};
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return o;
}

WindowMode window_mode(const std::string& s) {
    return s == "cumulative" ? WindowMode::cumulative : WindowMode::monthly;
}

MotifConfig motif_config(const Motif& m) {
    MotifConfig cfg;
    cfg.randomization.seed = m.seed;
    cfg.randomization.ensemble_size = m.random;
    cfg.randomization.swaps_per_edge = m.swaps;
    cfg.randomization.model = parse_null_model(m.null_model);
    cfg.pvalue = parse_pvalue_method(m.pvalue);
    cfg.motif_threshold = m.threshold;
    cfg.min_count = m.min_count;
    return cfg;
}

CascadeConfig cascade_config(const Cascade& c, std::uint64_t seed) {
    CascadeConfig cfg;
    cfg.transmission_probability = c.p;
    cfg.trials = c.trials;
    cfg.max_rounds = c.max_rounds;
    cfg.seed = seed;
    return cfg;
}

std::optional<fs::path> optional_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return fs::path(s);
}

IngestResult load(const Common& c) {
    auto data = ingest(c.edges, optional_path(c.firms), ingest_options(c));
    for (const auto& w : data.warnings) std::cerr << "warning: " << w << '\n';
    if (data.records.empty()) throw IngestError(c.edges, 0, "no guarantee records");
    return data;
}

// Writes all (name, content) pairs into dir, or none of them.
void emit(const std::string& dir, const std::vector<std::pair<std::string, std::string>>& files) {
    std::vector<fs::path> written;
    try {
        fs::create_directories(dir);
        for (const auto& [name, content] : files) {
            const auto path = fs::path(dir) / name;
            written.push_back(path);
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            out << content;
            if (!out) throw std::runtime_error("cannot write " + path.string());
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }
}

template <typename Fn>
std::string render(Fn&& fn) {
    std::ostringstream out;
    fn(out);
    return out.str();
}

void add_input(CLI::App* app, Common& c, bool firms_required = false) {
    app->add_option("--edges", c.edges, "edges.csv path")->required();
    auto* f = app->add_option("--firms", c.firms, "firms.csv path");
    if (firms_required) f->required();
    app->add_option("--valid-from", c.valid_from, "first valid period YYYY-MM");
    app->add_option("--valid-to", c.valid_to, "last valid period YYYY-MM");
}

void add_compute(CLI::App* app, Common& c) {
    app->add_option("--threads", c.threads, "worker threads, 0 = all cores");
    app->add_flag("--full-precision", c.full_precision, "shortest round-trip decimals");
}

void add_motif(CLI::App* app, Common& c, Motif& m) {
    app->add_option("--seed", m.seed, "ensemble seed")->required();
    app->add_option("--random", m.random, "ensemble size")->check(CLI::Range(2ull, 1ull << 40));
    app->add_option("--swaps-per-edge", m.swaps, "swap attempts per edge")
        ->check(CLI::Range(1ull, 1ull << 40));
    app->add_option("--null", m.null_model, "null model")
        ->check(CLI::IsMember({"conserve-mutual", "degrees-only"}));
    app->add_option("--pvalue", m.pvalue, "p-value method")
        ->check(CLI::IsMember({"empirical", "normal"}));
    app->add_option("--motif-threshold", m.threshold, "largest p-value of a motif")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--min-count", m.min_count, "smallest real count of a motif");
    app->add_option("--window", c.window, "window mode")
        ->check(CLI::IsMember({"monthly", "cumulative"}));
}

void add_cascade(CLI::App* app, Cascade& k) {
    app->add_option("--p", k.p, "transmission probability")->check(CLI::Range(0.0, 1.0));
    app->add_option("--trials", k.trials, "trials per seed")->check(CLI::PositiveNumber);
    app->add_option("--max-rounds", k.max_rounds, "round limit")->check(CLI::PositiveNumber);
    app->add_option("--scope", k.scope, "contagion scope")
        ->check(CLI::IsMember({"induced", "embedded"}));
}

int cmd_ingest(const Common& c) {
    const auto data = load(c);
    const auto windows = monthly_slices(data.records);
    const auto g = union_graph(data.records);
    nlohmann::ordered_json j;
    j["records"] = data.records.size();
    j["firms_with_attributes"] = data.attributes.size();
    j["first_period"] = windows.front().first.to_string();
    j["last_period"] = windows.back().first.to_string();
    j["months"] = windows.size();
    j["nodes"] = g.node_count();
    j["edges"] = g.edge_count();
    j["mutual_dyads"] = g.mutual_dyad_count();
    j["warnings"] = data.warnings.size();
    std::cout << j.dump(2) << '\n';
    return kOk;
}

int cmd_synth(const SyntheticConfig& cfg, const std::string& out) {
    const auto data = generate_synthetic(cfg);
    emit(out, {{"edges.csv", render([&](auto& o) { write_edges(o, data.records); })},
               {"firms.csv", render([&](auto& o) { write_firms(o, data.attributes); })}});
    std::cerr << "wrote " << data.records.size() << " records and " << data.attributes.size()
              << " firms to " << out << '\n';
    return kOk;
}

int cmd_census(const Common& c, const std::string& period) {
    const auto data = load(c);
    DirectedGraph g;
    if (period.empty()) {
        g = union_graph(data.records);
    } else {
        Period p;
        try {
            p = Period::parse(period);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        g = build_graph(data.records, PeriodRange{p, p});
    }
    const auto census = full_census(g, thread_count(c));
    const auto text = render([&](std::ostream& o) {
        o << "type,census_name,count,relative_freq\n";
        for (const auto& t : catalog()) {
            o << t.type_id << ',' << t.census_name << ',' << census.count(t.type_id) << ','
              << format_number(census.relative_freq(t.type_id), c.full_precision) << '\n';
        }
    });
    if (c.out.empty()) {
        std::cout << text;
    } else {
        emit(c.out, {{"census.csv", text}});
    }
    return kOk;
}

int cmd_motifs(const Common& c, const Motif& m) {
    const auto data = load(c);
    const auto cfg = motif_config(m);
    const auto windows = monthly_slices(data.records, window_mode(c.window));
    const auto per_window = analyze_windows(windows, cfg, thread_count(c));
    const auto table = aggregate_windows(per_window, cfg.motif_threshold, cfg.min_count);
    const auto t1 = render([&](auto& o) { write_table1(o, table, c.full_precision); });
    if (c.out.empty()) {
        std::cout << t1;
    } else {
        emit(c.out,
             {{"table1.csv", t1},
              {"ranking.csv", render([&](auto& o) { write_ranking(o, table, c.full_precision); })},
              {"windows.csv",
               render([&](auto& o) { write_window_table(o, per_window, c.full_precision); })}});
    }
    return kOk;
}

int cmd_roles(const Common& c) {
    const auto data = load(c);
    const auto roles = analyze_roles(union_graph(data.records), data.attributes);
    const auto r = render([&](auto& o) { write_roles(o, roles.roles, c.full_precision); });
    const auto cmp =
        render([&](auto& o) { write_comparisons(o, roles.comparisons, c.full_precision); });
    if (c.out.empty()) {
        std::cout << r << '\n' << cmp;
    } else {
        emit(c.out, {{"roles.csv", r}, {"comparisons.csv", cmp}});
    }
    return kOk;
}

int cmd_cascade(const Common& c, const Cascade& k, std::uint64_t seed) {
    const auto data = load(c);
    const auto g = union_graph(data.records);
    const auto cfg = cascade_config(k, seed);
    cfg.validate();
    if (k.seed_firms.empty()) {
        std::vector<ContagionAbility> rows;
        for (const auto& t : catalog()) {
            rows.push_back(contagion_ability(g, t.type_id, cfg, parse_contagion_scope(k.scope),
                                             thread_count(c)));
        }
        const auto text = render([&](auto& o) { write_contagion(o, rows, c.full_precision); });
        if (c.out.empty()) {
            std::cout << text;
        } else {
            emit(c.out, {{"contagion.csv", text}});
        }
        return kOk;
    }
    std::vector<NodeIndex> seeds;
    for (const auto& id : k.seed_firms) {
        const auto idx = g.index_of(id);
        if (!idx) throw UsageError("unknown firm '" + id + "'");
        seeds.push_back(*idx);
    }
    const auto trials = cfg.trials.value_or(1);
    std::vector<std::uint64_t> hits(g.node_count(), 0);
    double additional = 0.0;
    CascadeResult first;
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto r = simulate_cascade(g, seeds, cfg, t);
        for (auto u : r.defaulted) ++hits[u];
        additional += static_cast<double>(r.additional_defaults);
        if (t == 0) first = std::move(r);
    }
    nlohmann::ordered_json j;
    j["seed_firms"] = nlohmann::ordered_json::array();
    for (auto u : first.seed_set) j["seed_firms"].push_back(g.id(u));
    j["transmission_probability"] = cfg.transmission_probability;
    j["trials"] = trials;
    j["defaulted"] = nlohmann::ordered_json::array();
    for (auto u : first.defaulted) j["defaulted"].push_back(g.id(u));
    j["rounds"] = first.rounds;
    j["additional_defaults"] = first.additional_defaults;
    if (trials > 1) {
        j["mean_additional_defaults"] = additional / static_cast<double>(trials);
        nlohmann::ordered_json freq = nlohmann::ordered_json::object();
        for (NodeIndex u = 0; u < g.node_count(); ++u) {
            if (hits[u]) freq[g.id(u)] = static_cast<double>(hits[u]) / static_cast<double>(trials);
        }
        j["default_frequency"] = freq;
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
}

int cmd_run(const Common& c, const Motif& m, const Cascade& k, bool no_roles, bool no_contagion) {
    PipelineConfig cfg;
    cfg.edges_path = c.edges;
    cfg.firms_path = optional_path(c.firms);
    cfg.out_dir = c.out;
    cfg.window = window_mode(c.window);
    cfg.motifs = motif_config(m);
    cfg.roles = !no_roles;
    cfg.contagion = !no_contagion;
    cfg.cascade = cascade_config(k, m.seed);
    cfg.scope = parse_contagion_scope(k.scope);
    cfg.ingest = ingest_options(c);
    cfg.threads = thread_count(c);
    cfg.full_precision = c.full_precision;
    const auto res = run_pipeline(cfg);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    std::cerr << "analysed " << res.windows << " windows; motifs:";
    for (int t : res.ranking) std::cerr << ' ' << t;
    std::cerr << "\nwrote";
    for (const auto& f : res.outputs) std::cerr << ' ' << f;
    std::cerr << " to " << c.out << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Motif detection and contagion analysis for loan-guarantee networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kSoftwareVersion));

    Common c;
    Motif m;
    Cascade k;
    SyntheticConfig synth;
    std::string synth_out, synth_start = "2007-01", census_period;
    bool no_roles = false, no_contagion = false;

    auto* ingest_cmd = app.add_subcommand("ingest", "validate edges.csv / firms.csv and summarise");
    add_input(ingest_cmd, c);

    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic edges.csv and firms.csv");
    synth_cmd->add_option("--seed", synth.seed, "generator seed")->required();
    synth_cmd->add_option("--out", synth_out, "output directory")->required();
    synth_cmd->add_option("--n-firms", synth.n_firms, "number of firms");
    synth_cmd->add_option("--months", synth.months, "number of months");
    synth_cmd->add_option("--start", synth_start, "first month YYYY-MM");
    synth_cmd->add_option("--lambda", synth.attachment_exponent_target, "target degree exponent");
    synth_cmd->add_option("--edges-per-firm", synth.edges_per_firm, "links per arriving firm");
    synth_cmd->add_option("--mutual-fraction", synth.mutual_fraction, "share of reciprocated links");
    synth_cmd->add_option("--centers", synth.planted_star_centers, "planted star centers");
    synth_cmd->add_option("--center-multiplier", synth.center_asset_multiplier,
                          "asset multiplier of centers");
    synth_cmd->add_option("--center-boost", synth.center_attachment_boost,
                          "attachment weight factor of centers");
    synth_cmd->add_flag("--small-firm-mutuals", synth.small_firm_mutuals,
                        "mutual-dyad members draw bottom-quartile assets");
    synth_cmd->add_option("--default-rate", synth.default_rate, "share of defaulted firms");

    auto* census_cmd = app.add_subcommand("census", "dyad and triad census");
    add_input(census_cmd, c);
    add_compute(census_cmd, c);
    census_cmd->add_option("--period", census_period, "single month YYYY-MM (default: all records)");
    census_cmd->add_option("--out", c.out, "output directory (default: stdout)");

    auto* motifs_cmd = app.add_subcommand("motifs", "motif statistics per window, averaged");
    add_input(motifs_cmd, c);
    add_compute(motifs_cmd, c);
    add_motif(motifs_cmd, c, m);
    motifs_cmd->add_option("--out", c.out, "output directory (default: stdout)");

    auto* roles_cmd = app.add_subcommand("roles", "asset profiles per structural position");
    add_input(roles_cmd, c, true);
    add_compute(roles_cmd, c);
    roles_cmd->add_option("--out", c.out, "output directory (default: stdout)");

    std::uint64_t cascade_seed = 0;
    auto* cascade_cmd = app.add_subcommand("cascade", "default cascades and contagion ability");
    add_input(cascade_cmd, c);
    add_compute(cascade_cmd, c);
    add_cascade(cascade_cmd, k);
    cascade_cmd->add_option("--seed", cascade_seed, "cascade seed")->required();
    cascade_cmd->add_option("--seed-firms", k.seed_firms, "firms that default first")
        ->delimiter(',');
    cascade_cmd->add_option("--out", c.out, "output directory (default: stdout)");

    auto* run_cmd = app.add_subcommand("run", "full pipeline");
    add_input(run_cmd, c);
    add_compute(run_cmd, c);
    add_motif(run_cmd, c, m);
    add_cascade(run_cmd, k);
    run_cmd->add_option("--out", c.out, "output directory")->required();
    run_cmd->add_flag("--no-roles", no_roles, "skip role analysis");
    run_cmd->add_flag("--no-contagion", no_contagion, "skip contagion analysis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*ingest_cmd) return cmd_ingest(c);
        if (*synth_cmd) {
            try {
                synth.start = Period::parse(synth_start);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            return cmd_synth(synth, synth_out);
        }
        if (*census_cmd) return cmd_census(c, census_period);
        if (*motifs_cmd) return cmd_motifs(c, m);
        if (*roles_cmd) return cmd_roles(c);
        if (*cascade_cmd) return cmd_cascade(c, k, cascade_seed);
        if (*run_cmd) return cmd_run(c, m, k, no_roles, no_contagion);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IngestError& e) {
        std::cerr << "ingest error: " << e.what() << '\n';
        return kIngest;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCompute;
    }
    return kUsage;
}
