#include "motifscan/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "motifscan/catalog.hpp"
#include "motifscan/census.hpp"
#include "motifscan/parallel.hpp"
#include "motifscan/random.hpp"

namespace motifscan {

std::vector<MotifStatistics> analyze_graph(const DirectedGraph& g, const MotifConfig& cfg,
                                           std::size_t threads) {
    cfg.randomization.validate();
    const auto real = full_census(g, 1);
    const auto ensemble = ensemble_censuses(g, cfg.randomization, threads);
    return motif_table(real, ensemble, cfg.pvalue, cfg.motif_threshold, cfg.min_count);
}

std::vector<std::pair<Period, std::vector<MotifStatistics>>> analyze_windows(
    std::span<const std::pair<Period, DirectedGraph>> windows, const MotifConfig& cfg,
    std::size_t threads) {
    cfg.randomization.validate();
    threads = resolve_threads(threads);
    std::vector<std::pair<Period, std::vector<MotifStatistics>>> out(windows.size());
    auto one = [&](std::size_t w, std::size_t inner) {
        MotifConfig local = cfg;
        local.randomization.seed = derive_seed(cfg.randomization.seed, w);
        out[w] = {windows[w].first, analyze_graph(windows[w].second, local, inner)};
    };
    if (windows.size() >= threads) {
        parallel_for(windows.size(), threads, [&](std::size_t w) { one(w, 1); });
    } else {
        for (std::size_t w = 0; w < windows.size(); ++w) one(w, threads);
    }
    return out;
}

DirectedGraph union_graph(std::span<const GuaranteeRecord> records) {
    if (records.empty()) return DirectedGraph{};
    PeriodRange all{records.front().period, records.front().period};
    for (const auto& r : records) {
        all.first = std::min(all.first, r.period);
        all.last = std::max(all.last, r.period);
    }
    return build_graph(records, all);
}

std::string role_label(int type_id, int position) {
    return "type" + std::to_string(type_id) + ":pos" + std::to_string(position);
}

RoleAnalysis analyze_roles(const DirectedGraph& g, const AttributeMap& attrs) {
    RoleAnalysis out;
    for (const auto& t : catalog()) {
        for (int pos : t.position_classes()) out.roles.push_back(role_profile(g, attrs, t.type_id, pos));
    }
    auto samples = [&](int type, int pos) -> const std::vector<double>& {
        for (const auto& r : out.roles) {
            if (r.type_id == type && r.position == pos) return r.samples;
        }
        throw std::logic_error("missing role profile");
    };
    const auto population = population_assets(g, attrs);
    const auto& leaf_pos = subgraph_type(kOutStar).position_class[1];
    struct Pair {
        const std::vector<double>* left;
        std::string left_label;
        const std::vector<double>* right;
        std::string right_label;
    };
    const std::vector<Pair> pairs = {
        {&samples(kOutStar, 0), role_label(kOutStar, 0), &population, "population"},
        {&samples(kOutStar, leaf_pos), role_label(kOutStar, leaf_pos), &population, "population"},
        {&samples(kMutualDyad, 0), role_label(kMutualDyad, 0), &population, "population"},
        {&samples(kOutStar, 0), role_label(kOutStar, 0), &samples(kOutStar, leaf_pos),
         role_label(kOutStar, leaf_pos)},
        {&samples(kSingleLink, 0), role_label(kSingleLink, 0), &samples(kSingleLink, 1),
         role_label(kSingleLink, 1)},
    };
    for (const auto& p : pairs) {
        if (p.left->empty() || p.right->empty()) continue;
        out.comparisons.push_back(compare_roles(*p.left, *p.right, p.left_label, p.right_label));
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
public:
    explicit Stopwatch(std::vector<StageTiming>& sink) : sink_(sink), start_(Clock::now()) {}
    void lap(std::string stage) {
        const auto now = Clock::now();
        sink_.push_back({std::move(stage), std::chrono::duration<double>(now - start_).count()});
        start_ = now;
    }

private:
    std::vector<StageTiming>& sink_;
    Clock::time_point start_;
};

template <typename Fn>
std::string render(Fn&& fn) {
    std::ostringstream out;
    fn(out);
    return out.str();
}

nlohmann::ordered_json config_json(const PipelineConfig& cfg) {
    nlohmann::ordered_json c;
    const auto& r = cfg.motifs.randomization;
    c["window"] = cfg.window == WindowMode::monthly ? "monthly" : "cumulative";
    c["ensemble_size"] = r.ensemble_size;
    c["swaps_per_edge"] = r.swaps_per_edge;
    c["seed"] = r.seed;
    c["null_model"] = std::string(to_string(r.model));
    c["pvalue"] = std::string(to_string(cfg.motifs.pvalue));
    c["motif_threshold"] = cfg.motifs.motif_threshold;
    c["min_count"] = cfg.motifs.min_count;
    c["roles"] = cfg.roles && cfg.firms_path.has_value();
    c["contagion"] = cfg.contagion;
    c["transmission_probability"] = cfg.cascade.transmission_probability;
    c["trials"] = cfg.cascade.effective_trials();
    c["max_rounds"] = cfg.cascade.max_rounds ? nlohmann::ordered_json(*cfg.cascade.max_rounds)
                                             : nlohmann::ordered_json(nullptr);
    c["cascade_seed"] = cfg.cascade.seed;
    c["scope"] = std::string(to_string(cfg.scope));
    c["full_precision"] = cfg.full_precision;
    if (cfg.ingest.validity) {
        c["valid_from"] = cfg.ingest.validity->first.to_string();
        c["valid_to"] = cfg.ingest.validity->last.to_string();
    } else {
        c["valid_from"] = nullptr;
        c["valid_to"] = nullptr;
    }
    return c;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    out.close();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    PipelineResult res;
    Stopwatch watch(res.timings);
    cfg.motifs.randomization.validate();
    if (cfg.contagion) cfg.cascade.validate();
    const std::size_t threads = resolve_threads(cfg.threads);

    auto data = ingest(cfg.edges_path, cfg.firms_path, cfg.ingest);
    if (data.records.empty()) {
        throw IngestError(cfg.edges_path.filename().string(), 0, "no guarantee records");
    }
    res.warnings = data.warnings;
    watch.lap("ingest");

    const auto windows = monthly_slices(data.records, cfg.window);
    res.windows = windows.size();
    const auto per_window = analyze_windows(windows, cfg.motifs, threads);
    res.table = aggregate_windows(per_window, cfg.motifs.motif_threshold, cfg.motifs.min_count);
    res.ranking = rank_motifs(res.table);
    watch.lap("motifs");

    const auto whole = union_graph(data.records);
    const bool with_roles = cfg.roles && cfg.firms_path.has_value();
    if (with_roles) {
        res.roles = analyze_roles(whole, data.attributes);
        watch.lap("roles");
    }
    if (cfg.contagion) {
        for (const auto& t : catalog()) {
            res.contagion.push_back(contagion_ability(whole, t.type_id, cfg.cascade, cfg.scope, threads));
        }
        watch.lap("contagion");
    }
    res.risk = default_risk_ranking(whole, res.table, data.attributes);
    watch.lap("risk");

    const bool full = cfg.full_precision;
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("table1.csv", render([&](auto& o) { write_table1(o, res.table, full); }));
    files.emplace_back("ranking.csv", render([&](auto& o) { write_ranking(o, res.table, full); }));
    files.emplace_back("windows.csv",
                       render([&](auto& o) { write_window_table(o, per_window, full); }));
    if (with_roles) {
        files.emplace_back("roles.csv", render([&](auto& o) { write_roles(o, res.roles.roles, full); }));
        files.emplace_back("comparisons.csv", render([&](auto& o) {
                               write_comparisons(o, res.roles.comparisons, full);
                           }));
    }
    if (cfg.contagion) {
        files.emplace_back("contagion.csv",
                           render([&](auto& o) { write_contagion(o, res.contagion, full); }));
    }
    files.emplace_back("risk.csv", render([&](auto& o) { write_risk(o, res.risk, full); }));
    files.emplace_back("nodes.csv", render([&](auto& o) { write_nodes(o, whole); }));
    files.emplace_back("catalog.json", catalog_json());

    nlohmann::ordered_json manifest;
    manifest["software"] = {{"name", kSoftwareName}, {"version", kSoftwareVersion}};
    manifest["catalog_version"] = kCatalogVersion;
    manifest["inputs"] = nlohmann::ordered_json::array();
    manifest["inputs"].push_back({{"role", "edges"},
                                  {"path", cfg.edges_path.string()},
                                  {"sha256", sha256_file(cfg.edges_path)}});
    if (cfg.firms_path) {
        manifest["inputs"].push_back({{"role", "firms"},
                                      {"path", cfg.firms_path->string()},
                                      {"sha256", sha256_file(*cfg.firms_path)}});
    }
    manifest["config"] = config_json(cfg);
    manifest["summary"] = {{"records", data.records.size()},
                           {"firms_with_attributes", data.attributes.size()},
                           {"windows", windows.size()},
                           {"first_period", windows.front().first.to_string()},
                           {"last_period", windows.back().first.to_string()},
                           {"nodes", whole.node_count()},
                           {"edges", whole.edge_count()}};
    manifest["warnings"] = res.warnings;
    manifest["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [name, content] : files) {
        manifest["outputs"].push_back({{"file", name}, {"sha256", sha256_hex(content)}});
    }
    manifest["manifest_sha256"] = sha256_hex(manifest.dump());
    files.emplace_back("manifest.json", manifest.dump(2) + "\n");

    std::vector<std::filesystem::path> written;
    try {
        std::filesystem::create_directories(cfg.out_dir);
        for (const auto& [name, content] : files) {
            const auto path = cfg.out_dir / name;
            written.push_back(path);
            write_file(path, content);
        }
        watch.lap("write");
        nlohmann::ordered_json timing;
        timing["threads"] = threads;
        timing["stages"] = nlohmann::ordered_json::array();
        for (const auto& t : res.timings) {
            timing["stages"].push_back({{"stage", t.stage}, {"seconds", t.seconds}});
        }
        const auto timing_path = cfg.out_dir / "timings.json";
        written.push_back(timing_path);
        write_file(timing_path, timing.dump(2) + "\n");
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) std::filesystem::remove(p, ec);
        throw;
    }
    for (const auto& [name, content] : files) res.outputs.push_back(name);
    res.outputs.push_back("timings.json");
    return res;
}

}  // namespace motifscan
