#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rrsim/analysis.hpp"
#include "rrsim/config.hpp"
#include "rrsim/matching.hpp"
#include "rrsim/sim.hpp"
#include "rrsim/svg.hpp"
#include "rrsim/version.hpp"

namespace rrsim {

namespace detail {

inline std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[8192];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= std::uint8_t(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", (unsigned long long)h);
    return out;
}

inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw InputError("cannot open file for writing: " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline void run_parallel(std::size_t n_tasks, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n_tasks <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= n_tasks) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(jobs, int(n_tasks)); ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline std::string windows_csv(const SimulationResult& res, int replication) {
    std::ostringstream out;
    out << "scenario,mechanism,replication,t,active_riders,n_vertices,n_edges,avg_degree,"
           "matching_weight,matched_pairs,creation_ms,matching_ms";
    for (int p = 0; p < res.n_platforms; ++p) out << ",profit_platform_" << p;
    out << "\n";
    for (const auto& w : res.windows) {
        out << to_string(res.scenario) << ',' << to_string(res.mechanism) << ',' << replication
            << ',' << csv::format_double(w.t) << ',' << w.active_count << ',' << w.n_vertices
            << ',' << w.n_edges << ',' << csv::format_double(w.average_degree) << ','
            << csv::format_double(w.matching_weight) << ',' << w.matched_pairs << ','
            << csv::format_double(w.creation_ms) << ',' << csv::format_double(w.matching_ms);
        for (double p : w.platform_profit) out << ',' << csv::format_double(p);
        out << "\n";
    }
    return out.str();
}

inline std::string riders_csv(const SimulationResult& res, int replication) {
    std::ostringstream out;
    out << "scenario,mechanism,replication,id,platform,request_time_min,direct_miles,state,"
           "wait_min,detour_miles,savings_usd,matched_with,matched_at\n";
    for (const auto& r : res.riders) {
        out << to_string(res.scenario) << ',' << to_string(res.mechanism) << ',' << replication
            << ',' << r.id << ',' << r.platform << ',' << csv::format_double(r.request_time)
            << ',' << csv::format_double(r.direct_distance) << ',' << to_string(r.final_state)
            << ',';
        if (r.final_state == RiderState::Matched) {
            out << csv::format_double(r.wait) << ',' << csv::format_double(r.detour) << ','
                << csv::format_double(r.savings) << ',' << r.matched_with << ','
                << csv::format_double(r.matched_at);
        } else {
            out << ",," << csv::format_double(0.0) << ",,";
        }
        out << "\n";
    }
    return out.str();
}

inline std::string cell_tag(Scenario scenario, Mechanism mech, int replication) {
    return to_string(scenario) + "_" + to_string(mech) + "_r" + std::to_string(replication);
}

}  // namespace detail

struct NetworkPaths {
    std::string nodes, edges, zones;  // zones may be empty

    static NetworkPaths from_dir(const std::string& dir) {
        NetworkPaths p;
        p.nodes = dir + "/nodes.csv";
        p.edges = dir + "/edges.csv";
        std::string z = dir + "/zones.csv";
        if (std::filesystem::exists(z)) p.zones = z;
        return p;
    }
};

inline RoadNetwork load_network_from(const NetworkPaths& paths) {
    return load_network(paths.nodes, paths.edges, paths.zones);
}

struct SimulateOptions {
    std::string config_path;
    std::string trips_path;
    NetworkPaths network;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> scenario;
    std::optional<std::string> mechanism;
    int jobs = 1;
    bool cross_check = false;
};

namespace detail {

struct PreparedRun {
    SimConfig cfg;
    RoadNetwork net;
    std::vector<RiderRequest> trips;  // platforms may be unassigned
    bool trips_carry_platforms = false;
};

inline PreparedRun prepare_run(const SimulateOptions& opt) {
    SimConfig cfg = load_config(opt.config_path);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.scenario) {
        if (*opt.scenario != "all") parse_scenario(*opt.scenario);
        cfg.scenario_key = *opt.scenario;
    }
    if (opt.mechanism) cfg.mechanism = parse_mechanism(*opt.mechanism);
    cfg.cross_check = opt.cross_check;
    cfg.access.seed = cfg.seed;
    for (const auto& w : cfg.validate()) std::cerr << "warning: " << w << "\n";

    PreparedRun run{std::move(cfg), load_network_from(opt.network), {}, false};
    run.trips = load_trips(opt.trips_path, run.net, run.cfg.seed, run.cfg.pricing,
                           run.cfg.endpoint_candidates);
    run.trips_carry_platforms = true;
    for (const auto& r : run.trips)
        if (r.platform < 0) run.trips_carry_platforms = false;
    return run;
}

inline std::uint64_t replication_sim_seed(std::uint64_t base, int rep) {
    return mix_seed(base, 1000 + std::uint64_t(rep));
}
inline std::uint64_t replication_platform_seed(std::uint64_t base, int rep) {
    return mix_seed(base, 500 + std::uint64_t(rep));
}

// Requests for one replication: platform labels are redrawn per replication
// unless the trips file pinned them.
inline std::vector<RiderRequest> replication_requests(const PreparedRun& run, int rep) {
    if (run.trips_carry_platforms) return run.trips;
    return assign_platforms(run.trips, run.cfg.shares,
                            replication_platform_seed(run.cfg.seed, rep));
}

inline void write_manifest(const std::string& out_dir, const SimConfig& cfg,
                           const SimulateOptions& opt, const std::vector<std::string>& notes) {
    nlohmann::json j;
    j["tool"] = "rrsim";
    j["version"] = kVersion;
    j["config"] = config_snapshot(cfg);
    j["inputs"]["config"] = {{"path", opt.config_path}, {"fnv1a64", fnv1a64_file(opt.config_path)}};
    j["inputs"]["trips"] = {{"path", opt.trips_path}, {"fnv1a64", fnv1a64_file(opt.trips_path)}};
    j["inputs"]["nodes"] = {{"path", opt.network.nodes}, {"fnv1a64", fnv1a64_file(opt.network.nodes)}};
    j["inputs"]["edges"] = {{"path", opt.network.edges}, {"fnv1a64", fnv1a64_file(opt.network.edges)}};
    if (!opt.network.zones.empty())
        j["inputs"]["zones"] = {{"path", opt.network.zones},
                                {"fnv1a64", fnv1a64_file(opt.network.zones)}};
    std::vector<std::uint64_t> sim_seeds, platform_seeds;
    for (int r = 0; r < cfg.replications; ++r) {
        sim_seeds.push_back(replication_sim_seed(cfg.seed, r));
        platform_seeds.push_back(replication_platform_seed(cfg.seed, r));
    }
    j["seeds"]["base"] = cfg.seed;
    j["seeds"]["simulation"] = sim_seeds;
    j["seeds"]["platform_assignment"] = platform_seeds;
    std::vector<std::string> scen;
    for (auto s : cfg.scenarios()) scen.push_back(to_string(s));
    j["scenarios"] = scen;
    j["out_dir"] = out_dir;
    j["jobs"] = opt.jobs;
    if (!notes.empty()) j["notes"] = notes;
    write_file_atomic(out_dir + "/manifest.json", j.dump(2) + "\n");
}

inline std::string metrics_header(int n_platforms, bool with_baseline) {
    std::ostringstream out;
    out << "scenario,mechanism,replication,seed,requests,matched,expired_solo,share_rate,"
           "vmt_total,vmt_per_rider,avg_savings_usd,avg_detour_miles,avg_wait_min";
    for (int p = 0; p < n_platforms; ++p) out << ",profit_platform_" << p;
    if (with_baseline)
        for (int p = 0; p < n_platforms; ++p) out << ",profit_pct_vs_solo_" << p;
    return out.str();
}

inline std::string metrics_row(const SimulationResult& res, const MetricsReport& m,
                               int replication) {
    std::ostringstream out;
    out << to_string(res.scenario) << ',' << to_string(res.mechanism) << ',' << replication << ','
        << res.seed << ',' << res.total_requests << ',' << res.matched_requests << ','
        << res.expired_solo << ',' << csv::format_double(m.share_rate) << ','
        << csv::format_double(m.vmt_total) << ',' << csv::format_double(m.vmt_per_rider) << ','
        << csv::format_double(m.avg_rider_savings) << ',' << csv::format_double(m.avg_detour)
        << ',' << csv::format_double(m.avg_wait);
    for (double p : m.platform_profit) out << ',' << csv::format_double(p);
    for (double p : m.profit_vs_baseline_pct) out << ',' << csv::format_double(p);
    return out.str();
}

}  // namespace detail

// simulate: replications x scenarios, per-cell window/rider CSVs plus an
// aggregate metrics table. The manifest lands before any result file.
inline int cmd_simulate(const SimulateOptions& opt) {
    auto run = detail::prepare_run(opt);
    std::filesystem::create_directories(opt.out_dir);
    detail::write_manifest(opt.out_dir, run.cfg, opt, {});

    auto scenarios = run.cfg.scenarios();
    struct Cell {
        Scenario scenario;
        int rep;
        std::string metrics;
    };
    std::vector<Cell> cells;
    for (auto s : scenarios)
        for (int r = 0; r < run.cfg.replications; ++r) cells.push_back({s, r, {}});

    detail::run_parallel(cells.size(), opt.jobs, [&](std::size_t idx) {
        Cell& cell = cells[idx];
        auto requests = detail::replication_requests(run, cell.rep);
        SimConfig cfg_run = run.cfg;
        cfg_run.seed = detail::replication_sim_seed(run.cfg.seed, cell.rep);
        cfg_run.access.seed = cfg_run.seed;
        auto result = rrsim::run(requests, cfg_run, run.net, cell.scenario);

        std::string tag = detail::cell_tag(cell.scenario, cfg_run.mechanism, cell.rep);
        detail::write_file_atomic(opt.out_dir + "/windows_" + tag + ".csv",
                                  detail::windows_csv(result, cell.rep));
        detail::write_file_atomic(opt.out_dir + "/riders_" + tag + ".csv",
                                  detail::riders_csv(result, cell.rep));
        auto baseline = solo_baseline(requests, cfg_run);
        auto metrics = compute_metrics(result, &baseline);
        cell.metrics = detail::metrics_row(result, metrics, cell.rep);
    });

    std::ostringstream metrics_out;
    metrics_out << detail::metrics_header(run.cfg.n_platforms(), true) << "\n";
    for (const auto& c : cells) metrics_out << c.metrics << "\n";
    detail::write_file_atomic(opt.out_dir + "/metrics.csv", metrics_out.str());
    std::cout << "wrote " << cells.size() << " result cell(s) to " << opt.out_dir << "\n";
    return 0;
}

struct SweepOptions {
    SimulateOptions base;
    std::string parameter;       // beta | gamma | tau | psi | o
    std::vector<double> values;
};

// One-at-a-time sweep over a single parameter; emits a tidy long-format
// table (parameter,value,scenario,mechanism,replication,metric,value).
inline int cmd_sweep(const SweepOptions& opt) {
    if (opt.values.empty()) throw InputError("sweep needs at least one value");
    auto run = detail::prepare_run(opt.base);
    std::filesystem::create_directories(opt.base.out_dir);
    detail::write_manifest(opt.base.out_dir, run.cfg, opt.base,
                           {"sweep parameter: " + opt.parameter});

    auto apply = [&](SimConfig cfg, double v) {
        if (opt.parameter == "beta") cfg.pricing.discount = v;
        else if (opt.parameter == "gamma") cfg.window.max_detour = v;
        else if (opt.parameter == "tau") cfg.window.max_wait = v;
        else if (opt.parameter == "psi") cfg.psi = v;
        else if (opt.parameter == "o") cfg.pricing.commission = v;
        else throw InputError("unknown sweep parameter '" + opt.parameter + "'");
        cfg.validate();
        return cfg;
    };
    apply(run.cfg, opt.values.front());  // fail fast on a bad parameter name

    const std::vector<Scenario> scenarios{Scenario::Competition, Scenario::Full,
                                          Scenario::ProfitAware};
    struct Cell {
        double value;
        Scenario scenario;
        int rep;
        std::vector<std::pair<std::string, double>> metrics;
    };
    std::vector<Cell> cells;
    for (double v : opt.values)
        for (auto s : scenarios)
            for (int r = 0; r < run.cfg.replications; ++r) cells.push_back({v, s, r, {}});

    detail::run_parallel(cells.size(), opt.base.jobs, [&](std::size_t idx) {
        Cell& cell = cells[idx];
        SimConfig cfg_cell = apply(run.cfg, cell.value);
        // Platform labels depend on the replication only, so every cell of a
        // replication sees the same rider split.
        auto requests = detail::replication_requests(run, cell.rep);
        cfg_cell.seed = detail::replication_sim_seed(run.cfg.seed, cell.rep);
        cfg_cell.access.seed = cfg_cell.seed;
        auto result = rrsim::run(requests, cfg_cell, run.net, cell.scenario);
        auto baseline = solo_baseline(requests, cfg_cell);
        auto m = compute_metrics(result, &baseline);
        cell.metrics = {
            {"share_rate", m.share_rate},
            {"vmt_total", m.vmt_total},
            {"vmt_per_rider", m.vmt_per_rider},
            {"avg_savings_usd", m.avg_rider_savings},
            {"avg_detour_miles", m.avg_detour},
            {"avg_wait_min", m.avg_wait},
        };
        for (std::size_t p = 0; p < m.platform_profit.size(); ++p)
            cell.metrics.emplace_back("profit_platform_" + std::to_string(p),
                                      m.platform_profit[p]);
    });

    std::ostringstream out;
    out << "parameter,value,scenario,mechanism,replication,metric,metric_value\n";
    for (const auto& c : cells) {
        for (const auto& [name, value] : c.metrics) {
            out << opt.parameter << ',' << csv::format_double(c.value) << ','
                << to_string(c.scenario) << ',' << to_string(run.cfg.mechanism) << ',' << c.rep
                << ',' << name << ',' << csv::format_double(value) << "\n";
        }
    }
    detail::write_file_atomic(opt.base.out_dir + "/sweep.csv", out.str());
    std::cout << "wrote sweep table (" << cells.size() << " cells) to " << opt.base.out_dir
              << "/sweep.csv\n";
    return 0;
}

struct GenDemandOptions {
    NetworkPaths network;
    std::string out_path;
    std::size_t n = 400;
    std::uint64_t seed = 0;
    double horizon = 1440;
    SpatialProfile spatial;
    TemporalProfile temporal;
};

inline int cmd_gen_demand(const GenDemandOptions& opt) {
    auto net = load_network_from(opt.network);
    TemporalProfile temporal = opt.temporal;
    temporal.span = opt.horizon;
    PricingParams pricing;  // fares are recomputed at load time; placeholder rates are fine
    auto requests = gen_synthetic_demand(opt.n, net, opt.spatial, temporal, opt.seed, pricing);
    std::ostringstream out;
    out << "id,request_time_min,origin_node,dest_node\n";
    for (const auto& r : requests) {
        out << r.id << ',' << csv::format_double(r.request_time) << ',' << r.origin << ','
            << r.dest << "\n";
    }
    detail::write_file_atomic(opt.out_path, out.str());
    std::cout << "wrote " << requests.size() << " requests to " << opt.out_path << "\n";
    return 0;
}

struct OracleCheckOptions {
    int n_cases = 500;
    int max_nodes = 10;
    std::uint64_t seed = 1;
    bool use_greedy = false;  // fault injection: pit the greedy heuristic against the oracle
};

// Randomized equivalence check of the exact matcher against exhaustive
// enumeration. Any discrepancy prints the offending graph and fails.
inline int cmd_oracle_check(const OracleCheckOptions& opt) {
    if (opt.max_nodes > 16) throw InputError("oracle check limited to 16 nodes");
    if (opt.n_cases == 0) {
        std::cout << "warning: 0 cases requested; nothing checked\n";
        return 0;
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> n_dist(2, opt.max_nodes);
    std::uniform_int_distribution<int> w_dist(1, 100);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int case_no = 0; case_no < opt.n_cases; ++case_no) {
        int n = n_dist(rng);
        double density = unit(rng);
        RiderGraph g;
        for (int v = 0; v < n; ++v) g.vertices.push_back(v);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (unit(rng) < density) g.edges.push_back({a, b, double(w_dist(rng))});
        Matching got = opt.use_greedy ? greedy_matching(g) : max_weight_matching(g);
        Matching want = brute_force_matching(g);
        if (got.total_weight != want.total_weight) {
            std::cout << "case " << case_no << ": got " << got.total_weight << ", oracle "
                      << want.total_weight << "\n  vertices: " << n << "\n  edges:";
            for (const auto& e : g.edges)
                std::cout << " (" << e.rider_a << "," << e.rider_b << ","
                          << csv::format_double(e.weight) << ")";
            std::cout << "\n";
            return 1;
        }
    }
    std::cout << opt.n_cases << " cases checked, no discrepancies\n";
    return 0;
}

struct AnalyzeOptions {
    std::string results_dir;
    std::string out_dir;
    bool write_svg = false;
    double interval_minutes = 10;
};

// Post-hoc analysis over simulate/sweep output: scaling fits, timing fits,
// and share-rate regressions per scenario/mechanism.
inline int cmd_analyze(const AnalyzeOptions& opt) {
    namespace fs = std::filesystem;
    if (!fs::exists(opt.results_dir)) throw InputError("no such directory: " + opt.results_dir);
    std::vector<std::string> window_files, rider_files;
    for (const auto& entry : fs::directory_iterator(opt.results_dir)) {
        auto name = entry.path().filename().string();
        if (name.rfind("windows_", 0) == 0 && entry.path().extension() == ".csv")
            window_files.push_back(entry.path().string());
        if (name.rfind("riders_", 0) == 0 && entry.path().extension() == ".csv")
            rider_files.push_back(entry.path().string());
    }
    std::sort(window_files.begin(), window_files.end());
    std::sort(rider_files.begin(), rider_files.end());
    if (window_files.empty())
        throw InputError("no windows_*.csv files under " + opt.results_dir);
    fs::create_directories(opt.out_dir);

    std::map<std::string, GraphSizeSeries> sizes;
    std::map<std::string, TimingSeries> timings;
    for (const auto& f : window_files) {
        auto t = csv::Table::read_file(f);
        for (std::size_t row = 0; row < t.n_rows(); ++row) {
            std::string label = t.cell(row, "scenario") + "/" + t.cell(row, "mechanism");
            auto& s = sizes[label];
            s.label = label;
            s.points.emplace_back(t.number(row, "n_vertices"), t.number(row, "n_edges"));
            auto& tm = timings[label];
            tm.label = label;
            tm.points.push_back({t.number(row, "n_vertices"), t.number(row, "n_edges"),
                                 t.number(row, "creation_ms"), t.number(row, "matching_ms")});
        }
    }

    // Share-rate points per label: (requests per interval, share rate).
    std::map<std::string, std::vector<std::pair<double, double>>> share_points;
    for (const auto& f : rider_files) {
        auto t = csv::Table::read_file(f);
        std::map<std::pair<std::string, long long>, std::pair<double, double>> buckets;
        for (std::size_t row = 0; row < t.n_rows(); ++row) {
            std::string label = t.cell(row, "scenario") + "/" + t.cell(row, "mechanism");
            long long idx =
                (long long)std::floor(t.number(row, "request_time_min") / opt.interval_minutes);
            auto& b = buckets[{label, idx}];
            b.first += 1;
            if (t.cell(row, "state") == "matched") b.second += 1;
        }
        for (auto& [key, b] : buckets)
            share_points[key.first].emplace_back(b.first, b.second / b.first);
    }

    std::ostringstream fits;
    fits << "label,fit,slope_or_beta2,intercept_or_beta1,alpha,r_squared,p_value,n_points\n";
    std::ostringstream report;
    report << "rrsim analysis of " << opt.results_dir << "\n\n";
    int warnings = 0;

    std::vector<GraphSizeSeries> size_series;
    for (auto& [label, s] : sizes) size_series.push_back(s);
    for (const auto& s : size_series) {
        try {
            auto entries = densification_report({s});
            const auto& e = entries.front();
            fits << e.label << ",edge_growth_loglog," << csv::format_double(e.edge_growth.slope)
                 << ',' << csv::format_double(e.edge_growth.intercept) << ",,"
                 << csv::format_double(e.edge_growth.r_squared) << ','
                 << csv::format_double(e.edge_growth.p_value) << ',' << e.edge_growth.n_points
                 << "\n";
            fits << e.label << ",degree_vs_log_n," << csv::format_double(e.degree_fit.slope) << ','
                 << csv::format_double(e.degree_fit.intercept) << ",,"
                 << csv::format_double(e.degree_fit.r_squared) << ','
                 << csv::format_double(e.degree_fit.p_value) << ',' << e.degree_fit.n_points
                 << "\n";
            report << e.label << ":\n"
                   << "  edge growth exponent " << e.edge_growth.slope
                   << " (R^2 " << e.edge_growth.r_squared << ", " << e.windows_used
                   << " windows, " << e.windows_excluded << " empty excluded)\n"
                   << "  avg degree slope vs log(N) " << e.degree_fit.slope << " (R^2 "
                   << e.degree_fit.r_squared << ")\n"
                   << "  avg degree reaches 1 near N = " << e.degree1_crossing << "\n";
        } catch (const InputError& err) {
            report << s.label << ": insufficient data for densification fits (" << err.what()
                   << ")\n";
            ++warnings;
        }
    }
    std::vector<TimingSeries> timing_series;
    for (auto& [label, t] : timings) timing_series.push_back(t);
    for (const auto& t : timing_series) {
        try {
            auto entries = timing_report({t});
            const auto& e = entries.front();
            fits << e.label << ",creation_time_quadratic,"
                 << csv::format_double(e.creation_fit.beta2) << ','
                 << csv::format_double(e.creation_fit.beta1) << ','
                 << csv::format_double(e.creation_fit.alpha) << ','
                 << csv::format_double(e.creation_fit.r_squared) << ",,"
                 << e.creation_fit.n_points << "\n";
            fits << e.label << ",matching_time_linear," << csv::format_double(e.matching_fit.slope)
                 << ',' << csv::format_double(e.matching_fit.intercept) << ",,"
                 << csv::format_double(e.matching_fit.r_squared) << ','
                 << csv::format_double(e.matching_fit.p_value) << ',' << e.matching_fit.n_points
                 << "\n";
            report << t.label << ": creation fit beta2 " << e.creation_fit.beta2 << " (R^2 "
                   << e.creation_fit.r_squared << "); matching slope " << e.matching_fit.slope
                   << " per V*E*log(V) (R^2 " << e.matching_fit.r_squared << ")\n";
        } catch (const InputError& err) {
            report << t.label << ": insufficient data for timing fits (" << err.what() << ")\n";
            ++warnings;
        }
    }
    for (auto& [label, points] : share_points) {
        try {
            std::vector<double> n, rate;
            for (auto [x, y] : points) {
                n.push_back(x);
                rate.push_back(y);
            }
            auto fit = fit_log_linear(n, rate);
            fits << label << ",share_rate_vs_log_n," << csv::format_double(fit.slope) << ','
                 << csv::format_double(fit.intercept) << ",," << csv::format_double(fit.r_squared)
                 << ',' << csv::format_double(fit.p_value) << ',' << fit.n_points << "\n";
            report << label << ": share rate slope vs log(N) " << fit.slope << " (R^2 "
                   << fit.r_squared << ", p " << fit.p_value << ")\n";
        } catch (const InputError& err) {
            report << label << ": insufficient data for share-rate fit (" << err.what() << ")\n";
            ++warnings;
        }
    }
    if (warnings) report << "\n" << warnings << " fit(s) skipped for lack of data\n";

    detail::write_file_atomic(opt.out_dir + "/fits.csv", fits.str());
    detail::write_file_atomic(opt.out_dir + "/report.txt", report.str());

    if (opt.write_svg) {
        std::vector<svg::Series> edge_series, degree_series, share_series;
        for (auto& [label, s] : sizes) {
            svg::Series es{label, {}}, ds{label, {}};
            for (auto [v, e] : s.points) {
                if (v > 0 && e > 0) {
                    es.points.emplace_back(v, e);
                    ds.points.emplace_back(v, 2.0 * e / v);
                }
            }
            std::sort(es.points.begin(), es.points.end());
            std::sort(ds.points.begin(), ds.points.end());
            if (!es.points.empty()) {
                edge_series.push_back(es);
                degree_series.push_back(ds);
            }
        }
        if (!edge_series.empty()) {
            svg::write_line_chart(opt.out_dir + "/edges_vs_nodes.svg", "Edge growth",
                                  "nodes (log)", "edges (log)", edge_series, true, true);
            svg::write_line_chart(opt.out_dir + "/degree_vs_nodes.svg", "Average degree",
                                  "nodes (log)", "average degree", degree_series, true, false);
        }
        for (auto& [label, pts] : share_points) {
            svg::Series ss{label, pts};
            std::sort(ss.points.begin(), ss.points.end());
            share_series.push_back(ss);
        }
        if (!share_series.empty())
            svg::write_line_chart(opt.out_dir + "/share_rate_vs_requests.svg", "Share rate",
                                  "requests per interval (log)", "share rate", share_series, true,
                                  false);
    }
    std::cout << "wrote fits.csv and report.txt to " << opt.out_dir << "\n";
    return 0;
}

struct BenchOptions {
    std::vector<int> sizes{25, 50, 100, 200};
    std::uint64_t seed = 7;
};

// Times feasibility/graph construction and matching on synthetic single
// windows of growing size, then fits the scaling models.
inline int cmd_bench(const BenchOptions& opt) {
    auto net = make_grid_network(15, 15, 0.25);
    SimConfig cfg;
    cfg.validate();
    std::map<std::string, TimingSeries> series;
    std::printf("%8s %10s %10s %12s %12s\n", "riders", "scenario", "edges", "creation_ms",
                "matching_ms");
    for (int size : opt.sizes) {
        auto requests = gen_synthetic_demand(std::size_t(size), net, {}, {{}, 5.0, {}, 60.0},
                                             detail::mix_seed(opt.seed, size), cfg.pricing);
        requests = assign_platforms(std::move(requests), cfg.shares,
                                    detail::mix_seed(opt.seed, 77 + size));
        std::vector<const RiderRequest*> active;
        for (auto& r : requests) active.push_back(&r);
        for (auto scenario :
             {Scenario::Competition, Scenario::Full, Scenario::ProfitAware}) {
            auto t0 = std::chrono::steady_clock::now();
            auto matrix = feasibility_matrix(active, 5.0, net, cfg.window, cfg.pricing, cfg.access);
            EdgeWeightParams wp{cfg.psi, cfg.pricing.alpha_t};
            std::vector<RiderGraph> graphs;
            if (scenario == Scenario::Competition)
                graphs = build_competition(active, matrix, wp, cfg.n_platforms());
            else if (scenario == Scenario::Full)
                graphs.push_back(build_full(active, matrix, wp));
            else {
                auto filtered = profit_aware_filter(matrix, cfg.mechanism, cfg.shares);
                graphs.push_back(build_profit_aware(active, matrix, filtered, wp));
            }
            auto t1 = std::chrono::steady_clock::now();
            std::size_t edges = 0;
            for (auto& g : graphs) edges += g.edges.size();
            for (auto& g : graphs) max_weight_matching(g);
            auto t2 = std::chrono::steady_clock::now();
            double creation = detail::ms_between(t0, t1);
            double matching = detail::ms_between(t1, t2);
            auto& ts = series[to_string(scenario)];
            ts.label = to_string(scenario);
            ts.points.push_back({double(size), double(edges), creation, matching});
            std::printf("%8d %12s %10zu %12.3f %12.3f\n", size, to_string(scenario).c_str(),
                        edges, creation, matching);
        }
    }
    for (auto& [label, ts] : series) {
        if (ts.points.size() < 4) continue;
        auto entries = timing_report({ts});
        const auto& e = entries.front();
        std::printf("%s: creation ~ %.3g*V^2 + %.3g*V + %.3g (R^2 %.3f); matching slope %.3g "
                    "(R^2 %.3f)\n",
                    label.c_str(), e.creation_fit.beta2, e.creation_fit.beta1,
                    e.creation_fit.alpha, e.creation_fit.r_squared, e.matching_fit.slope,
                    e.matching_fit.r_squared);
    }
    return 0;
}

}  // namespace rrsim
