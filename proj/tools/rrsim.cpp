// rrsim: cross-platform ride-sharing simulator.
//
// Subcommands: simulate | sweep | gen-demand | oracle-check | analyze | bench

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrsim/commands.hpp"
#include "rrsim/version.hpp"

namespace {

std::vector<double> parse_values(const std::string& csv_list) {
    std::vector<double> out;
    std::string rest = csv_list;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string tok = rest.substr(0, comma);
        if (!tok.empty()) out.push_back(std::stod(tok));
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    }
    return out;
}

rrsim::SpatialProfile parse_spatial(const std::string& kind, const std::string& hotspots) {
    rrsim::SpatialProfile p;
    if (kind == "uniform") {
        p.kind = rrsim::SpatialProfile::Kind::Uniform;
    } else if (kind == "hotspot") {
        p.kind = rrsim::SpatialProfile::Kind::Hotspot;
        std::string rest = hotspots;
        while (!rest.empty()) {
            auto comma = rest.find(',');
            std::string tok = rest.substr(0, comma);
            auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw rrsim::InputError("hotspot entries look like zone:weight");
            p.hotspots.emplace_back(std::stoll(tok.substr(0, colon)),
                                    std::stod(tok.substr(colon + 1)));
            rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        }
    } else {
        throw rrsim::InputError("unknown spatial profile '" + kind + "'");
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rrsim: profit-aware cross-platform ride-sharing simulator"};
    app.set_version_flag("--version", rrsim::kVersion);
    app.require_subcommand(1);

    // simulate
    rrsim::SimulateOptions sim_opt;
    std::string sim_network_dir, sim_seed_str, sim_scenario, sim_mechanism;
    auto* simulate = app.add_subcommand("simulate", "run replications x scenarios over a day");
    simulate->add_option("--config", sim_opt.config_path, "config file")->required();
    simulate->add_option("--trips", sim_opt.trips_path, "trips CSV")->required();
    simulate->add_option("--network", sim_network_dir,
                         "directory with nodes.csv, edges.csv and optional zones.csv")
        ->required();
    simulate->add_option("--out", sim_opt.out_dir, "output directory")->required();
    simulate->add_option("--seed", sim_seed_str, "override config seed");
    simulate->add_option("--scenario", sim_scenario, "override scenario (or 'all')");
    simulate->add_option("--mechanism", sim_mechanism, "override allocation mechanism");
    simulate->add_option("--jobs", sim_opt.jobs, "parallel worker count");
    simulate->add_flag("--cross-check", sim_opt.cross_check,
                       "build and compare all graph variants per window");

    // sweep
    rrsim::SweepOptions sweep_opt;
    std::string sweep_network_dir, sweep_values, sweep_seed_str;
    auto* sweep = app.add_subcommand("sweep", "one-at-a-time parameter sweep");
    sweep->add_option("--config", sweep_opt.base.config_path, "config file")->required();
    sweep->add_option("--trips", sweep_opt.base.trips_path, "trips CSV")->required();
    sweep->add_option("--network", sweep_network_dir, "network directory")->required();
    sweep->add_option("--out", sweep_opt.base.out_dir, "output directory")->required();
    sweep->add_option("--param", sweep_opt.parameter, "parameter: beta|gamma|tau|psi|o")
        ->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep->add_option("--seed", sweep_seed_str, "override config seed");
    sweep->add_option("--jobs", sweep_opt.base.jobs, "parallel worker count");

    // gen-demand
    rrsim::GenDemandOptions gen_opt;
    std::string gen_network_dir, gen_spatial = "uniform", gen_hotspots, gen_temporal = "uniform",
                gen_peaks;
    auto* gen = app.add_subcommand("gen-demand", "write a synthetic trips CSV");
    gen->add_option("--network", gen_network_dir, "network directory")->required();
    gen->add_option("--out", gen_opt.out_path, "output trips CSV")->required();
    gen->add_option("--n", gen_opt.n, "number of requests");
    gen->add_option("--seed", gen_opt.seed, "random seed");
    gen->add_option("--horizon", gen_opt.horizon, "request times drawn from [0, horizon)");
    gen->add_option("--spatial", gen_spatial, "uniform|hotspot");
    gen->add_option("--hotspots", gen_hotspots, "zone:weight,... for the hotspot profile");
    gen->add_option("--temporal", gen_temporal, "uniform|peaked");
    gen->add_option("--peaks", gen_peaks, "comma-separated peak times (minutes)");
    gen->add_option("--peak-sigma", gen_opt.temporal.peak_sigma, "peak spread (minutes)");

    // oracle-check
    rrsim::OracleCheckOptions oracle_opt;
    auto* oracle = app.add_subcommand("oracle-check",
                                      "exact matcher vs exhaustive enumeration on random graphs");
    oracle->add_option("--cases", oracle_opt.n_cases, "number of random graphs");
    oracle->add_option("--max-nodes", oracle_opt.max_nodes, "graph size bound (<= 16)");
    oracle->add_option("--seed", oracle_opt.seed, "random seed");
    oracle->add_flag("--greedy", oracle_opt.use_greedy,
                     "check the greedy heuristic instead (expected to fail)");

    // analyze
    rrsim::AnalyzeOptions an_opt;
    auto* analyze = app.add_subcommand("analyze", "fits and reports over simulate/sweep output");
    analyze->add_option("--results", an_opt.results_dir, "directory with result CSVs")->required();
    analyze->add_option("--out", an_opt.out_dir, "output directory")->required();
    analyze->add_flag("--svg", an_opt.write_svg, "also write SVG charts");
    analyze->add_option("--interval", an_opt.interval_minutes,
                        "aggregation interval for share-rate fits (minutes)");

    // bench
    rrsim::BenchOptions bench_opt;
    std::string bench_sizes;
    auto* bench = app.add_subcommand("bench", "scaling benchmark on synthetic windows");
    bench->add_option("--sizes", bench_sizes, "comma-separated rider counts");
    bench->add_option("--seed", bench_opt.seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            sim_opt.network = rrsim::NetworkPaths::from_dir(sim_network_dir);
            if (!sim_seed_str.empty()) sim_opt.seed = std::stoull(sim_seed_str);
            if (!sim_scenario.empty()) sim_opt.scenario = sim_scenario;
            if (!sim_mechanism.empty()) sim_opt.mechanism = sim_mechanism;
            return rrsim::cmd_simulate(sim_opt);
        }
        if (*sweep) {
            sweep_opt.base.network = rrsim::NetworkPaths::from_dir(sweep_network_dir);
            sweep_opt.values = parse_values(sweep_values);
            if (!sweep_seed_str.empty()) sweep_opt.base.seed = std::stoull(sweep_seed_str);
            return rrsim::cmd_sweep(sweep_opt);
        }
        if (*gen) {
            gen_opt.network = rrsim::NetworkPaths::from_dir(gen_network_dir);
            gen_opt.spatial = parse_spatial(gen_spatial, gen_hotspots);
            if (gen_temporal == "peaked") {
                gen_opt.temporal.kind = rrsim::TemporalProfile::Kind::Peaked;
                gen_opt.temporal.peak_times = parse_values(gen_peaks);
            } else if (gen_temporal != "uniform") {
                throw rrsim::InputError("unknown temporal profile '" + gen_temporal + "'");
            }
            return rrsim::cmd_gen_demand(gen_opt);
        }
        if (*oracle) return rrsim::cmd_oracle_check(oracle_opt);
        if (*analyze) return rrsim::cmd_analyze(an_opt);
        if (*bench) {
            if (!bench_sizes.empty()) {
                bench_opt.sizes.clear();
                for (double v : parse_values(bench_sizes)) bench_opt.sizes.push_back(int(v));
            }
            return rrsim::cmd_bench(bench_opt);
        }
    } catch (const rrsim::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
