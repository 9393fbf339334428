#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "rrsim/csv.hpp"
#include "rrsim/matching.hpp"
#include "rrsim/rr_graph.hpp"
#include "rrsim/shareability.hpp"

namespace rrsim {

enum class Scenario { Competition, Full, ProfitAware };

inline std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::Competition: return "competition";
        case Scenario::Full: return "full";
        case Scenario::ProfitAware: return "profit-aware";
    }
    return "?";
}

inline Scenario parse_scenario(const std::string& s) {
    if (s == "competition") return Scenario::Competition;
    if (s == "full") return Scenario::Full;
    if (s == "profit-aware") return Scenario::ProfitAware;
    throw InputError("unknown scenario '" + s + "' (expected competition|full|profit-aware|all)");
}

struct SimConfig {
    double horizon = 1440.0;  // minutes
    WindowConfig window;
    PricingParams pricing;
    double psi = 0.5;
    Mechanism mechanism = Mechanism::Shapley;
    std::string scenario_key = "all";  // competition | full | profit-aware | all
    MarketShares shares{{0.58, 0.42}};
    int replications = 1;
    std::uint64_t seed = 0;
    double collaboration_willingness = 1.0;  // accepted and echoed, not used by any rule
    VehicleAccessModel access;
    std::size_t endpoint_candidates = 50;
    bool cross_check = false;  // per-window variant comparison instrumentation

    int n_platforms() const { return int(shares.weights.size()); }

    std::vector<Scenario> scenarios() const {
        if (scenario_key == "all")
            return {Scenario::Competition, Scenario::Full, Scenario::ProfitAware};
        return {parse_scenario(scenario_key)};
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> warnings;
        if (horizon <= 0) throw InputError("horizon must be > 0");
        if (replications < 1) throw InputError("replications must be >= 1");
        if (psi < 0 || psi > 1) throw InputError("psi must be in [0,1]");
        window.validate();
        pricing.validate();
        shares.validate();
        scenarios();
        if (window.step > window.length)
            warnings.push_back("window step exceeds window length; requests may fall in gaps");
        return warnings;
    }
};

struct MatchRecord {
    double t = 0;  // window evaluation time at commitment
    int rider_i = -1, rider_j = -1;
    int platform_i = -1, platform_j = -1;
    double joint_profit = 0;
    double shared_distance = 0;
    double alloc_i = 0, alloc_j = 0;  // profit credited to each rider's platform
    double wait_i = 0, wait_j = 0;
    double detour_i = 0, detour_j = 0;
    double edge_weight = 0;
};

struct CrossCheckRecord {
    double weight_full = 0, weight_profit_aware = 0, weight_competition = 0;
    std::size_t edges_full = 0, edges_profit_aware = 0, edges_competition = 0;
    bool inclusion_ok = true;   // competition edges within profit-aware within full
    bool allocation_ok = true;  // efficiency + standalone floor on every feasible edge
};

struct WindowRecord {
    double t = 0;
    int active_count = 0;
    std::size_t n_vertices = 0;
    std::size_t n_edges = 0;
    double average_degree = 0;
    double matching_weight = 0;
    int matched_pairs = 0;
    std::vector<double> platform_profit;  // committed in this window
    double creation_ms = 0, matching_ms = 0;
    std::optional<CrossCheckRecord> cross;
};

struct RiderOutcome {
    int id = -1;
    int platform = -1;
    double request_time = 0;
    double direct_distance = 0;
    RiderState final_state = RiderState::ExpiredSolo;
    double wait = 0;     // minutes; meaningful for matched riders
    double detour = 0;   // miles beyond the direct trip
    double savings = 0;  // $ vs the undiscounted solo fare
    int matched_with = -1;
    double matched_at = -1;  // window time, -1 when never matched
};

struct SimulationResult {
    Scenario scenario = Scenario::Full;
    Mechanism mechanism = Mechanism::Shapley;
    std::uint64_t seed = 0;
    int n_platforms = 2;
    std::vector<WindowRecord> windows;
    std::vector<MatchRecord> matches;
    std::vector<RiderOutcome> riders;  // ordered by rider id
    std::vector<double> total_profit_by_platform;
    std::size_t total_requests = 0;
    std::size_t matched_requests = 0;
    std::size_t expired_solo = 0;
    double total_vmt = 0;

    bool empty() const { return total_requests == 0; }
};

// ---------------------------------------------------------------------------
// Demand ingestion and generation

inline void finalize_request(RiderRequest& r, const RoadNetwork& net, const PricingParams& p) {
    auto d = net.shortest_distance(r.origin, r.dest);
    if (!d)
        throw InputError("request " + std::to_string(r.id) + ": no path from node " +
                         std::to_string(r.origin) + " to node " + std::to_string(r.dest));
    r.direct_distance = *d;
    r.fare_shared = fare(r.direct_distance, p, true);
    r.fare_single = fare(r.direct_distance, p, false);
}

inline void sort_by_time(std::vector<RiderRequest>& requests) {
    std::sort(requests.begin(), requests.end(), [](const RiderRequest& a, const RiderRequest& b) {
        if (a.request_time != b.request_time) return a.request_time < b.request_time;
        return a.id < b.id;
    });
}

// Reads a trips CSV. Endpoints come either as node ids (origin_node,
// dest_node) or as zone ids (origin_zone, dest_zone + reported_length_miles),
// in which case nodes are picked to replicate the reported length.
inline std::vector<RiderRequest> load_trips(const std::string& path, const RoadNetwork& net,
                                            std::uint64_t seed, const PricingParams& pricing,
                                            std::size_t endpoint_candidates = 50) {
    auto table = csv::Table::read_file(path);
    bool by_node = table.has_column("origin_node") && table.has_column("dest_node");
    bool by_zone = table.has_column("origin_zone") && table.has_column("dest_zone");
    if (by_node == by_zone)
        throw InputError(path +
                         ": expected either origin_node/dest_node or origin_zone/dest_zone "
                         "columns");
    if (by_zone && !table.has_column("reported_length_miles"))
        throw InputError(path + ": zone-based trips need a reported_length_miles column");
    bool has_platform = table.has_column("platform");

    std::vector<RiderRequest> out;
    out.reserve(table.n_rows());
    std::unordered_map<int, std::size_t> seen;
    for (std::size_t row = 0; row < table.n_rows(); ++row) {
        RiderRequest r;
        r.id = int(table.integer(row, "id"));
        if (!seen.emplace(r.id, row).second)
            throw InputError(path + ":" + std::to_string(table.source_line(row)) +
                             ": duplicate request id " + std::to_string(r.id));
        r.request_time = table.number(row, "request_time_min");
        if (has_platform) {
            const std::string& p = table.cell(row, "platform");
            r.platform = p.empty() ? -1 : int(table.integer(row, "platform"));
        }
        if (by_node) {
            r.origin = table.integer(row, "origin_node");
            r.dest = table.integer(row, "dest_node");
            if (!net.has_node(r.origin) || !net.has_node(r.dest))
                throw InputError(path + ":" + std::to_string(table.source_line(row)) +
                                 ": trip endpoint references an unknown node");
        } else {
            auto [o, d] = assign_endpoint(net, table.integer(row, "origin_zone"),
                                          table.integer(row, "dest_zone"),
                                          table.number(row, "reported_length_miles"),
                                          detail::mix_seed(seed, std::uint64_t(r.id)),
                                          endpoint_candidates);
            r.origin = o;
            r.dest = d;
        }
        finalize_request(r, net, pricing);
        out.push_back(r);
    }
    sort_by_time(out);
    return out;
}

// Independent platform draw per request, weighted by market share.
inline std::vector<RiderRequest> assign_platforms(std::vector<RiderRequest> requests,
                                                  const MarketShares& shares,
                                                  std::uint64_t seed) {
    shares.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& r : requests) {
        double u = unit(rng);
        double acc = 0;
        int platform = int(shares.weights.size()) - 1;
        for (std::size_t k = 0; k < shares.weights.size(); ++k) {
            acc += shares.weights[k];
            if (u < acc) {
                platform = int(k);
                break;
            }
        }
        r.platform = platform;
    }
    return requests;
}

struct SpatialProfile {
    enum class Kind { Uniform, Hotspot };
    Kind kind = Kind::Uniform;
    std::vector<std::pair<ZoneId, double>> hotspots;  // zone -> weight
};

struct TemporalProfile {
    enum class Kind { Uniform, Peaked };
    Kind kind = Kind::Uniform;
    double span = 1440.0;            // request times drawn from [0, span)
    std::vector<double> peak_times;  // gaussian mixture centers, minutes
    double peak_sigma = 60.0;
};

// Deterministic synthetic demand: positive-length, reachable trips only.
inline std::vector<RiderRequest> gen_synthetic_demand(std::size_t n_requests,
                                                      const RoadNetwork& net,
                                                      const SpatialProfile& spatial,
                                                      const TemporalProfile& temporal,
                                                      std::uint64_t seed,
                                                      const PricingParams& pricing) {
    if (net.n_nodes() == 0 && n_requests > 0)
        throw InputError("cannot generate demand on an empty network");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> any_node(0, net.n_nodes() ? net.n_nodes() - 1 : 0);

    double hotspot_total = 0;
    for (auto& [z, w] : spatial.hotspots) {
        if (w < 0) throw InputError("hotspot weight must be >= 0");
        hotspot_total += w;
    }
    if (spatial.kind == SpatialProfile::Kind::Hotspot &&
        (spatial.hotspots.empty() || hotspot_total <= 0))
        throw InputError("hotspot profile needs at least one zone with positive weight");

    auto draw_node = [&]() -> NodeId {
        if (spatial.kind == SpatialProfile::Kind::Uniform)
            return net.id_of_index(any_node(rng));
        double u = unit(rng) * hotspot_total;
        double acc = 0;
        ZoneId zone = spatial.hotspots.back().first;
        for (auto& [z, w] : spatial.hotspots) {
            acc += w;
            if (u < acc) {
                zone = z;
                break;
            }
        }
        const auto& members = net.zone_members(zone);
        if (members.empty()) throw InputError("zone " + std::to_string(zone) + " has no nodes");
        return members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
    };

    auto draw_time = [&]() -> double {
        if (temporal.kind == TemporalProfile::Kind::Uniform) return unit(rng) * temporal.span;
        if (temporal.peak_times.empty()) throw InputError("peaked profile needs peak times");
        std::size_t which =
            std::uniform_int_distribution<std::size_t>(0, temporal.peak_times.size() - 1)(rng);
        std::normal_distribution<double> gauss(temporal.peak_times[which], temporal.peak_sigma);
        double t = gauss(rng);
        while (t < 0 || t >= temporal.span) t = gauss(rng);
        return t;
    };

    std::vector<RiderRequest> out;
    out.reserve(n_requests);
    for (std::size_t i = 0; i < n_requests; ++i) {
        RiderRequest r;
        r.request_time = draw_time();
        bool placed = false;
        for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
            r.origin = draw_node();
            r.dest = draw_node();
            if (r.origin == r.dest) continue;
            auto d = net.shortest_distance(r.origin, r.dest);
            if (d && *d > 0) placed = true;
        }
        if (!placed)
            throw InputError("could not place a positive-length trip; network too disconnected");
        out.push_back(r);
    }
    sort_by_time(out);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].id = int(i);
        finalize_request(out[i], net, pricing);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Engine

namespace detail {

inline double ms_between(std::chrono::steady_clock::time_point a,
                         std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

// Allocation of one committed pair to the two riders' platforms. An
// intra-platform pair keeps the whole joint profit in-house.
inline std::pair<double, double> commit_allocation(const SharedTripCandidate& cand, int pi, int pj,
                                                   Mechanism mechanism,
                                                   const MarketShares& shares) {
    if (pi == pj) return {cand.joint_profit, 0.0};
    return allocate_pair(mechanism, cand.standalone_i, cand.standalone_j, cand.joint_profit, pi,
                         pj, shares);
}

inline bool shapley_edge_checks(const FeasibilityMatrix& matrix) {
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!matrix.feasible(i, j)) continue;
            const auto& cand = matrix.candidate(i, j);
            auto split = shapley_two(cand.standalone_i, cand.standalone_j, cand.joint_profit);
            double total = split.platform_profits[0] + split.platform_profits[1];
            if (std::abs(total - cand.joint_profit) > 1e-9) return false;
            double surplus = cand.joint_profit - cand.standalone_i - cand.standalone_j;
            if (surplus >= 0) {
                if (split.platform_profits[0] < cand.standalone_i - 1e-9) return false;
                if (split.platform_profits[1] < cand.standalone_j - 1e-9) return false;
            }
        }
    }
    return true;
}

}  // namespace detail

class SimEngine {
public:
    SimEngine(std::vector<RiderRequest> requests, const SimConfig& cfg, const RoadNetwork& net,
              Scenario scenario)
        : cfg_(cfg), net_(net), scenario_(scenario), requests_(std::move(requests)) {
        sort_by_time(requests_);
        for (std::size_t i = 0; i < requests_.size(); ++i) {
            auto& r = requests_[i];
            if (r.platform < 0 || r.platform >= cfg_.n_platforms())
                throw InputError("request " + std::to_string(r.id) +
                                 " has no valid platform assignment");
            if (r.state != RiderState::Pending)
                throw InputError("requests must enter the simulation in pending state");
            by_id_[r.id] = i;
        }
        weight_params_ =EdgeWeightParams{cfg_.psi, cfg_.pricing.alpha_t};
        weight_params_.validate();
    }

    SimulationResult run() {
        SimulationResult res;
        res.scenario = scenario_;
        res.mechanism = cfg_.mechanism;
        res.seed = cfg_.seed;
        res.n_platforms = cfg_.n_platforms();
        res.total_requests = requests_.size();
        res.total_profit_by_platform.assign(cfg_.n_platforms(), 0.0);

        for (std::size_t k = 0;; ++k) {
            double t = cfg_.window.length + double(k) * cfg_.window.step;
            if (t > cfg_.horizon + 1e-9) break;
            res.windows.push_back(step(t, res));
        }

        // Whatever never matched rides solo at the undiscounted fare.
        for (auto& r : requests_) {
            if (r.state != RiderState::Matched) {
                r.state = RiderState::ExpiredSolo;
                res.expired_solo++;
                res.total_profit_by_platform[r.platform] += single_profit(r.fare_single, cfg_.pricing);
                res.total_vmt += r.direct_distance;
            }
        }
        res.matched_requests = 2 * res.matches.size();

        res.riders.reserve(requests_.size());
        for (const auto& r : requests_) {
            RiderOutcome o;
            o.id = r.id;
            o.platform = r.platform;
            o.request_time = r.request_time;
            o.direct_distance = r.direct_distance;
            o.final_state = r.state;
            if (r.state == RiderState::Matched) {
                o.wait = r.wait_accrued;
                auto& extra = matched_extra_.at(r.id);
                o.detour = extra.detour;
                o.savings = r.fare_single - r.fare_shared;
                o.matched_with = extra.partner;
                o.matched_at = extra.t;
            }
            res.riders.push_back(o);
        }
        std::sort(res.riders.begin(), res.riders.end(),
                  [](const RiderOutcome& a, const RiderOutcome& b) { return a.id < b.id; });
        return res;
    }

private:
    struct MatchedExtra {
        int partner = -1;
        double detour = 0;
        double t = -1;
    };

    WindowRecord step(double t, SimulationResult& res) {
        WindowRecord rec;
        rec.t = t;
        rec.platform_profit.assign(cfg_.n_platforms(), 0.0);

        // Queue update: riders that can never re-enter a window leave solo.
        for (auto& r : requests_) {
            if (r.state == RiderState::Matched || r.state == RiderState::ExpiredSolo) continue;
            if (r.request_time > t) continue;
            bool in_window = r.request_time >= t - cfg_.window.length;
            bool within_wait = t - r.request_time <= cfg_.window.max_wait;
            if (!in_window && !within_wait) r.state = RiderState::ExpiredSolo;
        }

        auto creation_start = std::chrono::steady_clock::now();
        std::vector<const RiderRequest*> active;
        for (auto& r : requests_) {
            if (r.state == RiderState::ExpiredSolo || r.state == RiderState::Matched) continue;
            if (r.request_time > t) continue;
            bool in_window = r.request_time >= t - cfg_.window.length;
            bool within_wait = t - r.request_time <= cfg_.window.max_wait;
            if (in_window || within_wait) {
                r.state = RiderState::Active;
                active.push_back(&r);
            }
        }
        rec.active_count = int(active.size());

        FeasibilityMatrix matrix = feasibility_matrix(active, t, net_, cfg_.window, cfg_.pricing,
                                                      cfg_.access, &pair_cache_);
        std::optional<FeasibilityMatrix> filtered;
        if (scenario_ == Scenario::ProfitAware || cfg_.cross_check)
            filtered = profit_aware_filter(matrix, cfg_.mechanism, cfg_.shares);

        std::vector<RiderGraph> graphs;  // the graphs this scenario matches on
        switch (scenario_) {
            case Scenario::Competition:
                graphs = build_competition(active, matrix, weight_params_, cfg_.n_platforms());
                break;
            case Scenario::Full:
                graphs.push_back(build_full(active, matrix, weight_params_));
                break;
            case Scenario::ProfitAware:
                graphs.push_back(build_profit_aware(active, matrix, *filtered, weight_params_));
                break;
        }
        auto creation_end = std::chrono::steady_clock::now();
        rec.creation_ms = detail::ms_between(creation_start, creation_end);

        for (const auto& g : graphs) {
            auto s = graph_stats(g);
            rec.n_vertices += s.n_vertices;
            rec.n_edges += s.n_edges;
        }
        rec.average_degree =
            rec.n_vertices == 0 ? 0.0 : 2.0 * double(rec.n_edges) / double(rec.n_vertices);

        auto matching_start = std::chrono::steady_clock::now();
        std::vector<Matching> matchings;
        matchings.reserve(graphs.size());
        for (const auto& g : graphs) matchings.push_back(max_weight_matching(g));
        auto matching_end = std::chrono::steady_clock::now();
        rec.matching_ms = detail::ms_between(matching_start, matching_end);

        const FeasibilityMatrix& commit_matrix =
            scenario_ == Scenario::ProfitAware ? *filtered : matrix;
        for (const auto& m : matchings) {
            rec.matching_weight += m.total_weight;
            for (auto [a, b] : m.pairs) commit_pair(a, b, t, commit_matrix, rec, res);
        }

        if (cfg_.cross_check) rec.cross = cross_check(active, matrix, *filtered);
        return rec;
    }

    void commit_pair(int id_a, int id_b, double t, const FeasibilityMatrix& matrix,
                     WindowRecord& rec, SimulationResult& res) {
        std::size_t i = matrix.index_of(id_a), j = matrix.index_of(id_b);
        const SharedTripCandidate& cand = matrix.candidate(i, j);
        RiderRequest& ri = requests_[by_id_.at(cand.rider_i)];
        RiderRequest& rj = requests_[by_id_.at(cand.rider_j)];

        auto [alloc_i, alloc_j] =
            detail::commit_allocation(cand, ri.platform, rj.platform, cfg_.mechanism, cfg_.shares);

        MatchRecord m;
        m.t = t;
        m.rider_i = ri.id;
        m.rider_j = rj.id;
        m.platform_i = ri.platform;
        m.platform_j = rj.platform;
        m.joint_profit = cand.joint_profit;
        m.shared_distance = cand.path.total_distance;
        m.alloc_i = alloc_i;
        m.alloc_j = alloc_j;
        m.wait_i = t - ri.request_time;
        m.wait_j = t - rj.request_time;
        m.detour_i = cand.path.in_trip_i - ri.direct_distance;
        m.detour_j = cand.path.in_trip_j - rj.direct_distance;
        m.edge_weight = edge_weight(cand, m.wait_i, m.wait_j, weight_params_, true);
        res.matches.push_back(m);

        ri.state = rj.state = RiderState::Matched;
        ri.wait_accrued = m.wait_i;
        rj.wait_accrued = m.wait_j;
        matched_extra_[ri.id] = {rj.id, m.detour_i, t};
        matched_extra_[rj.id] = {ri.id, m.detour_j, t};

        rec.matched_pairs++;
        rec.platform_profit[ri.platform] += alloc_i;
        rec.platform_profit[rj.platform] += alloc_j;
        res.total_profit_by_platform[ri.platform] += alloc_i;
        res.total_profit_by_platform[rj.platform] += alloc_j;
        res.total_vmt += cand.path.total_distance;
    }

    CrossCheckRecord cross_check(const std::vector<const RiderRequest*>& active,
                                 const FeasibilityMatrix& matrix,
                                 const FeasibilityMatrix& filtered) {
        CrossCheckRecord c;
        auto comp = build_competition(active, matrix, weight_params_, cfg_.n_platforms());
        auto full = build_full(active, matrix, weight_params_);
        auto aware = build_profit_aware(active, matrix, filtered, weight_params_);

        auto edge_set = [](const RiderGraph& g) {
            std::vector<std::pair<int, int>> s;
            s.reserve(g.edges.size());
            for (const auto& e : g.edges) s.emplace_back(e.rider_a, e.rider_b);
            std::sort(s.begin(), s.end());
            return s;
        };
        std::vector<std::pair<int, int>> comp_edges;
        for (const auto& g : comp) {
            auto es = edge_set(g);
            comp_edges.insert(comp_edges.end(), es.begin(), es.end());
        }
        std::sort(comp_edges.begin(), comp_edges.end());
        auto aware_edges = edge_set(aware);
        auto full_edges = edge_set(full);
        c.edges_competition = comp_edges.size();
        c.edges_profit_aware = aware_edges.size();
        c.edges_full = full_edges.size();
        c.inclusion_ok =
            std::includes(aware_edges.begin(), aware_edges.end(), comp_edges.begin(),
                          comp_edges.end()) &&
            std::includes(full_edges.begin(), full_edges.end(), aware_edges.begin(),
                          aware_edges.end());

        for (const auto& g : comp) c.weight_competition += max_weight_matching(g).total_weight;
        c.weight_profit_aware = max_weight_matching(aware).total_weight;
        c.weight_full = max_weight_matching(full).total_weight;
        c.allocation_ok = detail::shapley_edge_checks(matrix);
        return c;
    }

    SimConfig cfg_;
    const RoadNetwork& net_;
    Scenario scenario_;
    std::vector<RiderRequest> requests_;
    std::unordered_map<int, std::size_t> by_id_;
    std::unordered_map<int, MatchedExtra> matched_extra_;
    EdgeWeightParams weight_params_;
    PairCache pair_cache_;
};

inline SimulationResult run(std::vector<RiderRequest> requests, const SimConfig& cfg,
                            const RoadNetwork& net, Scenario scenario) {
    SimEngine engine(std::move(requests), cfg, net, scenario);
    return engine.run();
}

// Post-hoc audit of a finished run: every committed match is recomputed from
// the raw requests and re-checked against the wait, detour and profit rules.
// Returns the number of violations found.
inline int verify_matches(const SimulationResult& result,
                          const std::vector<RiderRequest>& requests, const RoadNetwork& net,
                          const SimConfig& cfg) {
    std::unordered_map<int, const RiderRequest*> by_id;
    for (const auto& r : requests) by_id[r.id] = &r;
    int violations = 0;
    for (const auto& m : result.matches) {
        const RiderRequest* ri = by_id.count(m.rider_i) ? by_id.at(m.rider_i) : nullptr;
        const RiderRequest* rj = by_id.count(m.rider_j) ? by_id.at(m.rider_j) : nullptr;
        if (!ri || !rj) {
            ++violations;
            continue;
        }
        auto path = best_shared_path(*ri, *rj, net);
        if (!path) {
            ++violations;
            continue;
        }
        double unit = cfg.pricing.unit_cost();
        double fare_i = ri->direct_distance * unit * (1 - cfg.pricing.discount) + cfg.pricing.base_fare;
        double fare_j = rj->direct_distance * unit * (1 - cfg.pricing.discount) + cfg.pricing.base_fare;
        double joint = fare_i + fare_j - path->total_distance * unit * cfg.pricing.commission;
        double solo_i = (ri->direct_distance * unit + cfg.pricing.base_fare) *
                        (1 - cfg.pricing.commission);
        double solo_j = (rj->direct_distance * unit + cfg.pricing.base_fare) *
                        (1 - cfg.pricing.commission);

        double base = cfg.access.base_distance(m.rider_i, m.rider_j, m.t);
        double access_i = path->first_pickup_is_i ? base : base + path->leg_distances[0];
        double access_j = path->first_pickup_is_i ? base + path->leg_distances[0] : base;
        bool wait_ok =
            access_i / cfg.pricing.mean_speed + (m.t - ri->request_time) <=
                cfg.window.max_wait + 1e-9 &&
            access_j / cfg.pricing.mean_speed + (m.t - rj->request_time) <=
                cfg.window.max_wait + 1e-9;
        bool detour_ok =
            (path->in_trip_i - ri->direct_distance) / ri->direct_distance <=
                cfg.window.max_detour + 1e-9 &&
            (path->in_trip_j - rj->direct_distance) / rj->direct_distance <=
                cfg.window.max_detour + 1e-9;
        bool profit_ok = solo_i + solo_j <= joint + 1e-9;
        if (!wait_ok || !detour_ok || !profit_ok) ++violations;
    }
    return violations;
}

}  // namespace rrsim
