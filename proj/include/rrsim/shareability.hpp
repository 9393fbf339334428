#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "rrsim/economics.hpp"
#include "rrsim/geo.hpp"
#include "rrsim/request.hpp"

namespace rrsim {

struct WindowConfig {
    double length = 5.0;      // window width, minutes
    double step = 5.0;        // advance per evaluation, minutes
    double max_wait = 10.0;   // pickup delay bound, minutes
    double max_detour = 0.2;  // detour bound as a fraction of the direct trip

    void validate() const {
        if (length <= 0) throw InputError("window length must be > 0");
        if (step <= 0) throw InputError("window step must be > 0");
        if (max_wait < 0) throw InputError("max wait must be >= 0");
        if (max_detour < 0) throw InputError("max detour must be >= 0");
    }
};

// The four serving orders for a rider pair. First pickup alternates between
// the two riders; the middle segment is where the trip is actually shared.
enum class PathSequence {
    PickupIJDropJI,  // O_i O_j D_j D_i
    PickupJIDropIJ,  // O_j O_i D_i D_j
    PickupIJDropIJ,  // O_i O_j D_i D_j
    PickupJIDropJI,  // O_j O_i D_j D_i
};

struct SharedPath {
    PathSequence sequence = PathSequence::PickupIJDropJI;
    double total_distance = 0.0;          // miles over all three legs
    std::array<double, 3> leg_distances{};
    double in_trip_i = 0.0;  // miles rider i spends on board
    double in_trip_j = 0.0;
    bool first_pickup_is_i = true;
};

struct SharedTripCandidate {
    int rider_i = -1;
    int rider_j = -1;
    SharedPath path;
    double fare_i = 0.0;  // discounted shared fares
    double fare_j = 0.0;
    double joint_profit = 0.0;   // platform take when the pair rides together
    double standalone_i = 0.0;   // profit from serving rider i solo, undiscounted
    double standalone_j = 0.0;
};

// Stand-in for vehicle positions, which the request data does not carry. The
// first pickup sits `base` miles from the assigned vehicle; the second rider
// additionally waits out the first leg of the shared path.
struct VehicleAccessModel {
    enum class Mode { Zero, Constant, UniformRandom };
    Mode mode = Mode::Zero;
    double parameter = 0.0;  // miles
    std::uint64_t seed = 0;

    double base_distance(int rider_a, int rider_b, double t) const {
        switch (mode) {
            case Mode::Zero: return 0.0;
            case Mode::Constant: return parameter;
            case Mode::UniformRandom: {
                auto key = detail::mix_seed(detail::mix_seed(seed, std::uint64_t(rider_a) << 21),
                                            std::uint64_t(rider_b) ^
                                                std::uint64_t(std::llround(t * 1024.0)) << 13);
                std::mt19937_64 rng(key);
                return std::uniform_real_distribution<double>(0.0, parameter)(rng);
            }
        }
        return 0.0;
    }
};

inline VehicleAccessModel::Mode parse_access_mode(const std::string& s) {
    if (s == "zero") return VehicleAccessModel::Mode::Zero;
    if (s == "constant") return VehicleAccessModel::Mode::Constant;
    if (s == "uniform-random") return VehicleAccessModel::Mode::UniformRandom;
    throw InputError("unknown access mode '" + s + "' (expected zero|constant|uniform-random)");
}

// Riders eligible for matching at evaluation time t: requests inside the
// window [t - length, t], plus older unmatched riders still within their
// wait tolerance.
inline std::vector<int> active_riders(const std::vector<RiderRequest>& queue, double t,
                                      const WindowConfig& cfg) {
    std::vector<int> out;
    for (const auto& r : queue) {
        if (r.state == RiderState::Matched || r.state == RiderState::ExpiredSolo) continue;
        if (r.request_time > t) continue;
        bool in_window = r.request_time >= t - cfg.length;
        bool carried_over = t - r.request_time <= cfg.max_wait;
        if (in_window || carried_over) out.push_back(r.id);
    }
    return out;
}

// Evaluates the four serving orders leg-by-leg over shortest paths and keeps
// the shortest reachable one; ties keep the earliest order above. Returns
// nullopt when every order has an unreachable leg.
inline std::optional<SharedPath> best_shared_path(const RiderRequest& ri, const RiderRequest& rj,
                                                  const RoadNetwork& net) {
    struct Order {
        PathSequence seq;
        std::array<NodeId, 4> stops;
        bool first_is_i;
        // which legs each rider is on board for: [first_leg, last_leg]
        int i_from, i_to, j_from, j_to;
    };
    const std::array<Order, 4> orders{{
        {PathSequence::PickupIJDropJI, {ri.origin, rj.origin, rj.dest, ri.dest}, true, 0, 2, 1, 1},
        {PathSequence::PickupJIDropIJ, {rj.origin, ri.origin, ri.dest, rj.dest}, false, 1, 1, 0, 2},
        {PathSequence::PickupIJDropIJ, {ri.origin, rj.origin, ri.dest, rj.dest}, true, 0, 1, 1, 2},
        {PathSequence::PickupJIDropJI, {rj.origin, ri.origin, rj.dest, ri.dest}, false, 1, 2, 0, 1},
    }};

    std::optional<SharedPath> best;
    for (const auto& ord : orders) {
        std::array<double, 3> legs{};
        bool reachable = true;
        for (int leg = 0; leg < 3 && reachable; ++leg) {
            auto d = net.shortest_distance(ord.stops[leg], ord.stops[leg + 1]);
            if (!d)
                reachable = false;
            else
                legs[leg] = *d;
        }
        if (!reachable) continue;
        double total = legs[0] + legs[1] + legs[2];
        if (best && total >= best->total_distance) continue;
        SharedPath p;
        p.sequence = ord.seq;
        p.leg_distances = legs;
        p.total_distance = total;
        p.first_pickup_is_i = ord.first_is_i;
        for (int leg = ord.i_from; leg <= ord.i_to; ++leg) p.in_trip_i += legs[leg];
        for (int leg = ord.j_from; leg <= ord.j_to; ++leg) p.in_trip_j += legs[leg];
        best = p;
    }
    return best;
}

inline SharedTripCandidate make_candidate(const RiderRequest& ri, const RiderRequest& rj,
                                          const SharedPath& path, const PricingParams& pricing) {
    SharedTripCandidate c;
    c.rider_i = ri.id;
    c.rider_j = rj.id;
    c.path = path;
    c.fare_i = ri.fare_shared;
    c.fare_j = rj.fare_shared;
    c.joint_profit = shared_profit(c.fare_i, c.fare_j, path.total_distance, pricing);
    c.standalone_i = single_profit(ri.fare_single, pricing);
    c.standalone_j = single_profit(rj.fare_single, pricing);
    return c;
}

// C1: both riders reach their pickup within the wait bound. The second
// pickup sits one leg further along the shared path than the first.
inline bool check_wait(const SharedTripCandidate& cand, const RiderRequest& ri,
                       const RiderRequest& rj, double t, const WindowConfig& cfg,
                       const VehicleAccessModel& access, double mean_speed) {
    double base = access.base_distance(cand.rider_i, cand.rider_j, t);
    double access_i = cand.path.first_pickup_is_i ? base : base + cand.path.leg_distances[0];
    double access_j = cand.path.first_pickup_is_i ? base + cand.path.leg_distances[0] : base;
    bool ok_i = access_i / mean_speed + (t - ri.request_time) <= cfg.max_wait;
    bool ok_j = access_j / mean_speed + (t - rj.request_time) <= cfg.max_wait;
    return ok_i && ok_j;
}

// C2: neither rider's on-board distance exceeds (1 + max_detour) times the
// direct trip. Zero-length trips never reach this check; they are kept out
// of pairing entirely.
inline bool check_detour(const SharedTripCandidate& cand, const RiderRequest& ri,
                         const RiderRequest& rj, const WindowConfig& cfg) {
    double ratio_i = (cand.path.in_trip_i - ri.direct_distance) / ri.direct_distance;
    double ratio_j = (cand.path.in_trip_j - rj.direct_distance) / rj.direct_distance;
    return ratio_i <= cfg.max_detour && ratio_j <= cfg.max_detour;
}

// C3: sharing must earn at least the two solo trips combined.
inline bool check_profit(const SharedTripCandidate& cand) {
    return cand.standalone_i + cand.standalone_j <= cand.joint_profit;
}

// Path, fares and the distance/profit constraints do not depend on the
// window, so pair evaluations are cached across windows. Only the wait
// constraint is re-checked per window.
struct PairEvaluation {
    std::optional<SharedTripCandidate> candidate;  // nullopt: no reachable shared path
    bool detour_ok = false;
    bool profit_ok = false;
};

class PairCache {
public:
    PairEvaluation& lookup(int id_a, int id_b, bool& found) {
        std::uint64_t key = make_key(id_a, id_b);
        auto [it, inserted] = cache_.try_emplace(key);
        found = !inserted;
        return it->second;
    }

    static std::uint64_t make_key(int a, int b) {
        auto lo = std::uint64_t(std::min(a, b));
        auto hi = std::uint64_t(std::max(a, b));
        return (hi << 32) | lo;
    }

private:
    std::unordered_map<std::uint64_t, PairEvaluation> cache_;
};

// Symmetric pair-feasibility matrix over one window's active riders, with
// the surviving candidate stored per true entry.
class FeasibilityMatrix {
public:
    FeasibilityMatrix() = default;
    FeasibilityMatrix(double t, std::vector<int> rider_ids, std::vector<int> platforms,
                      std::vector<double> standalone)
        : window_time_(t),
          rider_ids_(std::move(rider_ids)),
          platforms_(std::move(platforms)),
          standalone_(std::move(standalone)),
          entries_(rider_ids_.size() * rider_ids_.size(), 0) {
        for (std::size_t i = 0; i < rider_ids_.size(); ++i) index_of_[rider_ids_[i]] = i;
    }

    double window_time() const { return window_time_; }
    std::size_t size() const { return rider_ids_.size(); }
    const std::vector<int>& rider_ids() const { return rider_ids_; }
    int platform_of(std::size_t idx) const { return platforms_[idx]; }
    double standalone_of(std::size_t idx) const { return standalone_[idx]; }

    bool feasible(std::size_t i, std::size_t j) const {
        return entries_[i * rider_ids_.size() + j] != 0;
    }

    void set_feasible(std::size_t i, std::size_t j, const SharedTripCandidate& cand) {
        entries_[i * rider_ids_.size() + j] = 1;
        entries_[j * rider_ids_.size() + i] = 1;
        candidates_[pair_key(i, j)] = cand;
    }

    void clear_entry(std::size_t i, std::size_t j) {
        entries_[i * rider_ids_.size() + j] = 0;
        entries_[j * rider_ids_.size() + i] = 0;
        candidates_.erase(pair_key(i, j));
    }

    const SharedTripCandidate& candidate(std::size_t i, std::size_t j) const {
        return candidates_.at(pair_key(i, j));
    }

    std::size_t index_of(int rider_id) const { return index_of_.at(rider_id); }

    std::size_t n_feasible_pairs() const { return candidates_.size(); }

private:
    std::pair<std::size_t, std::size_t> pair_key(std::size_t i, std::size_t j) const {
        return {std::min(i, j), std::max(i, j)};
    }

    double window_time_ = 0;
    std::vector<int> rider_ids_;
    std::vector<int> platforms_;
    std::vector<double> standalone_;
    std::vector<char> entries_;
    std::unordered_map<int, std::size_t> index_of_;
    std::map<std::pair<std::size_t, std::size_t>, SharedTripCandidate> candidates_;
};

// Builds the base feasibility matrix: an entry is set when the pair's best
// shared path satisfies wait, detour and profit constraints together.
// `riders` is the active snapshot; requests are looked up by id in `queue`.
inline FeasibilityMatrix feasibility_matrix(const std::vector<const RiderRequest*>& riders,
                                            double t, const RoadNetwork& net,
                                            const WindowConfig& cfg, const PricingParams& pricing,
                                            const VehicleAccessModel& access,
                                            PairCache* cache = nullptr) {
    std::vector<int> ids;
    std::vector<int> platforms;
    std::vector<double> standalone;
    ids.reserve(riders.size());
    for (const auto* r : riders) {
        ids.push_back(r->id);
        platforms.push_back(r->platform);
        standalone.push_back(single_profit(r->fare_single, pricing));
    }
    FeasibilityMatrix m(t, std::move(ids), std::move(platforms), std::move(standalone));

    PairCache local_cache;
    PairCache& pc = cache ? *cache : local_cache;
    for (std::size_t i = 0; i < riders.size(); ++i) {
        const RiderRequest& ri = *riders[i];
        if (ri.direct_distance <= 0) continue;  // same-node trips ride solo
        for (std::size_t j = i + 1; j < riders.size(); ++j) {
            const RiderRequest& rj = *riders[j];
            if (rj.direct_distance <= 0) continue;
            bool found = false;
            PairEvaluation& ev = pc.lookup(ri.id, rj.id, found);
            if (!found) {
                auto path = best_shared_path(ri, rj, net);
                if (path) {
                    auto cand = make_candidate(ri, rj, *path, pricing);
                    ev.detour_ok = check_detour(cand, ri, rj, cfg);
                    ev.profit_ok = check_profit(cand);
                    ev.candidate = std::move(cand);
                }
            }
            if (!ev.candidate || !ev.detour_ok || !ev.profit_ok) continue;
            if (!check_wait(*ev.candidate, ri, rj, t, cfg, access, pricing.mean_speed)) continue;
            m.set_feasible(i, j, *ev.candidate);
        }
    }
    return m;
}

// Profit-aware refinement: an inter-platform entry survives only when both
// platforms prefer their allocated share over (a) the best intra-platform
// pairing currently available to their rider and (b) serving that rider
// solo. Intra-platform entries pass through untouched.
inline FeasibilityMatrix profit_aware_filter(const FeasibilityMatrix& matrix, Mechanism mechanism,
                                             const MarketShares& shares) {
    const std::size_t n = matrix.size();

    // Best intra-platform alternative per rider; the full pair profit stays
    // in-house, so the benchmark is the joint profit itself.
    std::vector<double> inner(n);
    for (std::size_t i = 0; i < n; ++i) inner[i] = matrix.standalone_of(i);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!matrix.feasible(i, j)) continue;
            if (matrix.platform_of(i) != matrix.platform_of(j)) continue;
            double joint = matrix.candidate(i, j).joint_profit;
            inner[i] = std::max(inner[i], joint);
            inner[j] = std::max(inner[j], joint);
        }
    }

    FeasibilityMatrix out = matrix;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!matrix.feasible(i, j)) continue;
            int pi = matrix.platform_of(i);
            int pj = matrix.platform_of(j);
            if (pi == pj) continue;
            const auto& cand = matrix.candidate(i, j);
            auto [phi_i, phi_j] = allocate_pair(mechanism, cand.standalone_i, cand.standalone_j,
                                                cand.joint_profit, pi, pj, shares);
            bool keep = phi_i >= inner[i] && phi_i >= cand.standalone_i && phi_j >= inner[j] &&
                        phi_j >= cand.standalone_j;
            if (!keep) out.clear_entry(i, j);
        }
    }
    return out;
}

}  // namespace rrsim
