#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rrsim/errors.hpp"

namespace rrsim {

inline double mph_to_miles_per_min(double mph) { return mph / 60.0; }

// Fare and profit parameters. Speed is carried internally in miles/minute so
// that the $/mile and $/minute rate terms combine into a single $/mile cost.
struct PricingParams {
    double alpha_d = 2.0;       // $ per mile
    double alpha_t = 0.5;       // $ per minute
    double mean_speed = 0.25;   // miles per minute
    double base_fare = 2.0;     // $
    double discount = 0.1;      // fare discount granted on shared trips
    double commission = 0.5;    // driver payout rate

    double unit_cost() const { return alpha_d + alpha_t / mean_speed; }  // $ per mile

    void validate() const {
        if (alpha_d < 0 || alpha_t < 0) throw InputError("rate parameters must be >= 0");
        if (mean_speed <= 0) throw InputError("mean speed must be > 0");
        if (base_fare < 0) throw InputError("base fare must be >= 0");
        if (discount < 0 || discount > 1) throw InputError("discount must be in [0,1]");
        if (commission < 0 || commission > 1) throw InputError("commission must be in [0,1]");
    }
};

inline double fare(double direct_distance, const PricingParams& p, bool discounted) {
    if (direct_distance < 0) throw InputError("negative trip distance");
    double multiplier = discounted ? (1.0 - p.discount) : 1.0;
    return direct_distance * p.unit_cost() * multiplier + p.base_fare;
}

inline double single_profit(double fare_value, const PricingParams& p) {
    return fare_value * (1.0 - p.commission);
}

inline double shared_profit(double fare_i, double fare_j, double shared_distance,
                            const PricingParams& p) {
    return fare_i + fare_j - shared_distance * p.unit_cost() * p.commission;
}

enum class Mechanism { Equal, MarketShare, Shapley };

inline std::string to_string(Mechanism m) {
    switch (m) {
        case Mechanism::Equal: return "equal";
        case Mechanism::MarketShare: return "market-share";
        case Mechanism::Shapley: return "shapley";
    }
    return "?";
}

inline Mechanism parse_mechanism(const std::string& s) {
    if (s == "equal") return Mechanism::Equal;
    if (s == "market-share" || s == "market") return Mechanism::MarketShare;
    if (s == "shapley") return Mechanism::Shapley;
    throw InputError("unknown mechanism '" + s + "' (expected equal|market-share|shapley)");
}

struct MarketShares {
    std::vector<double> weights;  // one per platform, summing to 1

    void validate() const {
        if (weights.empty()) throw InputError("market shares must list at least one platform");
        double sum = 0;
        for (double w : weights) {
            if (w < 0 || w > 1) throw InputError("market share out of [0,1]");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9) throw InputError("market shares must sum to 1");
    }
};

struct AllocationSplit {
    std::vector<double> platform_profits;
    Mechanism mechanism = Mechanism::Equal;

    double total() const {
        double s = 0;
        for (double v : platform_profits) s += v;
        return s;
    }
};

inline AllocationSplit allocate_equal(double joint_profit) {
    return {{joint_profit / 2.0, joint_profit / 2.0}, Mechanism::Equal};
}

inline AllocationSplit allocate_market(double joint_profit, const MarketShares& shares) {
    shares.validate();
    AllocationSplit out;
    out.mechanism = Mechanism::MarketShare;
    out.platform_profits.reserve(shares.weights.size());
    for (double m : shares.weights) out.platform_profits.push_back(m * joint_profit);
    return out;
}

// Two-player closed form: each side keeps its standalone profit and the
// surplus is split evenly.
inline AllocationSplit shapley_two(double p0, double p1, double p_joint) {
    double surplus = p_joint - p0 - p1;
    return {{p0 + surplus / 2.0, p1 + surplus / 2.0}, Mechanism::Shapley};
}

// General Shapley value over all coalitions, for games small enough to
// enumerate. coalition_value takes a bitmask over players and must map the
// empty set to 0.
inline AllocationSplit shapley_general(const std::function<double(std::uint32_t)>& coalition_value,
                                       int n_platforms) {
    if (n_platforms < 1 || n_platforms > 12)
        throw InputError("shapley_general supports 1..12 platforms");
    std::array<double, 13> fact{};
    fact[0] = 1;
    for (int i = 1; i <= 12; ++i) fact[i] = fact[i - 1] * i;

    AllocationSplit out;
    out.mechanism = Mechanism::Shapley;
    out.platform_profits.assign(n_platforms, 0.0);
    const std::uint32_t full = (1u << n_platforms) - 1;
    for (int i = 0; i < n_platforms; ++i) {
        const std::uint32_t bit = 1u << i;
        double phi = 0;
        for (std::uint32_t s = 0; s <= full; ++s) {
            if (s & bit) continue;
            int size = std::popcount(s);
            double weight = fact[size] * fact[n_platforms - size - 1] / fact[n_platforms];
            phi += weight * (coalition_value(s | bit) - coalition_value(s));
        }
        out.platform_profits[i] = phi;
    }
    return out;
}

// Splits the joint profit of one matched pair between the two platforms that
// contributed the riders. Standalone profits (p0, p1) belong to the platform
// serving rider i and rider j respectively. With a shared market the
// market-share weights of the two involved platforms are renormalized.
inline std::pair<double, double> allocate_pair(Mechanism mechanism, double p0, double p1,
                                               double p_joint, int platform0, int platform1,
                                               const MarketShares& shares) {
    switch (mechanism) {
        case Mechanism::Equal: {
            auto s = allocate_equal(p_joint);
            return {s.platform_profits[0], s.platform_profits[1]};
        }
        case Mechanism::MarketShare: {
            double m0 = shares.weights.at(platform0);
            double m1 = shares.weights.at(platform1);
            double norm = m0 + m1;
            if (norm <= 0) throw InputError("market shares of the involved platforms are both 0");
            return {m0 / norm * p_joint, m1 / norm * p_joint};
        }
        case Mechanism::Shapley: {
            auto s = shapley_two(p0, p1, p_joint);
            return {s.platform_profits[0], s.platform_profits[1]};
        }
    }
    throw InputError("unknown mechanism");
}

}  // namespace rrsim
