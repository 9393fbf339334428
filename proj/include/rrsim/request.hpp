#pragma once

#include <cstdint>
#include <string>

#include "rrsim/geo.hpp"

namespace rrsim {

enum class RiderState { Pending, Active, Matched, ExpiredSolo };

inline std::string to_string(RiderState s) {
    switch (s) {
        case RiderState::Pending: return "pending";
        case RiderState::Active: return "active";
        case RiderState::Matched: return "matched";
        case RiderState::ExpiredSolo: return "expired-solo";
    }
    return "?";
}

struct RiderRequest {
    int id = -1;
    int platform = -1;          // -1 until assigned
    double request_time = 0.0;  // minutes from start of horizon
    NodeId origin = 0;
    NodeId dest = 0;
    double direct_distance = 0.0;  // miles, shortest path origin->dest
    double fare_shared = 0.0;      // discounted fare offered for a shared trip
    double fare_single = 0.0;      // undiscounted fare for a solo trip
    RiderState state = RiderState::Pending;
    double wait_accrued = 0.0;  // minutes; fixed at match time
};

}  // namespace rrsim
