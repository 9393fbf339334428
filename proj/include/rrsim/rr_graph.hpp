#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "rrsim/shareability.hpp"

namespace rrsim {

enum class GraphVariant { Competition, Full, ProfitAware };

inline std::string to_string(GraphVariant v) {
    switch (v) {
        case GraphVariant::Competition: return "competition";
        case GraphVariant::Full: return "full";
        case GraphVariant::ProfitAware: return "profit-aware";
    }
    return "?";
}

struct EdgeWeightParams {
    double psi = 0.5;      // wait-term weight, in [0,1]
    double alpha_t = 0.5;  // $/minute, scales waits into dollars

    void validate() const {
        if (psi < 0 || psi > 1) throw InputError("psi must be in [0,1]");
    }
};

// Feasible pairs score their joint profit plus a wait bonus; infeasible
// pairs carry no weight at all.
inline double edge_weight(const SharedTripCandidate& cand, double wait_i, double wait_j,
                          const EdgeWeightParams& params, bool feasible) {
    if (!feasible) return 0.0;
    return cand.joint_profit + params.psi * (wait_i + wait_j) * params.alpha_t;
}

struct GraphEdge {
    int rider_a = -1;  // rider ids, a < b
    int rider_b = -1;
    double weight = 0.0;
};

// One windowed rider-rider graph. Vertices are all active riders of the
// window regardless of variant; the variants differ only in which feasible
// edges they admit.
struct RiderGraph {
    double window_time = 0.0;
    GraphVariant variant = GraphVariant::Full;
    std::vector<int> vertices;  // rider ids
    std::vector<GraphEdge> edges;
    std::unordered_map<int, int> platform_of;
};

struct GraphStats {
    std::size_t n_vertices = 0;
    std::size_t n_edges = 0;
    double average_degree = 0.0;
};

inline GraphStats graph_stats(const RiderGraph& g) {
    GraphStats s;
    s.n_vertices = g.vertices.size();
    s.n_edges = g.edges.size();
    s.average_degree = s.n_vertices == 0 ? 0.0 : 2.0 * double(s.n_edges) / double(s.n_vertices);
    return s;
}

namespace detail {

// Waits are measured at the window evaluation time.
inline double wait_of(const RiderRequest& r, double t) { return t - r.request_time; }

inline RiderGraph graph_from_matrix(const std::vector<const RiderRequest*>& riders,
                                    const FeasibilityMatrix& matrix,
                                    const EdgeWeightParams& params, GraphVariant variant,
                                    bool intra_only, int only_platform) {
    RiderGraph g;
    g.window_time = matrix.window_time();
    g.variant = variant;
    const double t = matrix.window_time();
    for (std::size_t i = 0; i < riders.size(); ++i) {
        if (only_platform >= 0 && riders[i]->platform != only_platform) continue;
        g.vertices.push_back(riders[i]->id);
        g.platform_of[riders[i]->id] = riders[i]->platform;
    }
    for (std::size_t i = 0; i < riders.size(); ++i) {
        if (only_platform >= 0 && riders[i]->platform != only_platform) continue;
        for (std::size_t j = i + 1; j < riders.size(); ++j) {
            if (only_platform >= 0 && riders[j]->platform != only_platform) continue;
            if (!matrix.feasible(i, j)) continue;
            if (intra_only && riders[i]->platform != riders[j]->platform) continue;
            const auto& cand = matrix.candidate(i, j);
            double w = edge_weight(cand, wait_of(*riders[i], t), wait_of(*riders[j], t), params,
                                   /*feasible=*/true);
            int a = riders[i]->id, b = riders[j]->id;
            g.edges.push_back({std::min(a, b), std::max(a, b), w});
        }
    }
    return g;
}

}  // namespace detail

// One induced intra-platform subgraph per platform.
inline std::vector<RiderGraph> build_competition(const std::vector<const RiderRequest*>& riders,
                                                 const FeasibilityMatrix& matrix,
                                                 const EdgeWeightParams& params, int n_platforms) {
    std::vector<RiderGraph> graphs;
    graphs.reserve(n_platforms);
    for (int p = 0; p < n_platforms; ++p) {
        graphs.push_back(detail::graph_from_matrix(riders, matrix, params,
                                                   GraphVariant::Competition,
                                                   /*intra_only=*/true, /*only_platform=*/p));
    }
    return graphs;
}

// Every feasible edge, intra- and inter-platform.
inline RiderGraph build_full(const std::vector<const RiderRequest*>& riders,
                             const FeasibilityMatrix& matrix, const EdgeWeightParams& params) {
    return detail::graph_from_matrix(riders, matrix, params, GraphVariant::Full,
                                     /*intra_only=*/false, /*only_platform=*/-1);
}

// Intra-platform edges plus the inter-platform edges that survived the
// profit-aware filter.
inline RiderGraph build_profit_aware(const std::vector<const RiderRequest*>& riders,
                                     const FeasibilityMatrix& matrix,
                                     const FeasibilityMatrix& filtered,
                                     const EdgeWeightParams& params) {
    (void)matrix;
    return detail::graph_from_matrix(riders, filtered, params, GraphVariant::ProfitAware,
                                     /*intra_only=*/false, /*only_platform=*/-1);
}

}  // namespace rrsim
