#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "rrsim/sim.hpp"

namespace rrsim {

struct RegressionFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    double p_value = 1;  // two-sided t-test on the slope
    int n_points = 0;
};

namespace detail {

inline RegressionFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = int(x.size());
    if (n < 3) throw InputError("regression needs at least 3 points");
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0) throw InputError("regression input has degenerate x variance");

    RegressionFit fit;
    fit.n_points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0;
    for (int i = 0; i < n; ++i) {
        double r = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += r * r;
    }
    if (syy <= 0) {
        fit.r_squared = 0;  // constant response
        fit.p_value = 1;
        return fit;
    }
    fit.r_squared = std::clamp(1.0 - sse / syy, 0.0, 1.0);
    double df = n - 2;
    double se2 = sse / df / sxx;
    if (se2 <= 0) {
        fit.p_value = 0;  // perfectly collinear
    } else {
        double t = fit.slope / std::sqrt(se2);
        boost::math::students_t dist(df);
        fit.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    }
    return fit;
}

}  // namespace detail

// Plain y ~ x least squares.
inline RegressionFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw InputError("regression inputs differ in length");
    return detail::ols(x, y);
}

// y ~ log(x) least squares, natural log.
inline RegressionFit fit_log_linear(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw InputError("regression inputs differ in length");
    std::vector<double> lx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0) throw InputError("log-linear regression needs positive x values");
        lx[i] = std::log(x[i]);
    }
    return detail::ols(lx, y);
}

// log(E) ~ log(V); the slope is the densification exponent.
inline RegressionFit fit_power_law(const std::vector<double>& n_vertices,
                                   const std::vector<double>& n_edges) {
    if (n_vertices.size() != n_edges.size()) throw InputError("regression inputs differ in length");
    std::vector<double> ly(n_edges.size());
    for (std::size_t i = 0; i < n_edges.size(); ++i) {
        if (n_edges[i] <= 0 || n_vertices[i] <= 0)
            throw InputError("power-law fit needs positive counts");
        ly[i] = std::log(n_edges[i]);
    }
    return fit_log_linear(n_vertices, ly);
}

struct QuadraticFit {
    double beta2 = 0;
    double beta1 = 0;
    double alpha = 0;
    double r_squared = 0;
    int n_points = 0;
};

// y ~ beta2 x^2 + beta1 x + alpha via the normal equations.
inline QuadraticFit fit_quadratic(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw InputError("regression inputs differ in length");
    const int n = int(x.size());
    if (n < 4) throw InputError("quadratic fit needs at least 4 points");
    double a[3][4] = {};
    for (int i = 0; i < n; ++i) {
        double basis[3] = {1.0, x[i], x[i] * x[i]};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) a[r][c] += basis[r] * basis[c];
            a[r][3] += basis[r] * y[i];
        }
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12) throw InputError("quadratic fit is degenerate");
        std::swap(a[col], a[pivot]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
        }
    }
    QuadraticFit fit;
    fit.alpha = a[0][3] / a[0][0];
    fit.beta1 = a[1][3] / a[1][1];
    fit.beta2 = a[2][3] / a[2][2];
    fit.n_points = n;
    double my = 0;
    for (int i = 0; i < n; ++i) my += y[i];
    my /= n;
    double sse = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        double pred = fit.alpha + fit.beta1 * x[i] + fit.beta2 * x[i] * x[i];
        sse += (y[i] - pred) * (y[i] - pred);
        syy += (y[i] - my) * (y[i] - my);
    }
    fit.r_squared = syy <= 0 ? 0.0 : std::clamp(1.0 - sse / syy, 0.0, 1.0);
    return fit;
}

// ---------------------------------------------------------------------------
// System metrics

struct MetricsReport {
    bool empty = false;
    double share_rate = 0;      // matched requests / all requests
    double vmt_total = 0;       // miles
    double vmt_per_rider = 0;
    std::vector<double> platform_profit;
    std::vector<double> profit_vs_baseline_pct;  // filled when a baseline is given
    double avg_rider_savings = 0;  // $ averaged over every request
    double avg_detour = 0;         // miles, over matched riders
    double avg_wait = 0;           // minutes, over matched riders
};

// A no-sharing day: every request served solo at the undiscounted fare.
inline SimulationResult solo_baseline(const std::vector<RiderRequest>& requests,
                                      const SimConfig& cfg) {
    SimulationResult res;
    res.n_platforms = cfg.n_platforms();
    res.total_requests = requests.size();
    res.expired_solo = requests.size();
    res.total_profit_by_platform.assign(cfg.n_platforms(), 0.0);
    for (const auto& r : requests) {
        res.total_profit_by_platform.at(r.platform) += single_profit(r.fare_single, cfg.pricing);
        res.total_vmt += r.direct_distance;
        RiderOutcome o;
        o.id = r.id;
        o.platform = r.platform;
        o.request_time = r.request_time;
        o.direct_distance = r.direct_distance;
        o.final_state = RiderState::ExpiredSolo;
        res.riders.push_back(o);
    }
    return res;
}

inline MetricsReport compute_metrics(const SimulationResult& result,
                                     const SimulationResult* baseline = nullptr) {
    MetricsReport m;
    m.platform_profit = result.total_profit_by_platform;
    if (result.empty()) {
        m.empty = true;
        return m;
    }
    m.share_rate = double(result.matched_requests) / double(result.total_requests);
    m.vmt_total = result.total_vmt;
    m.vmt_per_rider = result.total_vmt / double(result.total_requests);

    double savings_sum = 0, detour_sum = 0, wait_sum = 0;
    std::size_t matched = 0;
    for (const auto& r : result.riders) {
        savings_sum += r.savings;
        if (r.final_state == RiderState::Matched) {
            detour_sum += r.detour;
            wait_sum += r.wait;
            ++matched;
        }
    }
    m.avg_rider_savings = savings_sum / double(result.riders.size());
    m.avg_detour = matched ? detour_sum / double(matched) : 0.0;
    m.avg_wait = matched ? wait_sum / double(matched) : 0.0;

    if (baseline) {
        m.profit_vs_baseline_pct.resize(m.platform_profit.size(), 0.0);
        for (std::size_t p = 0; p < m.platform_profit.size(); ++p) {
            double base = p < baseline->total_profit_by_platform.size()
                              ? baseline->total_profit_by_platform[p]
                              : 0.0;
            m.profit_vs_baseline_pct[p] =
                base == 0.0 ? 0.0 : (m.platform_profit[p] - base) / base * 100.0;
        }
    }
    return m;
}

// Share-rate observations aggregated over fixed request-arrival intervals:
// one (N, share rate) point per interval with at least one arrival.
inline std::vector<std::pair<double, double>> share_rate_series(const SimulationResult& result,
                                                                double interval_minutes) {
    if (interval_minutes <= 0) throw InputError("aggregation interval must be > 0");
    std::map<long long, std::pair<double, double>> buckets;  // idx -> (requests, matched)
    for (const auto& r : result.riders) {
        long long idx = (long long)std::floor(r.request_time / interval_minutes);
        auto& b = buckets[idx];
        b.first += 1;
        if (r.final_state == RiderState::Matched) b.second += 1;
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(buckets.size());
    for (auto& [idx, b] : buckets) out.emplace_back(b.first, b.second / b.first);
    return out;
}

// ---------------------------------------------------------------------------
// Scaling reports

struct GraphSizeSeries {
    std::string label;  // scenario / mechanism tag
    std::vector<std::pair<double, double>> points;  // (n_vertices, n_edges) per window
};

struct DensificationEntry {
    std::string label;
    RegressionFit edge_growth;  // log(E) ~ log(V)
    RegressionFit degree_fit;   // 2E/V ~ log(V)
    double degree1_crossing = std::numeric_limits<double>::infinity();  // V where fit reaches 1
    std::size_t windows_used = 0;
    std::size_t windows_excluded = 0;  // zero-vertex or zero-edge windows
};

inline std::vector<DensificationEntry> densification_report(
    const std::vector<GraphSizeSeries>& series) {
    std::vector<DensificationEntry> out;
    for (const auto& s : series) {
        DensificationEntry e;
        e.label = s.label;
        std::vector<double> v, edges, degree;
        for (auto [nv, ne] : s.points) {
            if (nv <= 0 || ne <= 0) {
                e.windows_excluded++;
                continue;
            }
            v.push_back(nv);
            edges.push_back(ne);
            degree.push_back(2.0 * ne / nv);
        }
        e.windows_used = v.size();
        if (v.size() < 3)
            throw InputError("densification report needs at least 3 non-empty windows for '" +
                             s.label + "'");
        e.edge_growth = fit_power_law(v, edges);
        e.degree_fit = fit_log_linear(v, degree);
        if (e.degree_fit.slope > 0)
            e.degree1_crossing = std::exp((1.0 - e.degree_fit.intercept) / e.degree_fit.slope);
        out.push_back(e);
    }
    return out;
}

struct TimingPoint {
    double n_vertices = 0;
    double n_edges = 0;
    double creation_ms = 0;
    double matching_ms = 0;
};

struct TimingSeries {
    std::string label;
    std::vector<TimingPoint> points;
};

struct TimingEntry {
    std::string label;
    QuadraticFit creation_fit;  // creation_ms ~ V
    RegressionFit matching_fit;  // matching_ms ~ V * E * log(V)
    std::size_t windows_used = 0;
};

inline std::vector<TimingEntry> timing_report(const std::vector<TimingSeries>& series) {
    std::vector<TimingEntry> out;
    for (const auto& s : series) {
        if (s.points.size() < 4)
            throw InputError("timing report needs at least 4 windows for '" + s.label + "'");
        TimingEntry e;
        e.label = s.label;
        e.windows_used = s.points.size();
        std::vector<double> v, creation, composite, matching;
        for (const auto& p : s.points) {
            v.push_back(p.n_vertices);
            creation.push_back(p.creation_ms);
            double c = p.n_vertices > 1 ? p.n_vertices * p.n_edges * std::log(p.n_vertices) : 0.0;
            composite.push_back(c);
            matching.push_back(p.matching_ms);
        }
        e.creation_fit = fit_quadratic(v, creation);
        e.matching_fit = fit_linear(composite, matching);
        out.push_back(e);
    }
    return out;
}

}  // namespace rrsim
