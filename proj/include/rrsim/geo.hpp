#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "rrsim/csv.hpp"
#include "rrsim/errors.hpp"

namespace rrsim {

using NodeId = std::int64_t;
using ZoneId = std::int64_t;

namespace detail {
constexpr double kInf = std::numeric_limits<double>::infinity();

// splitmix64; used to derive independent per-item seeds from one base seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// Undirected road graph with positive edge lengths in miles. Immutable after
// load; shortest-path queries memoize one full Dijkstra tree per source, so
// repeated queries cost a table lookup.
class RoadNetwork {
public:
    struct NodePoint {
        NodeId id;
        double x, y;
    };

    RoadNetwork(std::vector<NodePoint> nodes,
                std::vector<std::tuple<NodeId, NodeId, double>> edges,
                std::map<ZoneId, std::vector<NodeId>> zones = {}) {
        nodes_ = std::move(nodes);
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!index_of_.emplace(nodes_[i].id, i).second)
                throw InputError("duplicate node id " + std::to_string(nodes_[i].id));
        }
        adjacency_.resize(nodes_.size());
        std::map<std::pair<std::size_t, std::size_t>, double> collapsed;
        for (const auto& [a, b, w] : edges) {
            if (w <= 0.0)
                throw InputError("non-positive edge weight on edge " + std::to_string(a) + "-" +
                                 std::to_string(b));
            std::size_t ia = index_checked(a), ib = index_checked(b);
            if (ia == ib) throw InputError("self-loop edge at node " + std::to_string(a));
            auto key = std::minmax(ia, ib);
            auto it = collapsed.find(key);
            if (it == collapsed.end())
                collapsed.emplace(key, w);
            else
                it->second = std::min(it->second, w);  // parallel edges keep the shortest
        }
        for (const auto& [key, w] : collapsed) {
            adjacency_[key.first].push_back({key.second, w});
            adjacency_[key.second].push_back({key.first, w});
            n_edges_++;
        }
        for (auto& [zone, members] : zones) {
            for (NodeId n : members) index_checked(n);  // zones must reference real nodes
            zones_[zone] = std::move(members);
        }
    }

    std::size_t n_nodes() const { return nodes_.size(); }
    std::size_t n_edges() const { return n_edges_; }
    const std::vector<NodePoint>& nodes() const { return nodes_; }

    bool has_node(NodeId id) const { return index_of_.count(id) > 0; }

    const std::map<ZoneId, std::vector<NodeId>>& zones() const { return zones_; }

    const std::vector<NodeId>& zone_members(ZoneId z) const {
        auto it = zones_.find(z);
        if (it == zones_.end()) throw InputError("unknown zone id " + std::to_string(z));
        return it->second;
    }

    // Shortest-path length in miles, or nullopt when no path exists.
    std::optional<double> shortest_distance(NodeId a, NodeId b) const {
        std::size_t ia = index_checked(a), ib = index_checked(b);
        if (ia == ib) return 0.0;
        const std::vector<double>& row = dijkstra_row(ia);
        double d = row[ib];
        if (d == detail::kInf) return std::nullopt;
        return d;
    }

    // Internal dense index helpers; the simulator keeps everything in NodeId
    // space and only the hot loops drop to indices.
    std::size_t index_checked(NodeId id) const {
        auto it = index_of_.find(id);
        if (it == index_of_.end()) throw InputError("unknown node id " + std::to_string(id));
        return it->second;
    }
    NodeId id_of_index(std::size_t i) const { return nodes_[i].id; }

    const std::vector<double>& dijkstra_row(std::size_t source) const {
        {
            std::lock_guard<std::mutex> lock(*cache_mutex_);
            auto it = row_cache_.find(source);
            if (it != row_cache_.end()) return it->second;
        }
        std::vector<double> dist(nodes_.size(), detail::kInf);
        dist[source] = 0.0;
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        heap.push({0.0, source});
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > dist[u]) continue;
            for (const auto& [v, w] : adjacency_[u]) {
                double nd = d + w;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    heap.push({nd, v});
                }
            }
        }
        std::lock_guard<std::mutex> lock(*cache_mutex_);
        return row_cache_.emplace(source, std::move(dist)).first->second;
    }

private:
    struct Arc {
        std::size_t to;
        double length;
    };

    std::vector<NodePoint> nodes_;
    std::unordered_map<NodeId, std::size_t> index_of_;
    std::vector<std::vector<Arc>> adjacency_;
    std::map<ZoneId, std::vector<NodeId>> zones_;
    std::size_t n_edges_ = 0;

    // mutex behind a pointer so the network stays movable
    mutable std::unique_ptr<std::mutex> cache_mutex_ = std::make_unique<std::mutex>();
    mutable std::unordered_map<std::size_t, std::vector<double>> row_cache_;
};

// Precomputed rows of the all-pairs table for a chosen source set.
// Unreachable pairs stay distinct (nullopt), never a large finite stand-in.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    std::optional<double> at(NodeId a, NodeId b) const {
        auto it = rows_.find(a);
        if (it == rows_.end()) {
            it = rows_.find(b);
            if (it == rows_.end())
                throw InputError("distance matrix has no row for node " + std::to_string(a) +
                                 " or " + std::to_string(b));
            std::swap(a, b);
        }
        auto jt = col_.find(b);
        if (jt == col_.end()) throw InputError("unknown node id " + std::to_string(b));
        double d = it->second[jt->second];
        if (d == detail::kInf) return std::nullopt;
        return d;
    }

    bool empty() const { return rows_.empty(); }
    std::size_t n_sources() const { return rows_.size(); }

    friend DistanceMatrix precompute_distance_matrix(const RoadNetwork& net,
                                                     const std::vector<NodeId>& sources);

private:
    std::unordered_map<NodeId, std::vector<double>> rows_;
    std::unordered_map<NodeId, std::size_t> col_;
};

inline RoadNetwork load_network(const std::string& nodes_file, const std::string& edges_file,
                                const std::string& zones_file) {
    auto nodes_csv = csv::Table::read_file(nodes_file);
    std::vector<RoadNetwork::NodePoint> nodes;
    nodes.reserve(nodes_csv.n_rows());
    for (std::size_t r = 0; r < nodes_csv.n_rows(); ++r) {
        nodes.push_back({nodes_csv.integer(r, "node_id"), nodes_csv.number(r, "x"),
                         nodes_csv.number(r, "y")});
    }

    auto edges_csv = csv::Table::read_file(edges_file);
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    edges.reserve(edges_csv.n_rows());
    for (std::size_t r = 0; r < edges_csv.n_rows(); ++r) {
        edges.emplace_back(edges_csv.integer(r, "node_a"), edges_csv.integer(r, "node_b"),
                           edges_csv.number(r, "length_miles"));
    }

    std::map<ZoneId, std::vector<NodeId>> zones;
    if (!zones_file.empty()) {
        auto zones_csv = csv::Table::read_file(zones_file);
        for (std::size_t r = 0; r < zones_csv.n_rows(); ++r) {
            zones[zones_csv.integer(r, "zone_id")].push_back(zones_csv.integer(r, "node_id"));
        }
    }
    return RoadNetwork(std::move(nodes), std::move(edges), std::move(zones));
}

inline DistanceMatrix precompute_distance_matrix(const RoadNetwork& net,
                                                 const std::vector<NodeId>& sources) {
    DistanceMatrix m;
    for (std::size_t i = 0; i < net.n_nodes(); ++i) m.col_[net.id_of_index(i)] = i;
    for (NodeId s : sources) {
        m.rows_[s] = net.dijkstra_row(net.index_checked(s));
    }
    return m;
}

// Rectangular street grid with uniform block length, split into rectangular
// zones. Handy as a synthetic stand-in for a downtown road network.
inline RoadNetwork make_grid_network(int rows, int cols, double spacing_miles,
                                     int zone_blocks = 3) {
    if (rows < 1 || cols < 1 || spacing_miles <= 0)
        throw InputError("grid network needs positive dimensions");
    std::vector<RoadNetwork::NodePoint> nodes;
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    std::map<ZoneId, std::vector<NodeId>> zones;
    auto id_at = [cols](int r, int c) { return NodeId(r) * cols + c; };
    int zone_rows = std::max(1, rows / zone_blocks);
    int zone_cols = std::max(1, cols / zone_blocks);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            NodeId id = id_at(r, c);
            nodes.push_back({id, c * spacing_miles, r * spacing_miles});
            if (c + 1 < cols) edges.emplace_back(id, id_at(r, c + 1), spacing_miles);
            if (r + 1 < rows) edges.emplace_back(id, id_at(r + 1, c), spacing_miles);
            ZoneId zone = ZoneId(std::min(r / zone_rows, zone_blocks - 1)) * zone_blocks +
                          std::min(c / zone_cols, zone_blocks - 1);
            zones[zone].push_back(id);
        }
    }
    return RoadNetwork(std::move(nodes), std::move(edges), std::move(zones));
}

// Picks an (origin, destination) node pair from two zones whose shortest-path
// distance best matches a reported trip length. Samples at most
// max_candidates pairs; small zone cross-products are scanned exhaustively.
inline std::pair<NodeId, NodeId> assign_endpoint(const RoadNetwork& net, ZoneId zone,
                                                 ZoneId counterpart_zone, double reported_length,
                                                 std::uint64_t rng_seed,
                                                 std::size_t max_candidates = 50) {
    const auto& from = net.zone_members(zone);
    const auto& to = net.zone_members(counterpart_zone);
    if (from.empty()) throw InputError("zone " + std::to_string(zone) + " has no nodes");
    if (to.empty()) throw InputError("zone " + std::to_string(counterpart_zone) + " has no nodes");

    std::vector<std::pair<NodeId, NodeId>> candidates;
    if (from.size() * to.size() <= max_candidates) {
        for (NodeId a : from)
            for (NodeId b : to) candidates.emplace_back(a, b);
    } else {
        std::mt19937_64 rng(rng_seed);
        std::uniform_int_distribution<std::size_t> pick_from(0, from.size() - 1);
        std::uniform_int_distribution<std::size_t> pick_to(0, to.size() - 1);
        candidates.reserve(max_candidates);
        for (std::size_t k = 0; k < max_candidates; ++k)
            candidates.emplace_back(from[pick_from(rng)], to[pick_to(rng)]);
    }

    std::optional<std::pair<NodeId, NodeId>> best;
    double best_err = detail::kInf;
    for (const auto& [a, b] : candidates) {
        auto d = net.shortest_distance(a, b);
        if (!d) continue;
        double err = std::abs(*d - reported_length);
        if (err < best_err) {
            best_err = err;
            best = {a, b};
        }
    }
    if (!best)
        throw InputError("no reachable node pair between zones " + std::to_string(zone) + " and " +
                         std::to_string(counterpart_zone));
    return *best;
}

}  // namespace rrsim
