#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "rrsim/errors.hpp"
#include "rrsim/rr_graph.hpp"

namespace rrsim {

struct Matching {
    std::vector<std::pair<int, int>> pairs;  // rider ids, a < b
    double total_weight = 0.0;
};

// Exact maximum-weight matching on a general graph via the primal-dual
// blossom method (Galil-style O(V^3) formulation, ported from the widely
// used van Rantwijk reference implementation). Vertices may stay unmatched;
// maximality of cardinality is NOT required, only total weight.
//
// Edge endpoints are encoded as 2k / 2k+1 for edge k, so p ^ 1 flips to the
// other side of the edge and p / 2 recovers the edge index. Blossom ids live
// in n..2n-1; `in_blossom` maps a vertex to its top-level blossom.
class BlossomMatcher {
public:
    BlossomMatcher(int n_vertices, std::vector<std::tuple<int, int, double>> edge_list)
        : n_(n_vertices), edges_(std::move(edge_list)) {
        for (auto& [i, j, w] : edges_) {
            if (i == j) throw InputError("self-loop in matching input");
            if (i < 0 || i >= n_ || j < 0 || j >= n_)
                throw InputError("edge endpoint out of range in matching input");
            max_weight_ = std::max(max_weight_, w);
        }
        max_weight_ = std::max(0.0, max_weight_);
    }

    void solve() {
        const int m = int(edges_.size());
        endpoint_.resize(2 * m);
        neighb_end_.assign(n_, {});
        for (int k = 0; k < m; ++k) {
            auto [i, j, w] = edges_[k];
            endpoint_[2 * k] = i;
            endpoint_[2 * k + 1] = j;
            neighb_end_[i].push_back(2 * k + 1);
            neighb_end_[j].push_back(2 * k);
        }
        mate_.assign(n_, -1);
        label_.assign(2 * n_, 0);
        label_end_.assign(2 * n_, -1);
        in_blossom_.resize(n_);
        for (int v = 0; v < n_; ++v) in_blossom_[v] = v;
        blossom_parent_.assign(2 * n_, -1);
        blossom_children_.assign(2 * n_, {});
        blossom_base_.assign(2 * n_, -1);
        for (int v = 0; v < n_; ++v) blossom_base_[v] = v;
        blossom_endps_.assign(2 * n_, {});
        best_edge_.assign(2 * n_, -1);
        blossom_best_edges_.assign(2 * n_, {});
        unused_blossoms_.clear();
        for (int b = n_; b < 2 * n_; ++b) unused_blossoms_.push_back(b);
        dual_.assign(2 * n_, 0.0);
        for (int v = 0; v < n_; ++v) dual_[v] = max_weight_;
        allow_edge_.assign(m, false);

        if (m == 0) return;

        for (int stage = 0; stage < n_; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(best_edge_.begin(), best_edge_.end(), -1);
            for (int b = n_; b < 2 * n_; ++b) blossom_best_edges_[b].clear();
            std::fill(allow_edge_.begin(), allow_edge_.end(), false);
            queue_.clear();

            for (int v = 0; v < n_; ++v)
                if (mate_[v] == -1 && label_[in_blossom_[v]] == 0) assign_label(v, 1, -1);

            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    assert(label_[in_blossom_[v]] == 1);
                    for (int p : neighb_end_[v]) {
                        int k = p / 2;
                        int w = endpoint_[p];
                        if (in_blossom_[v] == in_blossom_[w]) continue;  // internal edge
                        double kslack = 0.0;
                        if (!allow_edge_[k]) {
                            kslack = slack(k);
                            if (kslack <= eps_) allow_edge_[k] = true;
                        }
                        if (allow_edge_[k]) {
                            if (label_[in_blossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[in_blossom_[w]] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                assert(label_[in_blossom_[w]] == 2);
                                label_[w] = 2;
                                label_end_[w] = p ^ 1;
                            }
                        } else if (label_[in_blossom_[w]] == 1) {
                            int b = in_blossom_[v];
                            if (best_edge_[b] == -1 || kslack < slack(best_edge_[b]))
                                best_edge_[b] = k;
                        } else if (label_[w] == 0) {
                            if (best_edge_[w] == -1 || kslack < slack(best_edge_[w]))
                                best_edge_[w] = k;
                        }
                    }
                }
                if (augmented) break;

                // No augmenting path under the current duals; pick the
                // smallest dual adjustment that makes progress.
                int delta_type = 1;
                double delta = dual_[0];
                for (int v = 1; v < n_; ++v) delta = std::min(delta, dual_[v]);
                int delta_edge = -1, delta_blossom = -1;

                for (int v = 0; v < n_; ++v) {
                    if (label_[in_blossom_[v]] == 0 && best_edge_[v] != -1) {
                        double d = slack(best_edge_[v]);
                        if (d < delta) {
                            delta = d;
                            delta_type = 2;
                            delta_edge = best_edge_[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * n_; ++b) {
                    if (blossom_parent_[b] == -1 && label_[b] == 1 && best_edge_[b] != -1) {
                        double d = slack(best_edge_[b]) / 2.0;
                        if (d < delta) {
                            delta = d;
                            delta_type = 3;
                            delta_edge = best_edge_[b];
                        }
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossom_base_[b] >= 0 && blossom_parent_[b] == -1 && label_[b] == 2 &&
                        dual_[b] < delta) {
                        delta = dual_[b];
                        delta_type = 4;
                        delta_blossom = b;
                    }
                }

                for (int v = 0; v < n_; ++v) {
                    int lbl = label_[in_blossom_[v]];
                    if (lbl == 1)
                        dual_[v] -= delta;
                    else if (lbl == 2)
                        dual_[v] += delta;
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossom_base_[b] >= 0 && blossom_parent_[b] == -1) {
                        if (label_[b] == 1)
                            dual_[b] += delta;
                        else if (label_[b] == 2)
                            dual_[b] -= delta;
                    }
                }

                if (delta_type == 1) break;  // optimum reached
                if (delta_type == 2) {
                    allow_edge_[delta_edge] = true;
                    int i = std::get<0>(edges_[delta_edge]);
                    if (label_[in_blossom_[i]] == 0) i = std::get<1>(edges_[delta_edge]);
                    assert(label_[in_blossom_[i]] == 1);
                    queue_.push_back(i);
                } else if (delta_type == 3) {
                    allow_edge_[delta_edge] = true;
                    int i = std::get<0>(edges_[delta_edge]);
                    assert(label_[in_blossom_[i]] == 1);
                    queue_.push_back(i);
                } else if (delta_type == 4) {
                    expand_blossom(delta_blossom, false);
                }
            }

            if (!augmented) break;

            for (int b = n_; b < 2 * n_; ++b) {
                if (blossom_parent_[b] == -1 && blossom_base_[b] >= 0 && label_[b] == 1 &&
                    dual_[b] <= eps_)
                    expand_blossom(b, true);
            }
        }
    }

    // mate in vertex space: partner vertex or -1.
    std::vector<int> mates() const {
        std::vector<int> out(n_, -1);
        for (int v = 0; v < n_; ++v)
            if (mate_[v] >= 0) out[v] = endpoint_[mate_[v]];
        return out;
    }

    // Complementary-slackness certificate for the computed matching: all
    // slacks non-negative, matched edges tight, unmatched vertices have zero
    // dual, and every blossom with positive dual is fully matched inside.
    bool verify_optimum(double tol = 1e-9) const {
        for (int v = 0; v < n_; ++v)
            if (dual_[v] < -tol) return false;
        for (int b = n_; b < 2 * n_; ++b)
            if (blossom_base_[b] >= 0 && dual_[b] < -tol) return false;
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            auto [i, j, w] = edges_[k];
            double s = dual_[i] + dual_[j] - 2 * w;
            std::vector<int> iblossoms{i}, jblossoms{j};
            while (blossom_parent_[iblossoms.back()] != -1)
                iblossoms.push_back(blossom_parent_[iblossoms.back()]);
            while (blossom_parent_[jblossoms.back()] != -1)
                jblossoms.push_back(blossom_parent_[jblossoms.back()]);
            std::reverse(iblossoms.begin(), iblossoms.end());
            std::reverse(jblossoms.begin(), jblossoms.end());
            for (std::size_t d = 0; d < std::min(iblossoms.size(), jblossoms.size()); ++d) {
                if (iblossoms[d] != jblossoms[d]) break;
                s += 2 * dual_[iblossoms[d]];
            }
            if (s < -tol) return false;
            bool matched_i = mate_[i] >= 0 && mate_[i] / 2 == int(k);
            bool matched_j = mate_[j] >= 0 && mate_[j] / 2 == int(k);
            if (matched_i != matched_j) return false;
            if (matched_i && std::abs(s) > tol) return false;
        }
        for (int v = 0; v < n_; ++v)
            if (mate_[v] < 0 && dual_[v] > tol) return false;
        for (int b = n_; b < 2 * n_; ++b) {
            if (blossom_base_[b] < 0 || dual_[b] <= tol) continue;
            if (blossom_endps_[b].size() % 2 != 1) return false;
            for (std::size_t idx = 1; idx < blossom_endps_[b].size(); idx += 2) {
                int p = blossom_endps_[b][idx];
                if (mate_[endpoint_[p]] != (p ^ 1)) return false;
                if (mate_[endpoint_[p ^ 1]] != p) return false;
            }
        }
        return true;
    }

private:
    double slack(int k) const {
        auto [i, j, w] = edges_[k];
        return dual_[i] + dual_[j] - 2 * w;
    }

    void blossom_leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int child : blossom_children_[b]) blossom_leaves(child, out);
    }

    void assign_label(int w, int t, int p) {
        int b = in_blossom_[w];
        assert(label_[w] == 0 && label_[b] == 0);
        label_[w] = label_[b] = t;
        label_end_[w] = label_end_[b] = p;
        best_edge_[w] = best_edge_[b] = -1;
        if (t == 1) {
            std::vector<int> leaves;
            blossom_leaves(b, leaves);
            queue_.insert(queue_.end(), leaves.begin(), leaves.end());
        } else if (t == 2) {
            int base = blossom_base_[b];
            assert(mate_[base] >= 0);
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    // Trace back from both sides of an S-S edge; returns the base of the new
    // blossom, or -1 when the two trees have distinct roots (augmenting path).
    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = in_blossom_[v];
            if (label_[b] & 4) {
                base = blossom_base_[b];
                break;
            }
            assert(label_[b] == 1);
            path.push_back(b);
            label_[b] = 5;
            assert(label_end_[b] == mate_[blossom_base_[b]]);
            if (label_end_[b] == -1) {
                v = -1;  // single vertex root
            } else {
                v = endpoint_[label_end_[b]];
                b = in_blossom_[v];
                assert(label_[b] == 2);
                v = endpoint_[label_end_[b]];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[b] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        auto [v, w, wt] = edges_[k];
        int bb = in_blossom_[base];
        int bv = in_blossom_[v];
        int bw = in_blossom_[w];
        int b = unused_blossoms_.back();
        unused_blossoms_.pop_back();
        blossom_base_[b] = base;
        blossom_parent_[b] = -1;
        blossom_parent_[bb] = b;
        auto& path = blossom_children_[b];
        auto& endps = blossom_endps_[b];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossom_parent_[bv] = b;
            path.push_back(bv);
            endps.push_back(label_end_[bv]);
            v = endpoint_[label_end_[bv]];
            bv = in_blossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossom_parent_[bw] = b;
            path.push_back(bw);
            endps.push_back(label_end_[bw] ^ 1);
            w = endpoint_[label_end_[bw]];
            bw = in_blossom_[w];
        }
        assert(label_[bb] == 1);
        label_[b] = 1;
        label_end_[b] = label_end_[bb];
        dual_[b] = 0.0;
        std::vector<int> leaves;
        blossom_leaves(b, leaves);
        for (int leaf : leaves) {
            if (label_[in_blossom_[leaf]] == 2) queue_.push_back(leaf);
            in_blossom_[leaf] = b;
        }
        // Merge least-slack edge lists of the sub-blossoms.
        std::vector<int> best_edge_to(2 * n_, -1);
        for (int bv2 : path) {
            std::vector<std::vector<int>> nblists;
            if (blossom_best_edges_[bv2].empty()) {
                std::vector<int> sub_leaves;
                blossom_leaves(bv2, sub_leaves);
                nblists.reserve(sub_leaves.size());
                for (int leaf : sub_leaves) {
                    nblists.emplace_back();
                    for (int p : neighb_end_[leaf]) nblists.back().push_back(p / 2);
                }
            } else {
                nblists.push_back(blossom_best_edges_[bv2]);
            }
            for (const auto& nblist : nblists) {
                for (int k2 : nblist) {
                    auto [i2, j2, w2] = edges_[k2];
                    if (in_blossom_[j2] == b) std::swap(i2, j2);
                    int bj = in_blossom_[j2];
                    if (bj != b && label_[bj] == 1 &&
                        (best_edge_to[bj] == -1 || slack(k2) < slack(best_edge_to[bj])))
                        best_edge_to[bj] = k2;
                }
            }
            blossom_best_edges_[bv2].clear();
            best_edge_[bv2] = -1;
        }
        auto& merged = blossom_best_edges_[b];
        merged.clear();
        for (int k2 : best_edge_to)
            if (k2 != -1) merged.push_back(k2);
        best_edge_[b] = -1;
        for (int k2 : merged)
            if (best_edge_[b] == -1 || slack(k2) < slack(best_edge_[b])) best_edge_[b] = k2;
    }

    // Index into a blossom ring with Python-style negative wrapping.
    static int wrap(int idx, int len) { return ((idx % len) + len) % len; }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossom_children_[b]) {
            blossom_parent_[s] = -1;
            if (s < n_) {
                in_blossom_[s] = s;
            } else if (endstage && dual_[s] <= eps_) {
                expand_blossom(s, endstage);
            } else {
                std::vector<int> leaves;
                blossom_leaves(s, leaves);
                for (int leaf : leaves) in_blossom_[leaf] = s;
            }
        }
        if (!endstage && label_[b] == 2) {
            // The expanding blossom sits on an alternating path; relabel its
            // ring so the path stays alternating through the sub-blossoms.
            assert(label_end_[b] >= 0);
            int entry_child = in_blossom_[endpoint_[label_end_[b] ^ 1]];
            const auto& children = blossom_children_[b];
            const auto& endps = blossom_endps_[b];
            const int len = int(children.size());
            int j = 0;
            while (children[j] != entry_child) ++j;
            int jstep, endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = label_end_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allow_edge_[endps[wrap(j - endptrick, len)] / 2] = true;
                j += jstep;
                p = endps[wrap(j - endptrick, len)] ^ endptrick;
                allow_edge_[p / 2] = true;
                j += jstep;
            }
            int bv = children[wrap(j, len)];
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            label_end_[endpoint_[p ^ 1]] = label_end_[bv] = p;
            best_edge_[bv] = -1;
            j += jstep;
            while (children[wrap(j, len)] != entry_child) {
                int bv2 = children[wrap(j, len)];
                if (label_[bv2] == 1) {
                    j += jstep;
                    continue;
                }
                std::vector<int> leaves;
                blossom_leaves(bv2, leaves);
                int reached = -1;
                for (int leaf : leaves) {
                    if (label_[leaf] != 0) {
                        reached = leaf;
                        break;
                    }
                }
                if (reached >= 0) {
                    assert(label_[reached] == 2);
                    assert(in_blossom_[reached] == bv2);
                    label_[reached] = 0;
                    label_[endpoint_[mate_[blossom_base_[bv2]]]] = 0;
                    assign_label(reached, 2, label_end_[reached]);
                }
                j += jstep;
            }
        }
        label_[b] = -1;
        label_end_[b] = -1;
        blossom_children_[b].clear();
        blossom_endps_[b].clear();
        blossom_base_[b] = -1;
        blossom_best_edges_[b].clear();
        best_edge_[b] = -1;
        unused_blossoms_.push_back(b);
    }

    // Swap matched/unmatched edges around blossom b so that its base lands
    // on vertex v.
    void augment_blossom(int b, int v) {
        int t = v;
        while (blossom_parent_[t] != b) t = blossom_parent_[t];
        if (t >= n_) augment_blossom(t, v);
        auto& children = blossom_children_[b];
        auto& endps = blossom_endps_[b];
        const int len = int(children.size());
        int i = 0;
        while (children[i] != t) ++i;
        int j = i, jstep, endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            int tc = children[wrap(j, len)];
            int p = endps[wrap(j - endptrick, len)] ^ endptrick;
            if (tc >= n_) augment_blossom(tc, endpoint_[p]);
            j += jstep;
            tc = children[wrap(j, len)];
            if (tc >= n_) augment_blossom(tc, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(children.begin(), children.begin() + i, children.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossom_base_[b] = blossom_base_[children[0]];
        assert(blossom_base_[b] == v);
    }

    void augment_matching(int k) {
        auto [v, w, wt] = edges_[k];
        for (auto [s, p] : {std::pair<int, int>{v, 2 * k + 1}, std::pair<int, int>{w, 2 * k}}) {
            while (true) {
                int bs = in_blossom_[s];
                assert(label_[bs] == 1);
                assert(label_end_[bs] == mate_[blossom_base_[bs]]);
                if (bs >= n_) augment_blossom(bs, s);
                mate_[s] = p;
                if (label_end_[bs] == -1) break;  // reached the tree root
                int t = endpoint_[label_end_[bs]];
                int bt = in_blossom_[t];
                assert(label_[bt] == 2);
                s = endpoint_[label_end_[bt]];
                int j = endpoint_[label_end_[bt] ^ 1];
                assert(blossom_base_[bt] == t);
                if (bt >= n_) augment_blossom(bt, j);
                mate_[j] = label_end_[bt];
                p = label_end_[bt] ^ 1;
            }
        }
    }

    int n_;
    std::vector<std::tuple<int, int, double>> edges_;
    double max_weight_ = 0.0;
    static constexpr double eps_ = 1e-12;

    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighb_end_;
    std::vector<int> mate_;  // remote endpoint of matched edge, or -1
    std::vector<int> label_;
    std::vector<int> label_end_;
    std::vector<int> in_blossom_;
    std::vector<int> blossom_parent_;
    std::vector<std::vector<int>> blossom_children_;
    std::vector<int> blossom_base_;
    std::vector<std::vector<int>> blossom_endps_;
    std::vector<int> best_edge_;
    std::vector<std::vector<int>> blossom_best_edges_;
    std::vector<int> unused_blossoms_;
    std::vector<double> dual_;
    std::vector<bool> allow_edge_;
    std::vector<int> queue_;
};

namespace detail {

struct DenseGraph {
    std::vector<int> ids;                              // dense index -> rider id
    std::unordered_map<int, int> index;                // rider id -> dense index
    std::vector<std::tuple<int, int, double>> edges_;  // dense endpoints
};

inline DenseGraph densify(const RiderGraph& g) {
    DenseGraph d;
    d.ids = g.vertices;
    std::sort(d.ids.begin(), d.ids.end());
    for (std::size_t i = 0; i < d.ids.size(); ++i) d.index[d.ids[i]] = int(i);
    d.edges_.reserve(g.edges.size());
    for (const auto& e : g.edges)
        d.edges_.emplace_back(d.index.at(e.rider_a), d.index.at(e.rider_b), e.weight);
    return d;
}

inline Matching matching_from_mates(const DenseGraph& d, const std::vector<int>& mate,
                                    const RiderGraph& g) {
    Matching m;
    for (int v = 0; v < int(mate.size()); ++v) {
        if (mate[v] > v) m.pairs.emplace_back(d.ids[v], d.ids[mate[v]]);
    }
    // Re-verify matching validity and recompute the weight from the graph.
    std::unordered_map<std::uint64_t, double> edge_weight_of;
    for (const auto& e : g.edges)
        edge_weight_of[(std::uint64_t(e.rider_a) << 32) | std::uint64_t(e.rider_b)] = e.weight;
    std::vector<int> seen;
    for (auto& [a, b] : m.pairs) {
        if (a > b) std::swap(a, b);
        auto it = edge_weight_of.find((std::uint64_t(a) << 32) | std::uint64_t(b));
        if (it == edge_weight_of.end()) throw std::logic_error("matched pair is not a graph edge");
        m.total_weight += it->second;
        seen.push_back(a);
        seen.push_back(b);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::logic_error("matching touches a vertex twice");
    return m;
}

}  // namespace detail

inline Matching max_weight_matching(const RiderGraph& g) {
    auto d = detail::densify(g);
    BlossomMatcher matcher(int(d.ids.size()), d.edges_);
    matcher.solve();
    return detail::matching_from_mates(d, matcher.mates(), g);
}

// Exhaustive oracle. Enumerates every matching via subset DP over vertices;
// limited to 16 vertices.
inline Matching brute_force_matching(const RiderGraph& g) {
    auto d = detail::densify(g);
    const int n = int(d.ids.size());
    if (n > 16) throw InputError("brute-force matching limited to 16 vertices");
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (auto [a, b, w] : d.edges_) {
        adj[a].emplace_back(b, w);
        adj[b].emplace_back(a, w);
    }
    std::vector<double> best(std::size_t(1) << n, -1.0);
    std::vector<int> choice(std::size_t(1) << n, -2);  // -2 unknown, -1 skip, else partner
    // best[mask] = max weight matchable among vertices not in mask.
    auto rec = [&](auto&& self, std::uint32_t mask) -> double {
        if (mask == (std::uint32_t(1) << n) - 1) return 0.0;
        if (choice[mask] != -2) return best[mask];
        int v = std::countr_one(mask);  // lowest unmatched vertex
        double best_w = self(self, mask | (1u << v));
        int best_c = -1;
        for (auto [u, w] : adj[v]) {
            if (mask & (1u << u)) continue;
            double cand = w + self(self, mask | (1u << v) | (1u << u));
            if (cand > best_w) {
                best_w = cand;
                best_c = u;
            }
        }
        best[mask] = best_w;
        choice[mask] = best_c;
        return best_w;
    };
    rec(rec, 0);
    Matching m;
    std::uint32_t mask = 0;
    while (mask != (std::uint32_t(1) << n) - 1) {
        int v = std::countr_one(mask);
        int c = choice[mask];
        if (c == -1) {
            mask |= 1u << v;
        } else {
            m.pairs.emplace_back(std::min(d.ids[v], d.ids[c]), std::max(d.ids[v], d.ids[c]));
            mask |= (1u << v) | (1u << c);
        }
    }
    return detail::matching_from_mates(
        d, [&] {
            std::vector<int> mate(n, -1);
            for (auto [a, b] : m.pairs) {
                mate[d.index.at(a)] = d.index.at(b);
                mate[d.index.at(b)] = d.index.at(a);
            }
            return mate;
        }(), g);
}

// Heaviest-edge-first heuristic. Benchmarking and fault-injection only; not
// exact and never used for results.
inline Matching greedy_matching(const RiderGraph& g) {
    std::vector<GraphEdge> edges = g.edges;
    std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return std::tie(a.rider_a, a.rider_b) < std::tie(b.rider_a, b.rider_b);
    });
    Matching m;
    std::unordered_map<int, bool> used;
    for (const auto& e : edges) {
        if (used[e.rider_a] || used[e.rider_b]) continue;
        used[e.rider_a] = used[e.rider_b] = true;
        m.pairs.emplace_back(e.rider_a, e.rider_b);
        m.total_weight += e.weight;
    }
    return m;
}

}  // namespace rrsim
