#include "meshfab/flow.hpp"
#include <cstdlib>
#include <cstdio>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <unordered_map>

#include "meshfab/errors.hpp"
#include "meshfab/ksp.hpp"
#include "meshfab/matching.hpp"
#include "meshfab/maxflow.hpp"
#include "meshfab/rng.hpp"

namespace meshfab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int arc_id(const Topology& topo, int u, int v) {
    auto nb = topo.unique_neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    return static_cast<int>(topo.unique_offset(u) + (it - nb.begin()));
}

}  // namespace

SprayGraph build_spraypoint_graph(const Topology& topo, const LevelAssignment& levels,
                                  const PointingGraph& pointing, int s, int t) {
    if (s == t) throw Error("source equals destination");
    SprayGraph g;
    g.s = s;
    g.t = t;
    g.node_count = topo.node_count();
    std::vector<char> seen(topo.node_count(), 0);
    std::vector<int> stack;
    for (int v : topo.unique_neighbors(s)) {
        g.arcs.emplace_back(s, v);
        if (!seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int par : pointing.parents[u]) {
            g.arcs.emplace_back(u, par);
            if (!seen[par]) {
                seen[par] = 1;
                stack.push_back(par);
            }
        }
    }
    std::sort(g.arcs.begin(), g.arcs.end());
    g.arcs.erase(std::unique(g.arcs.begin(), g.arcs.end()), g.arcs.end());
    return g;
}

int edge_disjoint_count(const SprayGraph& g) {
    MaxFlow mf(g.node_count);
    for (auto [u, v] : g.arcs) mf.add_arc(u, v, 1);
    return mf.solve(g.s, g.t);
}

int matching_mincut_oracle(const Topology& topo, const LevelAssignment& levels,
                           const PointingGraph& pointing, const std::vector<int>& S, int t) {
    const auto ir_code = levels.inner_ring_code();
    for (int x : S)
        if (levels.level_of[x] != ir_code)
            throw PremiseViolated("S must be a subset of the inner ring");

    const auto& wp0 = levels.waypoint_levels[0];
    std::unordered_map<int, int> right_index;
    for (std::size_t i = 0; i < wp0.size(); ++i) right_index[wp0[i]] = static_cast<int>(i);

    std::vector<std::vector<int>> adj(S.size());
    std::vector<char> seen(topo.node_count(), 0);
    std::vector<int> stack, touched;
    for (std::size_t i = 0; i < S.size(); ++i) {
        stack.assign(1, S[i]);
        touched.assign(1, S[i]);
        seen[S[i]] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            auto it = right_index.find(u);
            if (it != right_index.end()) adj[i].push_back(it->second);
            for (int par : pointing.parents[u])
                if (par != t && !seen[par]) {
                    seen[par] = 1;
                    touched.push_back(par);
                    stack.push_back(par);
                }
        }
        for (int u : touched) seen[u] = 0;
    }
    return max_bipartite_matching(static_cast<int>(S.size()), static_cast<int>(wp0.size()),
                                  adj);
}

// ---------------------------------------------------------------------------
// Maximum concurrent flow.
//
// Minimizing the worst arc congestion of fully-routed demands is equivalent to
// maximizing the common deliverable fraction (lambda = 1/congestion). The
// solver is multiplicative-weights path routing: every phase each commodity
// sends its demand in chunks along its current minimum-length admissible
// path, and each unit of flow multiplies the lengths of the arcs it crossed.
// The cumulative flow divided by the phase count is rescaled into an exactly
// feasible solution, so the reported lambda is always achievable. Phases run
// until the feasible value stops improving on the eps scale (with the phase
// budget as a hard stop). Arc lengths also yield a valid congestion lower
// bound, C* >= sum_j demand_j * mindist_l(j) / sum_e l_e; it is reported as
// dual_gap, though for near-uniform optima it is loose.
// ---------------------------------------------------------------------------

namespace {

struct CommodityState {
    int s = -1, t = -1;
    double demand = 1;
    // Sub-DAG universe, topologically ordered (parents first).
    std::vector<int> order;
    std::vector<std::uint32_t> slice_off;  // per order position
    std::vector<int> par_node;
    std::vector<std::uint32_t> par_arc;
    std::vector<std::pair<int, std::uint32_t>> spray;  // (neighbor, arc id)
    // Explicit-path universe.
    std::vector<std::vector<std::uint32_t>> path_arcs;
    bool dag() const { return !order.empty(); }
};

CommodityState make_dag_state(const Topology& topo, const Commodity& c) {
    CommodityState st;
    st.s = c.s;
    st.t = c.t;
    st.demand = c.demand;
    const auto& parents = c.pointing->parents;

    // Iterative post-order DFS from the spray neighbors: every node lands
    // after all of its parents, which is exactly the DP evaluation order.
    int n = topo.node_count();
    std::vector<std::uint8_t> color(n, 0);
    std::vector<std::pair<int, int>> dfs;
    for (int v : topo.unique_neighbors(c.s)) {
        if (color[v] != 0) continue;
        color[v] = 1;
        dfs.push_back({v, 0});
        while (!dfs.empty()) {
            auto& [u, idx] = dfs.back();
            const auto& ps = parents[u];
            if (u != c.t && idx < static_cast<int>(ps.size())) {
                int par = ps[idx++];
                if (color[par] == 0) {
                    color[par] = 1;
                    dfs.push_back({par, 0});
                }
            } else {
                st.order.push_back(u);
                color[u] = 2;
                dfs.pop_back();
            }
        }
    }
    st.slice_off.reserve(st.order.size() + 1);
    st.slice_off.push_back(0);
    for (int u : st.order) {
        if (u != c.t)
            for (int par : parents[u]) {
                st.par_node.push_back(par);
                st.par_arc.push_back(static_cast<std::uint32_t>(arc_id(topo, u, par)));
            }
        st.slice_off.push_back(static_cast<std::uint32_t>(st.par_node.size()));
    }
    for (int v : topo.unique_neighbors(c.s))
        st.spray.push_back({v, static_cast<std::uint32_t>(arc_id(topo, c.s, v))});
    return st;
}

CommodityState make_path_state(const Topology& topo, const Commodity& c) {
    CommodityState st;
    st.s = c.s;
    st.t = c.t;
    st.demand = c.demand;
    for (const auto& path : c.paths) {
        std::vector<std::uint32_t> arcs;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            arcs.push_back(static_cast<std::uint32_t>(arc_id(topo, path[i], path[i + 1])));
        st.path_arcs.push_back(std::move(arcs));
    }
    if (st.path_arcs.empty()) throw NoPath("commodity has an empty path set");
    return st;
}

}  // namespace

ConcurrentFlowResult max_concurrent_flow(const Topology& topo,
                                         const std::vector<Commodity>& commodities,
                                         double eps, int max_rounds) {
    if (commodities.empty()) throw Error("no demands");
    if (eps <= 0 || eps > 0.2) throw Error("eps must lie in (0, 0.2]");

    std::vector<CommodityState> states;
    states.reserve(commodities.size());
    double total_demand = 0;
    for (const auto& c : commodities) {
        if (c.demand <= 0) continue;
        total_demand += c.demand;
        states.push_back(c.pointing ? make_dag_state(topo, c) : make_path_state(topo, c));
    }
    if (states.empty()) throw Error("no positive demands");

    const std::size_t m = topo.unique_arc_count();
    std::vector<double> len(m, 1.0);   // multiplicative arc lengths
    std::vector<double> flow(m, 0.0);  // cumulative routed units
    std::vector<double> minw(topo.node_count(), kInf);
    std::vector<int> best_par(topo.node_count(), -1);
    std::vector<std::uint32_t> best_arc(topo.node_count(), 0);
    std::vector<std::uint32_t> path;

    std::map<int, double> len_flow;  // cumulative flow by path length
    double lb_best = 0;
    ConcurrentFlowResult res;
    res.eps = eps;

    // Frozen-length dual pass: all distances and the length sum must be read
    // under one length vector for the bound to be tight.
    auto dual_bound = [&]() {
        double dual_num = 0;
        for (const auto& st : states) {
            double best = kInf;
            if (st.dag()) {
                for (std::size_t i = 0; i < st.order.size(); ++i) {
                    int u = st.order[i];
                    if (u == st.t) {
                        minw[u] = 0;
                        continue;
                    }
                    double mv = kInf;
                    for (std::uint32_t j = st.slice_off[i]; j < st.slice_off[i + 1]; ++j)
                        mv = std::min(mv, len[st.par_arc[j]] + minw[st.par_node[j]]);
                    minw[u] = mv;
                }
                for (auto [v, arc] : st.spray) best = std::min(best, len[arc] + minw[v]);
                for (int u : st.order) minw[u] = kInf;
            } else {
                for (const auto& arcs : st.path_arcs) {
                    double cand = 0;
                    for (auto a : arcs) cand += len[a];
                    best = std::min(best, cand);
                }
            }
            dual_num += st.demand * best;
        }
        double lsum = 0;
        for (double l : len) lsum += l;
        return dual_num / lsum;
    };

    // The first phases route against unstructured lengths and would pollute
    // the cumulative average forever; the accumulator restarts once after
    // warmup while the evolved lengths carry over. The best running average is
    // snapshotted because long multiplicative sharpening eventually worsens
    // the per-phase mix.
    const int warmup = 50;
    int phase = 0;
    int counted = 0;
    double r_feas = kInf, r_best = kInf;
    std::vector<double> flow_best;
    std::map<int, double> len_flow_best;
    int counted_best = 0;
    while (phase < max_rounds) {
        ++phase;
        for (const auto& st : states) {
            // Chunks no larger than a quarter of the demand keep the
            // multiplicative updates fine-grained without many re-routes.
            double chunk_cap = std::max(1.0, st.demand / 4.0);
            double remaining = st.demand;
            bool first_chunk = true;
            while (remaining > 1e-12) {
                double best = kInf;
                int best_spray = -1;
                std::uint32_t spray_arc = 0;
                path.clear();
                int plen = 0;
                if (st.dag()) {
                    for (std::size_t i = 0; i < st.order.size(); ++i) {
                        int u = st.order[i];
                        if (u == st.t) {
                            minw[u] = 0;
                            best_par[u] = -1;
                            continue;
                        }
                        double mv = kInf;
                        int mp = -1;
                        std::uint32_t ma = 0;
                        for (std::uint32_t j = st.slice_off[i]; j < st.slice_off[i + 1];
                             ++j) {
                            double cand = len[st.par_arc[j]] + minw[st.par_node[j]];
                            if (cand < mv) {
                                mv = cand;
                                mp = st.par_node[j];
                                ma = st.par_arc[j];
                            }
                        }
                        minw[u] = mv;
                        best_par[u] = mp;
                        best_arc[u] = ma;
                    }
                    for (auto [v, arc] : st.spray) {
                        double cand = len[arc] + minw[v];
                        if (cand < best) {
                            best = cand;
                            best_spray = v;
                            spray_arc = arc;
                        }
                    }
                    if (best_spray < 0 || !(best < kInf))
                        throw NoPath("no admissible path for a demanded pair");
                    path.push_back(spray_arc);
                    for (int u = best_spray; u != st.t; u = best_par[u])
                        path.push_back(best_arc[u]);
                    for (int u : st.order) minw[u] = kInf;
                } else {
                    const std::vector<std::uint32_t>* best_path = nullptr;
                    for (const auto& arcs : st.path_arcs) {
                        double cand = 0;
                        for (auto a : arcs) cand += len[a];
                        if (cand < best) {
                            best = cand;
                            best_path = &arcs;
                        }
                    }
                    path.assign(best_path->begin(), best_path->end());
                }
                plen = static_cast<int>(path.size());
                double f = std::min(remaining, chunk_cap);
                remaining -= f;
                len_flow[plen] += f;
                for (auto a : path) {
                    flow[a] += f;
                    len[a] *= (1.0 + eps * f / chunk_cap);
                }
            }
        }
        double lmax = 0;
        for (double l : len) lmax = std::max(lmax, l);
        if (lmax > 1e250)
            for (auto& l : len) l /= lmax;  // rescaling preserves all argmins
        if (phase % 10 == 0 || phase == warmup) lb_best = std::max(lb_best, dual_bound());

        if (phase == warmup) {
            std::fill(flow.begin(), flow.end(), 0.0);
            len_flow.clear();
            counted = 0;
            continue;
        }
        ++counted;
        double fmax = 0;
        for (double f : flow) fmax = std::max(fmax, f);
        r_feas = fmax / counted;
        if (counted >= 10 && r_feas < r_best) {
            r_best = r_feas;
            flow_best = flow;
            len_flow_best = len_flow;
            counted_best = counted;
        }
        if (std::getenv("MESHFAB_MCF_TRACE") && phase % 50 == 0)
            fprintf(stderr, "phase %d r=%.4f best=%.4f lb=%.4f\n", phase, r_feas, r_best,
                    lb_best);
        // Stop on the duality certificate: the rescaled flow is within
        // (1-eps) of the optimum once the gap closes.
        if (counted >= 10 && (r_best - lb_best) / r_best <= eps) break;
    }
    if (phase >= max_rounds)
        throw NonConvergence("concurrent flow missed the (1-eps) certificate within " +
                             std::to_string(max_rounds) + " phases (gap " +
                             std::to_string((r_best - lb_best) / r_best) + ")");

    double congestion = r_best;
    int counted_out = counted_best;
    flow = std::move(flow_best);
    len_flow = std::move(len_flow_best);
    res.rounds = phase;
    res.congestion = congestion;
    res.lambda = std::min(1.0, 1.0 / congestion);  // senders cannot exceed full rate
    res.r = std::max(1.0, congestion);
    res.dual_gap = congestion > 0 ? (congestion - lb_best) / congestion : 0.0;
    double len_total = 0;
    for (auto [l, f] : len_flow) len_total += f;
    for (auto [l, f] : len_flow) res.delta[l] = f / len_total;
    // Per-arc loads of the rescaled feasible flow (fraction of capacity).
    int n = topo.node_count();
    double per_unit = res.lambda / std::max(counted_out, 1);
    double worst = 0;
    for (int u = 0; u < n; ++u) {
        auto nb = topo.unique_neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            double x = flow[topo.unique_offset(u) + i] * per_unit;
            if (x > 0) res.per_edge_load.push_back({{u, nb[i]}, x});
            worst = std::max(worst, x);
        }
    }
    res.max_arc_load = worst;
    return res;
}

ConcurrentFlowResult route_matrix_spraypoint(const Topology& topo, const SpraypointConfig& cfg,
                                             const TrafficMatrix& matrix, double eps) {
    matrix.validate();
    int l = cfg.resolved_levels(topo.node_count(), topo.degree());
    std::unordered_map<int, std::unique_ptr<PointingGraph>> pointing;
    std::vector<Commodity> comms;
    for (const auto& dem : matrix.demands) {
        if (dem.rate <= 0) continue;
        auto it = pointing.find(dem.dst);
        if (it == pointing.end()) {
            auto la = compute_levels(topo, dem.dst, cfg.p, l, cfg.key);
            auto pg = std::make_unique<PointingGraph>(
                build_pointing_graph(topo, la, cfg.h, cfg.key));
            it = pointing.emplace(dem.dst, std::move(pg)).first;
        }
        Commodity c;
        c.s = dem.src;
        c.t = dem.dst;
        c.demand = dem.rate * topo.degree();  // node capacity units -> arc units
        c.pointing = it->second.get();
        comms.push_back(std::move(c));
    }
    return max_concurrent_flow(topo, comms, eps);
}

ConcurrentFlowResult route_matrix_ksp(const Topology& topo, const TrafficMatrix& matrix,
                                      int k, double eps) {
    matrix.validate();
    std::vector<Commodity> comms;
    for (const auto& dem : matrix.demands) {
        if (dem.rate <= 0) continue;
        Commodity c;
        c.s = dem.src;
        c.t = dem.dst;
        c.demand = dem.rate * topo.degree();
        c.paths = ksp_paths(topo, dem.src, dem.dst, k);
        if (c.paths.empty()) throw NoPath("no path between a demanded pair");
        comms.push_back(std::move(c));
    }
    return max_concurrent_flow(topo, comms, eps);
}

OversubResult oversubscription(const Topology& topo, const SpraypointConfig& cfg,
                               int num_matchings, double eps, std::uint64_t seed) {
    if (num_matchings < 1) throw Error("need at least one matching");
    OversubResult out;
    double sum = 0;
    for (int i = 0; i < num_matchings; ++i) {
        auto matrix = generate_traffic(TrafficPattern::Matching, 1.0, topo.node_count(),
                                       child_seed(seed, "matching", i));
        auto res = route_matrix_spraypoint(topo, cfg, matrix, eps);
        MatchingOversubRow row;
        row.matching_id = i;
        row.r = res.r;
        row.delta = res.delta;
        out.rows.push_back(std::move(row));
        sum += res.r;
        if (i == 0) {
            out.worst_r = out.best_r = res.r;
        } else {
            out.worst_r = std::max(out.worst_r, res.r);
            out.best_r = std::min(out.best_r, res.r);
        }
    }
    out.mean_r = sum / num_matchings;
    return out;
}

CompareResult compare_routing(const Topology& topo, const SpraypointConfig& cfg,
                              const std::vector<std::string>& schemes, int sample_pairs,
                              double eps, std::uint64_t seed) {
    CompareResult out;
    Rng rng(child_seed(seed, "compare-pairs"));
    int n = topo.node_count();
    for (int i = 0; i < sample_pairs; ++i) {
        int s = rng.below_int(n);
        int t = rng.below_int(n - 1);
        if (t >= s) ++t;
        out.pairs.push_back({s, t});
    }
    int l = cfg.resolved_levels(n, topo.degree());
    auto matching = generate_traffic(TrafficPattern::Matching, 1.0, n,
                                     child_seed(seed, "compare-matching"));

    for (const auto& scheme : schemes) {
        RoutingSchemeReport rep;
        rep.scheme = scheme;
        if (scheme == "spraypoint") {
            for (auto [s, t] : out.pairs) {
                auto la = compute_levels(topo, t, cfg.p, l, cfg.key);
                auto pg = build_pointing_graph(topo, la, cfg.h, cfg.key);
                rep.edp.push_back(edge_disjoint_count(build_spraypoint_graph(topo, la, pg, s, t)));
            }
            rep.oversub_r = route_matrix_spraypoint(topo, cfg, matching, eps).r;
        } else if (scheme.rfind("ksp(", 0) == 0 && scheme.back() == ')') {
            int k = std::stoi(scheme.substr(4, scheme.size() - 5));
            for (auto [s, t] : out.pairs) {
                auto paths = ksp_paths(topo, s, t, k);
                MaxFlow mf(n);
                std::vector<std::pair<int, int>> arcs;
                for (const auto& p : paths)
                    for (std::size_t j = 0; j + 1 < p.size(); ++j)
                        arcs.push_back({p[j], p[j + 1]});
                std::sort(arcs.begin(), arcs.end());
                arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
                for (auto [u, v] : arcs) mf.add_arc(u, v, 1);
                rep.edp.push_back(mf.solve(s, t));
            }
            rep.oversub_r = route_matrix_ksp(topo, matching, k, eps).r;
        } else {
            throw Error("unknown routing scheme: " + scheme);
        }
        auto sorted = rep.edp;
        std::sort(sorted.begin(), sorted.end());
        rep.median_edp = sorted.empty() ? 0 : sorted[sorted.size() / 2];
        out.schemes.push_back(std::move(rep));
    }
    return out;
}

}  // namespace meshfab
