#include "meshfab/spraypoint.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "meshfab/errors.hpp"
#include "meshfab/rng.hpp"

namespace meshfab {

namespace {
constexpr std::uint8_t kUnassigned = 254;
}

LevelAssignment compute_levels(const Topology& topo, int t, int p, int levels,
                               std::uint64_t key, const CandidateScorer& scorer) {
    int n = topo.node_count();
    if (t < 0 || t >= n) throw Error("destination out of range");
    if (p < 2) throw Error("p must be at least 2");
    if (levels < 1) throw Error("level count must be at least 1");

    LevelAssignment la;
    la.destination = t;
    la.p = p;
    la.levels = levels;
    la.key = key;
    la.level_of.assign(n, kUnassigned);
    la.level_of[t] = LevelAssignment::kDestination;
    la.waypoint_levels.resize(levels + 1);

    auto& wp0 = la.waypoint_levels[0];
    for (int v : topo.unique_neighbors(t)) {
        wp0.push_back(v);
        la.level_of[v] = 0;
    }

    struct Ranked {
        std::uint64_t primary, hash;
        int node;
        bool operator<(const Ranked& o) const {
            if (primary != o.primary) return primary < o.primary;
            if (hash != o.hash) return hash < o.hash;
            return node < o.node;
        }
    };

    for (int l = 1; l <= levels; ++l) {
        std::vector<int> next;
        std::vector<Ranked> cand;
        for (int u : la.waypoint_levels[l - 1]) {
            cand.clear();
            for (int c : topo.unique_neighbors(u)) {
                std::uint8_t code = la.level_of[c];
                // earlier levels and t are ineligible; the level being built is
                // fine (another selector may have picked the node already)
                if (code != kUnassigned && code != static_cast<std::uint8_t>(l)) continue;
                std::uint64_t primary = scorer ? scorer(u, c) : 0;
                // selections are per-selector: the rank mixes the selector in,
                // so overlapping candidate pools stay independently sampled
                std::uint64_t ctx = static_cast<std::uint64_t>(t) |
                                    (static_cast<std::uint64_t>(l) << 32);
                cand.push_back({primary, mix64(key, ctx, static_cast<std::uint64_t>(u),
                                               static_cast<std::uint64_t>(c)),
                                c});
            }
            if (static_cast<int>(cand.size()) < p) la.short_selectors.push_back(u);
            int take = std::min<int>(p, static_cast<int>(cand.size()));
            std::partial_sort(cand.begin(), cand.begin() + take, cand.end());
            for (int i = 0; i < take; ++i) {
                int c = cand[i].node;
                if (la.level_of[c] != static_cast<std::uint8_t>(l)) {
                    la.level_of[c] = static_cast<std::uint8_t>(l);
                    next.push_back(c);
                }
            }
        }
        std::sort(next.begin(), next.end());
        la.waypoint_levels[l] = std::move(next);
    }

    for (int u : la.waypoint_levels[levels])
        for (int c : topo.unique_neighbors(u))
            if (la.level_of[c] == kUnassigned) {
                la.level_of[c] = la.inner_ring_code();
                la.inner_ring.push_back(c);
            }
    std::sort(la.inner_ring.begin(), la.inner_ring.end());

    for (int v = 0; v < n; ++v)
        if (la.level_of[v] == kUnassigned) {
            la.level_of[v] = la.outer_ring_code();
            la.outer_ring.push_back(v);
        }
    return la;
}

PointingGraph build_pointing_graph(const Topology& topo, const LevelAssignment& la,
                                   int h, std::uint64_t key, bool ir_parents_any_waypoint) {
    int n = topo.node_count();
    int t = la.destination;
    if (h < 1) throw Error("h must be at least 1");

    PointingGraph pg;
    pg.destination = t;
    pg.h = h;
    pg.parents.assign(n, {});

    // Hop distance to the inner ring over the full graph (for outer-ring rules).
    pg.ir_distance.assign(n, std::numeric_limits<int>::max());
    {
        std::deque<int> q;
        for (int v : la.inner_ring) {
            pg.ir_distance[v] = 0;
            q.push_back(v);
        }
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int u : topo.unique_neighbors(v))
                if (pg.ir_distance[u] > pg.ir_distance[v] + 1) {
                    pg.ir_distance[u] = pg.ir_distance[v] + 1;
                    q.push_back(u);
                }
        }
    }

    struct Ranked {
        std::uint64_t hash;
        int node;
        bool operator<(const Ranked& o) const {
            return hash != o.hash ? hash < o.hash : node < o.node;
        }
    };
    std::vector<Ranked> cand;
    auto pick = [&](int u, auto&& eligible) {
        cand.clear();
        for (int c : topo.unique_neighbors(u))
            if (eligible(c))
                cand.push_back({mix64(key, static_cast<std::uint64_t>(t),
                                      static_cast<std::uint64_t>(u),
                                      static_cast<std::uint64_t>(c)),
                                c});
        int take = std::min<int>(h, static_cast<int>(cand.size()));
        std::partial_sort(cand.begin(), cand.begin() + take, cand.end());
        auto& out = pg.parents[u];
        for (int i = 0; i < take; ++i) out.push_back(cand[i].node);
        if (take < h) pg.short_parent_nodes.push_back(u);
    };

    std::vector<int> unreachable;
    const std::uint8_t ir = la.inner_ring_code(), orr = la.outer_ring_code();
    for (int u = 0; u < n; ++u) {
        if (u == t) continue;
        std::uint8_t code = la.level_of[u];
        if (code == 0) {
            pg.parents[u].push_back(t);
        } else if (code <= la.levels) {
            std::uint8_t want = static_cast<std::uint8_t>(code - 1);
            pick(u, [&](int c) { return la.level_of[c] == want; });
        } else if (code == ir) {
            if (ir_parents_any_waypoint)
                pick(u, [&](int c) { return la.level_of[c] >= 1 && la.level_of[c] <= la.levels; });
            else
                pick(u, [&](int c) { return la.level_of[c] == la.levels; });
        } else if (code == orr) {
            int best = std::numeric_limits<int>::max();
            for (int c : topo.unique_neighbors(u)) best = std::min(best, pg.ir_distance[c]);
            if (best == std::numeric_limits<int>::max()) {
                unreachable.push_back(u);
                continue;
            }
            if (pg.ir_distance[u] > 1) pg.or_multihop = true;
            pick(u, [&](int c) { return pg.ir_distance[c] == best; });
        }
        if (pg.parents[u].empty()) unreachable.push_back(u);
    }

    // Acyclicity and termination: iterative DFS over parent arcs.
    std::vector<std::uint8_t> color(n, 0);  // 0 fresh, 1 on stack, 2 done
    std::vector<char> reaches(n, 0);
    reaches[t] = 1;
    color[t] = 2;
    std::vector<std::pair<int, int>> stack;
    for (int start = 0; start < n; ++start) {
        if (color[start] != 0) continue;
        stack.push_back({start, 0});
        color[start] = 1;
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            if (idx < static_cast<int>(pg.parents[u].size())) {
                int par = pg.parents[u][idx++];
                if (color[par] == 1)
                    throw CycleDetected("pointing rules produced a cycle at node " +
                                        std::to_string(par));
                if (color[par] == 0) {
                    color[par] = 1;
                    stack.push_back({par, 0});
                }
            } else {
                bool ok = !pg.parents[u].empty();
                for (int par : pg.parents[u]) ok = ok && reaches[par];
                reaches[u] = ok || u == t;
                color[u] = 2;
                stack.pop_back();
            }
        }
    }
    for (int u = 0; u < n; ++u)
        if (u != t && !reaches[u]) unreachable.push_back(u);
    if (!unreachable.empty()) {
        std::sort(unreachable.begin(), unreachable.end());
        unreachable.erase(std::unique(unreachable.begin(), unreachable.end()),
                          unreachable.end());
        std::string msg = "nodes cannot reach destination " + std::to_string(t) + ":";
        for (std::size_t i = 0; i < unreachable.size() && i < 16; ++i)
            msg += ' ' + std::to_string(unreachable[i]);
        throw UnreachableNode(msg);
    }
    return pg;
}

std::vector<int> spray_set(const Topology& topo, int s) {
    auto nb = topo.neighbors(s);
    return {nb.begin(), nb.end()};
}

std::vector<SprayPath> enumerate_paths(const Topology& topo, const LevelAssignment& la,
                                       const PointingGraph& pg, int s, int t,
                                       std::size_t max_paths) {
    if (s == t) throw Error("source equals destination");
    std::vector<SprayPath> out;
    std::vector<int> chain;
    // DFS over parent choices from the sprayed node.
    auto extend = [&](auto&& self, int v, int spray) -> bool {
        chain.push_back(v);
        if (v == t) {
            SprayPath path;
            path.spray = spray;
            path.nodes.reserve(chain.size() + 1);
            path.nodes.push_back(s);
            path.nodes.insert(path.nodes.end(), chain.begin(), chain.end());
            out.push_back(std::move(path));
            chain.pop_back();
            return out.size() < max_paths;
        }
        for (int par : pg.parents[v])
            if (!self(self, par, spray)) {
                chain.pop_back();
                return false;
            }
        chain.pop_back();
        return true;
    };
    for (int v : spray_set(topo, s)) {
        chain.clear();
        if (!extend(extend, v, v)) break;
    }
    return out;
}

std::map<int, double> path_length_distribution(const Topology& topo, int p, int h, int levels,
                                               std::uint64_t key, long sample_pairs,
                                               std::uint64_t seed) {
    if (sample_pairs < 1) throw Error("need at least one sample");
    int n = topo.node_count();
    struct Cache {
        LevelAssignment la;
        PointingGraph pg;
    };
    std::unordered_map<int, Cache> caches;
    Rng rng(child_seed(seed, "path-length"));
    std::map<int, double> hist;
    for (long i = 0; i < sample_pairs; ++i) {
        int s = rng.below_int(n);
        int t = rng.below_int(n - 1);
        if (t >= s) ++t;
        auto it = caches.find(t);
        if (it == caches.end()) {
            Cache c;
            c.la = compute_levels(topo, t, p, levels, key);
            c.pg = build_pointing_graph(topo, c.la, h, key);
            it = caches.emplace(t, std::move(c)).first;
        }
        const auto& pg = it->second.pg;
        auto nb = topo.neighbors(s);
        int v = nb[rng.below(nb.size())];
        int len = 1;
        while (v != t) {
            const auto& ps = pg.parents[v];
            v = ps[rng.below(ps.size())];
            ++len;
        }
        hist[len] += 1.0;
    }
    for (auto& [len, f] : hist) f /= static_cast<double>(sample_pairs);
    return hist;
}

void dump_levels(const LevelAssignment& la, std::ostream& out) {
    auto tag = [&](std::uint8_t code) -> std::string {
        if (code == LevelAssignment::kDestination) return "DST";
        if (code <= la.levels) return "WP" + std::to_string(code);
        if (code == la.inner_ring_code()) return "IR";
        return "OR";
    };
    std::vector<int> index(la.level_of.size(), 0);
    auto number = [&](const std::vector<int>& set) {
        for (std::size_t i = 0; i < set.size(); ++i) index[set[i]] = static_cast<int>(i);
    };
    for (const auto& wl : la.waypoint_levels) number(wl);
    number(la.inner_ring);
    number(la.outer_ring);
    for (std::size_t v = 0; v < la.level_of.size(); ++v)
        out << v << ' ' << tag(la.level_of[v]) << ' ' << index[v] << '\n';
}

void dump_pointing(const PointingGraph& pg, std::ostream& out) {
    for (std::size_t v = 0; v < pg.parents.size(); ++v) {
        out << v;
        for (int par : pg.parents[v]) out << ' ' << par;
        out << '\n';
    }
}

}  // namespace meshfab
