#include "meshfab/latency.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "meshfab/errors.hpp"
#include "meshfab/rng.hpp"

namespace meshfab {

namespace {

std::uint64_t pair_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

}  // namespace

FabricLayout FabricLayout::from_topology(const Topology& topo, const Geometry& geom) {
    FabricLayout l;
    l.geom_ = geom;
    int n = topo.node_count();
    l.room_of_.resize(n);
    l.slot_of_.resize(n);
    l.room_population_.assign(geom.rooms, 0);
    for (int v = 0; v < n; ++v) {
        int room = v % geom.rooms;  // even spread, deterministic
        l.room_of_[v] = room;
        l.slot_of_[v] = l.room_population_[room]++;
    }
    return l;
}

FabricLayout FabricLayout::from_plan(const PhysicalPlan& plan, const ResolveResult& resolved,
                                     const Geometry& geom) {
    if (static_cast<int>(plan.rooms.size()) > geom.rooms)
        throw LayoutInfeasible("plan has more rooms than the geometry");
    FabricLayout l;
    l.geom_ = geom;
    int n = plan.router_count;
    l.room_of_.resize(n);
    l.slot_of_.resize(n);
    l.room_population_.assign(geom.rooms, 0);
    for (int v = 0; v < n; ++v) {
        int room = plan.router_room[v];
        l.room_of_[v] = room;
        l.slot_of_[v] = l.room_population_[room]++;
    }
    // Trunk legs of each resolved edge: sum of inter-room panel hops.
    for (const auto& e : resolved.edge_info) {
        double m = 0;
        for (std::size_t i = 0; i + 1 < e.rooms.size(); ++i)
            m += geom.room_dist(e.rooms[i], e.rooms[i + 1]) +
                 2 * geom.tray_drop_m;  // trunk terminations
        l.edge_trunk_m_.push_back({pair_key(e.router_a, e.router_b), m});
    }
    std::sort(l.edge_trunk_m_.begin(), l.edge_trunk_m_.end());
    l.has_edge_routes_ = true;
    return l;
}

double FabricLayout::rack_to_panel_m(int node) const {
    if (node < 0 || node >= node_count()) throw UnplacedNode("node out of range");
    int room = room_of_[node];
    int slot = slot_of_[node];
    int cols = std::max(1, geom_.rack_columns);
    int rows = std::max(1, (room_population_[room] + cols - 1) / cols);
    double w = geom_.room_width(), d = geom_.room_depth_m;
    double x = (slot % cols + 0.5) * w / cols - w / 2;
    double y = (slot / cols + 0.5) * d / std::max(rows, 1) - d / 2;
    return std::abs(x) + std::abs(y) + 2 * geom_.tray_drop_m;
}

double FabricLayout::trunk_route_m(int u, int v) const {
    auto key = pair_key(u, v);
    auto it = std::lower_bound(edge_trunk_m_.begin(), edge_trunk_m_.end(),
                               std::make_pair(key, -1.0));
    if (it != edge_trunk_m_.end() && it->first == key) return it->second;
    // fall back to the room estimate
    double m = geom_.room_dist(room_of_[u], room_of_[v]);
    return m > 0 ? m + 2 * geom_.tray_drop_m : 0.0;
}

double FabricLayout::hop_length_m(int u, int v) const {
    double trunk;
    if (has_edge_routes_) {
        trunk = trunk_route_m(u, v);
    } else {
        double m = geom_.room_dist(room_of_[u], room_of_[v]);
        trunk = m > 0 ? m + 2 * geom_.tray_drop_m : 0.0;
    }
    return rack_to_panel_m(u) + trunk + rack_to_panel_m(v);
}

double path_latency(std::span<const int> path, const FabricLayout& layout,
                    const LatencyParams& params) {
    if (path.size() < 2) return 0;
    double ns = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        ns += layout.hop_length_m(path[i], path[i + 1]) * params.ns_per_m +
              params.per_hop_switch_ns + params.transmission_ns;
    return ns;
}

LevelAssignment biased_levels(const Topology& topo, int t, int p, int levels,
                              std::uint64_t key, const FabricLayout& layout) {
    const auto& geom = layout.geometry();
    auto scorer = [&, t](int selector, int candidate) -> std::uint64_t {
        double score = geom.room_dist(layout.room_of(candidate), layout.room_of(selector)) +
                       geom.room_dist(layout.room_of(selector), layout.room_of(t));
        return static_cast<std::uint64_t>(score * 1024.0);
    };
    return compute_levels(topo, t, p, levels, key, scorer);
}

PercentileTable latency_distribution(const Topology& topo, const FabricLayout& layout,
                                     const LatencyParams& params, const SpraypointConfig& cfg,
                                     int sample_pairs, std::uint64_t seed,
                                     bool biased_waypoints) {
    if (sample_pairs < 1) throw Error("need at least one sample pair");
    int n = topo.node_count();
    int l = cfg.resolved_levels(n, topo.degree());

    struct Cache {
        PointingGraph pg;
        std::vector<double> exp_ns;  // expected latency from node to destination
    };
    std::unordered_map<int, Cache> caches;

    auto expected_from = [&](int t) -> Cache& {
        auto it = caches.find(t);
        if (it != caches.end()) return it->second;
        auto la = biased_waypoints ? biased_levels(topo, t, cfg.p, l, cfg.key, layout)
                                   : compute_levels(topo, t, cfg.p, l, cfg.key);
        Cache c;
        c.pg = build_pointing_graph(topo, la, cfg.h, cfg.key);
        c.exp_ns.assign(n, -1.0);
        c.exp_ns[t] = 0.0;
        // Parent chains strictly approach t, so a memoized walk terminates.
        auto eval = [&](auto&& self, int u) -> double {
            if (c.exp_ns[u] >= 0) return c.exp_ns[u];
            double acc = 0;
            for (int par : c.pg.parents[u])
                acc += layout.hop_length_m(u, par) * params.ns_per_m +
                       params.per_hop_switch_ns + params.transmission_ns +
                       self(self, par);
            c.exp_ns[u] = acc / c.pg.parents[u].size();
            return c.exp_ns[u];
        };
        for (int u = 0; u < n; ++u)
            if (u != t) eval(eval, u);
        return caches.emplace(t, std::move(c)).first->second;
    };

    Rng rng(child_seed(seed, "latency-pairs"));
    std::vector<double> lat;
    lat.reserve(sample_pairs);
    for (int i = 0; i < sample_pairs; ++i) {
        int s = rng.below_int(n);
        int t = rng.below_int(n - 1);
        if (t >= s) ++t;
        auto& cache = expected_from(t);
        auto nb = topo.neighbors(s);
        double acc = 0;
        for (int v : nb)
            acc += layout.hop_length_m(s, v) * params.ns_per_m + params.per_hop_switch_ns +
                   params.transmission_ns + cache.exp_ns[v];
        lat.push_back(acc / nb.size());
    }
    std::sort(lat.begin(), lat.end());
    PercentileTable tbl;
    auto pct = [&](double q) {
        return lat[static_cast<std::size_t>(q * (lat.size() - 1) + 0.5)];
    };
    tbl.p10 = pct(0.10);
    tbl.p50 = pct(0.50);
    tbl.p90 = pct(0.90);
    double sum = 0;
    for (double x : lat) sum += x;
    tbl.mean = sum / lat.size();
    return tbl;
}

PercentileTable fat_tree_latency_baseline(int tors, const Geometry& geom,
                                          const LatencyParams& params, int sample_pairs,
                                          std::uint64_t seed) {
    if (geom.rooms < 1 || tors < 2) throw LayoutInfeasible("need rooms and at least 2 ToRs");
    // Pods at room centers; both aggregation tiers co-located at the pod
    // center; all spines in the middle of the span.
    double spine_x = geom.span_m / 2;
    std::vector<int> room_pop(geom.rooms, 0);
    std::vector<int> room_of(tors), slot_of(tors);
    for (int v = 0; v < tors; ++v) {
        room_of[v] = v % geom.rooms;
        slot_of[v] = room_pop[room_of[v]]++;
    }
    auto rack_to_pod = [&](int v) {
        int room = room_of[v], slot = slot_of[v];
        int cols = std::max(1, geom.rack_columns);
        int rows = std::max(1, (room_pop[room] + cols - 1) / cols);
        double w = geom.room_width(), d = geom.room_depth_m;
        double x = (slot % cols + 0.5) * w / cols - w / 2;
        double y = (slot / cols + 0.5) * d / rows - d / 2;
        return std::abs(x) + std::abs(y) + 2 * geom.tray_drop_m;
    };
    auto hop_ns = [&](double meters) {
        return meters * params.ns_per_m + params.per_hop_switch_ns + params.transmission_ns;
    };

    Rng rng(child_seed(seed, "ft-lat"));
    std::vector<double> lat;
    lat.reserve(sample_pairs);
    for (int i = 0; i < sample_pairs; ++i) {
        int a = rng.below_int(tors);
        int b = rng.below_int(tors - 1);
        if (b >= a) ++b;
        double ns;
        if (room_of[a] == room_of[b]) {
            // two hops inside the pod: ToR -> agg -> ToR'
            ns = hop_ns(rack_to_pod(a)) + hop_ns(rack_to_pod(b));
        } else {
            double pa = std::abs(geom.room_center_x(room_of[a]) - spine_x) +
                        2 * geom.tray_drop_m;
            double pb = std::abs(geom.room_center_x(room_of[b]) - spine_x) +
                        2 * geom.tray_drop_m;
            // ToR -> agg -> agg-top -> spine -> agg-top -> agg -> ToR' (6 hops)
            ns = hop_ns(rack_to_pod(a)) + hop_ns(0) + hop_ns(pa) + hop_ns(pb) + hop_ns(0) +
                 hop_ns(rack_to_pod(b));
        }
        lat.push_back(ns);
    }
    std::sort(lat.begin(), lat.end());
    PercentileTable tbl;
    auto pct = [&](double q) {
        return lat[static_cast<std::size_t>(q * (lat.size() - 1) + 0.5)];
    };
    tbl.p10 = pct(0.10);
    tbl.p50 = pct(0.50);
    tbl.p90 = pct(0.90);
    double sum = 0;
    for (double x : lat) sum += x;
    tbl.mean = sum / lat.size();
    return tbl;
}

}  // namespace meshfab
