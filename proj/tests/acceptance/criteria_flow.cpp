// Concurrent-flow criteria: the heavy simulation checks.

#include <algorithm>
#include <cmath>

#include "framework.hpp"
#include "meshfab/flow.hpp"
#include "meshfab/ksp.hpp"
#include "meshfab/models.hpp"
#include "meshfab/rng.hpp"
#include "meshfab/spraypoint.hpp"
#include "meshfab/topology.hpp"

using namespace meshfab;

ACCEPTANCE_CRITERION(1, "oversubscription at the default point, 20 matchings") {
    auto topo = build_configuration_graph(1000, 64, 81, true);
    SpraypointConfig cfg;  // p=4 h=2
    auto res = oversubscription(topo, cfg, 20, 0.05, 4242);
    double spread = (res.worst_r - res.best_r) / res.mean_r;
    log << " worst_r=" << res.worst_r << " mean_r=" << res.mean_r << " spread=" << spread;
    return res.worst_r >= 3.0 && res.worst_r <= 3.6 && spread < 0.1;
}

ACCEPTANCE_CRITERION(2, "model fidelity across the one-at-a-time sweep") {
    struct Point {
        int n, d, p, h;
    };
    std::vector<Point> grid;
    for (int d : {32, 48, 64, 96}) grid.push_back({1000, d, 4, 2});
    for (int p : {2, 8, 16}) grid.push_back({1000, 64, p, 2});
    for (int h : {1, 3}) grid.push_back({1000, 64, 4, h});
    grid.push_back({500, 64, 4, 2});

    int pass = 0;
    for (const auto& pt : grid) {
        auto topo = build_configuration_graph(pt.n, pt.d, 300 + pt.d + pt.p + pt.h, true);
        SpraypointConfig cfg;
        cfg.p = pt.p;
        cfg.h = pt.h;
        auto sim = oversubscription(topo, cfg, 3, 0.05, 97);
        double model = model_oversub(pt.n, pt.d, pt.p, pt.h).oversub;
        double rel = std::abs(model - sim.worst_r) / sim.worst_r;
        log << "\n    (n=" << pt.n << ",d=" << pt.d << ",p=" << pt.p << ",h=" << pt.h
            << ") sim=" << sim.worst_r << " model=" << model << " rel=" << rel;
        if (rel <= 0.15) ++pass;
    }
    double frac = static_cast<double>(pass) / grid.size();
    log << "\n    within 15% at " << pass << "/" << grid.size();
    return frac >= 0.90;
}

ACCEPTANCE_CRITERION(4, "edge-disjoint paths at the default point, 200 pairs") {
    auto topo = build_configuration_graph(1000, 64, 81, true);
    SpraypointConfig cfg;
    Rng rng(child_seed(606, "edp-pairs"));
    std::vector<int> edp;
    double nonneighbor_sum = 0;
    int nonneighbor_count = 0;
    for (int i = 0; i < 200; ++i) {
        int s = rng.below_int(1000);
        int t = rng.below_int(999);
        if (t >= s) ++t;
        auto la = compute_levels(topo, t, cfg.p, 1, cfg.key);
        auto pg = build_pointing_graph(topo, la, cfg.h, cfg.key);
        int cut = edge_disjoint_count(build_spraypoint_graph(topo, la, pg, s, t));
        edp.push_back(cut);
        if (!topo.adjacent(s, t)) {
            nonneighbor_sum += cut;
            ++nonneighbor_count;
        }
    }
    std::sort(edp.begin(), edp.end());
    int median = edp[edp.size() / 2];
    int ge50 = static_cast<int>(std::count_if(edp.begin(), edp.end(),
                                              [](int x) { return x >= 50; }));
    double mean_nn = nonneighbor_sum / nonneighbor_count;
    double model_nn = model_edge_disjoint(64, cfg.p, cfg.h, false);
    log << " median=" << median << " >=50: " << ge50 << "/200 mean_nonneighbor=" << mean_nn
        << " model=" << model_nn;
    return ge50 >= 190 && median >= 58 &&
           std::abs(mean_nn - model_nn) / model_nn <= 0.10;
}

ACCEPTANCE_CRITERION(5, "k-shortest-paths baseline: median edge diversity") {
    auto topo = build_configuration_graph(1000, 64, 81, true);
    auto cmp = compare_routing(topo, SpraypointConfig{}, {"ksp(8)"}, 50, 0.05, 515);
    double median = cmp.schemes[0].median_edp;
    log << " ksp(8) median edp=" << median;
    return median >= 3.0 && median <= 7.0;
}

ACCEPTANCE_CRITERION(11, "structural property suite over 50 random configurations") {
    Rng rng(child_seed(11, "prop-suite"));
    int flows_checked = 0;
    for (int i = 0; i < 50; ++i) {
        int n = 200 + static_cast<int>(rng.below(801));
        int d_min = static_cast<int>(std::ceil(2 * (std::log(n) + 5.0)));
        int d = d_min + rng.below_int(24);
        if ((n * d) % 2) ++d;
        int p = 2 + rng.below_int(6);
        int h = 1 + rng.below_int(3);
        auto topo = build_configuration_graph(n, d, 7000 + i, true);
        int l = default_level_count(n, d, p);

        for (int rep = 0; rep < 2; ++rep) {
            int t = rng.below_int(n);
            auto la = compute_levels(topo, t, p, l, 0xabc + i);
            // partition exactness
            std::vector<int> seen(n, 0);
            seen[t] = 1;
            for (const auto& wl : la.waypoint_levels)
                for (int v : wl) seen[v]++;
            for (int v : la.inner_ring) seen[v]++;
            for (int v : la.outer_ring) seen[v]++;
            for (int v = 0; v < n; ++v)
                if (seen[v] != 1) {
                    log << " partition violation at config " << i;
                    return false;
                }
            // acyclicity is verified inside the builder; a throw fails the suite
            auto pg = build_pointing_graph(topo, la, h, 0xabc + i);
            // path termination within l+4 hops
            int s = rng.below_int(n);
            if (s == t) s = (s + 1) % n;
            auto paths = enumerate_paths(topo, la, pg, s, t, 2000);
            for (const auto& path : paths)
                if (path.length() > l + 4) {
                    log << " path of length " << path.length() << " at config " << i;
                    return false;
                }
        }

        // flow feasibility and the length lower bound on a solved instance
        if (i % 10 == 0) {
            SpraypointConfig cfg;
            cfg.p = p;
            cfg.h = h;
            auto m = generate_traffic(TrafficPattern::Matching, 1.0, n,
                                      child_seed(5, "prop-m", i));
            auto res = route_matrix_spraypoint(topo, cfg, m, 0.05);
            if (res.max_arc_load > 1.0 + 1e-9) {
                log << " capacity violation at config " << i;
                return false;
            }
            double bound = 0;
            for (auto [len, f] : res.delta) bound += len * f;
            if (res.r < bound - 0.05 * res.r - 1e-9) {
                log << " length bound violation at config " << i << " r=" << res.r
                    << " bound=" << bound;
                return false;
            }
            ++flows_checked;
        }
    }
    log << " 50 configs, " << flows_checked << " flow instances";
    return flows_checked >= 5;
}
