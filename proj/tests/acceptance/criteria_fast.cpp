// Closed-form and sampling criteria that run in seconds.

#include <cmath>
#include <set>

#include "framework.hpp"
#include "meshfab/design.hpp"
#include "meshfab/flow.hpp"
#include "meshfab/matching.hpp"
#include "meshfab/maxflow.hpp"
#include "meshfab/models.hpp"
#include "meshfab/rng.hpp"
#include "meshfab/spraypoint.hpp"
#include "meshfab/topology.hpp"

using namespace meshfab;

ACCEPTANCE_CRITERION(3, "path lengths at n=1000 d=64 p=2, 1e5 samples") {
    auto topo = build_configuration_graph(1000, 64, 2024, true);
    auto hist = path_length_distribution(topo, 2, 2, 1, 0xfeed, 100000, 7);
    auto model = model_path_length(1000, 64, 2, 1);
    double f2 = hist.count(2) ? hist[2] : 0;
    double f3 = hist.count(3) ? hist[3] : 0;
    double f5 = hist.count(5) ? hist[5] : 0;
    log << " f2=" << f2 << " f3=" << f3 << " f5=" << f5;
    bool ok = std::abs(f2 - 0.064) <= 0.010 && std::abs(f3 - 0.128) <= 0.020 && f5 <= 0.001;
    // the model curve matches inside the same bands
    ok = ok && std::abs(model[2] - 0.064) <= 0.010 && std::abs(model[3] - 0.128) <= 0.020 &&
         model[5] <= 0.001;
    ok = ok && std::abs(model[2] - f2) <= 0.010 && std::abs(model[3] - f3) <= 0.020;
    return ok;
}

ACCEPTANCE_CRITERION(6, "matching bounds: simulated mu and the limit fraction") {
    double mu1 = random_matching_mu(2048, 2048, 1, 24, 11);
    double mu2 = random_matching_mu(2048, 2048, 2, 24, 11);
    double f2 = frieze_mellsted_fraction(2);
    double f4 = frieze_mellsted_fraction(4);
    log << " mu(d,d;1)=" << mu1 << " mu(d,d;2)=" << mu2 << " limit2=" << f2
        << " limit4=" << f4;
    return std::abs(mu1 - 0.632) <= 0.01 && std::abs(mu2 - 0.838) <= 0.01 &&
           std::abs(f2 - 0.838) <= 0.002 && std::abs(f4 - 0.979) <= 0.002;
}

ACCEPTANCE_CRITERION(8, "two-phase optimum closed form") {
    auto o = optimal_two_phase(0.8);
    log << " beta*=" << o.beta_star << " phase1=" << o.phase1;
    return std::abs(o.beta_star - 0.24446) <= 1e-5 + 1e-6 &&
           std::abs(o.phase1 - 0.30557) <= 1e-5 + 1e-6;
}

ACCEPTANCE_CRITERION(10, "switch-count cost versus fat trees") {
    double at3 = cost_reduction(61440, 128, 3.0);
    log << " reduction(3:1)=" << at3 << "%";
    if (std::abs(at3 - 45.0) > 3.0) return false;

    double at1 = cost_reduction(524288 / 2, 128, 1.0);
    log << " reduction(1:1,half-size)=" << at1 << "%";
    if (at1 < 6.0 || at1 > 18.0) return false;

    // curve extremes across sizes and port counts stay within the band
    double lo = 1e9, hi = -1e9;
    for (int ports : {32, 128}) {
        long cap = static_cast<long>(ports) * ports * ports / 4;
        for (long s : {cap, cap / 2, cap / 4})
            for (double o : {1.0, 2.0, 3.0, 4.0, 6.0}) {
                double red = cost_reduction(s, ports, o);
                lo = std::min(lo, red);
                hi = std::max(hi, red);
            }
    }
    log << " curve=[" << lo << "," << hi << "]%";
    return lo >= 9.0 - 3.0 && hi <= 45.0 + 3.0;
}

namespace {

void enum_paths(const std::vector<std::pair<int, int>>& arcs, int s, int t,
                std::vector<int>& cur, std::vector<char>& used,
                std::vector<std::vector<int>>& out) {
    if (s == t) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (used[i] || arcs[i].first != s) continue;
        used[i] = 1;
        cur.push_back(static_cast<int>(i));
        enum_paths(arcs, arcs[i].second, t, cur, used, out);
        cur.pop_back();
        used[i] = 0;
    }
}

int packing(const std::vector<std::vector<int>>& paths, std::size_t from, std::set<int>& used) {
    int best = 0;
    for (std::size_t i = from; i < paths.size(); ++i) {
        bool free = true;
        for (int a : paths[i])
            if (used.count(a)) {
                free = false;
                break;
            }
        if (!free) continue;
        for (int a : paths[i]) used.insert(a);
        best = std::max(best, 1 + packing(paths, i + 1, used));
        for (int a : paths[i]) used.erase(a);
    }
    return best;
}

}  // namespace

ACCEPTANCE_CRITERION(12, "oracle equivalences on small instances") {
    // max-flow against exhaustive edge-disjoint packings, <= 12 arcs
    Rng rng(20260809);
    for (int trial = 0; trial < 200; ++trial) {
        int nodes = 4 + rng.below_int(4);
        std::vector<std::pair<int, int>> arcs;
        int m = 4 + rng.below_int(9);
        for (int i = 0; i < m; ++i) {
            int u = rng.below_int(nodes), v = rng.below_int(nodes);
            if (u != v) arcs.push_back({u, v});
        }
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        MaxFlow mf(nodes);
        for (auto [u, v] : arcs) mf.add_arc(u, v, 1);
        int fast = mf.solve(0, nodes - 1);
        std::vector<std::vector<int>> paths;
        std::vector<int> cur;
        std::vector<char> used(arcs.size(), 0);
        enum_paths(arcs, 0, nodes - 1, cur, used, paths);
        std::set<int> taken;
        int slow = packing(paths, 0, taken);
        if (fast != slow) {
            log << " mismatch at trial " << trial << ": flow=" << fast
                << " packing=" << slow;
            return false;
        }
    }

    // descendant-matching oracle against max flow on premise instances
    auto topo = build_configuration_graph(400, 32, 5, true);
    int checked = 0;
    for (int t : {7, 99, 250, 321}) {
        auto la = compute_levels(topo, t, 2, 1, 99);
        auto pg = build_pointing_graph(topo, la, 2, 99);
        if (la.inner_ring.size() < 20) continue;
        Rng pick(child_seed(31, "mincut-S", t));
        for (int trial = 0; trial < 25; ++trial) {
            std::set<int> chosen;
            while (chosen.size() < 20)
                chosen.insert(la.inner_ring[pick.below(la.inner_ring.size())]);
            std::vector<int> S(chosen.begin(), chosen.end());
            int matched = matching_mincut_oracle(topo, la, pg, S, t);
            MaxFlow mf(topo.node_count() + 1);
            int src = topo.node_count();
            for (int x : S) mf.add_arc(src, x, 1);
            for (int u = 0; u < topo.node_count(); ++u)
                for (int par : pg.parents[u]) mf.add_arc(u, par, 1);
            if (matched != mf.solve(src, t)) {
                log << " matching/flow mismatch at t=" << t << " trial=" << trial;
                return false;
            }
            ++checked;
        }
    }
    log << " packing trials=200 matching instances=" << checked;
    return checked >= 100;
}
