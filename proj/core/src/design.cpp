#include "meshfab/design.hpp"

#include <algorithm>
#include <cmath>

#include "meshfab/errors.hpp"
#include "meshfab/models.hpp"

namespace meshfab {

int max_h(long n, int d, long mem_entries) {
    int best = 1;
    // per-destination groups: n*h entries
    if (n > 0) best = std::max(best, static_cast<int>(std::min<long>(mem_entries / n, d)));
    // pre-defined groups: h*d^h entries
    double pw = 1;
    for (int h = 1; h <= d; ++h) {
        pw *= d;
        if (h * pw > static_cast<double>(mem_entries)) break;
        best = std::max(best, h);
    }
    return std::min(std::max(best, 1), d);
}

namespace {

struct Viability {
    bool ok = false;
    long n = 0;
    int h = 0;
    double mesh_target = 0, range_lo = 0, range_hi = 0;
    std::string reason;
};

Viability check_d(long s, int P, double r_e, long mem, int d) {
    Viability v;
    v.n = (s + (P - d) - 1) / (P - d);
    // Design-procedure regime floor: 2 ln(n) + 5. (The broader operating
    // criterion 2(ln n + 5) is deliberately conservative and would forbid
    // cost-effective designs on low-port-count switches entirely.)
    double regime = 2.0 * std::log(static_cast<double>(v.n)) + 5.0;
    if (d < regime) {
        v.reason = "regime";
        return v;
    }
    v.h = max_h(v.n, d, mem);
    v.mesh_target = r_e * d / static_cast<double>(P - d);
    int p_lo = std::max(2L, (v.n + static_cast<long>(d) * d - 1) / (static_cast<long>(d) * d));
    if (p_lo > d) {
        v.reason = "p-range";
        return v;
    }
    v.range_lo = 1e300;
    v.range_hi = 0;
    for (int p = p_lo; p <= d; ++p) {
        double o = model_oversub(static_cast<int>(v.n), d, p, v.h).oversub;
        v.range_lo = std::min(v.range_lo, o);
        v.range_hi = std::max(v.range_hi, o);
    }
    // The oversubscription model is approximate; a hairline miss of the range
    // boundary must not flip viability.
    if (v.mesh_target < v.range_lo * 0.99) {
        v.reason = "mesh-oversub";
        return v;
    }
    v.ok = true;
    return v;
}

}  // namespace

DesignSpec design_fabric(long servers, int ports, double r_end_to_end, double r_tor,
                         long ecmp_mem) {
    if (ports < 4) throw Infeasible("need at least 4 ports", "ports");
    if (r_tor <= 0 || r_end_to_end < r_tor)
        throw Infeasible("targets must satisfy 0 < r_t <= r_e", "targets");

    DesignSpec spec;
    spec.servers = servers;
    spec.ports = ports;
    spec.r_end_to_end = r_end_to_end;
    spec.r_tor = r_tor;
    spec.ecmp_mem = ecmp_mem;

    int d_lo = static_cast<int>(std::ceil(ports / (r_tor + 1.0)));
    int d_hi = ports - 1;
    if (d_lo > d_hi)
        throw Infeasible("no d gives ToR oversubscription within target", "tor-oversub");
    spec.audit.push_back("d range [" + std::to_string(d_lo) + "," + std::to_string(d_hi) +
                         "] from ToR target and port count");

    auto viable = [&](int d) { return check_d(servers, ports, r_end_to_end, ecmp_mem, d); };

    // Binary search for the minimal viable d (viability is monotone: larger d
    // relaxes both the regime floor and the mesh target).
    int lo = d_lo, hi = d_hi;
    if (!viable(hi).ok) {
        auto last = viable(hi);
        throw Infeasible("no viable d for the requested targets", last.reason);
    }
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (viable(mid).ok)
            hi = mid;
        else
            lo = mid + 1;
    }
    auto v = viable(lo);
    spec.d = lo;
    spec.n = v.n;
    spec.h = v.h;
    spec.audit.push_back("d=" + std::to_string(lo) + ": n=" + std::to_string(v.n) +
                         " h=" + std::to_string(v.h) + " mesh target " +
                         std::to_string(v.mesh_target) + " model range [" +
                         std::to_string(v.range_lo) + "," + std::to_string(v.range_hi) + "]");

    // Maximal p whose modeled oversubscription stays within the mesh target.
    int p_lo = std::max(2L, (v.n + static_cast<long>(lo) * lo - 1) /
                                (static_cast<long>(lo) * lo));
    spec.p = 0;
    for (int p = lo; p >= p_lo; --p) {
        double o = model_oversub(static_cast<int>(v.n), lo, p, v.h).oversub;
        if (o <= v.mesh_target) {
            spec.p = p;
            spec.predicted_mesh_oversub = o;
            break;
        }
    }
    if (spec.p == 0) {
        // target sits inside the range but above every evaluated point; take
        // the p with the smallest model value
        double best = 1e300;
        for (int p = p_lo; p <= lo; ++p) {
            double o = model_oversub(static_cast<int>(v.n), lo, p, v.h).oversub;
            if (o < best) {
                best = o;
                spec.p = p;
                spec.predicted_mesh_oversub = o;
            }
        }
    }
    spec.audit.push_back("p=" + std::to_string(spec.p) + " predicted mesh oversub " +
                         std::to_string(spec.predicted_mesh_oversub));
    spec.feasible = true;
    return spec;
}

FatTreeDesign fat_tree_design(long servers, int ports, double oversub) {
    if (oversub < 1) throw InfeasibleRatio("oversubscription must be at least 1:1");
    if (ports < 4 || ports % 2 != 0) throw InfeasibleRatio("need an even port count >= 4");
    double p3_4 = std::pow(static_cast<double>(ports), 3) / 4.0;
    if (static_cast<double>(servers) > p3_4)
        throw InfeasibleRatio("exceeds the non-blocking 3-tier ceiling of P^3/4 servers");

    FatTreeDesign ft;
    long per_tor = ports / 2;  // non-oversubscribed ToRs
    ft.tor = (servers + per_tor - 1) / per_tor;
    ft.agg_down_ports = ports * oversub / (1.0 + oversub);
    double up_ports = ports - ft.agg_down_ports;
    ft.agg = static_cast<long>(std::ceil(ft.tor * (ports / 2.0) / ft.agg_down_ports));
    ft.spine = static_cast<long>(std::ceil(ft.agg * up_ports / ports));
    ft.total = ft.tor + ft.agg + ft.spine;
    return ft;
}

double cost_reduction(long servers, int ports, double oversub, long ecmp_mem) {
    auto ft = fat_tree_design(servers, ports, oversub);
    auto mesh = design_fabric(servers, ports, oversub, 1.0, ecmp_mem);
    return 100.0 * (1.0 - static_cast<double>(mesh.n) / static_cast<double>(ft.total));
}

}  // namespace meshfab
