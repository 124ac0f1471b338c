#include "meshfab/spectral.hpp"

#include <cmath>
#include <vector>

#include "meshfab/errors.hpp"
#include "meshfab/rng.hpp"

namespace meshfab {

namespace {

// y = D^{-1/2} A D^{-1/2} x for the multigraph (parallel edges add weight).
void apply_normalized(const Topology& topo, const std::vector<double>& inv_sqrt_deg,
                      const std::vector<double>& x, std::vector<double>& y) {
    int n = topo.node_count();
    for (int v = 0; v < n; ++v) y[v] = 0.0;
    for (auto [u, v] : topo.edges()) {
        double w = inv_sqrt_deg[u] * inv_sqrt_deg[v];
        if (u == v) {
            y[u] += 2.0 * w * x[u];  // a self-loop contributes both endpoints
        } else {
            y[u] += w * x[v];
            y[v] += w * x[u];
        }
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

double spectral_gap(const Topology& topo, double tolerance) {
    SpectralOptions opts;
    opts.tolerance = tolerance;
    return spectral_gap(topo, opts);
}

double spectral_gap(const Topology& topo, const SpectralOptions& opts) {
    int n = topo.node_count();
    if (n < 2) throw Disconnected("need at least two nodes");
    if (!is_connected(topo)) throw Disconnected("topology is disconnected");

    std::vector<double> inv_sqrt_deg(n);
    for (int v = 0; v < n; ++v) {
        int deg = topo.node_degree(v);
        if (deg == 0) throw Disconnected("isolated node");
        inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(deg));
    }

    // Top eigenvector of the normalized operator is D^{1/2} 1 with eigenvalue 1.
    std::vector<double> top(n);
    for (int v = 0; v < n; ++v) top[v] = std::sqrt(static_cast<double>(topo.node_degree(v)));
    double tn = std::sqrt(dot(top, top));
    for (auto& t : top) t /= tn;

    Rng rng(child_seed(topo.seed(), "spectral-start"));
    std::vector<double> x(n), y(n);
    for (auto& xi : x) xi = rng.next_double() - 0.5;
    auto deflate = [&](std::vector<double>& v) {
        double c = dot(v, top);
        for (int i = 0; i < n; ++i) v[i] -= c * top[i];
    };
    deflate(x);
    double norm = std::sqrt(dot(x, x));
    if (norm == 0) {
        x[0] = 1;
        deflate(x);
        norm = std::sqrt(dot(x, x));
    }
    for (auto& xi : x) xi /= norm;

    // |lambda2| estimated from the norm growth ratio; this converges even when
    // the dominant deflated eigenvalue is negative (bipartite case).
    double est = 0, prev = -1;
    int stable = 0;
    for (int it = 0; it < opts.max_iters; ++it) {
        apply_normalized(topo, inv_sqrt_deg, x, y);
        deflate(y);
        double ynorm = std::sqrt(dot(y, y));
        if (ynorm < 1e-300) return 0.0;  // complement is nilpotent (e.g. K_2)
        est = ynorm;  // since x has unit norm
        for (int i = 0; i < n; ++i) x[i] = y[i] / ynorm;
        if (prev >= 0 && std::abs(est - prev) <= opts.tolerance * std::max(est, 1e-30)) {
            if (++stable >= opts.stable_iters) return est;
        } else {
            stable = 0;
        }
        prev = est;
    }
    return est;  // best effort after the iteration budget
}

}  // namespace meshfab
