#include "meshfab/models.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "meshfab/errors.hpp"
#include "meshfab/matching.hpp"
#include "meshfab/rng.hpp"
#include "meshfab/spraypoint.hpp"

namespace meshfab {

std::vector<std::string> regime_warnings(const ModelParams& mp) {
    std::vector<std::string> w;
    double lo = 2.0 * (std::log(static_cast<double>(mp.n)) + 5.0);
    if (mp.d < lo)
        w.push_back("d=" + std::to_string(mp.d) + " below regime floor 2(ln n + 5)=" +
                    std::to_string(lo));
    if (mp.d * 8 > mp.n)
        w.push_back("d is not small relative to n; tail bounds weaken");
    int l = mp.levels > 0 ? mp.levels : default_level_count(mp.n, mp.d, mp.p);
    double pmin = std::pow(static_cast<double>(mp.n) / (static_cast<double>(mp.d) * mp.d),
                           1.0 / l);
    if (mp.p < pmin)
        w.push_back("p=" + std::to_string(mp.p) + " below (n/d^2)^(1/l)=" +
                    std::to_string(pmin));
    if (mp.h >= mp.d) w.push_back("h should be much smaller than d");
    return w;
}

double model_edge_disjoint(int d, int p, int h, bool source_is_neighbor) {
    double dd = d, hh = h;
    if (!source_is_neighbor) return dd * (1.0 - std::exp(-hh));
    double alpha = 1.0 - static_cast<double>(p) / dd;
    return std::min(dd - p, dd * (1.0 - std::exp(-alpha * hh)));
}

std::map<int, double> model_path_length(int n, int d, int p, int levels) {
    std::map<int, double> f;
    double nn = n;
    f[1] = 1.0 / nn;
    double total = f[1];
    for (int i = 2; i <= levels + 2; ++i) {
        f[i] = std::pow(static_cast<double>(p), i - 2) * d / nn;
        total += f[i];
    }
    double lambda = std::pow(static_cast<double>(p), levels) * static_cast<double>(d) * d / nn;
    f[levels + 4] = std::exp(-lambda);
    total += f[levels + 4];
    f[levels + 3] = std::max(0.0, 1.0 - total);
    // Out-of-regime inputs can overshoot 1 before the remainder; renormalize.
    double sum = 0;
    for (auto& [len, v] : f) sum += v;
    for (auto& [len, v] : f) v /= sum;
    return f;
}

OversubBreakdown model_oversub(int n, int d, int p, int h, bool mu5_uses_sigma4) {
    int l = default_level_count(n, d, p);
    if (l > 1)
        throw NotModeled("oversubscription model covers the single-level regime only "
                         "(derived level count " + std::to_string(l) + ")");
    OversubBreakdown b;
    double nn = n, dd = d, pp = p, hh = h;
    b.mu2 = dd / nn;
    double m2 = b.mu2;
    b.phi3 = std::min(pp * m2, 1.0 - m2) * (1.0 - m2) * (1.0 - std::pow(4.0 * m2, hh));
    double q1 = std::pow(1.0 - b.phi3, 6.0);
    double q2 = std::pow(1.0 - b.phi3 * b.phi3, 3.0);
    b.kappa3 = q1 / 2.0 + q2 / 6.0 + 1.0 / 3.0;
    b.mu3 = b.phi3 * b.kappa3;
    double lambda = pp * dd * dd / nn;
    b.sigma4 = 1.0 - (pp + 1.0) * m2 - std::exp(-lambda);
    b.sigma5 = std::exp(-lambda);
    b.beta = 1.0 - std::pow(1.0 - (1.0 - 2.0 * m2) * (1.0 - std::pow(4.0 * m2, hh)), hh);
    b.mu4 = b.sigma4 * b.beta * (1.0 - b.mu2 - 2.0 * b.mu3) / 4.0;
    double pre5 = mu5_uses_sigma4 ? b.sigma4 : b.sigma5;
    b.mu5 = pre5 * (1.0 - b.mu2 - 2.0 * b.mu3 - 3.0 * b.mu4) / 5.0;
    auto pos = [](double x) { return std::max(x, 0.0); };
    double sum = pos(b.mu2) + pos(b.mu3) + pos(b.mu4) + pos(b.mu5);
    b.oversub = sum > 0 ? 1.0 / sum : std::numeric_limits<double>::infinity();
    return b;
}

double frieze_mellsted_root(int h) {
    if (h < 2) throw NoRoot("h must be at least 2");
    double hh = h;
    auto f = [&](double z) {
        return std::pow(z / hh, 1.0 / (hh - 1.0)) + std::exp(-z) - 1.0;
    };
    // f(h) = exp(-h) > 0; scan down from h for a sign change, then bisect to
    // the largest root.
    double hi = hh, lo = -1;
    const int kGrid = 4096;
    for (int i = 1; i <= kGrid; ++i) {
        double z = hh * (1.0 - static_cast<double>(i) / kGrid);
        if (z <= 0) break;
        if (f(z) < 0) {
            lo = z;
            break;
        }
        hi = z;
    }
    if (lo < 0) throw NoRoot("no sign change found below z=h");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double frieze_mellsted_fraction(int h) {
    double z = frieze_mellsted_root(h);
    double hh = h;
    return 2.0 - std::pow(1.0 - std::exp(-z), hh) - (1.0 + z) * std::exp(-z);
}

double random_matching_mu(int left, int right, int h, int trials, std::uint64_t seed) {
    if (left < 1 || right < 1) throw Error("matching sides must be non-empty");
    if (trials < 1) throw Error("need at least one trial");
    double acc = 0;
    std::vector<std::vector<int>> adj(left);
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(child_seed(seed, "random-match", static_cast<std::uint64_t>(trial)));
        for (auto& a : adj) {
            a.clear();
            for (int k = 0; k < h; ++k) a.push_back(rng.below_int(right));
        }
        acc += max_bipartite_matching(left, right, adj);
    }
    return acc / trials / right;
}

double incremental_avg_degree(double t, const std::vector<GrowthStage>& stages) {
    for (const auto& st : stages) {
        if (t > st.t1 && t <= st.t2 + 1e-12) {
            if (st.t1 <= 0) return st.d * t / st.t2;
            return st.d * (st.t1 / t + (t - st.t1) / st.t2);
        }
    }
    throw Error("time " + std::to_string(t) + " outside every stage");
}

double stage_min_degree(double t1, double t2, double d) {
    if (t1 >= t2) return d;
    double r = t1 / t2;
    return d * (2.0 * std::sqrt(r) - r);
}

TwoPhaseOptimum optimal_two_phase(double alpha) {
    if (alpha <= 0 || alpha >= 1) throw Error("alpha must lie in (0,1)");
    TwoPhaseOptimum o;
    double x = 1.0 - std::sqrt(1.0 - alpha);
    o.phase1 = x * x;
    o.beta_star = alpha * o.phase1;
    return o;
}

double oversub_length_lower_bound(const std::map<int, double>& delta) {
    double sum = 0, bound = 0;
    for (auto [len, frac] : delta) {
        if (frac < -1e-12) throw Error("negative flow fraction");
        sum += frac;
        bound += len * frac;
    }
    if (std::abs(sum - 1.0) > 1e-6) throw Error("flow fractions must sum to 1");
    return bound;
}

void dump_oversub_breakdown(const OversubBreakdown& b, std::ostream& out) {
    out << "mu2 " << b.mu2 << "\nmu3 " << b.mu3 << "\nmu4 " << b.mu4 << "\nmu5 " << b.mu5
        << "\nphi3 " << b.phi3 << "\nkappa3 " << b.kappa3 << "\nsigma4 " << b.sigma4
        << "\nsigma5 " << b.sigma5 << "\nbeta " << b.beta << "\noversub " << b.oversub
        << '\n';
}

}  // namespace meshfab
