#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace meshfab {

struct ModelParams {
    int n = 1000;
    int d = 64;
    int p = 4;
    int h = 2;
    int levels = 0;  // 0 = derive from (n, d, p)
};

// Soft operating-regime checks; violations degrade accuracy but never throw.
std::vector<std::string> regime_warnings(const ModelParams& mp);

// Expected edge-disjoint path count between a pair, closed form.
double model_edge_disjoint(int d, int p, int h, bool source_is_neighbor);

// Closed-form path-length distribution over lengths 1..levels+4. The
// length levels+3 share is the clamped remainder; the result always sums to 1.
std::map<int, double> model_path_length(int n, int d, int p, int levels);

struct OversubBreakdown {
    double mu2 = 0, mu3 = 0, mu4 = 0, mu5 = 0;
    double phi3 = 0, kappa3 = 0, sigma4 = 0, sigma5 = 0, beta = 0;
    double oversub = 0;
};

// Closed-form mesh oversubscription for the single-waypoint-level regime.
// Throws NotModeled when the derived level count exceeds 1.
// mu5_uses_sigma4 switches the mu5 prefactor to sigma4 (alternate variant).
OversubBreakdown model_oversub(int n, int d, int p, int h, bool mu5_uses_sigma4 = false);

// Limit fraction of the expected maximum matching mu(d,d;h)/d for d -> inf:
// solves (z/h)^(1/(h-1)) + exp(-z) - 1 = 0 for the largest root z*, then
// returns 2 - (1-exp(-z*))^h - (1+z*)exp(-z*). (The additive constant is
// solved with the opposite sign of one printed source, which has no
// non-negative root; this form reproduces the known 0.838 / 0.979 values.)
double frieze_mellsted_fraction(int h);
double frieze_mellsted_root(int h);  // z*

// Monte-Carlo estimate of mu(left, right; h) / right: expected maximum
// matching when each left node picks h uniform right neighbors with
// replacement.
double random_matching_mu(int left, int right, int h, int trials, std::uint64_t seed);

struct GrowthStage {
    double t1 = 0, t2 = 1;  // stage covers (t1, t2]
    double d = 1;           // full per-router degree
};

// Average fabric degree at time t for a staged deployment.
double incremental_avg_degree(double t, const std::vector<GrowthStage>& stages);

// Minimum of the stage-average-degree curve over a stage (t1 > 0).
double stage_min_degree(double t1, double t2, double d);

struct TwoPhaseOptimum {
    double beta_star = 0;  // earliest time the alpha*d bar can be met
    double phase1 = 0;     // optimal first-phase size (fraction of the room)
};
TwoPhaseOptimum optimal_two_phase(double alpha);

// Lower bound on oversubscription from the flow-length profile: sum(i * delta_i).
double oversub_length_lower_bound(const std::map<int, double>& delta);

// Labeled key-value dump of all model intermediates (CLI-facing audit output).
void dump_oversub_breakdown(const OversubBreakdown& b, std::ostream& out);

}  // namespace meshfab
