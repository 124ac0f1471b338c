#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "meshfab/spraypoint.hpp"
#include "meshfab/topology.hpp"
#include "meshfab/traffic.hpp"

namespace meshfab {

// Directed unit-capacity graph for one source-destination pair: every arc out
// of s (spraying) plus all parent arcs reachable from s's neighborhood.
struct SprayGraph {
    int s = -1, t = -1;
    int node_count = 0;
    std::vector<std::pair<int, int>> arcs;
};

SprayGraph build_spraypoint_graph(const Topology& topo, const LevelAssignment& levels,
                                  const PointingGraph& pointing, int s, int t);

// Unit-capacity max-flow value s -> t; equals the number of arc-disjoint paths.
int edge_disjoint_count(const SprayGraph& g);

// Maximum matching in the descendant bipartite graph D_S between S (a subset
// of the inner ring) and the destination's neighbors; on premise instances it
// equals the synthetic-source min cut.
int matching_mincut_oracle(const Topology& topo, const LevelAssignment& levels,
                           const PointingGraph& pointing, const std::vector<int>& S, int t);

// One commodity of the concurrent-flow problem. Routing is constrained either
// to the pair's Spraypoint forwarding structure or to an explicit path list.
struct Commodity {
    int s = -1, t = -1;
    double demand = 1.0;                       // raw units (arc capacity = 1)
    const PointingGraph* pointing = nullptr;   // Spraypoint universe
    std::vector<std::vector<int>> paths;       // explicit universe (e.g. k-shortest)
};

struct ConcurrentFlowResult {
    double lambda = 0;        // common deliverable fraction, capped at 1
    double r = 0;             // oversubscription: max(congestion, 1)
    double congestion = 0;    // worst arc load when demands route in full
    double eps = 0;           // approximation slack driving chunking and stopping
    double dual_gap = 0;      // gap to the length-based lower bound (valid, often loose)
    int rounds = 0;           // phases run
    double max_arc_load = 0;  // after scaling; <= 1 by construction
    std::map<int, double> delta;              // flow fraction by path length
    std::vector<std::pair<std::pair<int, int>, double>> per_edge_load;
};

// (1-eps)-approximate maximum concurrent flow by iterated best-response path
// routing against exponential arc penalties, with an LP-duality stopping
// certificate. Fully combinatorial and deterministic.
ConcurrentFlowResult max_concurrent_flow(const Topology& topo,
                                         const std::vector<Commodity>& commodities,
                                         double eps, int max_rounds = 20000);

struct MatchingOversubRow {
    int matching_id = 0;
    double r = 0;
    std::map<int, double> delta;
};

struct OversubResult {
    double worst_r = 0, best_r = 0, mean_r = 0;
    std::vector<MatchingOversubRow> rows;
};

// Worst oversubscription over seeded random perfect matchings routed on
// Spraypoint paths.
OversubResult oversubscription(const Topology& topo, const SpraypointConfig& cfg,
                               int num_matchings, double eps, std::uint64_t seed);

// Concurrent flow for one demand matrix routed on Spraypoint paths.
ConcurrentFlowResult route_matrix_spraypoint(const Topology& topo, const SpraypointConfig& cfg,
                                             const TrafficMatrix& matrix, double eps);

// Same matrix routed on k-shortest-path lists.
ConcurrentFlowResult route_matrix_ksp(const Topology& topo, const TrafficMatrix& matrix,
                                      int k, double eps);

struct RoutingSchemeReport {
    std::string scheme;
    std::vector<int> edp;     // per sampled pair
    double median_edp = 0;
    double oversub_r = 0;     // on the shared matching set
};

struct CompareResult {
    std::vector<std::pair<int, int>> pairs;
    std::vector<RoutingSchemeReport> schemes;
};

// Per-scheme edge-disjoint-path counts over shared sampled pairs plus
// oversubscription on a shared random matching. Scheme names: "spraypoint"
// or "ksp(<k>)".
CompareResult compare_routing(const Topology& topo, const SpraypointConfig& cfg,
                              const std::vector<std::string>& schemes, int sample_pairs,
                              double eps, std::uint64_t seed);

}  // namespace meshfab
