#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include "meshfab/topology.hpp"

namespace meshfab {

// Per-destination level structure. Level codes: 0..levels are waypoint levels
// (0 = neighbors of the destination), levels+1 the inner ring, levels+2 the
// outer ring; the destination itself carries kDestination.
struct LevelAssignment {
    static constexpr std::uint8_t kDestination = 255;

    int destination = -1;
    int p = 0;
    int levels = 1;  // number of waypoint levels beyond level 0
    std::uint64_t key = 0;

    std::vector<std::vector<int>> waypoint_levels;  // [0..levels]
    std::vector<int> inner_ring;
    std::vector<int> outer_ring;
    std::vector<std::uint8_t> level_of;

    std::vector<int> short_selectors;  // nodes that found fewer than p candidates

    std::uint8_t inner_ring_code() const { return static_cast<std::uint8_t>(levels + 1); }
    std::uint8_t outer_ring_code() const { return static_cast<std::uint8_t>(levels + 2); }
    bool is_waypoint(int v) const { return level_of[v] <= levels; }
};

// Forwarding DAG: each node's ordered parent list (at most h).
struct PointingGraph {
    int destination = -1;
    int h = 1;
    std::vector<std::vector<int>> parents;
    std::vector<int> ir_distance;      // BFS hops to the inner ring (full graph)
    bool or_multihop = false;          // some outer-ring node is not adjacent to the inner ring
    std::vector<int> short_parent_nodes;
};

inline int default_level_count(int n, int d, int p) {
    // max(1, ceil(log_p(n / 2d^2)))
    double arg = static_cast<double>(n) / (2.0 * d * d);
    if (arg <= 1.0) return 1;
    double l = std::log(arg) / std::log(static_cast<double>(p));
    int li = static_cast<int>(std::ceil(l - 1e-12));
    return li < 1 ? 1 : li;
}

// Bundle of the per-destination routing parameters.
struct SpraypointConfig {
    int p = 4;
    int h = 2;
    int levels = 0;  // 0 = derive
    std::uint64_t key = 0x6d657368ULL;
    int resolved_levels(int n, int d) const {
        return levels > 0 ? levels : default_level_count(n, d, p);
    }
};

// Optional candidate scorer for biased selection: lower primary score wins,
// hash breaks ties. Default (null) is pure keyed-hash ranking.
using CandidateScorer = std::function<std::uint64_t(int selector, int candidate)>;

LevelAssignment compute_levels(const Topology& topo, int t, int p, int levels,
                               std::uint64_t key, const CandidateScorer& scorer = nullptr);

// ir_parents_any_waypoint switches inner-ring parents from "top waypoint level
// only" to "any waypoint excluding level 0" (differs only when levels > 1).
PointingGraph build_pointing_graph(const Topology& topo, const LevelAssignment& levels,
                                   int h, std::uint64_t key,
                                   bool ir_parents_any_waypoint = false);

std::vector<int> spray_set(const Topology& topo, int s);

struct SprayPath {
    int spray = -1;               // the neighbor the packet was sprayed to
    std::vector<int> nodes;       // s, spray, ..., t
    int length() const { return static_cast<int>(nodes.size()) - 1; }
};

// All Spraypoint paths for (s, t): per spray neighbor, every parent-choice
// chain (capped at max_paths).
std::vector<SprayPath> enumerate_paths(const Topology& topo, const LevelAssignment& levels,
                                       const PointingGraph& pointing, int s, int t,
                                       std::size_t max_paths = 100000);

// Empirical path-length distribution over uniformly sampled
// (source, spray choice, destination) triples. Keys into per-destination
// caches internally; deterministic for a fixed seed.
std::map<int, double> path_length_distribution(const Topology& topo, int p, int h, int levels,
                                               std::uint64_t key, long sample_pairs,
                                               std::uint64_t seed);

// Text dumps (External interface formats).
void dump_levels(const LevelAssignment& la, std::ostream& out);
void dump_pointing(const PointingGraph& pg, std::ostream& out);

}  // namespace meshfab
