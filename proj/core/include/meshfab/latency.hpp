#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "meshfab/cabling.hpp"
#include "meshfab/spraypoint.hpp"
#include "meshfab/topology.hpp"

namespace meshfab {

// Rooms sit on a line across the span; racks form a uniform grid inside each
// room; the shuffle panel sits at the room center. Cable runs are rectilinear
// with a fixed tray drop at each end.
struct Geometry {
    double span_m = 300.0;
    int rooms = 10;
    double room_depth_m = 80.0;
    double tray_drop_m = 5.0;
    int rack_columns = 5;  // per room; rows derived from occupancy

    double room_width() const { return span_m / rooms; }
    double room_center_x(int room) const { return (room + 0.5) * room_width(); }
    double room_dist(int a, int b) const {
        double d = room_center_x(a) - room_center_x(b);
        return d < 0 ? -d : d;
    }
};

struct LatencyParams {
    double ns_per_m = 5.0;
    double per_hop_switch_ns = 0.0;
    double transmission_ns = 700.0;  // per hop, reference packet
};

// Node placement plus (optionally) per-edge panel routes from a resolved plan.
class FabricLayout {
public:
    static FabricLayout from_topology(const Topology& topo, const Geometry& geom);
    static FabricLayout from_plan(const PhysicalPlan& plan, const ResolveResult& resolved,
                                  const Geometry& geom);

    const Geometry& geometry() const { return geom_; }
    int room_of(int node) const { return room_of_[node]; }
    int node_count() const { return static_cast<int>(room_of_.size()); }

    double rack_to_panel_m(int node) const;
    // Cable length of the hop u-v (uses the resolved trunk route when known,
    // otherwise the direct room-to-room estimate).
    double hop_length_m(int u, int v) const;

private:
    Geometry geom_;
    std::vector<int> room_of_;
    std::vector<int> slot_of_;  // rack slot within the room
    std::vector<int> room_population_;
    // resolved routes keyed by (min(u,v), max(u,v)); -1 entries absent
    std::vector<std::pair<std::uint64_t, double>> edge_trunk_m_;  // sorted
    bool has_edge_routes_ = false;

    double trunk_route_m(int u, int v) const;
};

double path_latency(std::span<const int> path, const FabricLayout& layout,
                    const LatencyParams& params);

struct PercentileTable {
    double p10 = 0, p50 = 0, p90 = 0, mean = 0;
};

// Per-pair latency is the expectation over uniform spraying and uniform
// parent choices of the Spraypoint path latency.
PercentileTable latency_distribution(const Topology& topo, const FabricLayout& layout,
                                     const LatencyParams& params, const SpraypointConfig& cfg,
                                     int sample_pairs, std::uint64_t seed,
                                     bool biased_waypoints = false);

// Waypoint selection biased toward rooms near the destination: candidates are
// ranked by room_dist(candidate, selector) + room_dist(selector, destination)
// before hash tie-breaking.
LevelAssignment biased_levels(const Topology& topo, int t, int p, int levels,
                              std::uint64_t key, const FabricLayout& layout);

// Four-tier fat-tree reference: two-tier aggregation pods at room centers,
// spines in the middle of the span; ECMP shortest paths.
PercentileTable fat_tree_latency_baseline(int tors, const Geometry& geom,
                                          const LatencyParams& params, int sample_pairs,
                                          std::uint64_t seed);

}  // namespace meshfab
