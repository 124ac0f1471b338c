#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "meshfab/topology.hpp"

namespace meshfab {

// Passive optical cross-connect: d_r router-facing ports of f_r fiber pairs
// and d_c inter-panel ports of f_c fiber pairs, with a fixed internal weave
// (r-port, fp) <-> (c-port, position). When d_c == f_r (and so f_c == d_r)
// the weave is full bipartite: every FP of an r-port lands on a distinct
// c-port and vice versa. Otherwise a balanced round-robin mapping is used.
//
// Weave variants (full-bipartite case only):
//   Spread - every c-port orders r-ports differently, so the ShuffleBack
//            bridge partner of a port differs per FP (maximum neighbor
//            diversity in the resolved graph).
//   Paired - c-ports that form a ShuffleBack FP pair share one ordering, so
//            a bridge that breaks during rebalancing re-forms through the
//            replacement panel instead of stranding the uplink.
struct ShuffleBoxSpec {
    enum class Weave { Spread, Paired };

    int d_r = 32, d_c = 4, f_r = 4, f_c = 32;
    Weave weave = Weave::Spread;
    bool full_bipartite = false;

    std::pair<int, int> r_to_c(int r, int fp) const;  // -> (c-port, position)
    std::pair<int, int> c_to_r(int c, int pos) const;

    int r_fp_count() const { return d_r * f_r; }

private:
    friend ShuffleBoxSpec make_shufflebox(int, int, int, int, ShuffleBoxSpec::Weave);
    std::vector<int> mult_, mult_inv_, off_;  // per-c-port affine weave
};

ShuffleBoxSpec make_shufflebox(int d_r, int d_c, int f_r, int f_c,
                               ShuffleBoxSpec::Weave weave = ShuffleBoxSpec::Weave::Spread);

struct PhysicalPlan {
    ShuffleBoxSpec spec;
    double alpha = 1.0;
    bool pair_aligned_trunks = false;
    std::uint64_t seed = 0;

    struct CPort {
        enum class State : std::uint8_t { ShuffleBacked, Trunked, Open };
        State state = State::ShuffleBacked;
        int peer_box = -1, peer_port = -1;
    };
    struct RPort {
        bool shuffleback = true;
        std::vector<int> occupant;  // per fp: attachment index or -1
    };
    struct Attachment {
        int router = -1, uplink = -1;
        int box = -1, rport = -1, fp = -1;
    };

    std::vector<int> room_of_box;
    std::vector<std::vector<int>> rooms;            // box ids per room
    std::vector<std::vector<CPort>> cports;         // [box][c]
    std::vector<std::vector<RPort>> rports;         // [box][r]
    std::vector<Attachment> attachments;
    std::vector<int> router_room;
    int router_count = 0;
    int uplinks_per_router = 0;

    // Optional phase partition of room 0: boxes per phase, in landing order.
    std::vector<std::vector<int>> phases;
    int current_phase = 0;

    int free_whole_rports(int room) const;  // untouched r-ports available for landing
    int trunk_count() const;
    int shuffleback_cport_count() const;
};

// R rooms of `boxes_per_room` ShuffleBoxes; trunk budgets follow
// alpha * d_c * C_i * C_j / C_total per panel pair (floor, remainders
// distributed in seeded order); all remaining ports carry ShuffleBacks.
PhysicalPlan plan_datacenter(int rooms, int boxes_per_room, const ShuffleBoxSpec& spec,
                             double alpha, std::uint64_t seed, bool pair_aligned = false);

// Lands `count` routers with `uplinks_per_router` uplinks each on seeded
// random untouched r-ports of the room's panel (whole ports; a port's
// ShuffleBack is removed on first attachment).
void land_routers(PhysicalPlan& plan, int room, int count, int uplinks_per_router,
                  std::uint64_t seed);

// Installs a new panel and rebalances trunk connectivity toward the
// proportional targets, breaking randomly selected existing connections.
void add_room(PhysicalPlan& plan, int boxes, std::uint64_t seed);

// Splits room 0 into landing phases. Phase c-ports interconnect when a phase
// fills, mirroring room addition at panel scale.
void phased_first_room(PhysicalPlan& plan, const std::vector<double>& phase_fractions,
                       std::uint64_t seed);

struct ResolvedEdge {
    int router_a = -1, router_b = -1;
    int uplink_a = -1, uplink_b = -1;  // attachment indices
    int connectors = 0;
    std::vector<int> rooms;  // room sequence across panels (>= 2 entries)
};

struct ResolveResult {
    Topology topo;
    std::vector<ResolvedEdge> edge_info;
    std::vector<int> unmatched_uplinks;   // attachment indices (open ends)
    std::vector<int> self_edge_uplinks;   // dropped self edges
    struct DisabledPath {
        int uplink;
        int connectors;
    };
    std::vector<DisabledPath> disabled_paths;
    double matched_fraction() const;
};

// Traces every uplink through weaves, ShuffleBacks and trunks. Paths that
// would exceed seven connectors are disabled and listed.
ResolveResult resolve_topology(const PhysicalPlan& plan);

int max_connectors_per_path();  // the optical budget (7)

// Router count + number of panel pairs joined by at least one trunk: the
// count of distinct physically-cabled endpoint pairs.
long endpoint_pair_count(const PhysicalPlan& plan);

// --- deployment timeline -----------------------------------------------

struct TimelineEvent {
    enum class Kind { PrepareRoom, Land };
    Kind kind = Kind::Land;
    int room = 0;
    int boxes = 0;    // PrepareRoom
    int routers = 0;  // Land
    int uplinks_per_router = 0;
};

struct TimelineConfig {
    ShuffleBoxSpec spec;
    double alpha = 1.0;
    bool pair_aligned = true;
    std::vector<TimelineEvent> events;
    std::vector<double> phase_fractions;  // applied to room 0 when non-empty
    int total_routers = 0;
};

// The standard grow-by-rooms schedule: prepare room k, land its routers one
// batch at a time, repeat.
TimelineConfig standard_timeline(int rooms, int boxes_per_room, int tors_per_room,
                                 int uplinks_per_tor, const ShuffleBoxSpec& spec,
                                 double alpha = 1.0, int batch = 1);

struct TimelinePoint {
    int event_index = 0;
    int routers_deployed = 0;
    double deployed_fraction = 0;
    double matched_fraction = 0;
};

std::vector<TimelinePoint> deployment_timeline(const TimelineConfig& config,
                                               std::uint64_t seed,
                                               PhysicalPlan* final_plan = nullptr);

// Structured text serialization ([rooms]/[boxes]/[trunks]/[shufflebacks]/
// [attachments] sections).
void save_plan(const PhysicalPlan& plan, std::ostream& out);
PhysicalPlan load_plan(std::istream& in);

}  // namespace meshfab
