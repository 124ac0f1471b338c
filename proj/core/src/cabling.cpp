#include "meshfab/cabling.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "meshfab/errors.hpp"
#include "meshfab/rng.hpp"

namespace meshfab {

namespace {

int mod_inverse(int a, int m) {
    int t = 0, new_t = 1, r = m, new_r = a % m;
    while (new_r != 0) {
        int q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw Error("weave multiplier not invertible");
    return ((t % m) + m) % m;
}

int coprime_odd(int start, int m) {
    int a = start | 1;
    for (int tries = 0; tries < 2 * m + 3; ++tries, a += 2) {
        int x = ((a - 1) % m) + 1;
        if (std::gcd(x, m) == 1) return x;
    }
    return 1;
}

}  // namespace

std::pair<int, int> ShuffleBoxSpec::r_to_c(int r, int fp) const {
    if (full_bipartite) return {fp, (mult_[fp] * r + off_[fp]) % d_r};
    int g = r * f_r + fp;
    return {g % d_c, g / d_c};
}

std::pair<int, int> ShuffleBoxSpec::c_to_r(int c, int pos) const {
    if (full_bipartite) {
        int r = static_cast<int>((static_cast<long long>(mult_inv_[c]) *
                                  ((pos - off_[c]) % d_r + d_r)) % d_r);
        return {r, c};
    }
    int g = pos * d_c + c;
    return {g / f_r, g % f_r};
}

ShuffleBoxSpec make_shufflebox(int d_r, int d_c, int f_r, int f_c, ShuffleBoxSpec::Weave weave) {
    if (d_r < 1 || d_c < 1 || f_r < 1 || f_c < 1)
        throw ProductMismatch("port and fiber-pair counts must be positive");
    if (d_r * f_r != d_c * f_c)
        throw ProductMismatch("d_r*f_r must equal d_c*f_c (" + std::to_string(d_r * f_r) +
                              " vs " + std::to_string(d_c * f_c) + ")");
    ShuffleBoxSpec s;
    s.d_r = d_r;
    s.d_c = d_c;
    s.f_r = f_r;
    s.f_c = f_c;
    s.weave = weave;
    s.full_bipartite = (d_c == f_r && f_c == d_r);
    if (s.full_bipartite) {
        s.mult_.resize(d_c);
        s.mult_inv_.resize(d_c);
        s.off_.resize(d_c);
        for (int c = 0; c < d_c; ++c) {
            int key = weave == ShuffleBoxSpec::Weave::Paired ? c / 2 : c;
            s.mult_[c] = coprime_odd(2 * key + 1, d_r);
            s.off_[c] = key % d_r;
            s.mult_inv_[c] = mod_inverse(s.mult_[c], d_r);
        }
    }
    return s;
}

int PhysicalPlan::free_whole_rports(int room) const {
    int count = 0;
    for (int b : rooms[room])
        for (const auto& rp : rports[b])
            if (rp.shuffleback) ++count;
    return count;
}

int PhysicalPlan::trunk_count() const {
    int count = 0;
    for (const auto& box : cports)
        for (const auto& cp : box)
            if (cp.state == CPort::State::Trunked) ++count;
    return count / 2;
}

int PhysicalPlan::shuffleback_cport_count() const {
    int count = 0;
    for (const auto& box : cports)
        for (const auto& cp : box)
            if (cp.state == CPort::State::ShuffleBacked) ++count;
    return count;
}

namespace {

void install_boxes(PhysicalPlan& plan, int room, int boxes) {
    for (int i = 0; i < boxes; ++i) {
        plan.room_of_box.push_back(room);
        plan.rooms[room].push_back(static_cast<int>(plan.room_of_box.size()) - 1);
        plan.cports.emplace_back(plan.spec.d_c);
        auto& rp = plan.rports.emplace_back(plan.spec.d_r);
        for (auto& p : rp) p.occupant.assign(plan.spec.f_r, -1);
    }
}

void connect_trunk(PhysicalPlan& plan, int box_a, int port_a, int box_b, int port_b) {
    auto& a = plan.cports[box_a][port_a];
    auto& b = plan.cports[box_b][port_b];
    a = {PhysicalPlan::CPort::State::Trunked, box_b, port_b};
    b = {PhysicalPlan::CPort::State::Trunked, box_a, port_a};
}

void disconnect_trunk(PhysicalPlan& plan, int box_a, int port_a) {
    auto& a = plan.cports[box_a][port_a];
    if (a.state != PhysicalPlan::CPort::State::Trunked) return;
    auto& b = plan.cports[a.peer_box][a.peer_port];
    b = {PhysicalPlan::CPort::State::ShuffleBacked, -1, -1};
    a = {PhysicalPlan::CPort::State::ShuffleBacked, -1, -1};
}

// Brings trunk connectivity over the given panel groups to the proportional
// targets alpha*d_c*C_i*C_j/C_total. Existing surplus connections are broken
// at random; missing connections are built from ShuffleBacked ports. When
// `aligned_new` is set, the last group's ports are consumed in ShuffleBack
// FP-pair units so its trunked set stays closed under pair bridging.
void rebalance_groups(PhysicalPlan& plan, const std::vector<std::vector<int>>& groups,
                      Rng& rng, bool aligned_new) {
    int g = static_cast<int>(groups.size());
    if (g < 2) return;
    double c_tot = 0;
    for (const auto& grp : groups) c_tot += static_cast<double>(grp.size());

    std::vector<int> group_of_box(plan.room_of_box.size(), -1);
    for (int i = 0; i < g; ++i)
        for (int b : groups[i]) group_of_box[b] = i;

    // Real-valued targets, floored, remainders handed out in seeded order
    // subject to each panel's port budget.
    std::map<std::pair<int, int>, int> target, current;
    std::vector<int> panel_load(g, 0), panel_cap(g);
    for (int i = 0; i < g; ++i)
        panel_cap[i] = plan.spec.d_c * static_cast<int>(groups[i].size());
    std::vector<std::pair<double, std::pair<int, int>>> rema;
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) {
            double t = plan.alpha * plan.spec.d_c * groups[i].size() * groups[j].size() / c_tot;
            int base = static_cast<int>(t);
            target[{i, j}] = base;
            panel_load[i] += base;
            panel_load[j] += base;
            rema.push_back({t - base, {i, j}});
        }
    double leftover = 0;
    for (auto& [frac, pr] : rema) leftover += frac;
    rng.shuffle(rema);
    int add = static_cast<int>(std::llround(leftover));
    for (std::size_t at = 0; add > 0 && at < 4 * rema.size(); ++at) {
        auto [i, j] = rema[at % rema.size()].second;
        if (panel_load[i] + 1 > panel_cap[i] || panel_load[j] + 1 > panel_cap[j]) continue;
        target[{i, j}] += 1;
        panel_load[i] += 1;
        panel_load[j] += 1;
        --add;
    }
    if (aligned_new)
        for (auto& [pr, t] : target)
            if (pr.second == g - 1) t &= ~1;  // whole FP-pair units only

    for (std::size_t b = 0; b < plan.cports.size(); ++b)
        for (int c = 0; c < plan.spec.d_c; ++c) {
            const auto& cp = plan.cports[b][c];
            if (cp.state != PhysicalPlan::CPort::State::Trunked) continue;
            int gi = group_of_box[b], gj = group_of_box[cp.peer_box];
            if (gi < 0 || gj < 0 || gi > gj) continue;
            if (gi == gj) continue;  // intra-group links are handled as removable below
            current[{gi, gj}]++;
        }

    // Shed surplus.
    for (auto& [pair, tgt] : target) {
        int cur = current.count(pair) ? current[pair] : 0;
        if (cur <= tgt) continue;
        std::vector<std::pair<int, int>> conns;
        for (int b : groups[pair.first])
            for (int c = 0; c < plan.spec.d_c; ++c) {
                const auto& cp = plan.cports[b][c];
                if (cp.state == PhysicalPlan::CPort::State::Trunked &&
                    group_of_box[cp.peer_box] == pair.second)
                    conns.push_back({b, c});
            }
        rng.shuffle(conns);
        for (int k = 0; k < cur - tgt && k < static_cast<int>(conns.size()); ++k)
            disconnect_trunk(plan, conns[k].first, conns[k].second);
    }

    // Port supplies. Old groups: seeded order over ShuffleBacked ports and
    // intra-group connections (broken on demand). New group: pair units.
    auto make_supply = [&](int gi, bool pair_units) {
        std::vector<std::pair<int, int>> ports;
        if (pair_units) {
            std::vector<std::pair<int, int>> units;
            for (int b : groups[gi])
                for (int q = 0; q < plan.spec.d_c / 2; ++q) {
                    int c0 = 2 * q, c1 = 2 * q + 1;
                    if (plan.cports[b][c0].state == PhysicalPlan::CPort::State::ShuffleBacked &&
                        plan.cports[b][c1].state == PhysicalPlan::CPort::State::ShuffleBacked)
                        units.push_back({b, q});
                }
            rng.shuffle(units);
            for (auto [b, q] : units) {
                ports.push_back({b, 2 * q});
                ports.push_back({b, 2 * q + 1});
            }
        } else {
            for (int b : groups[gi])
                for (int c = 0; c < plan.spec.d_c; ++c) {
                    const auto& cp = plan.cports[b][c];
                    if (cp.state == PhysicalPlan::CPort::State::ShuffleBacked ||
                        (cp.state == PhysicalPlan::CPort::State::Trunked &&
                         group_of_box[cp.peer_box] == gi))
                        ports.push_back({b, c});
                }
            rng.shuffle(ports);
        }
        return ports;
    };
    std::vector<std::vector<std::pair<int, int>>> supply(g);
    std::vector<std::size_t> cursor(g, 0);
    for (int i = 0; i < g; ++i)
        supply[i] = make_supply(i, aligned_new && i == g - 1);

    // avoid_box: the pass-through bridge of an FP-pair unit links its two far
    // ports strand-for-strand, so both landing in one box would weld a box to
    // itself (worst case an identity map, i.e. all self edges).
    auto take = [&](int gi, int avoid_box) -> std::pair<int, int> {
        for (int pass = 0; pass < 2; ++pass) {
            int avoid = pass == 0 ? avoid_box : -1;
            for (std::size_t probe = cursor[gi]; probe < supply[gi].size(); ++probe) {
                auto [b, c] = supply[gi][probe];
                if (b == avoid) continue;
                auto& cp = plan.cports[b][c];
                if (cp.state == PhysicalPlan::CPort::State::Trunked) {
                    if (group_of_box[cp.peer_box] != gi) continue;  // consumed meanwhile
                    disconnect_trunk(plan, b, c);
                }
                if (plan.cports[b][c].state != PhysicalPlan::CPort::State::ShuffleBacked)
                    continue;
                std::swap(supply[gi][probe], supply[gi][cursor[gi]]);
                ++cursor[gi];
                return {b, c};
            }
            if (avoid < 0) break;
        }
        throw CapacityExceeded("panel group " + std::to_string(gi) +
                               " has no spare c-ports for the requested trunk budget");
    };

    // Build up missing connections. For an aligned new panel, consume its
    // supply in whole FP-pair units and spread each unit's far ends across
    // different boxes.
    for (auto& [pr, tgt] : target) {
        int cur = 0;
        for (int b : groups[pr.first])
            for (int c = 0; c < plan.spec.d_c; ++c) {
                const auto& cp = plan.cports[b][c];
                if (cp.state == PhysicalPlan::CPort::State::Trunked &&
                    group_of_box[cp.peer_box] == pr.second)
                    ++cur;
            }
        bool unit_mode = aligned_new && pr.second == g - 1;
        for (int k = cur; k < tgt; ++k) {
            if (unit_mode && (tgt - k) % 2 == 0) {
                auto [ba, ca] = take(pr.first, -1);
                auto [bb, cb] = take(pr.second, -1);
                auto [ba2, ca2] = take(pr.first, ba);
                auto [bb2, cb2] = take(pr.second, -1);
                connect_trunk(plan, ba, ca, bb, cb);
                connect_trunk(plan, ba2, ca2, bb2, cb2);
                ++k;
            } else {
                auto [ba, ca] = take(pr.first, -1);
                auto [bb, cb] = take(pr.second, -1);
                connect_trunk(plan, ba, ca, bb, cb);
            }
        }
    }
}

}  // namespace

PhysicalPlan plan_datacenter(int rooms, int boxes_per_room, const ShuffleBoxSpec& spec,
                             double alpha, std::uint64_t seed, bool pair_aligned) {
    if (rooms < 1) throw MalformedPlan("need at least one room");
    if (boxes_per_room < 1) throw MalformedPlan("need at least one box per room");
    if (alpha <= 0 || alpha > 1) throw MalformedPlan("alpha must lie in (0,1]");
    PhysicalPlan plan;
    plan.spec = spec;
    plan.alpha = alpha;
    plan.pair_aligned_trunks = pair_aligned;
    plan.seed = seed;
    plan.rooms.resize(1);
    install_boxes(plan, 0, boxes_per_room);
    for (int r = 1; r < rooms; ++r)
        add_room(plan, boxes_per_room, child_seed(seed, "room", r));
    return plan;
}

void add_room(PhysicalPlan& plan, int boxes, std::uint64_t seed) {
    int room = static_cast<int>(plan.rooms.size());
    plan.rooms.emplace_back();
    install_boxes(plan, room, boxes);
    Rng rng(child_seed(seed, "rebalance", room));
    std::vector<std::vector<int>> groups(plan.rooms.begin(), plan.rooms.end());
    rebalance_groups(plan, groups, rng, plan.pair_aligned_trunks);
}

void phased_first_room(PhysicalPlan& plan, const std::vector<double>& phase_fractions,
                       std::uint64_t seed) {
    if (phase_fractions.empty()) throw EmptyPhase("no phases given");
    double sum = 0;
    for (double f : phase_fractions) {
        if (f <= 0) throw EmptyPhase("phase fractions must be positive");
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw EmptyPhase("phase fractions must sum to 1");
    if (plan.router_count > 0) throw MalformedPlan("phases must be set before landing");

    const auto& boxes = plan.rooms[0];
    Rng rng(child_seed(seed, "phase-split"));
    auto order = boxes;
    rng.shuffle(order);
    plan.phases.clear();
    std::size_t at = 0;
    double acc = 0;
    for (std::size_t i = 0; i < phase_fractions.size(); ++i) {
        acc += phase_fractions[i];
        std::size_t upto = i + 1 == phase_fractions.size()
                               ? order.size()
                               : static_cast<std::size_t>(std::llround(acc * order.size()));
        if (upto <= at) throw EmptyPhase("phase " + std::to_string(i) + " received no boxes");
        plan.phases.emplace_back(order.begin() + at, order.begin() + upto);
        at = upto;
    }
    plan.current_phase = 0;
}

namespace {

void integrate_phase(PhysicalPlan& plan, int next_phase, Rng& rng) {
    std::vector<std::vector<int>> groups(plan.phases.begin(),
                                         plan.phases.begin() + next_phase + 1);
    rebalance_groups(plan, groups, rng, plan.pair_aligned_trunks);
    plan.current_phase = next_phase;
}

}  // namespace

void land_routers(PhysicalPlan& plan, int room, int count, int uplinks_per_router,
                  std::uint64_t seed) {
    if (room < 0 || room >= static_cast<int>(plan.rooms.size()))
        throw MalformedPlan("room does not exist");
    if (plan.uplinks_per_router == 0)
        plan.uplinks_per_router = uplinks_per_router;
    else if (plan.uplinks_per_router != uplinks_per_router)
        throw MalformedPlan("uplink count per router must be uniform across the plan");
    int ports_per_router = (uplinks_per_router + plan.spec.f_r - 1) / plan.spec.f_r;

    Rng rng(child_seed(seed, "land", static_cast<std::uint64_t>(room)));
    bool phased = !plan.phases.empty() && room == 0;

    auto collect_free = [&]() {
        std::vector<std::pair<int, int>> free;
        const std::vector<int>& boxes = phased ? plan.phases[plan.current_phase]
                                               : plan.rooms[room];
        for (int b : boxes)
            for (int r = 0; r < plan.spec.d_r; ++r)
                if (plan.rports[b][r].shuffleback) free.push_back({b, r});
        return free;
    };

    auto free_ports = collect_free();
    rng.shuffle(free_ports);
    for (int i = 0; i < count; ++i) {
        while (static_cast<int>(free_ports.size()) < ports_per_router && phased &&
               plan.current_phase + 1 < static_cast<int>(plan.phases.size())) {
            integrate_phase(plan, plan.current_phase + 1, rng);
            free_ports = collect_free();
            rng.shuffle(free_ports);
        }
        if (static_cast<int>(free_ports.size()) < ports_per_router)
            throw CapacityExceeded("room " + std::to_string(room) + " has " +
                                   std::to_string(free_ports.size()) +
                                   " free r-ports, router needs " +
                                   std::to_string(ports_per_router));
        int router = plan.router_count++;
        plan.router_room.push_back(room);
        int uplink = 0;
        for (int p = 0; p < ports_per_router; ++p) {
            auto [b, r] = free_ports.back();
            free_ports.pop_back();
            auto& rp = plan.rports[b][r];
            rp.shuffleback = false;  // removed on first attachment
            for (int fp = 0; fp < plan.spec.f_r && uplink < uplinks_per_router; ++fp) {
                rp.occupant[fp] = static_cast<int>(plan.attachments.size());
                plan.attachments.push_back({router, uplink++, b, r, fp});
            }
        }
    }
}

int max_connectors_per_path() { return 7; }

ResolveResult resolve_topology(const PhysicalPlan& plan) {
    ResolveResult out;
    const auto& spec = plan.spec;
    const int budget = max_connectors_per_path();

    struct End {
        int box, port, fp;
        bool rside;
    };
    auto encode = [&](const End& e) {
        return (((static_cast<std::uint64_t>(e.box) << 12) | static_cast<unsigned>(e.port))
                << 13 |
                (static_cast<unsigned>(e.fp) << 1)) |
               (e.rside ? 1u : 0u);
    };

    enum class Outcome { Edge, Open, Disabled, Cycle };
    struct Trace {
        Outcome outcome;
        int terminal_attachment = -1;
        int connectors = 0;
        std::vector<int> rooms;
    };

    auto trace_from = [&](int att_index) {
        const auto& a = plan.attachments[att_index];
        Trace tr;
        tr.connectors = 1;  // the starting r-port
        tr.rooms.push_back(plan.room_of_box[a.box]);
        End cur{a.box, a.rport, a.fp, true};
        std::unordered_set<std::uint64_t> visited;
        while (true) {
            if (!visited.insert(encode(cur)).second) {
                tr.outcome = Outcome::Cycle;
                return tr;
            }
            if (cur.rside) {
                auto [c, pos] = spec.r_to_c(cur.port, cur.fp);
                cur = {cur.box, c, pos, false};
            } else {
                auto [r, fp] = spec.c_to_r(cur.port, cur.fp);
                cur = {cur.box, r, fp, true};
            }
            if (cur.rside) {
                const auto& rp = plan.rports[cur.box][cur.port];
                if (rp.occupant[cur.fp] >= 0) {
                    if (++tr.connectors > budget) {
                        tr.outcome = Outcome::Disabled;
                        return tr;
                    }
                    tr.outcome = Outcome::Edge;
                    tr.terminal_attachment = rp.occupant[cur.fp];
                    return tr;
                }
                if (rp.shuffleback) {
                    if (++tr.connectors > budget) {
                        tr.outcome = Outcome::Disabled;
                        return tr;
                    }
                    int partner = cur.fp ^ 1;
                    if (partner >= spec.f_r) {  // odd fp count: unpaired strand
                        tr.outcome = Outcome::Open;
                        return tr;
                    }
                    cur.fp = partner;
                    continue;
                }
                tr.outcome = Outcome::Open;  // bare port, no ShuffleBack
                return tr;
            }
            const auto& cp = plan.cports[cur.box][cur.port];
            switch (cp.state) {
                case PhysicalPlan::CPort::State::Trunked: {
                    tr.connectors += 2;  // a plug at each end of the trunk
                    if (tr.connectors > budget) {
                        tr.outcome = Outcome::Disabled;
                        return tr;
                    }
                    cur = {cp.peer_box, cp.peer_port, cur.fp, false};
                    tr.rooms.push_back(plan.room_of_box[cur.box]);
                    break;
                }
                case PhysicalPlan::CPort::State::ShuffleBacked: {
                    if (++tr.connectors > budget) {
                        tr.outcome = Outcome::Disabled;
                        return tr;
                    }
                    int partner = cur.fp ^ 1;
                    if (partner >= spec.f_c) {
                        tr.outcome = Outcome::Open;
                        return tr;
                    }
                    cur.fp = partner;
                    break;
                }
                case PhysicalPlan::CPort::State::Open:
                    tr.outcome = Outcome::Open;
                    return tr;
            }
        }
    };

    std::vector<Topology::Edge> edges;
    for (std::size_t i = 0; i < plan.attachments.size(); ++i) {
        auto tr = trace_from(static_cast<int>(i));
        switch (tr.outcome) {
            case Outcome::Cycle:
                throw MalformedPlan("passive trace revisited a fiber endpoint");
            case Outcome::Open:
                out.unmatched_uplinks.push_back(static_cast<int>(i));
                break;
            case Outcome::Disabled:
                out.disabled_paths.push_back({static_cast<int>(i), tr.connectors});
                break;
            case Outcome::Edge: {
                int j = tr.terminal_attachment;
                int ra = plan.attachments[i].router;
                int rb = plan.attachments[j].router;
                if (ra == rb) {
                    out.self_edge_uplinks.push_back(static_cast<int>(i));
                    break;
                }
                if (static_cast<int>(i) < j) {
                    ResolvedEdge e;
                    e.router_a = ra;
                    e.router_b = rb;
                    e.uplink_a = static_cast<int>(i);
                    e.uplink_b = j;
                    e.connectors = tr.connectors;
                    e.rooms = tr.rooms;
                    edges.emplace_back(std::min(ra, rb), std::max(ra, rb));
                    out.edge_info.push_back(std::move(e));
                }
                break;
            }
        }
    }
    out.topo = Topology::from_edges(plan.router_count, plan.uplinks_per_router,
                                    std::move(edges), /*simple=*/false);
    return out;
}

double ResolveResult::matched_fraction() const {
    std::size_t total = 2 * edge_info.size() + unmatched_uplinks.size() +
                        self_edge_uplinks.size() + disabled_paths.size();
    if (total == 0) return 0;
    return static_cast<double>(2 * edge_info.size()) / static_cast<double>(total);
}

long endpoint_pair_count(const PhysicalPlan& plan) {
    std::set<std::pair<int, int>> panel_pairs;
    for (std::size_t b = 0; b < plan.cports.size(); ++b)
        for (const auto& cp : plan.cports[b])
            if (cp.state == PhysicalPlan::CPort::State::Trunked) {
                int ra = plan.room_of_box[b], rb = plan.room_of_box[cp.peer_box];
                if (ra != rb) panel_pairs.insert({std::min(ra, rb), std::max(ra, rb)});
            }
    return plan.router_count + static_cast<long>(panel_pairs.size());
}

TimelineConfig standard_timeline(int rooms, int boxes_per_room, int tors_per_room,
                                 int uplinks_per_tor, const ShuffleBoxSpec& spec,
                                 double alpha, int batch) {
    TimelineConfig cfg;
    cfg.spec = spec;
    cfg.alpha = alpha;
    cfg.total_routers = rooms * tors_per_room;
    for (int r = 0; r < rooms; ++r) {
        cfg.events.push_back({TimelineEvent::Kind::PrepareRoom, r, boxes_per_room, 0, 0});
        for (int landed = 0; landed < tors_per_room; landed += batch) {
            int n = std::min(batch, tors_per_room - landed);
            cfg.events.push_back({TimelineEvent::Kind::Land, r, 0, n, uplinks_per_tor});
        }
    }
    return cfg;
}

std::vector<TimelinePoint> deployment_timeline(const TimelineConfig& config,
                                               std::uint64_t seed, PhysicalPlan* final_plan) {
    std::vector<TimelinePoint> curve;
    PhysicalPlan plan;
    bool started = false;
    int idx = 0;
    for (const auto& ev : config.events) {
        ++idx;
        if (ev.kind == TimelineEvent::Kind::PrepareRoom) {
            if (!started) {
                plan = plan_datacenter(1, ev.boxes, config.spec, config.alpha,
                                       child_seed(seed, "plan"), config.pair_aligned);
                if (!config.phase_fractions.empty())
                    phased_first_room(plan, config.phase_fractions,
                                      child_seed(seed, "phases"));
                started = true;
            } else {
                add_room(plan, ev.boxes, child_seed(seed, "add-room", ev.room));
            }
            continue;
        }
        land_routers(plan, ev.room, ev.routers, ev.uplinks_per_router,
                     child_seed(seed, "land-event", idx));
        auto res = resolve_topology(plan);
        TimelinePoint pt;
        pt.event_index = idx - 1;
        pt.routers_deployed = plan.router_count;
        pt.deployed_fraction = config.total_routers > 0
                                   ? static_cast<double>(plan.router_count) / config.total_routers
                                   : 0.0;
        pt.matched_fraction = res.matched_fraction();
        curve.push_back(pt);
    }
    if (final_plan) *final_plan = std::move(plan);
    return curve;
}

void save_plan(const PhysicalPlan& plan, std::ostream& out) {
    out << "[spec] " << plan.spec.d_r << ' ' << plan.spec.d_c << ' ' << plan.spec.f_r << ' '
        << plan.spec.f_c << ' '
        << (plan.spec.weave == ShuffleBoxSpec::Weave::Paired ? "paired" : "spread") << ' '
        << plan.alpha << ' ' << (plan.pair_aligned_trunks ? 1 : 0) << ' '
        << plan.uplinks_per_router << '\n';
    out << "[rooms]\n";
    for (std::size_t r = 0; r < plan.rooms.size(); ++r) {
        out << r;
        for (int b : plan.rooms[r]) out << ' ' << b;
        out << '\n';
    }
    out << "[trunks]\n";
    for (std::size_t b = 0; b < plan.cports.size(); ++b)
        for (std::size_t c = 0; c < plan.cports[b].size(); ++c) {
            const auto& cp = plan.cports[b][c];
            if (cp.state == PhysicalPlan::CPort::State::Trunked &&
                (static_cast<int>(b) < cp.peer_box ||
                 (static_cast<int>(b) == cp.peer_box && static_cast<int>(c) < cp.peer_port)))
                out << b << ' ' << c << ' ' << cp.peer_box << ' ' << cp.peer_port << '\n';
        }
    out << "[shufflebacks]\n";
    for (std::size_t b = 0; b < plan.cports.size(); ++b)
        for (std::size_t c = 0; c < plan.cports[b].size(); ++c)
            if (plan.cports[b][c].state == PhysicalPlan::CPort::State::ShuffleBacked)
                out << "c " << b << ' ' << c << '\n';
    for (std::size_t b = 0; b < plan.rports.size(); ++b)
        for (std::size_t r = 0; r < plan.rports[b].size(); ++r)
            if (plan.rports[b][r].shuffleback) out << "r " << b << ' ' << r << '\n';
    out << "[attachments]\n";
    for (const auto& a : plan.attachments)
        out << a.router << ' ' << a.uplink << ' ' << a.box << ' ' << a.rport << ' ' << a.fp
            << '\n';
}

PhysicalPlan load_plan(std::istream& in) {
    PhysicalPlan plan;
    std::string line, section;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == '[') {
            std::string head;
            ls >> head;
            if (head.rfind("[spec]", 0) == 0) {
                int d_r, d_c, f_r, f_c, aligned, upr;
                std::string weave;
                double alpha;
                ls >> d_r >> d_c >> f_r >> f_c >> weave >> alpha >> aligned >> upr;
                plan.spec = make_shufflebox(d_r, d_c, f_r, f_c,
                                            weave == "paired" ? ShuffleBoxSpec::Weave::Paired
                                                              : ShuffleBoxSpec::Weave::Spread);
                plan.alpha = alpha;
                plan.pair_aligned_trunks = aligned != 0;
                plan.uplinks_per_router = upr;
                section = "spec";
            } else {
                section = head.substr(1, head.size() - 2);
            }
            continue;
        }
        std::istringstream fs(line);
        if (section == "rooms") {
            int room, box;
            fs >> room;
            while (fs >> box) {
                while (static_cast<int>(plan.rooms.size()) <= room) plan.rooms.emplace_back();
                while (static_cast<int>(plan.room_of_box.size()) <= box) {
                    plan.room_of_box.push_back(-1);
                    plan.cports.emplace_back(plan.spec.d_c);
                    auto& rp = plan.rports.emplace_back(plan.spec.d_r);
                    for (auto& p : rp) p.occupant.assign(plan.spec.f_r, -1);
                }
                plan.room_of_box[box] = room;
                plan.rooms[room].push_back(box);
            }
        } else if (section == "trunks") {
            int ba, ca, bb, cb;
            fs >> ba >> ca >> bb >> cb;
            connect_trunk(plan, ba, ca, bb, cb);
        } else if (section == "shufflebacks") {
            char kind;
            int b, p;
            fs >> kind >> b >> p;
            // ShuffleBacked is the default state; entries are accepted for
            // round-tripping but imply no change for c, and r is default too.
            (void)kind;
            (void)b;
            (void)p;
        } else if (section == "attachments") {
            PhysicalPlan::Attachment a;
            fs >> a.router >> a.uplink >> a.box >> a.rport >> a.fp;
            if (a.box < 0 || a.box >= static_cast<int>(plan.rports.size()))
                throw MalformedPlan("attachment references unknown box");
            auto& rp = plan.rports[a.box][a.rport];
            rp.shuffleback = false;
            rp.occupant[a.fp] = static_cast<int>(plan.attachments.size());
            plan.attachments.push_back(a);
            plan.router_count = std::max(plan.router_count, a.router + 1);
        }
    }
    plan.router_room.assign(plan.router_count, 0);
    for (const auto& a : plan.attachments) plan.router_room[a.router] = plan.room_of_box[a.box];
    return plan;
}

}  // namespace meshfab
