// meshfab: reproducible experiment driver for random-mesh fabric studies.
// Every stochastic subcommand takes an explicit --seed and emits CSV whose
// header comment carries the full parameter record.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "meshfab/cabling.hpp"
#include "meshfab/rng.hpp"
#include "meshfab/design.hpp"
#include "meshfab/errors.hpp"
#include "meshfab/flow.hpp"
#include "meshfab/ksp.hpp"
#include "meshfab/latency.hpp"
#include "meshfab/models.hpp"
#include "meshfab/spectral.hpp"
#include "meshfab/spraypoint.hpp"
#include "meshfab/topology.hpp"
#include "meshfab/traffic.hpp"

namespace {

constexpr const char* kVersion = "meshfab 0.1.0";

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw meshfab::Error("cannot open output file " + path);
    return out;
}

void header(std::ostream& out, const std::string& sub, const std::string& params) {
    out << "# " << kVersion << " subcommand=" << sub << ' ' << params << '\n';
}

struct TopoArgs {
    int n = 1000, d = 64;
    std::uint64_t seed = 1;
    std::string file;

    void attach(CLI::App* app) {
        app->add_option("--n", n, "node count");
        app->add_option("--d", d, "uplink degree");
        app->add_option("--seed", seed, "build seed");
        app->add_option("--topo", file, "load a topology file instead of building");
    }
    meshfab::Topology get() const {
        if (!file.empty()) return meshfab::load_topology(file);
        return meshfab::build_configuration_graph(n, d, seed);
    }
    std::string describe() const {
        std::ostringstream s;
        if (!file.empty())
            s << "topo=" << file;
        else
            s << "n=" << n << " d=" << d << " seed=" << seed;
        return s.str();
    }
};

int cmd_build(const TopoArgs& ta, bool simple, const std::string& out_path, bool with_gap) {
    auto topo = simple ? meshfab::build_configuration_graph(ta.n, ta.d, ta.seed, true)
                       : meshfab::build_configuration_graph(ta.n, ta.d, ta.seed, false);
    if (!out_path.empty()) meshfab::save_topology(topo, out_path);
    std::cout << "built n=" << topo.node_count() << " d=" << topo.degree()
              << " edges=" << topo.edges().size()
              << " self_loops=" << topo.self_loop_count() << '\n';
    if (with_gap)
        std::cout << "spectral_gap=" << meshfab::spectral_gap(topo, 1e-6) << '\n';
    if (!out_path.empty()) std::cout << "wrote " << out_path << '\n';
    return 0;
}

int cmd_levels(const TopoArgs& ta, int t, const meshfab::SpraypointConfig& cfg,
               const std::string& out_path) {
    auto topo = ta.get();
    int l = cfg.resolved_levels(topo.node_count(), topo.degree());
    auto la = meshfab::compute_levels(topo, t, cfg.p, l, cfg.key);
    auto pg = meshfab::build_pointing_graph(topo, la, cfg.h, cfg.key);
    auto out = open_out(out_path);
    header(out, "levels",
           ta.describe() + " t=" + std::to_string(t) + " p=" + std::to_string(cfg.p) +
               " l=" + std::to_string(l) + " h=" + std::to_string(cfg.h) +
               " key=" + std::to_string(cfg.key));
    meshfab::dump_levels(la, out);
    out << "[pointing]\n";
    meshfab::dump_pointing(pg, out);
    std::cout << "levels for t=" << t << ": wp0=" << la.waypoint_levels[0].size()
              << " wp" << l << "=" << la.waypoint_levels[l].size()
              << " ir=" << la.inner_ring.size() << " or=" << la.outer_ring.size() << '\n';
    return 0;
}

int cmd_paths(const TopoArgs& ta, const meshfab::SpraypointConfig& cfg, long pairs,
              std::uint64_t seed, const std::string& out_path) {
    auto topo = ta.get();
    int l = cfg.resolved_levels(topo.node_count(), topo.degree());
    auto hist = meshfab::path_length_distribution(topo, cfg.p, cfg.h, l, cfg.key, pairs, seed);
    auto model = meshfab::model_path_length(topo.node_count(), topo.degree(), cfg.p, l);
    auto out = open_out(out_path);
    header(out, "paths",
           ta.describe() + " p=" + std::to_string(cfg.p) + " h=" + std::to_string(cfg.h) +
               " l=" + std::to_string(l) + " pairs=" + std::to_string(pairs) +
               " sample_seed=" + std::to_string(seed));
    out << "length,fraction,model_fraction\n";
    for (int len = 1; len <= l + 4; ++len) {
        double f = hist.count(len) ? hist.at(len) : 0.0;
        double m = model.count(len) ? model.at(len) : 0.0;
        out << len << ',' << f << ',' << m << '\n';
    }
    std::cout << "sampled " << pairs << " spray choices; lengths written\n";
    return 0;
}

int cmd_mincut(const TopoArgs& ta, const meshfab::SpraypointConfig& cfg,
               const std::vector<std::string>& schemes, int pairs, double eps,
               std::uint64_t seed, const std::string& out_path) {
    auto topo = ta.get();
    auto cmp = meshfab::compare_routing(topo, cfg, schemes, pairs, eps, seed);
    auto out = open_out(out_path);
    header(out, "mincut",
           ta.describe() + " p=" + std::to_string(cfg.p) + " h=" + std::to_string(cfg.h) +
               " pairs=" + std::to_string(pairs) + " eps=" + std::to_string(eps) +
               " sample_seed=" + std::to_string(seed));
    out << "src,dst,scheme,edp\n";
    for (const auto& rep : cmp.schemes)
        for (std::size_t i = 0; i < cmp.pairs.size(); ++i)
            out << cmp.pairs[i].first << ',' << cmp.pairs[i].second << ',' << rep.scheme
                << ',' << rep.edp[i] << '\n';
    for (const auto& rep : cmp.schemes)
        std::cout << rep.scheme << ": median_edp=" << rep.median_edp
                  << " oversub_r=" << rep.oversub_r << '\n';
    return 0;
}

int cmd_oversub(const TopoArgs& ta, const meshfab::SpraypointConfig& cfg, int matchings,
                double eps, std::uint64_t seed, const std::string& sweep_axis,
                std::vector<int> sweep_values, const std::string& out_path) {
    auto out = open_out(out_path);
    header(out, "oversub",
           ta.describe() + " p=" + std::to_string(cfg.p) + " h=" + std::to_string(cfg.h) +
               " matchings=" + std::to_string(matchings) + " eps=" + std::to_string(eps) +
               " traffic_seed=" + std::to_string(seed) +
               (sweep_axis.empty() ? "" : " sweep=" + sweep_axis));
    if (sweep_axis.empty()) {
        auto topo = ta.get();
        auto res = meshfab::oversubscription(topo, cfg, matchings, eps, seed);
        out << "matching_id,r,delta2,delta3,delta4,delta5\n";
        for (const auto& row : res.rows) {
            out << row.matching_id << ',' << row.r;
            for (int len = 2; len <= 5; ++len)
                out << ',' << (row.delta.count(len) ? row.delta.at(len) : 0.0);
            out << '\n';
        }
        std::cout << "worst_r=" << res.worst_r << " best_r=" << res.best_r
                  << " mean_r=" << res.mean_r << " eps=" << eps << '\n';
        return 0;
    }
    out << "axis,value,worst_r,mean_r,model_r\n";
    for (int value : sweep_values) {
        int n = ta.n, d = ta.d;
        auto c = cfg;
        if (sweep_axis == "n")
            n = value;
        else if (sweep_axis == "d")
            d = value;
        else if (sweep_axis == "p")
            c.p = value;
        else if (sweep_axis == "h")
            c.h = value;
        else
            throw meshfab::Error("sweep axis must be one of n,d,p,h");
        auto topo = meshfab::build_configuration_graph(n, d, ta.seed);
        auto res = meshfab::oversubscription(topo, c, matchings, eps, seed);
        double model = meshfab::model_oversub(n, d, c.p, c.h).oversub;
        out << sweep_axis << ',' << value << ',' << res.worst_r << ',' << res.mean_r << ','
            << model << '\n';
        std::cout << sweep_axis << '=' << value << " worst_r=" << res.worst_r
                  << " model=" << model << '\n';
    }
    return 0;
}

int cmd_traffic(const TopoArgs& ta, const meshfab::SpraypointConfig& cfg,
                const std::string& pattern, std::vector<double> fractions, int matrices,
                double eps, std::uint64_t seed, const std::string& out_path) {
    auto topo = ta.get();
    auto out = open_out(out_path);
    header(out, "traffic",
           ta.describe() + " pattern=" + pattern + " matrices=" + std::to_string(matrices) +
               " eps=" + std::to_string(eps) + " traffic_seed=" + std::to_string(seed));
    out << "pattern,f,matrix_id,r\n";
    auto kind = meshfab::traffic_pattern_from_string(pattern);
    for (double f : fractions)
        for (int i = 0; i < matrices; ++i) {
            auto m = meshfab::generate_traffic(kind, f, topo.node_count(),
                                               meshfab::child_seed(seed, pattern, i));
            auto res = meshfab::route_matrix_spraypoint(topo, cfg, m, eps);
            out << pattern << ',' << f << ',' << i << ',' << res.r << '\n';
            std::cout << pattern << " f=" << f << " matrix=" << i << " r=" << res.r << '\n';
        }
    return 0;
}

int cmd_models(int n, int d, int p, int h, const std::string& out_path) {
    std::ostringstream body;
    auto b = meshfab::model_oversub(n, d, p, h);
    meshfab::dump_oversub_breakdown(b, body);
    body << "edge_disjoint_nonneighbor " << meshfab::model_edge_disjoint(d, p, h, false)
         << '\n';
    body << "edge_disjoint_neighbor " << meshfab::model_edge_disjoint(d, p, h, true) << '\n';
    int l = meshfab::default_level_count(n, d, p);
    body << "levels " << l << '\n';
    for (auto [len, f] : meshfab::model_path_length(n, d, p, l))
        body << "path_fraction_" << len << ' ' << f << '\n';
    if (h >= 2) {
        body << "matching_limit_fraction " << meshfab::frieze_mellsted_fraction(h) << '\n';
        body << "matching_limit_root " << meshfab::frieze_mellsted_root(h) << '\n';
    }
    meshfab::ModelParams mp{n, d, p, h, 0};
    for (const auto& w : meshfab::regime_warnings(mp)) body << "warning " << w << '\n';
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        header(out, "models",
               "n=" + std::to_string(n) + " d=" + std::to_string(d) + " p=" +
                   std::to_string(p) + " h=" + std::to_string(h));
        out << body.str();
    }
    std::cout << body.str();
    return 0;
}

struct CablingArgs {
    int rooms = 10, boxes = 10, tors_per_room = 100, uplinks = 8;
    int d_r = 20, d_c = 4, f_r = 4, f_c = 20;
    double alpha = 1.0;
    std::string weave = "paired";
    std::vector<double> phases;
    std::uint64_t seed = 1;
};

int cmd_cabling(const CablingArgs& ca, const std::string& mode, const std::string& out_path,
                const std::string& plan_path) {
    auto weave = ca.weave == "spread" ? meshfab::ShuffleBoxSpec::Weave::Spread
                                      : meshfab::ShuffleBoxSpec::Weave::Paired;
    auto spec = meshfab::make_shufflebox(ca.d_r, ca.d_c, ca.f_r, ca.f_c, weave);
    std::ostringstream params;
    params << "rooms=" << ca.rooms << " boxes=" << ca.boxes << " tors=" << ca.tors_per_room
           << " uplinks=" << ca.uplinks << " box=" << ca.d_r << '/' << ca.d_c << '/'
           << ca.f_r << '/' << ca.f_c << " weave=" << ca.weave << " alpha=" << ca.alpha
           << " seed=" << ca.seed;

    if (mode == "timeline") {
        auto cfg = meshfab::standard_timeline(ca.rooms, ca.boxes, ca.tors_per_room,
                                              ca.uplinks, spec, ca.alpha);
        cfg.phase_fractions = ca.phases;
        auto curve = meshfab::deployment_timeline(cfg, ca.seed);
        std::vector<meshfab::GrowthStage> stages;
        if (ca.phases.empty()) {
            for (int r = 0; r < ca.rooms; ++r)
                stages.push_back({static_cast<double>(r) / ca.rooms,
                                  static_cast<double>(r + 1) / ca.rooms,
                                  static_cast<double>(ca.uplinks)});
        } else {
            double room = 1.0 / ca.rooms, acc = 0;
            for (double f : ca.phases) {
                stages.push_back({acc, acc + f * room, static_cast<double>(ca.uplinks)});
                acc += f * room;
            }
            for (int r = 1; r < ca.rooms; ++r)
                stages.push_back({static_cast<double>(r) / ca.rooms,
                                  static_cast<double>(r + 1) / ca.rooms,
                                  static_cast<double>(ca.uplinks)});
        }
        auto out = open_out(out_path);
        header(out, "cabling", params.str() + " mode=timeline");
        out << "routers,deployed_fraction,matched_fraction,model_fraction\n";
        for (const auto& pt : curve) {
            double model = meshfab::incremental_avg_degree(pt.deployed_fraction, stages) /
                           ca.uplinks;
            out << pt.routers_deployed << ',' << pt.deployed_fraction << ','
                << pt.matched_fraction << ',' << model << '\n';
        }
        std::cout << "timeline points=" << curve.size() << '\n';
        return 0;
    }

    auto plan = meshfab::plan_datacenter(ca.rooms, ca.boxes, spec, ca.alpha, ca.seed,
                                         /*pair_aligned=*/ca.weave == "paired");
    if (!ca.phases.empty())
        meshfab::phased_first_room(plan, ca.phases, meshfab::child_seed(ca.seed, "phases"));
    for (int r = 0; r < ca.rooms; ++r)
        meshfab::land_routers(plan, r, ca.tors_per_room, ca.uplinks,
                              meshfab::child_seed(ca.seed, "land", r));
    if (!plan_path.empty()) {
        auto pf = open_out(plan_path);
        meshfab::save_plan(plan, pf);
    }
    if (mode == "resolve" || mode == "plan") {
        auto res = meshfab::resolve_topology(plan);
        std::cout << "routers=" << res.topo.node_count() << " edges="
                  << res.topo.edges().size() << " unmatched=" << res.unmatched_uplinks.size()
                  << " self=" << res.self_edge_uplinks.size()
                  << " disabled=" << res.disabled_paths.size()
                  << " matched_fraction=" << res.matched_fraction()
                  << " endpoint_pairs=" << meshfab::endpoint_pair_count(plan) << '\n';
        auto out = open_out(out_path);
        meshfab::save_topology(res.topo, out);
        auto um = open_out(out_path + ".unmatched.csv");
        header(um, "cabling", params.str() + " mode=resolve");
        um << "attachment,router,uplink,reason\n";
        for (int i : res.unmatched_uplinks)
            um << i << ',' << plan.attachments[i].router << ','
               << plan.attachments[i].uplink << ",open\n";
        for (int i : res.self_edge_uplinks)
            um << i << ',' << plan.attachments[i].router << ','
               << plan.attachments[i].uplink << ",self\n";
        for (auto dp : res.disabled_paths)
            um << dp.uplink << ',' << plan.attachments[dp.uplink].router << ','
               << plan.attachments[dp.uplink].uplink << ",disabled\n";
        return 0;
    }
    throw meshfab::Error("cabling mode must be plan, resolve or timeline");
}

int cmd_latency(const TopoArgs& ta, const meshfab::SpraypointConfig& cfg, int rooms,
                double span, int pairs, std::uint64_t seed, const std::string& out_path) {
    meshfab::Geometry geom;
    geom.rooms = rooms;
    geom.span_m = span;
    meshfab::LatencyParams params;
    auto topo = ta.get();
    auto layout = meshfab::FabricLayout::from_topology(topo, geom);

    auto out = open_out(out_path);
    header(out, "latency",
           ta.describe() + " rooms=" + std::to_string(rooms) + " span=" +
               std::to_string(span) + " pairs=" + std::to_string(pairs) +
               " sample_seed=" + std::to_string(seed));
    out << "variant,p10_ns,p50_ns,p90_ns,mean_ns\n";
    auto emit = [&](const std::string& name, const meshfab::PercentileTable& t) {
        out << name << ',' << t.p10 << ',' << t.p50 << ',' << t.p90 << ',' << t.mean << '\n';
        std::cout << name << " p50=" << t.p50 / 1000.0 << "us\n";
    };
    emit("baseline",
         meshfab::latency_distribution(topo, layout, params, cfg, pairs, seed, false));
    emit("biased_waypoints",
         meshfab::latency_distribution(topo, layout, params, cfg, pairs, seed, true));
    emit("fat_tree", meshfab::fat_tree_latency_baseline(topo.node_count(), geom, params,
                                                        pairs, seed));
    return 0;
}

int cmd_design(long servers, int ports, double re, double rt, long mem) {
    auto spec = meshfab::design_fabric(servers, ports, re, rt, mem);
    std::cout << "d=" << spec.d << " n=" << spec.n << " h=" << spec.h << " p=" << spec.p
              << " predicted_mesh_oversub=" << spec.predicted_mesh_oversub << '\n';
    for (const auto& line : spec.audit) std::cout << "  " << line << '\n';
    return 0;
}

int cmd_compare(long servers_hint, int ports, std::vector<double> oversubs, long mem,
                const std::string& out_path) {
    auto out = open_out(out_path);
    header(out, "compare",
           "ports=" + std::to_string(ports) + " mem=" + std::to_string(mem));
    out << "servers,ports,oversub,mesh_switches,fat_tree_switches,reduction_pct\n";
    std::vector<long> sizes;
    long cap = static_cast<long>(std::pow(ports, 3) / 4);
    if (servers_hint > 0)
        sizes = {servers_hint};
    else
        sizes = {cap, cap / 2, cap / 4};
    for (long s : sizes)
        for (double o : oversubs) {
            auto ft = meshfab::fat_tree_design(s, ports, o);
            auto mesh = meshfab::design_fabric(s, ports, o, 1.0, mem);
            double red = 100.0 * (1.0 - static_cast<double>(mesh.n) / ft.total);
            out << s << ',' << ports << ',' << o << ',' << mesh.n << ',' << ft.total << ','
                << red << '\n';
            std::cout << "s=" << s << " oversub=" << o << " reduction=" << red << "%\n";
        }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kVersion) +
                 " - expander-mesh fabric laboratory (topologies, routing, models, "
                 "cabling, design)"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags override");

    TopoArgs ta;
    meshfab::SpraypointConfig cfg;
    std::string out_path = "out.csv";
    std::uint64_t sample_seed = 1;
    double eps = 0.05;
    int pairs = 200;
    int matchings = 20;

    auto add_spray = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "waypoints per selector");
        sub->add_option("--h", cfg.h, "next hops after spraying");
        sub->add_option("--l", cfg.levels, "waypoint level count (0 = derive)");
        sub->add_option("--key", cfg.key, "shared hashing key");
    };

    // build
    auto* build = app.add_subcommand("build", "construct a seeded random topology");
    bool simple = true, with_gap = false;
    ta.attach(build);
    build->add_flag("!--multigraph", simple, "allow self-loops and parallel edges");
    build->add_flag("--gap", with_gap, "also report the spectral gap");
    build->add_option("--out", out_path, "topology file to write");

    // levels
    auto* levels = app.add_subcommand("levels", "per-destination level and pointing dump");
    int dest = 0;
    ta.attach(levels);
    add_spray(levels);
    levels->add_option("--t", dest, "destination node");
    levels->add_option("--out", out_path, "dump file");

    // paths
    auto* paths = app.add_subcommand("paths", "sampled path-length distribution");
    long path_samples = 100000;
    ta.attach(paths);
    add_spray(paths);
    paths->add_option("--pairs", path_samples, "sampled (source,spray,destination) triples");
    paths->add_option("--sample-seed", sample_seed, "sampling seed");
    paths->add_option("--out", out_path, "csv file");

    // mincut
    auto* mincut = app.add_subcommand("mincut", "edge-disjoint path counts per scheme");
    std::vector<std::string> schemes{"spraypoint", "ksp(8)"};
    ta.attach(mincut);
    add_spray(mincut);
    mincut->add_option("--schemes", schemes, "spraypoint and/or ksp(<k>)");
    mincut->add_option("--pairs", pairs, "sampled endpoint pairs");
    mincut->add_option("--eps", eps, "concurrent-flow approximation slack");
    mincut->add_option("--sample-seed", sample_seed, "sampling seed");
    mincut->add_option("--out", out_path, "csv file");

    // oversub
    auto* oversub = app.add_subcommand("oversub", "worst-case matching oversubscription");
    std::string sweep_axis;
    std::vector<int> sweep_values;
    ta.attach(oversub);
    add_spray(oversub);
    oversub->add_option("--matchings", matchings, "random matchings to try");
    oversub->add_option("--eps", eps, "approximation slack");
    oversub->add_option("--traffic-seed", sample_seed, "matching generation seed");
    oversub->add_option("--sweep-axis", sweep_axis, "one-at-a-time sweep axis (n,d,p,h)");
    oversub->add_option("--sweep-values", sweep_values, "sweep axis values");
    oversub->add_option("--out", out_path, "csv file");

    // traffic
    auto* traffic = app.add_subcommand("traffic", "pattern-family throughput sweeps");
    std::string pattern = "matching";
    std::vector<double> fractions{0.2, 0.4, 0.6, 0.8, 1.0};
    int matrices = 5;
    ta.attach(traffic);
    add_spray(traffic);
    traffic->add_option("--pattern", pattern, "matching, clique or hubs");
    traffic->add_option("--f", fractions, "active fractions");
    traffic->add_option("--matrices", matrices, "matrices per fraction");
    traffic->add_option("--eps", eps, "approximation slack");
    traffic->add_option("--traffic-seed", sample_seed, "matrix generation seed");
    traffic->add_option("--out", out_path, "csv file");

    // models
    auto* models = app.add_subcommand("models", "closed-form predictions and intermediates");
    int mn = 1000, md = 64, mp = 4, mh = 2;
    models->add_option("--n", mn, "node count");
    models->add_option("--d", md, "degree");
    models->add_option("--p", mp, "waypoints per selector");
    models->add_option("--h", mh, "next hops");
    std::string models_out;
    models->add_option("--out", models_out, "optional key-value dump file");

    // cabling
    auto* cabling = app.add_subcommand("cabling", "plan, resolve or grow a physical plan");
    CablingArgs ca;
    std::string cab_mode = "resolve", plan_path;
    cabling->add_option("--mode", cab_mode, "plan, resolve or timeline");
    cabling->add_option("--rooms", ca.rooms, "room count");
    cabling->add_option("--boxes", ca.boxes, "shuffleboxes per room");
    cabling->add_option("--tors", ca.tors_per_room, "ToRs per room");
    cabling->add_option("--uplinks", ca.uplinks, "uplinks per ToR");
    cabling->add_option("--dr", ca.d_r, "r-ports per box");
    cabling->add_option("--dc", ca.d_c, "c-ports per box");
    cabling->add_option("--fr", ca.f_r, "fiber pairs per r-port");
    cabling->add_option("--fc", ca.f_c, "fiber pairs per c-port");
    cabling->add_option("--alpha", ca.alpha, "inter-room connection fraction");
    cabling->add_option("--weave", ca.weave, "spread or paired");
    cabling->add_option("--phases", ca.phases, "first-room phase fractions");
    cabling->add_option("--seed", ca.seed, "plan seed");
    cabling->add_option("--out", out_path, "resolved topology / timeline csv");
    cabling->add_option("--plan-out", plan_path, "serialized plan file");

    // latency
    auto* latency = app.add_subcommand("latency", "geometric latency percentiles");
    int lat_rooms = 10, lat_pairs = 2000;
    double span = 300.0;
    ta.attach(latency);
    add_spray(latency);
    latency->add_option("--rooms", lat_rooms, "rooms across the span");
    latency->add_option("--span", span, "datacenter span in meters");
    latency->add_option("--pairs", lat_pairs, "sampled ToR pairs");
    latency->add_option("--sample-seed", sample_seed, "sampling seed");
    latency->add_option("--out", out_path, "csv file");

    // design
    auto* design = app.add_subcommand("design", "target-driven fabric design");
    long servers = 61440, mem = 16000;
    int ports = 128;
    double re = 3.0, rt = 1.0;
    design->add_option("--servers", servers, "server count");
    design->add_option("--ports", ports, "switch port count");
    design->add_option("--re", re, "end-to-end oversubscription target");
    design->add_option("--rt", rt, "ToR-layer oversubscription target");
    design->add_option("--mem", mem, "ECMP table entries");

    // compare
    auto* compare = app.add_subcommand("compare", "switch-count cost versus fat trees");
    std::vector<double> oversubs{1, 2, 3, 4, 6};
    long cmp_servers = 0;
    compare->add_option("--servers", cmp_servers, "server count (0 = standard sizes)");
    compare->add_option("--ports", ports, "switch port count");
    compare->add_option("--oversub", oversubs, "oversubscription levels");
    compare->add_option("--mem", mem, "ECMP table entries");
    compare->add_option("--out", out_path, "csv file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return cmd_build(ta, simple, out_path, with_gap);
        if (levels->parsed()) return cmd_levels(ta, dest, cfg, out_path);
        if (paths->parsed()) return cmd_paths(ta, cfg, path_samples, sample_seed, out_path);
        if (mincut->parsed())
            return cmd_mincut(ta, cfg, schemes, pairs, eps, sample_seed, out_path);
        if (oversub->parsed())
            return cmd_oversub(ta, cfg, matchings, eps, sample_seed, sweep_axis,
                               sweep_values, out_path);
        if (traffic->parsed())
            return cmd_traffic(ta, cfg, pattern, fractions, matrices, eps, sample_seed,
                               out_path);
        if (models->parsed()) return cmd_models(mn, md, mp, mh, models_out);
        if (cabling->parsed()) return cmd_cabling(ca, cab_mode, out_path, plan_path);
        if (latency->parsed())
            return cmd_latency(ta, cfg, lat_rooms, span, lat_pairs, sample_seed, out_path);
        if (design->parsed()) return cmd_design(servers, ports, re, rt, mem);
        if (compare->parsed()) return cmd_compare(cmp_servers, ports, oversubs, mem, out_path);
    } catch (const meshfab::Infeasible& e) {
        std::cerr << "infeasible: " << e.what();
        if (!e.binding_constraint.empty())
            std::cerr << " (binding constraint: " << e.binding_constraint << ")";
        std::cerr << '\n';
        return 3;
    } catch (const meshfab::InfeasibleRatio& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const meshfab::CapacityExceeded& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const meshfab::NotModeled& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const meshfab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
