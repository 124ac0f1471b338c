#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "meshfab/errors.hpp"
#include "meshfab/ksp.hpp"
#include "meshfab/topology.hpp"
#include "meshfab/traffic.hpp"

using namespace meshfab;

TEST_CASE("full matching is a fixed-point-free permutation") {
    auto m = generate_traffic(TrafficPattern::Matching, 1.0, 50, 9);
    std::vector<double> rs(50, 0), cs(50, 0);
    for (const auto& d : m.demands) {
        CHECK(d.src != d.dst);
        CHECK(d.rate == doctest::Approx(1.0));
        rs[d.src] += d.rate;
        cs[d.dst] += d.rate;
    }
    for (int v = 0; v < 50; ++v) {
        CHECK(rs[v] == doctest::Approx(1.0));
        CHECK(cs[v] == doctest::Approx(1.0));
    }
}

TEST_CASE("clique splits capacity evenly among peers") {
    auto m = generate_traffic(TrafficPattern::Clique, 0.2, 100, 4);
    std::set<int> active;
    for (const auto& d : m.demands) {
        active.insert(d.src);
        CHECK(d.rate == doctest::Approx(1.0 / 19));
    }
    CHECK(active.size() == 20);
    CHECK(m.demands.size() == 20 * 19);
    for (int v : active) CHECK(m.row_sum(v) == doctest::Approx(1.0));
}

TEST_CASE("hubs saturate hub rows and spread non-hub capacity across hubs") {
    auto m = generate_traffic(TrafficPattern::Hubs, 0.2, 100, 4);
    std::map<int, double> rs, cs;
    std::set<int> senders, hubs;
    for (const auto& d : m.demands) {
        rs[d.src] += d.rate;
        cs[d.dst] += d.rate;
        senders.insert(d.src);
    }
    // hubs are the full-rate rows
    for (auto [v, sum] : rs)
        if (sum > 0.99) hubs.insert(v);
    CHECK(hubs.size() == 20);
    CHECK(senders.size() == 100);  // everyone sends something
    for (auto [v, sum] : rs) {
        if (hubs.count(v))
            CHECK(sum == doctest::Approx(1.0));
        else
            CHECK(sum == doctest::Approx(20.0 / 99));
    }
    // non-hub senders only target hubs
    for (const auto& d : m.demands)
        if (!hubs.count(d.src)) CHECK(hubs.count(d.dst) == 1);
    m.validate();
}

TEST_CASE("doubly sub-stochastic by construction") {
    for (auto pattern : {TrafficPattern::Matching, TrafficPattern::Clique,
                         TrafficPattern::Hubs}) {
        auto m = generate_traffic(pattern, 0.5, 40, 11);
        for (int v = 0; v < 40; ++v) {
            CHECK(m.row_sum(v) <= 1.0 + 1e-9);
            CHECK(m.col_sum(v) <= 1.0 + 1e-9);
        }
    }
    CHECK_THROWS_AS(generate_traffic(TrafficPattern::Clique, 0.01, 50, 1), BadTrafficSpec);
}

namespace {
Topology parallel_routes() {
    // 0 -> {1,2} -> 3 plus a long detour 0-4-5-3
    std::vector<Topology::Edge> e{{0, 1}, {1, 3}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 3}};
    return Topology::from_edges(6, 3, std::move(e), true);
}
}  // namespace

TEST_CASE("k shortest paths: both parallel two-hop routes, then the detour") {
    auto topo = parallel_routes();
    auto two = ksp_paths(topo, 0, 3, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == std::vector<int>{0, 1, 3});
    CHECK(two[1] == std::vector<int>{0, 2, 3});

    auto more = ksp_paths(topo, 0, 3, 10);
    CHECK(more.size() == 3);  // fewer than k loopless paths exist
    for (std::size_t i = 1; i < more.size(); ++i)
        CHECK(more[i - 1].size() <= more[i].size());  // sorted by length
}

TEST_CASE("ksp is deterministic and loopless on random graphs") {
    auto topo = build_configuration_graph(200, 8, 77, true);
    auto a = ksp_paths(topo, 3, 150, 8);
    auto b = ksp_paths(topo, 3, 150, 8);
    CHECK(a == b);
    CHECK(a.size() == 8);
    for (const auto& p : a) {
        std::set<int> uniq(p.begin(), p.end());
        CHECK(uniq.size() == p.size());  // loopless
        CHECK(p.front() == 3);
        CHECK(p.back() == 150);
        for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(topo.adjacent(p[i], p[i + 1]));
    }
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].size() <= a[i].size());
}
