#include <set>
#include <sstream>

#include "doctest.h"
#include "meshfab/errors.hpp"
#include "meshfab/rng.hpp"
#include "meshfab/topology.hpp"

using namespace meshfab;

TEST_CASE("4 nodes of degree 2 form a union of cycles") {
    auto topo = build_configuration_graph(4, 2, 7, true);
    for (int v = 0; v < 4; ++v) CHECK(topo.node_degree(v) == 2);
    CHECK(topo.self_loop_count() == 0);
    CHECK(topo.parallel_edge_count() == 0);
}

TEST_CASE("regularity by construction at n=1000 d=64") {
    auto topo = build_configuration_graph(1000, 64, 42, true);
    for (int v = 0; v < 1000; ++v) CHECK(topo.node_degree(v) == 64);
    long endpoints = 0;
    for (int v = 0; v < 1000; ++v) endpoints += topo.node_degree(v);
    CHECK(endpoints == 1000L * 64);  // conservation
    CHECK(endpoints == 2 * static_cast<long>(topo.edges().size()));
}

TEST_CASE("mean self-loop count of the unconstrained pairing is about (d-1)/2") {
    // Monte-Carlo oracle: expected self-loops of a uniform half-edge pairing
    // with n*d stubs is d*(d-1)/(2(nd-1)) per node, i.e. about (d-1)/2 total.
    double total = 0;
    const int runs = 100;
    for (int i = 0; i < runs; ++i) {
        auto topo = build_configuration_graph(1000, 64, 1000 + i, false);
        total += topo.self_loop_count();
    }
    double mean = total / runs;
    CHECK(mean > 31.5 - 3.0);
    CHECK(mean < 31.5 + 3.0);
}

TEST_CASE("identical parameters rebuild the identical edge multiset") {
    auto a = build_configuration_graph(200, 8, 99, true);
    auto b = build_configuration_graph(200, 8, 99, true);
    CHECK(a.edges() == b.edges());
    auto c = build_configuration_graph(200, 8, 100, true);
    CHECK(a.edges() != c.edges());
}

TEST_CASE("precondition violations") {
    CHECK_THROWS_AS(build_configuration_graph(3, 3, 1, true), OddStubCount);
    CHECK_THROWS_AS(build_configuration_graph(4, 4, 1, true), DegreeInfeasible);
    CHECK_THROWS_AS(build_configuration_graph(2, 2, 1, true), DegreeInfeasible);
    // a zero-round budget exhausts immediately
    CHECK_THROWS_AS(build_configuration_graph(10, 2, 1, true, 0), RetryExhausted);
}

TEST_CASE("serialization round-trips and validates") {
    auto topo = build_configuration_graph(50, 6, 5, true);
    std::stringstream ss;
    save_topology(topo, ss);
    auto back = load_topology(ss);
    CHECK(back.edges() == topo.edges());
    CHECK(back.degree() == 6);
    CHECK(back.seed() == 5);
    CHECK(back.simple());

    std::stringstream bad("4 2 0 1\n0 0\n1 2\n2 3\n3 1\n");
    CHECK_THROWS_AS(load_topology(bad), BadTopologyFile);  // self-loop in a simple file
}

TEST_CASE("deterministic seeded rng primitives") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(7);
    for (int i = 0; i < 1000; ++i) {
        auto x = c.below(10);
        CHECK(x < 10);
    }
    CHECK(child_seed(1, "x", 0) != child_seed(1, "x", 1));
    CHECK(child_seed(1, "x", 0) != child_seed(1, "y", 0));
    CHECK(child_seed(1, "x", 3) == child_seed(1, "x", 3));
}
