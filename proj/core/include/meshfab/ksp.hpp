#pragma once

#include <vector>

#include "meshfab/topology.hpp"

namespace meshfab {

// k loopless shortest paths by hop count, deterministic lexicographic
// tie-breaking (Yen's deviation enumeration). Returns fewer than k paths when
// the graph does not contain k loopless paths.
std::vector<std::vector<int>> ksp_paths(const Topology& topo, int s, int t, int k);

}  // namespace meshfab
