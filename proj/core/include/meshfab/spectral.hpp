#pragma once

#include "meshfab/topology.hpp"

namespace meshfab {

struct SpectralOptions {
    double tolerance = 1e-6;
    int stable_iters = 10;   // consecutive iterations under tolerance
    int max_iters = 200000;
};

// Second-largest eigenvalue magnitude of the degree-normalized adjacency
// operator D^{-1/2} A D^{-1/2}, by power iteration after deflating the top
// eigenvector. Throws Disconnected when the graph is not connected.
double spectral_gap(const Topology& topo, double tolerance = 1e-6);
double spectral_gap(const Topology& topo, const SpectralOptions& opts);

}  // namespace meshfab
