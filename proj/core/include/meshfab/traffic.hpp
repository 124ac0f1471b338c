#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace meshfab {

// Demand matrix in units of node capacity: every row and column sums to at
// most 1, so the matrix is routable by a non-blocking fabric by construction.
struct TrafficMatrix {
    struct Demand {
        int src, dst;
        double rate;
    };
    int n = 0;
    std::vector<Demand> demands;

    double row_sum(int v) const;
    double col_sum(int v) const;
    void validate() const;  // no self-demands, sums within 1 + eps
};

enum class TrafficPattern { Matching, Clique, Hubs };

TrafficPattern traffic_pattern_from_string(const std::string& s);
std::string to_string(TrafficPattern p);

// Active nodes are ceil(f*n) seeded-random picks; all flows are equal-sized
// and active rows/columns saturate node capacity.
TrafficMatrix generate_traffic(TrafficPattern pattern, double f, int n, std::uint64_t seed);

}  // namespace meshfab
