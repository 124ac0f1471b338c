#include "meshfab/traffic.hpp"

#include <algorithm>
#include <cmath>

#include "meshfab/errors.hpp"
#include "meshfab/rng.hpp"

namespace meshfab {

double TrafficMatrix::row_sum(int v) const {
    double s = 0;
    for (const auto& d : demands)
        if (d.src == v) s += d.rate;
    return s;
}

double TrafficMatrix::col_sum(int v) const {
    double s = 0;
    for (const auto& d : demands)
        if (d.dst == v) s += d.rate;
    return s;
}

void TrafficMatrix::validate() const {
    std::vector<double> rs(n, 0), cs(n, 0);
    for (const auto& d : demands) {
        if (d.src == d.dst) throw BadTrafficSpec("self-demand");
        if (d.rate < 0) throw BadTrafficSpec("negative rate");
        rs[d.src] += d.rate;
        cs[d.dst] += d.rate;
    }
    for (int v = 0; v < n; ++v)
        if (rs[v] > 1.0 + 1e-9 || cs[v] > 1.0 + 1e-9)
            throw BadTrafficSpec("row/column sum exceeds node capacity");
}

TrafficPattern traffic_pattern_from_string(const std::string& s) {
    if (s == "matching") return TrafficPattern::Matching;
    if (s == "clique") return TrafficPattern::Clique;
    if (s == "hubs") return TrafficPattern::Hubs;
    throw BadTrafficSpec("unknown traffic pattern: " + s);
}

std::string to_string(TrafficPattern p) {
    switch (p) {
        case TrafficPattern::Matching: return "matching";
        case TrafficPattern::Clique: return "clique";
        case TrafficPattern::Hubs: return "hubs";
    }
    return "?";
}

TrafficMatrix generate_traffic(TrafficPattern pattern, double f, int n, std::uint64_t seed) {
    if (f <= 0 || f > 1) throw BadTrafficSpec("active fraction must be in (0,1]");
    int active = static_cast<int>(std::ceil(f * n));
    Rng rng(child_seed(seed, "traffic"));

    TrafficMatrix m;
    m.n = n;
    switch (pattern) {
        case TrafficPattern::Matching: {
            if (active < 2) throw BadTrafficSpec("matching needs at least two active nodes");
            auto nodes = rng.sample(n, active);
            // Random fixed-point-free assignment: shuffle, then each sends to
            // the next in cyclic order of a second shuffle round.
            auto targets = nodes;
            rng.shuffle(targets);
            for (int i = 0; i < active; ++i) {
                int a = targets[i], b = targets[(i + 1) % active];
                m.demands.push_back({a, b, 1.0});
            }
            break;
        }
        case TrafficPattern::Clique: {
            if (active < 2) throw BadTrafficSpec("clique needs at least two active nodes");
            auto nodes = rng.sample(n, active);
            std::sort(nodes.begin(), nodes.end());
            double rate = 1.0 / (active - 1);
            for (int a : nodes)
                for (int b : nodes)
                    if (a != b) m.demands.push_back({a, b, rate});
            break;
        }
        case TrafficPattern::Hubs: {
            if (active < 1 || active >= n)
                throw BadTrafficSpec("hubs pattern needs 1 <= active < n");
            auto hubs = rng.sample(n, active);
            std::vector<char> is_hub(n, 0);
            for (int h : hubs) is_hub[h] = 1;
            std::sort(hubs.begin(), hubs.end());
            // One flow size everywhere; hub rows and columns saturate at 1.
            double rate = 1.0 / (n - 1);
            for (int h : hubs)
                for (int v = 0; v < n; ++v)
                    if (v != h) {
                        m.demands.push_back({h, v, rate});
                        if (!is_hub[v]) m.demands.push_back({v, h, rate});
                    }
            break;
        }
    }
    m.validate();
    return m;
}

}  // namespace meshfab
