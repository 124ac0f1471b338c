#pragma once

#include <vector>

namespace meshfab {

// Integer max-flow (Dinic). Built for the small unit-capacity graphs used in
// path-diversity measurements.
class MaxFlow {
public:
    explicit MaxFlow(int nodes) : head_(nodes, -1) {}

    void add_arc(int u, int v, int cap) {
        arcs_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({u, head_[v], 0});
        head_[v] = static_cast<int>(arcs_.size()) - 1;
    }

    int solve(int s, int t);

private:
    struct Arc {
        int to, next, cap;
    };
    bool bfs(int s, int t);
    int dfs(int u, int t, int limit);

    std::vector<Arc> arcs_;
    std::vector<int> head_, level_, iter_;
};

}  // namespace meshfab
