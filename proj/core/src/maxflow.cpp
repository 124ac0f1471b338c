#include "meshfab/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace meshfab {

bool MaxFlow::bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::deque<int> q{s};
    level_[s] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int e = head_[u]; e != -1; e = arcs_[e].next)
            if (arcs_[e].cap > 0 && level_[arcs_[e].to] < 0) {
                level_[arcs_[e].to] = level_[u] + 1;
                q.push_back(arcs_[e].to);
            }
    }
    return level_[t] >= 0;
}

int MaxFlow::dfs(int u, int t, int limit) {
    if (u == t) return limit;
    for (int& e = iter_[u]; e != -1; e = arcs_[e].next) {
        Arc& a = arcs_[e];
        if (a.cap > 0 && level_[a.to] == level_[u] + 1) {
            int moved = dfs(a.to, t, std::min(limit, a.cap));
            if (moved > 0) {
                a.cap -= moved;
                arcs_[e ^ 1].cap += moved;
                return moved;
            }
        }
    }
    return 0;
}

int MaxFlow::solve(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
        iter_ = head_;
        while (int moved = dfs(s, t, std::numeric_limits<int>::max())) flow += moved;
    }
    return flow;
}

}  // namespace meshfab
