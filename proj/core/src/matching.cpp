#include "meshfab/matching.hpp"

#include <deque>
#include <functional>
#include <limits>

namespace meshfab {

namespace {
constexpr int kInf = std::numeric_limits<int>::max();
}

int max_bipartite_matching(int n_left, int n_right, const std::vector<std::vector<int>>& adj) {
    std::vector<int> match_l(n_left, -1), match_r(n_right, -1), dist(n_left);

    auto bfs = [&]() {
        std::deque<int> q;
        bool found = false;
        for (int l = 0; l < n_left; ++l) {
            if (match_l[l] == -1) {
                dist[l] = 0;
                q.push_back(l);
            } else {
                dist[l] = kInf;
            }
        }
        while (!q.empty()) {
            int l = q.front();
            q.pop_front();
            for (int r : adj[l]) {
                int l2 = match_r[r];
                if (l2 == -1) {
                    found = true;
                } else if (dist[l2] == kInf) {
                    dist[l2] = dist[l] + 1;
                    q.push_back(l2);
                }
            }
        }
        return found;
    };

    std::function<bool(int)> dfs = [&](int l) {
        for (int r : adj[l]) {
            int l2 = match_r[r];
            if (l2 == -1 || (dist[l2] == dist[l] + 1 && dfs(l2))) {
                match_l[l] = r;
                match_r[r] = l;
                return true;
            }
        }
        dist[l] = kInf;
        return false;
    };

    int size = 0;
    while (bfs())
        for (int l = 0; l < n_left; ++l)
            if (match_l[l] == -1 && dfs(l)) ++size;
    return size;
}

}  // namespace meshfab
