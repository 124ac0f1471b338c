#include "meshfab/ksp.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "meshfab/errors.hpp"

namespace meshfab {

namespace {

std::uint64_t arc_key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

// Lexicographically smallest shortest path from s to t avoiding banned nodes
// and directed arcs; empty when unreachable.
std::vector<int> lex_shortest(const Topology& topo, int s, int t,
                              const std::vector<char>& banned_node,
                              const std::unordered_set<std::uint64_t>& banned_arc) {
    int n = topo.node_count();
    std::vector<int> dist(n, -1);
    std::deque<int> q;
    if (banned_node[t]) return {};
    dist[t] = 0;
    q.push_back(t);
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y : topo.unique_neighbors(x)) {
            if (banned_node[y] || dist[y] >= 0) continue;
            if (banned_arc.count(arc_key(y, x))) continue;
            dist[y] = dist[x] + 1;
            q.push_back(y);
        }
    }
    if (dist[s] < 0) return {};
    std::vector<int> path{s};
    int u = s;
    while (u != t) {
        int next = -1;
        for (int v : topo.unique_neighbors(u)) {  // sorted, so first hit is lex-min
            if (banned_node[v] && v != t) continue;
            if (dist[v] != dist[u] - 1) continue;
            if (banned_arc.count(arc_key(u, v))) continue;
            next = v;
            break;
        }
        if (next < 0) return {};  // all shortest continuations banned
        path.push_back(next);
        u = next;
    }
    return path;
}

struct PathLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

}  // namespace

std::vector<std::vector<int>> ksp_paths(const Topology& topo, int s, int t, int k) {
    if (k < 1) throw Error("k must be at least 1");
    if (s == t) throw Error("source equals destination");
    int n = topo.node_count();
    std::vector<char> no_ban(n, 0);
    std::unordered_set<std::uint64_t> no_arc_ban;

    std::vector<std::vector<int>> result;
    auto first = lex_shortest(topo, s, t, no_ban, no_arc_ban);
    if (first.empty()) return result;
    result.push_back(std::move(first));

    std::set<std::vector<int>, PathLess> candidates;
    while (static_cast<int>(result.size()) < k) {
        const auto& prev = result.back();
        for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
            std::vector<char> banned_node(n, 0);
            std::unordered_set<std::uint64_t> banned_arc;
            for (std::size_t j = 0; j < i; ++j) banned_node[prev[j]] = 1;
            for (const auto& p : result)
                if (p.size() > i + 1 && std::equal(prev.begin(), prev.begin() + i + 1, p.begin()))
                    banned_arc.insert(arc_key(p[i], p[i + 1]));
            auto spur = lex_shortest(topo, prev[i], t, banned_node, banned_arc);
            if (spur.empty()) continue;
            std::vector<int> total(prev.begin(), prev.begin() + i);
            total.insert(total.end(), spur.begin(), spur.end());
            bool dup = std::find(result.begin(), result.end(), total) != result.end();
            if (!dup) candidates.insert(std::move(total));
        }
        if (candidates.empty()) break;  // graph has fewer than k loopless paths
        result.push_back(*candidates.begin());
        candidates.erase(candidates.begin());
    }
    return result;
}

}  // namespace meshfab
