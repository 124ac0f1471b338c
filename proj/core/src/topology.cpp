#include "meshfab/topology.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "meshfab/errors.hpp"
#include "meshfab/rng.hpp"

namespace meshfab {

Topology Topology::from_edges(int n, int degree, std::vector<Edge> edges, bool simple,
                              std::uint64_t seed) {
    Topology t;
    t.n_ = n;
    t.degree_ = degree;
    t.simple_ = simple;
    t.seed_ = seed;
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw BadTopologyFile("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    t.edges_ = std::move(edges);

    std::vector<int> deg(n, 0);
    for (auto [u, v] : t.edges_) {
        if (u == v) {
            ++t.self_loops_;
            deg[u] += 2;
        } else {
            ++deg[u];
            ++deg[v];
        }
    }
    for (std::size_t i = 1; i < t.edges_.size(); ++i)
        if (t.edges_[i] == t.edges_[i - 1]) ++t.parallel_edges_;
    if (simple && (t.self_loops_ > 0 || t.parallel_edges_ > 0))
        throw BadTopologyFile("simple topology contains self-loops or parallel edges");

    t.off_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) t.off_[v + 1] = t.off_[v] + deg[v];
    t.adj_.resize(t.off_[n]);
    std::vector<std::size_t> cur(t.off_.begin(), t.off_.end() - 1);
    for (auto [u, v] : t.edges_) {
        t.adj_[cur[u]++] = v;
        t.adj_[cur[v]++] = u;  // self-loops contribute both endpoints
    }
    for (int v = 0; v < n; ++v)
        std::sort(t.adj_.begin() + t.off_[v], t.adj_.begin() + t.off_[v + 1]);

    t.uoff_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) {
        int prev = -1, cnt = 0;
        for (auto u : t.neighbors(v))
            if (u != v && u != prev) {
                ++cnt;
                prev = u;
            }
        t.uoff_[v + 1] = t.uoff_[v] + cnt;
    }
    t.uadj_.resize(t.uoff_[n]);
    for (int v = 0; v < n; ++v) {
        int prev = -1;
        std::size_t pos = t.uoff_[v];
        for (auto u : t.neighbors(v))
            if (u != v && u != prev) {
                t.uadj_[pos++] = u;
                prev = u;
            }
    }
    return t;
}

bool Topology::adjacent(int u, int v) const {
    auto nb = unique_neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool Topology::is_regular() const {
    for (int v = 0; v < n_; ++v)
        if (node_degree(v) != degree_) return false;
    return true;
}

Topology build_configuration_graph(int n, int d, std::uint64_t seed, bool simple,
                                   int max_retries) {
    if (n <= 0 || d <= 0) throw DegreeInfeasible("n and d must be positive");
    if (static_cast<long long>(n) * d % 2 != 0)
        throw OddStubCount("n*d must be even to pair half-edges");
    if (d >= n && simple) throw DegreeInfeasible("simple graph needs d <= n-1");
    if (d >= n && !simple && n == 1 && d % 2 != 0)
        throw DegreeInfeasible("single node needs even degree");

    std::vector<int> base(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < d; ++k) base[static_cast<std::size_t>(v) * d + k] = v;

    if (!simple) {
        Rng rng(child_seed(seed, "config-graph", 0));
        auto stubs = base;
        rng.shuffle(stubs);
        std::vector<Topology::Edge> edges;
        edges.reserve(stubs.size() / 2);
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
            edges.emplace_back(std::min(stubs[i], stubs[i + 1]),
                               std::max(stubs[i], stubs[i + 1]));
        return Topology::from_edges(n, d, std::move(edges), false, seed);
    }

    // Simple graphs: uniform stub matching with collision rejection. A whole
    // round restarts only when the residual stubs admit no valid pair, which
    // in the sparse regime is vanishingly rare.
    for (int round = 0; round < max_retries; ++round) {
        Rng rng(child_seed(seed, "config-graph", static_cast<std::uint64_t>(round)));
        auto pool = base;
        std::vector<std::set<int>> adj(n);
        std::vector<Topology::Edge> edges;
        edges.reserve(pool.size() / 2);
        int rejects = 0;
        bool dead = false;
        while (pool.size() >= 2 && !dead) {
            std::size_t i = pool.size() - 1;
            std::size_t j = rng.below(i);  // partner among the others
            int u = pool[i], v = pool[j];
            bool valid = u != v && !adj[u].count(v);
            if (valid) {
                adj[u].insert(v);
                adj[v].insert(u);
                edges.emplace_back(std::min(u, v), std::max(u, v));
                pool[j] = pool[i - 1];
                pool.resize(i - 1);
                rejects = 0;
                continue;
            }
            // reshuffle the tail position so the next draw differs
            std::swap(pool[i], pool[rng.below(i + 1)]);
            if (++rejects > 64) {
                // exhaustively confirm the residual is stuck
                dead = true;
                for (std::size_t a = 0; a < pool.size() && dead; ++a)
                    for (std::size_t b = a + 1; b < pool.size() && dead; ++b)
                        if (pool[a] != pool[b] && !adj[pool[a]].count(pool[b])) dead = false;
                if (!dead) rejects = 0;
            }
        }
        if (!dead) return Topology::from_edges(n, d, std::move(edges), true, seed);
    }
    throw RetryExhausted("no simple pairing found within the retry budget");
}

void save_topology(const Topology& topo, std::ostream& out) {
    out << topo.node_count() << ' ' << topo.degree() << ' ' << topo.seed() << ' '
        << (topo.simple() ? 1 : 0) << '\n';
    for (auto [u, v] : topo.edges()) out << u << ' ' << v << '\n';
}

void save_topology(const Topology& topo, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    save_topology(topo, out);
}

Topology load_topology(std::istream& in) {
    int n = 0, d = 0, simple = 0;
    std::uint64_t seed = 0;
    if (!(in >> n >> d >> seed >> simple)) throw BadTopologyFile("bad header line");
    std::vector<Topology::Edge> edges;
    int u, v;
    while (in >> u >> v) edges.emplace_back(u, v);
    auto topo = Topology::from_edges(n, d, std::move(edges), simple != 0, seed);
    // Degree conservation: endpoint count must not exceed n*d, and a fully
    // built regular topology has exactly n*d endpoints.
    long long endpoints = 0;
    for (int x = 0; x < n; ++x) endpoints += topo.node_degree(x);
    if (endpoints > static_cast<long long>(n) * d)
        throw BadTopologyFile("more edge endpoints than n*d port slots");
    return topo;
}

Topology load_topology(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return load_topology(in);
}

bool is_connected(const Topology& topo) {
    int n = topo.node_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : topo.unique_neighbors(v))
            if (!seen[u]) {
                seen[u] = 1;
                ++visited;
                stack.push_back(u);
            }
    }
    return visited == n;
}

}  // namespace meshfab
