#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace meshfab {

// Undirected multigraph of routers with a target uplink degree. Immutable once
// built; safe to share across threads.
class Topology {
public:
    using Edge = std::pair<int, int>;

    Topology() = default;
    static Topology from_edges(int n, int degree, std::vector<Edge> edges, bool simple,
                               std::uint64_t seed = 0);

    int node_count() const { return n_; }
    int degree() const { return degree_; }
    bool simple() const { return simple_; }
    std::uint64_t seed() const { return seed_; }

    const std::vector<Edge>& edges() const { return edges_; }

    // Neighbors with multiplicity (parallel edges repeat).
    std::span<const int> neighbors(int v) const {
        return {adj_.data() + off_[v], adj_.data() + off_[v + 1]};
    }
    // Sorted distinct neighbors, self excluded.
    std::span<const int> unique_neighbors(int v) const {
        return {uadj_.data() + uoff_[v], uadj_.data() + uoff_[v + 1]};
    }
    // Directed-arc indexing over distinct neighbor pairs: arc (v, w) has id
    // unique_offset(v) + position of w in unique_neighbors(v).
    std::size_t unique_offset(int v) const { return uoff_[v]; }
    std::size_t unique_arc_count() const { return uadj_.size(); }
    int node_degree(int v) const { return static_cast<int>(off_[v + 1] - off_[v]); }
    bool adjacent(int u, int v) const;

    bool is_regular() const;
    int self_loop_count() const { return self_loops_; }
    int parallel_edge_count() const { return parallel_edges_; }

private:
    int n_ = 0;
    int degree_ = 0;
    bool simple_ = true;
    std::uint64_t seed_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> off_, uoff_;
    std::vector<int> adj_, uadj_;
    int self_loops_ = 0;
    int parallel_edges_ = 0;
};

// Uniform random pairing of n*d half-edges (seeded). With simple=true, any
// round that produces a self-loop or parallel edge is resampled whole, up to
// `max_retries` rounds.
Topology build_configuration_graph(int n, int d, std::uint64_t seed, bool simple = true,
                                   int max_retries = 100);

// Line-oriented text format: header "n d seed simple", then one "u v" per line.
void save_topology(const Topology& topo, std::ostream& out);
void save_topology(const Topology& topo, const std::string& path);
Topology load_topology(std::istream& in);
Topology load_topology(const std::string& path);

bool is_connected(const Topology& topo);

}  // namespace meshfab
