#pragma once

#include <vector>

namespace meshfab {

// Maximum bipartite matching (Hopcroft-Karp). adj[l] lists right-side
// neighbors of left node l; right nodes are 0..n_right-1.
int max_bipartite_matching(int n_left, int n_right, const std::vector<std::vector<int>>& adj);

}  // namespace meshfab
