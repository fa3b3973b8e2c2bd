#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace iset {

/// Simple undirected graph over vertices 0..n-1, adjacency-list form.
///
/// Invariants (checked by validate(), maintained by all constructors in this
/// module): no self-loops, no duplicate edges, neighbor lists sorted,
/// j in adj[i] iff i in adj[j], edge_count = sum(degree)/2.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    std::int64_t edge_count = 0;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int u, int v) const;

    /// Throws std::logic_error on any invariant violation.
    void validate() const;

    bool operator==(const Graph& other) const = default;
};

/// Build from an explicit edge list; rejects self-loops, ignores duplicates.
Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges);

/// G(n, p): each unordered pair is an edge independently with probability p.
Graph gen_erdos_renyi(int n, double p, std::uint64_t seed);

/// Barabasi-Albert preferential attachment: complete seed graph on m+1
/// vertices, then each new vertex attaches m edges to distinct targets
/// sampled proportionally to current degree.
Graph gen_barabasi_albert(int n, int m, std::uint64_t seed);

/// Watts-Strogatz: ring lattice of even degree k, each lattice edge rewired
/// independently with probability p (no self-loops or duplicates created;
/// edge count nk/2 is preserved).
Graph gen_small_world(int n, int k, double p, std::uint64_t seed);

/// Edge-list text format. '#' starts a comment; a comment of the form
/// "# n = <count>" declares the vertex count (otherwise n = max id + 1).
/// Edge lines are "u v". With one_based = true, ids are shifted down by one
/// on load (for fixtures printed 1-based).
Graph load_edge_list(std::istream& in, bool one_based = false);
Graph load_edge_list_file(const std::string& path, bool one_based = false);

/// Writes the "# n = <count>" directive followed by one "u v" line per edge
/// (u < v, lexicographic order). `header` lines, if any, are emitted first
/// as '#' comments.
void save_edge_list(const Graph& g, std::ostream& out,
                    const std::vector<std::string>& header = {});

double mean_degree(const Graph& g);

}  // namespace iset
