#include "iset/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "iset/errors.hpp"
#include "iset/rng.hpp"

namespace iset {

bool Graph::has_edge(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

void Graph::validate() const {
    if (static_cast<int>(adj.size()) != n) throw std::logic_error("graph: adj size != n");
    std::int64_t deg_sum = 0;
    for (int u = 0; u < n; ++u) {
        const auto& a = adj[u];
        deg_sum += static_cast<std::int64_t>(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            int v = a[k];
            if (v < 0 || v >= n) throw std::logic_error("graph: neighbor id out of range");
            if (v == u) throw std::logic_error("graph: self-loop");
            if (k > 0 && a[k - 1] >= v) throw std::logic_error("graph: unsorted or duplicate neighbor");
            if (!has_edge(v, u)) throw std::logic_error("graph: asymmetric edge");
        }
    }
    if (deg_sum != 2 * edge_count) throw std::logic_error("graph: edge_count mismatch");
}

namespace {

Graph finalize(int n, std::vector<std::vector<int>> adj) {
    Graph g;
    g.n = n;
    g.adj = std::move(adj);
    std::int64_t deg_sum = 0;
    for (auto& a : g.adj) {
        std::sort(a.begin(), a.end());
        deg_sum += static_cast<std::int64_t>(a.size());
    }
    g.edge_count = deg_sum / 2;
    return g;
}

}  // namespace

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw ParameterError("make_graph: n must be >= 0");
    std::vector<std::vector<int>> adj(n);
    Graph probe;
    probe.n = n;
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParameterError("make_graph: vertex id out of range");
        if (u == v) throw ParameterError("make_graph: self-loop");
        if (u > v) std::swap(u, v);
        adj[u].push_back(v);
    }
    for (int u = 0; u < n; ++u) {
        auto& a = adj[u];
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    // mirror the deduplicated upper-triangle lists
    std::vector<std::vector<int>> full(n);
    for (int u = 0; u < n; ++u)
        for (int v : adj[u]) {
            full[u].push_back(v);
            full[v].push_back(u);
        }
    return finalize(n, std::move(full));
}

Graph gen_erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 1) throw ParameterError("erdos_renyi: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("erdos_renyi: p must be in [0,1]");
    Rng rng(seed);
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    return finalize(n, std::move(adj));
}

Graph gen_barabasi_albert(int n, int m, std::uint64_t seed) {
    if (m < 1) throw ParameterError("barabasi_albert: m must be >= 1");
    if (m >= n) throw ParameterError("barabasi_albert: requires n > m");
    Rng rng(seed);
    std::vector<std::vector<int>> adj(n);
    // one entry per edge endpoint; sampling uniformly from it is sampling
    // proportional to degree
    std::vector<int> endpoints;
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            adj[i].push_back(j);
            adj[j].push_back(i);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    std::vector<int> targets;
    for (int v = m + 1; v < n; ++v) {
        targets.clear();
        while (static_cast<int>(targets.size()) < m) {
            int t = endpoints[rng.below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        for (int t : targets) {
            adj[v].push_back(t);
            adj[t].push_back(v);
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    return finalize(n, std::move(adj));
}

Graph gen_small_world(int n, int k, double p, std::uint64_t seed) {
    if (k < 2 || k % 2 != 0) throw ParameterError("small_world: k must be even and >= 2");
    if (k >= n) throw ParameterError("small_world: requires n > k");
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("small_world: p must be in [0,1]");
    Rng rng(seed);
    std::vector<std::vector<int>> adj(n);
    auto connected = [&](int u, int v) {
        return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
    };
    for (int off = 1; off <= k / 2; ++off)
        for (int i = 0; i < n; ++i) {
            int j = (i + off) % n;
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    auto drop = [&](int u, int v) {
        auto& a = adj[u];
        a.erase(std::find(a.begin(), a.end(), v));
    };
    // Watts-Strogatz rewiring pass, lattice edge order
    for (int off = 1; off <= k / 2; ++off)
        for (int i = 0; i < n; ++i) {
            int j = (i + off) % n;
            if (!rng.bernoulli(p)) continue;
            if (static_cast<int>(adj[i].size()) >= n - 1) continue;  // nowhere to rewire
            int w;
            do {
                w = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            } while (w == i || connected(i, w));
            drop(i, j);
            drop(j, i);
            adj[i].push_back(w);
            adj[w].push_back(i);
        }
    return finalize(n, std::move(adj));
}

Graph load_edge_list(std::istream& in, bool one_based) {
    std::string line;
    int line_no = 0;
    int declared_n = -1;
    int max_id = -1;
    std::vector<std::pair<int, int>> edges;
    auto parse_id = [&](const std::string& tok) {
        std::size_t pos = 0;
        long v;
        try {
            v = std::stol(tok, &pos);
        } catch (const std::exception&) {
            throw ParseError("edge list: non-integer token '" + tok + "'", line_no);
        }
        if (pos != tok.size())
            throw ParseError("edge list: non-integer token '" + tok + "'", line_no);
        if (one_based) v -= 1;
        if (v < 0) throw ParseError("edge list: negative vertex id", line_no);
        return static_cast<int>(v);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        if (hash != std::string::npos) {
            // recognize the count directive "# n = <count>"
            std::istringstream cs(line.substr(hash + 1));
            std::string key, eq;
            long val;
            if (cs >> key >> eq >> val && key == "n" && eq == "=" && declared_n < 0) {
                if (val < 0) throw ParseError("edge list: negative vertex count", line_no);
                declared_n = static_cast<int>(val);
            }
        }
        std::istringstream ls(body);
        std::string tu, tv;
        if (!(ls >> tu)) continue;  // blank
        if (!(ls >> tv)) throw ParseError("edge list: expected 'u v'", line_no);
        std::string extra;
        if (ls >> extra) throw ParseError("edge list: trailing token '" + extra + "'", line_no);
        int u = parse_id(tu), v = parse_id(tv);
        if (u == v) throw ParseError("edge list: self-loop", line_no);
        if (declared_n >= 0 && (u >= declared_n || v >= declared_n))
            throw ParseError("edge list: vertex id >= declared n", line_no);
        max_id = std::max(max_id, std::max(u, v));
        edges.emplace_back(u, v);
    }
    int n = declared_n >= 0 ? declared_n : max_id + 1;
    return make_graph(n, edges);
}

Graph load_edge_list_file(const std::string& path, bool one_based) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open graph file: " + path);
    return load_edge_list(in, one_based);
}

void save_edge_list(const Graph& g, std::ostream& out, const std::vector<std::string>& header) {
    for (const auto& h : header) out << "# " << h << "\n";
    out << "# n = " << g.n << "\n";
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u])
            if (u < v) out << u << " " << v << "\n";
}

double mean_degree(const Graph& g) {
    return g.n == 0 ? 0.0 : 2.0 * static_cast<double>(g.edge_count) / g.n;
}

}  // namespace iset
