#include "iset/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iset/errors.hpp"
#include "iset/rng.hpp"

namespace iset {

void Partition::validate(const Graph& g) const {
    std::vector<char> role(g.n, 0);  // 0 unseen, 1 independent, 2 auxiliary
    for (int v : independent) {
        if (v < 0 || v >= g.n || role[v]) throw std::logic_error("partition: bad independent list");
        role[v] = 1;
    }
    for (int v : auxiliary) {
        if (v < 0 || v >= g.n || role[v]) throw std::logic_error("partition: bad auxiliary list");
        role[v] = 2;
    }
    for (int v = 0; v < g.n; ++v)
        if (!role[v]) throw std::logic_error("partition: vertex not covered");
    for (int u : independent)
        for (int v : g.adj[u])
            if (role[v] == 1) throw std::logic_error("partition: edge inside independent set");
    for (int u : auxiliary) {
        bool has_independent_neighbor = false;
        for (int v : g.adj[u])
            if (role[v] == 1) {
                has_independent_neighbor = true;
                break;
            }
        if (!has_independent_neighbor)
            throw std::logic_error("partition: auxiliary vertex with no independent neighbor");
    }
}

Partition greedy_independent_set(const Graph& g, std::uint64_t seed, SelectionRule rule) {
    Rng rng(seed);
    std::vector<char> alive(g.n, 1);
    std::vector<int> pool(g.n);
    for (int v = 0; v < g.n; ++v) pool[v] = v;
    std::vector<int> live_degree;
    if (rule == SelectionRule::min_degree) {
        live_degree.resize(g.n);
        for (int v = 0; v < g.n; ++v) live_degree[v] = g.degree(v);
    }

    Partition part;
    auto remove_vertex = [&](int v) {
        alive[v] = 0;
        if (rule == SelectionRule::min_degree)
            for (int w : g.adj[v])
                if (alive[w]) --live_degree[w];
    };

    while (!pool.empty()) {
        int chosen;
        if (rule == SelectionRule::uniform) {
            // draw from the pool, lazily discarding dead entries
            for (;;) {
                std::size_t k = static_cast<std::size_t>(rng.below(pool.size()));
                int v = pool[k];
                if (!alive[v]) {
                    pool[k] = pool.back();
                    pool.pop_back();
                    if (pool.empty()) { chosen = -1; break; }
                    continue;
                }
                chosen = v;
                break;
            }
            if (chosen < 0) break;
        } else {
            int best_deg = g.n + 1;
            std::vector<int> ties;
            std::size_t w = 0;
            for (std::size_t k = 0; k < pool.size(); ++k) {
                int v = pool[k];
                if (!alive[v]) continue;
                pool[w++] = v;
                if (live_degree[v] < best_deg) {
                    best_deg = live_degree[v];
                    ties.assign(1, v);
                } else if (live_degree[v] == best_deg) {
                    ties.push_back(v);
                }
            }
            pool.resize(w);
            if (pool.empty()) break;
            chosen = ties[rng.below(ties.size())];
        }
        part.independent.push_back(chosen);
        remove_vertex(chosen);
        for (int w : g.adj[chosen])
            if (alive[w]) remove_vertex(w);
    }

    std::sort(part.independent.begin(), part.independent.end());
    std::vector<char> in_set(g.n, 0);
    for (int v : part.independent) in_set[v] = 1;
    for (int v = 0; v < g.n; ++v)
        if (!in_set[v]) part.auxiliary.push_back(v);
    return part;
}

InterferenceMatrix::InterferenceMatrix(const Graph& g, const Partition& part)
    : row_vertex_(part.independent),
      col_vertex_(part.auxiliary),
      row_of_(g.n, -1),
      col_of_(g.n, -1) {
    for (int r = 0; r < rows(); ++r) row_of_[row_vertex_[r]] = r;
    for (int c = 0; c < cols(); ++c) col_of_[col_vertex_[c]] = c;
    row_degree_.resize(rows());
    row_cols_.resize(rows());
    col_rows_.resize(cols());
    for (int r = 0; r < rows(); ++r) {
        int i = row_vertex_[r];
        row_degree_[r] = g.degree(i);
        for (int j : g.adj[i]) {
            int c = col_of_[j];
            if (c < 0)
                throw std::logic_error("interference matrix: independent unit with independent neighbor");
            row_cols_[r].push_back(c);
            col_rows_[c].push_back(r);
        }
    }
    for (auto& cr : col_rows_) std::sort(cr.begin(), cr.end());
}

std::vector<double> InterferenceMatrix::exposure(const std::vector<std::uint8_t>& z_aux) const {
    if (static_cast<int>(z_aux.size()) != cols())
        throw DimensionError("exposure: assignment length != n_A");
    std::vector<double> rho(rows(), 0.0);
    for (int r = 0; r < rows(); ++r) {
        if (row_degree_[r] == 0) continue;
        int treated = 0;
        for (int c : row_cols_[r]) treated += z_aux[c];
        rho[r] = static_cast<double>(treated) / row_degree_[r];
    }
    return rho;
}

std::vector<double> exposures(const Graph& g, const std::vector<std::uint8_t>& z_all) {
    if (static_cast<int>(z_all.size()) != g.n)
        throw DimensionError("exposures: assignment length != n");
    std::vector<double> rho(g.n, 0.0);
    for (int v = 0; v < g.n; ++v) {
        if (g.adj[v].empty()) continue;
        int treated = 0;
        for (int w : g.adj[v]) treated += z_all[w];
        rho[v] = static_cast<double>(treated) / g.degree(v);
    }
    return rho;
}

double greedy_size_bound(int n, double s) {
    if (n < 1) throw ParameterError("greedy_size_bound: n must be >= 1");
    if (!(s > 1.0)) throw ParameterError("greedy_size_bound: s must be > 1");
    return std::log(s) / s * n;
}

}  // namespace iset
