#pragma once

#include <cstdint>
#include <vector>

#include "iset/graph.hpp"

namespace iset {

/// Disjoint split of V into an independent set and its complement.
/// Both lists are sorted ascending. Produced by greedy_independent_set;
/// any Partition satisfies: no edge inside `independent`, and every
/// auxiliary vertex has at least one independent neighbor (maximality).
struct Partition {
    std::vector<int> independent;
    std::vector<int> auxiliary;

    int n_independent() const { return static_cast<int>(independent.size()); }
    int n_auxiliary() const { return static_cast<int>(auxiliary.size()); }

    /// Throws std::logic_error if the partition is not a valid maximal
    /// independent-set split of g.
    void validate(const Graph& g) const;
};

enum class SelectionRule {
    uniform,     // pick a remaining vertex uniformly at random (default)
    min_degree,  // pick among remaining vertices of minimum remaining degree
};

/// Greedy extraction: repeatedly pick a remaining vertex, move it into the
/// independent set, and delete it and its neighbors. Deterministic given
/// seed. The min_degree rule is an optional variant that tends to produce
/// larger sets; uniform is the default.
Partition greedy_independent_set(const Graph& g, std::uint64_t seed,
                                 SelectionRule rule = SelectionRule::uniform);

/// Sparse row-normalized interference matrix between the independent set
/// (rows) and the auxiliary set (columns): entry (i,j) = 1/d_i when edge
/// (i,j) exists, where d_i is the degree of i in the full graph. Row r of an
/// independent unit with d_i > 0 has exactly d_i entries (all its neighbors
/// are auxiliary), so the row sums to 1 exactly. Isolated units (d_i = 0)
/// have empty rows and exposure fixed at 0.
class InterferenceMatrix {
public:
    InterferenceMatrix(const Graph& g, const Partition& part);

    int rows() const { return static_cast<int>(row_vertex_.size()); }
    int cols() const { return static_cast<int>(col_vertex_.size()); }

    int row_vertex(int r) const { return row_vertex_[r]; }
    int col_vertex(int c) const { return col_vertex_[c]; }
    int row_degree(int r) const { return row_degree_[r]; }
    bool row_isolated(int r) const { return row_degree_[r] == 0; }

    /// Column indices of row r (sorted). Entry value is 1/row_degree(r).
    const std::vector<int>& row_cols(int r) const { return row_cols_[r]; }
    /// Row indices touching column c (sorted).
    const std::vector<int>& col_rows(int c) const { return col_rows_[c]; }

    /// Row index of a vertex id, or -1 if not an independent unit.
    int row_of(int vertex) const { return row_of_[vertex]; }
    int col_of(int vertex) const { return col_of_[vertex]; }

    /// rho = Gamma * z. Counts treated neighbors as integers and divides by
    /// d_i once, so z = all-ones gives exactly 1.0 on every non-isolated row.
    std::vector<double> exposure(const std::vector<std::uint8_t>& z_aux) const;

private:
    std::vector<int> row_vertex_, col_vertex_;
    std::vector<int> row_degree_;
    std::vector<std::vector<int>> row_cols_, col_rows_;
    std::vector<int> row_of_, col_of_;
};

/// Proportion of treated neighbors for every vertex under a full-graph
/// assignment. Isolated vertices get exposure 0 (their exposure is
/// undefined and they are excluded from exposure-based estimation).
std::vector<double> exposures(const Graph& g, const std::vector<std::uint8_t>& z_all);

/// Asymptotic lower bound (ln s / s) * n on the uniform greedy independent-set
/// size for a sparse random graph of expected average degree s. Requires s > 1.
double greedy_size_bound(int n, double s);

}  // namespace iset
