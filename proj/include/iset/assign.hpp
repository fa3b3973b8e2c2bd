#pragma once

#include <cstdint>
#include <vector>

#include "iset/graph.hpp"
#include "iset/partition.hpp"
#include "iset/rng.hpp"

namespace iset {

enum class Scope { independent, auxiliary, all };

/// Binary treatment vector over one vertex list (V_I, V_A, or all of V).
struct Assignment {
    Scope scope = Scope::all;
    std::vector<std::uint8_t> bits;

    int size() const { return static_cast<int>(bits.size()); }
    int count_ones() const;
};

struct OptimizerOptions {
    int restarts = 20;
    int max_iters = 0;        // flip limit per restart; 0 means 10 * n_A
    std::uint64_t seed = 0;
    int exact_threshold = 12; // exhaustive enumeration when n_A <= this (capped at 24)
    bool record_trace = false;

    void validate() const;
};

struct OptimizeResult {
    Assignment assignment;     // scope auxiliary
    double objective = 0.0;
    bool exact = false;        // solved by enumeration
    int restarts_used = 0;
    long flips = 0;
    // accepted objective values per restart, only filled when record_trace
    std::vector<std::vector<double>> traces;
};

/// Direct-design objective: ||Gamma z - rho_target * 1||_1.
double direct_objective(const InterferenceMatrix& gamma, const std::vector<std::uint8_t>& z,
                        double rho_target);

/// Variance objective: z' Gamma' [I - (1/n_I) 1 1'] Gamma z, i.e.
/// n_I * population variance of the exposure vector.
double variance_objective(const InterferenceMatrix& gamma, const std::vector<std::uint8_t>& z);

/// Minimize the L1 deviation of exposures from rho_target over binary
/// auxiliary assignments. Exhaustive enumeration below exact_threshold,
/// otherwise multi-restart steepest-descent single-bit-flip local search
/// (restart inits: all-zero, all-one, round(rho_target), then fair coins;
/// flip ties break to the lowest column index).
OptimizeResult optimize_direct(const InterferenceMatrix& gamma, double rho_target,
                               const OptimizerOptions& opts);

/// Maximize the exposure variance objective over binary auxiliary
/// assignments; same search scheme, steepest ascent.
OptimizeResult optimize_variance(const InterferenceMatrix& gamma, const OptimizerOptions& opts);

/// Completely randomized design: exactly floor(count/2) treated, uniform.
Assignment assign_cr(int count, Rng& rng, Scope scope = Scope::independent);

Assignment assign_constant(int count, int z, Scope scope = Scope::independent);

/// Threshold rule for the total-effect design: z_i = 1 iff rho_i > 0.5.
Assignment assign_threshold(const std::vector<double>& rho);

/// CR over the whole vertex set.
Assignment baseline_full_cr(const Graph& g, Rng& rng);

/// Seeded greedy ball-growing: pick a uniform uncovered vertex, claim it
/// plus its uncovered neighbors as one cluster, repeat until covered.
std::vector<std::vector<int>> greedy_ball_clusters(const Graph& g, Rng& rng);

/// Cluster-level randomization over greedy ball clusters: each cluster is
/// all-treated or all-control by a fair coin.
Assignment baseline_graph_cluster(const Graph& g, Rng& rng);

enum class EgoTreatment {
    block,   // ego follows its cluster's coin (treated cluster: ego and alters all 1)
    one_out, // ego stays control; the coin drives only the alters
};

struct EgoClusterResult {
    std::vector<int> egos;
    std::vector<std::vector<int>> alters;         // per ego
    std::vector<std::uint8_t> cluster_treated;    // per ego
    Assignment assignment;                        // scope all
};

/// Greedy non-overlapping ego clusters: visit vertices in random order and
/// select a vertex as ego when its closed neighborhood is still entirely
/// unclaimed. Unclaimed vertices get iid fair coins.
EgoClusterResult baseline_ego_clusters(const Graph& g, Rng& rng,
                                       EgoTreatment mode = EgoTreatment::block);

}  // namespace iset
