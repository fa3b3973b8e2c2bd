#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iset/assign.hpp"
#include "iset/estimate.hpp"
#include "iset/graph.hpp"
#include "iset/partition.hpp"
#include "iset/rng.hpp"

namespace iset {

/// Linear potential-outcome generator
///   y_i = alpha + U_i + beta z_i + gamma rho_i + eps_i,
/// U_i ~ Unif(0,1) per unit per replication when unit_shift is on,
/// eps_i ~ Normal(0, sigma). sigma is a standard deviation.
struct OutcomeModel {
    double alpha = 1.0;
    double beta = 20.0;
    double gamma = 10.0;
    double sigma = 0.5;
    bool unit_shift = false;

    /// Lipschitz constant of y in rho under this model.
    double lipschitz() const;
    /// Total noise variance sigma^2 (+ 1/12 when the uniform shift is on).
    double noise_variance() const;
};

struct TrueEffects {
    double direct;
    double spillover;
    double total;
};

TrueEffects true_effects(const OutcomeModel& model);

/// Draws one outcome vector; per unit the stream is consumed as (U, eps).
std::vector<double> sample_outcomes(const OutcomeModel& model,
                                    const std::vector<std::uint8_t>& z,
                                    const std::vector<double>& rho, Rng& rng);

enum class DesignName { is_design, cr, full, graph_cluster, ego_clusters };
enum class Estimand { direct, spillover, total };

std::string design_label(DesignName d);
std::string estimand_label(Estimand e);
std::optional<DesignName> parse_design(const std::string& s);
std::optional<Estimand> parse_estimand(const std::string& s);

struct DesignSpec {
    DesignName name = DesignName::is_design;
    Estimand estimand = Estimand::spillover;
    double rho_target = 0.5;      // direct estimand only
    int spillover_anchor = 0;     // constant Z_I for the IS spillover design
    OptimizerOptions optimizer;   // IS only
};

/// Random-graph generator spec for per-replication regeneration.
struct GraphSpec {
    enum class Family { er, ba, sw };
    Family family = Family::er;
    int n = 100;
    double p = 0.1;  // er, sw
    int m = 1;       // ba
    int k = 4;       // sw

    Graph generate(std::uint64_t seed) const;
    std::string label() const;   // "er" | "ba" | "sw"
    std::string params() const;  // e.g. "n=100 p=0.1"
};

std::optional<GraphSpec::Family> parse_family(const std::string& s);

/// Aggregates over the replications of one (graph config, design) cell.
/// bias is |mean(estimate) - true effect|; mae is mean |estimate - true|,
/// which is the dispersion-inclusive error the benchmark tables track.
struct RunResult {
    std::string graph_label;
    std::string graph_params;
    std::string design;
    std::string estimand;
    double model_gamma = 0.0;
    int reps = 0;
    int used = 0;
    int failures = 0;
    double true_effect = 0.0;
    double mean_estimate = 0.0;
    double bias = 0.0;
    double mae = 0.0;
    double variance = 0.0;   // sample variance across replications (divisor used-1)
    double mean_norm_delta = 0.0;         // NaN when not applicable
    double mean_var_rho = 0.0;            // NaN when not applicable
    double mean_predicted_variance = 0.0; // NaN when not applicable
    std::uint64_t master_seed = 0;
};

struct RepOutcome {
    bool failed = false;
    double estimate = 0.0;
    double norm_delta = 0.0;
    double var_rho = 0.0;
    double predicted_variance = 0.0;
};

/// Runs one replication of a design pipeline on a fixed graph with the given
/// stream; exposed for tests and fixed-graph formula checks.
RepOutcome run_one_replication(const Graph& g, const DesignSpec& design, const OutcomeModel& model,
                               Rng stream);

/// Replication engine over regenerated graphs. Graph r uses generator seed
/// derived from (master_seed, r / reps_per_graph); design randomness and
/// noise use a stream derived from (master_seed, design_salt, r). Results
/// are independent of `threads`.
RunResult run_replications(const GraphSpec& spec, const DesignSpec& design,
                           const OutcomeModel& model, int reps, std::uint64_t master_seed,
                           int reps_per_graph = 1, int threads = 1,
                           std::uint64_t design_salt = 0);

/// Same engine on one fixed graph (the variance formulas condition on it).
RunResult run_replications_fixed(const Graph& g, const DesignSpec& design,
                                 const OutcomeModel& model, int reps, std::uint64_t master_seed,
                                 int threads = 1, std::uint64_t design_salt = 0);

struct BenchmarkConfig {
    std::vector<GraphSpec> graphs;
    std::vector<DesignName> designs;
    Estimand estimand = Estimand::spillover;
    OutcomeModel model;
    std::vector<double> gamma_sweep;  // empty = single run at model.gamma
    int reps = 2000;
    int reps_per_graph = 1;
    std::uint64_t seed = 1;
    int threads = 1;
    double rho_target = 0.5;
    int spillover_anchor = 0;
    OptimizerOptions optimizer;
};

/// Parses the key-value config format (see README). Throws SchemaError on
/// unknown keys, bad values, or an empty graph/design list.
BenchmarkConfig parse_benchmark_config(std::istream& in);
BenchmarkConfig load_benchmark_config(const std::string& path);

/// Full cross product of graphs x designs (x gamma sweep); invalid
/// combinations (ego-clusters with the direct or total estimand) are
/// skipped with a note to `log`. Graph seeds depend only on the row, so all
/// designs in a row see the same graph sequence.
std::vector<RunResult> benchmark_suite(const BenchmarkConfig& config, std::ostream* log = nullptr);

std::string report_csv_header();
std::string to_csv_row(const RunResult& r);
void write_report_csv(const std::vector<RunResult>& rows, std::ostream& out);

}  // namespace iset
