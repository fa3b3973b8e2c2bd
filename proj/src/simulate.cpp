#include "iset/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "iset/errors.hpp"

namespace iset {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double OutcomeModel::lipschitz() const { return std::abs(gamma); }

double OutcomeModel::noise_variance() const {
    return sigma * sigma + (unit_shift ? 1.0 / 12.0 : 0.0);
}

TrueEffects true_effects(const OutcomeModel& model) {
    return TrueEffects{model.beta, model.gamma, model.beta + model.gamma};
}

std::vector<double> sample_outcomes(const OutcomeModel& model, const std::vector<std::uint8_t>& z,
                                    const std::vector<double>& rho, Rng& rng) {
    if (z.size() != rho.size()) throw DimensionError("sample_outcomes: z and rho length mismatch");
    std::vector<double> y(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        double u = model.unit_shift ? rng.uniform01() : 0.0;
        double eps = rng.normal(0.0, model.sigma);
        y[i] = model.alpha + u + model.beta * z[i] + model.gamma * rho[i] + eps;
    }
    return y;
}

std::string design_label(DesignName d) {
    switch (d) {
        case DesignName::is_design: return "IS";
        case DesignName::cr: return "CR";
        case DesignName::full: return "Full";
        case DesignName::graph_cluster: return "GraphCluster";
        case DesignName::ego_clusters: return "EgoClusters";
    }
    return "?";
}

std::string estimand_label(Estimand e) {
    switch (e) {
        case Estimand::direct: return "direct";
        case Estimand::spillover: return "spillover";
        case Estimand::total: return "total";
    }
    return "?";
}

namespace {
std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}
}  // namespace

std::optional<DesignName> parse_design(const std::string& s) {
    std::string t = lower(s);
    if (t == "is") return DesignName::is_design;
    if (t == "cr") return DesignName::cr;
    if (t == "full") return DesignName::full;
    if (t == "graphcluster" || t == "graph_cluster") return DesignName::graph_cluster;
    if (t == "egoclusters" || t == "ego_clusters") return DesignName::ego_clusters;
    return std::nullopt;
}

std::optional<Estimand> parse_estimand(const std::string& s) {
    std::string t = lower(s);
    if (t == "direct") return Estimand::direct;
    if (t == "spillover") return Estimand::spillover;
    if (t == "total") return Estimand::total;
    return std::nullopt;
}

std::optional<GraphSpec::Family> parse_family(const std::string& s) {
    std::string t = lower(s);
    if (t == "er" || t == "erdos-renyi" || t == "erdos_renyi") return GraphSpec::Family::er;
    if (t == "ba" || t == "barabasi-albert" || t == "barabasi_albert") return GraphSpec::Family::ba;
    if (t == "sw" || t == "small-world" || t == "small_world") return GraphSpec::Family::sw;
    return std::nullopt;
}

Graph GraphSpec::generate(std::uint64_t seed) const {
    switch (family) {
        case Family::er: return gen_erdos_renyi(n, p, seed);
        case Family::ba: return gen_barabasi_albert(n, m, seed);
        case Family::sw: return gen_small_world(n, k, p, seed);
    }
    throw ParameterError("graph spec: unknown family");
}

std::string GraphSpec::label() const {
    switch (family) {
        case Family::er: return "er";
        case Family::ba: return "ba";
        case Family::sw: return "sw";
    }
    return "?";
}

std::string GraphSpec::params() const {
    char buf[96];
    switch (family) {
        case Family::er: std::snprintf(buf, sizeof buf, "n=%d p=%g", n, p); break;
        case Family::ba: std::snprintf(buf, sizeof buf, "n=%d m=%d", n, m); break;
        case Family::sw: std::snprintf(buf, sizeof buf, "n=%d k=%d p=%g", n, k, p); break;
    }
    return buf;
}

namespace {

struct UnitData {
    std::vector<std::uint8_t> z;
    std::vector<double> rho;
    std::vector<double> y;
};

// restrict a full-graph assignment to the auxiliary columns of Gamma
std::vector<std::uint8_t> restrict_to_aux(const InterferenceMatrix& gamma,
                                          const std::vector<std::uint8_t>& z_full) {
    std::vector<std::uint8_t> z(gamma.cols());
    for (int c = 0; c < gamma.cols(); ++c) z[c] = z_full[gamma.col_vertex(c)];
    return z;
}

double effective_sigma(const OutcomeModel& model) { return std::sqrt(model.noise_variance()); }

RepOutcome is_direct_rep(const Graph& g, const DesignSpec& design, const OutcomeModel& model,
                         Rng& stream) {
    RepOutcome out;
    out.norm_delta = kNaN;
    out.var_rho = kNaN;
    out.predicted_variance = kNaN;

    Rng part_stream = stream.derive({1});
    Partition part = greedy_independent_set(g, part_stream.next_u64());
    int n_i = part.n_independent();
    if (n_i < 2) {
        out.failed = true;
        return out;
    }
    InterferenceMatrix gamma(g, part);
    OptimizerOptions opts = design.optimizer;
    opts.seed = stream.derive({2}).next_u64();
    OptimizeResult opt = optimize_direct(gamma, design.rho_target, opts);
    std::vector<double> rho = gamma.exposure(opt.assignment.bits);

    double l1 = 0.0;
    for (double r : rho) l1 += std::abs(r - design.rho_target);
    out.norm_delta = l1;
    out.var_rho = population_variance(rho);

    // the balanced difference in means needs equal arms: when n_I is odd one
    // uniformly chosen unit is withheld from the experiment.
    Rng assign_stream = stream.derive({3});
    std::vector<int> keep(n_i);
    std::iota(keep.begin(), keep.end(), 0);
    if (n_i % 2 == 1) {
        int drop = static_cast<int>(assign_stream.below(static_cast<std::uint64_t>(n_i)));
        keep.erase(keep.begin() + drop);
    }
    if (keep.size() < 2) {
        out.failed = true;
        return out;
    }
    Assignment z_i = assign_cr(static_cast<int>(keep.size()), assign_stream);
    std::vector<double> rho_used(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) rho_used[i] = rho[keep[i]];
    Rng outcome_stream = stream.derive({4});
    std::vector<double> y = sample_outcomes(model, z_i.bits, rho_used, outcome_stream);
    out.estimate = diff_in_means(y, z_i.bits);
    return out;
}

RepOutcome is_regression_rep(const Graph& g, const DesignSpec& design, const OutcomeModel& model,
                             Rng& stream) {
    RepOutcome out;
    out.norm_delta = kNaN;
    out.var_rho = kNaN;
    out.predicted_variance = kNaN;

    Rng part_stream = stream.derive({1});
    Partition part = greedy_independent_set(g, part_stream.next_u64());
    InterferenceMatrix gamma(g, part);
    OptimizerOptions opts = design.optimizer;
    opts.seed = stream.derive({2}).next_u64();
    OptimizeResult opt = optimize_variance(gamma, opts);
    std::vector<double> rho_all = gamma.exposure(opt.assignment.bits);

    // isolated units carry no exposure information; keep the rest
    std::vector<int> used;
    for (int r = 0; r < gamma.rows(); ++r)
        if (!gamma.row_isolated(r)) used.push_back(r);
    if (used.size() < 3) {
        out.failed = true;
        return out;
    }
    std::vector<double> rho(used.size());
    for (std::size_t i = 0; i < used.size(); ++i) rho[i] = rho_all[used[i]];
    out.var_rho = population_variance(rho);

    std::vector<std::uint8_t> z;
    if (design.estimand == Estimand::spillover) {
        z.assign(used.size(), static_cast<std::uint8_t>(design.spillover_anchor));
    } else {
        // total effect: threshold rule on the realized exposures
        Assignment thr = assign_threshold(rho);
        z = thr.bits;
    }

    Rng outcome_stream = stream.derive({4});
    std::vector<double> y = sample_outcomes(model, z, rho, outcome_stream);
    try {
        OlsFit fit = ols_fit(z, rho, y);
        if (design.estimand == Estimand::spillover) {
            out.estimate = spillover_estimate(fit);
            out.predicted_variance = predicted_var_spillover(effective_sigma(model), rho);
        } else {
            out.estimate = total_estimate(fit);
            out.predicted_variance = predicted_var_total(effective_sigma(model), z, rho).value;
        }
    } catch (const DegenerateDesignError&) {
        out.failed = true;
    }
    return out;
}

RepOutcome cr_rep(const Graph& g, const DesignSpec& design, const OutcomeModel& model,
                  Rng& stream) {
    RepOutcome out;
    out.norm_delta = kNaN;
    out.var_rho = kNaN;
    out.predicted_variance = kNaN;

    Rng part_stream = stream.derive({1});
    Partition part = greedy_independent_set(g, part_stream.next_u64());
    InterferenceMatrix gamma(g, part);
    Rng assign_stream = stream.derive({3});
    Assignment z_full = baseline_full_cr(g, assign_stream);
    std::vector<double> rho_all = gamma.exposure(restrict_to_aux(gamma, z_full.bits));

    std::vector<int> used;
    for (int r = 0; r < gamma.rows(); ++r)
        if (design.estimand == Estimand::direct || !gamma.row_isolated(r)) used.push_back(r);
    std::size_t min_units = design.estimand == Estimand::direct ? 2 : 3;
    if (used.size() < min_units) {
        out.failed = true;
        return out;
    }
    std::vector<double> rho(used.size());
    std::vector<std::uint8_t> z(used.size());
    for (std::size_t i = 0; i < used.size(); ++i) {
        rho[i] = rho_all[used[i]];
        z[i] = z_full.bits[gamma.row_vertex(used[i])];
    }
    out.var_rho = population_variance(rho);

    Rng outcome_stream = stream.derive({4});
    std::vector<double> y = sample_outcomes(model, z, rho, outcome_stream);
    try {
        if (design.estimand == Estimand::direct) {
            out.estimate = mean_difference(y, z);
        } else {
            OlsFit fit = ols_fit(z, rho, y);
            out.estimate = design.estimand == Estimand::spillover ? spillover_estimate(fit)
                                                                  : total_estimate(fit);
        }
    } catch (const DegenerateDesignError&) {
        out.failed = true;
    }
    return out;
}

// Nonparametric exposure contrast used by the Full and GraphCluster
// spillover baselines: among control units, compare the top and bottom
// exposure quartiles and rescale by the achieved exposure gap.
bool wald_exposure_contrast(const Graph& g, const std::vector<std::uint8_t>& z_full,
                            const std::vector<double>& rho_all, const std::vector<double>& y_all,
                            double* estimate) {
    std::vector<int> controls;
    for (int v = 0; v < g.n; ++v)
        if (!z_full[v] && g.degree(v) > 0) controls.push_back(v);
    int m = static_cast<int>(controls.size());
    int q = m / 4;
    if (q < 2) return false;
    std::sort(controls.begin(), controls.end(), [&](int a, int b) {
        if (rho_all[a] != rho_all[b]) return rho_all[a] < rho_all[b];
        return a < b;
    });
    double y_lo = 0.0, y_hi = 0.0, r_lo = 0.0, r_hi = 0.0;
    for (int i = 0; i < q; ++i) {
        y_lo += y_all[controls[i]];
        r_lo += rho_all[controls[i]];
        y_hi += y_all[controls[m - 1 - i]];
        r_hi += rho_all[controls[m - 1 - i]];
    }
    double gap = (r_hi - r_lo) / q;
    if (gap <= 1e-9) return false;
    *estimate = (y_hi - y_lo) / q / gap;
    return true;
}

RepOutcome full_graph_rep(const Graph& g, const DesignSpec& design, const OutcomeModel& model,
                          Rng& stream) {
    RepOutcome out;
    out.norm_delta = kNaN;
    out.var_rho = kNaN;
    out.predicted_variance = kNaN;

    Rng assign_stream = stream.derive({3});
    Assignment z_full = design.name == DesignName::full ? baseline_full_cr(g, assign_stream)
                                                        : baseline_graph_cluster(g, assign_stream);
    std::vector<double> rho_all = exposures(g, z_full.bits);
    Rng outcome_stream = stream.derive({4});
    std::vector<double> y_all = sample_outcomes(model, z_full.bits, rho_all, outcome_stream);

    std::vector<double> rho_active;
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) > 0) rho_active.push_back(rho_all[v]);
    out.var_rho = population_variance(rho_active);

    try {
        if (design.estimand == Estimand::direct) {
            out.estimate = mean_difference(y_all, z_full.bits);
        } else if (design.estimand == Estimand::spillover) {
            double est;
            if (!wald_exposure_contrast(g, z_full.bits, rho_all, y_all, &est)) {
                out.failed = true;
                return out;
            }
            out.estimate = est;
        } else {
            std::vector<std::uint8_t> z;
            std::vector<double> rho, y;
            for (int v = 0; v < g.n; ++v)
                if (g.degree(v) > 0) {
                    z.push_back(z_full.bits[v]);
                    rho.push_back(rho_all[v]);
                    y.push_back(y_all[v]);
                }
            OlsFit fit = ols_fit(z, rho, y);
            out.estimate = total_estimate(fit);
        }
    } catch (const DegenerateDesignError&) {
        out.failed = true;
    }
    return out;
}

RepOutcome ego_rep(const Graph& g, const DesignSpec& design, const OutcomeModel& model,
                   Rng& stream) {
    if (design.estimand != Estimand::spillover)
        throw ParameterError("ego-clusters design supports the spillover estimand only");
    RepOutcome out;
    out.norm_delta = kNaN;
    out.var_rho = kNaN;
    out.predicted_variance = kNaN;

    Rng assign_stream = stream.derive({3});
    // one-out assignment: egos stay control, the cluster coin drives the
    // alters, so each ego realizes exposure exactly 0 or 1
    EgoClusterResult ego = baseline_ego_clusters(g, assign_stream, EgoTreatment::one_out);
    std::vector<double> rho_all = exposures(g, ego.assignment.bits);
    Rng outcome_stream = stream.derive({4});
    std::vector<double> y_all = sample_outcomes(model, ego.assignment.bits, rho_all, outcome_stream);

    double sum_t = 0.0, sum_c = 0.0;
    int n_t = 0, n_c = 0;
    std::vector<double> rho_egos;
    for (std::size_t e = 0; e < ego.egos.size(); ++e) {
        int v = ego.egos[e];
        if (g.degree(v) == 0) continue;  // isolated ego has no exposure
        rho_egos.push_back(rho_all[v]);
        if (ego.cluster_treated[e]) {
            sum_t += y_all[v];
            ++n_t;
        } else {
            sum_c += y_all[v];
            ++n_c;
        }
    }
    if (n_t == 0 || n_c == 0) {
        out.failed = true;
        return out;
    }
    out.var_rho = population_variance(rho_egos);
    out.estimate = sum_t / n_t - sum_c / n_c;
    return out;
}

}  // namespace

RepOutcome run_one_replication(const Graph& g, const DesignSpec& design, const OutcomeModel& model,
                               Rng stream) {
    switch (design.name) {
        case DesignName::is_design:
            return design.estimand == Estimand::direct ? is_direct_rep(g, design, model, stream)
                                                       : is_regression_rep(g, design, model, stream);
        case DesignName::cr:
            return cr_rep(g, design, model, stream);
        case DesignName::full:
        case DesignName::graph_cluster:
            return full_graph_rep(g, design, model, stream);
        case DesignName::ego_clusters:
            return ego_rep(g, design, model, stream);
    }
    throw ParameterError("unknown design");
}

namespace {

RunResult aggregate(std::vector<RepOutcome>&& outcomes, const DesignSpec& design,
                    const OutcomeModel& model, std::uint64_t master_seed) {
    TrueEffects effects = true_effects(model);
    double truth = design.estimand == Estimand::direct
                       ? effects.direct
                       : (design.estimand == Estimand::spillover ? effects.spillover : effects.total);
    RunResult r;
    r.design = design_label(design.name);
    r.estimand = estimand_label(design.estimand);
    r.model_gamma = model.gamma;
    r.reps = static_cast<int>(outcomes.size());
    r.true_effect = truth;
    r.master_seed = master_seed;

    double sum = 0.0, abs_sum = 0.0;
    double nd_sum = 0.0, vr_sum = 0.0, pv_sum = 0.0;
    int nd_n = 0, vr_n = 0, pv_n = 0;
    for (const RepOutcome& o : outcomes) {
        if (o.failed) {
            ++r.failures;
            continue;
        }
        ++r.used;
        sum += o.estimate;
        abs_sum += std::abs(o.estimate - truth);
        if (!std::isnan(o.norm_delta)) {
            nd_sum += o.norm_delta;
            ++nd_n;
        }
        if (!std::isnan(o.var_rho)) {
            vr_sum += o.var_rho;
            ++vr_n;
        }
        if (!std::isnan(o.predicted_variance)) {
            pv_sum += o.predicted_variance;
            ++pv_n;
        }
    }
    if (r.used == 0) {
        r.mean_estimate = r.bias = r.mae = r.variance = kNaN;
    } else {
        r.mean_estimate = sum / r.used;
        r.bias = std::abs(r.mean_estimate - truth);
        r.mae = abs_sum / r.used;
        if (r.used >= 2) {
            double ss = 0.0;
            for (const RepOutcome& o : outcomes)
                if (!o.failed) ss += (o.estimate - r.mean_estimate) * (o.estimate - r.mean_estimate);
            r.variance = ss / (r.used - 1);
        } else {
            r.variance = kNaN;
        }
    }
    r.mean_norm_delta = nd_n ? nd_sum / nd_n : kNaN;
    r.mean_var_rho = vr_n ? vr_sum / vr_n : kNaN;
    r.mean_predicted_variance = pv_n ? pv_sum / pv_n : kNaN;
    return r;
}

constexpr std::uint64_t kGraphSalt = 0x67726170685fULL;
constexpr std::uint64_t kRepSalt = 0x7265705fULL;

}  // namespace

RunResult run_replications(const GraphSpec& spec, const DesignSpec& design,
                           const OutcomeModel& model, int reps, std::uint64_t master_seed,
                           int reps_per_graph, int threads, std::uint64_t design_salt) {
    if (reps < 2) throw ParameterError("run_replications: reps must be >= 2");
    if (reps_per_graph < 1) reps_per_graph = 1;
    if (threads < 1) threads = 1;
    Rng root(master_seed);
    int n_groups = (reps + reps_per_graph - 1) / reps_per_graph;
    std::vector<RepOutcome> outcomes(reps);

    std::atomic<int> next_group{0};
    auto worker = [&]() {
        for (;;) {
            int gi = next_group.fetch_add(1);
            if (gi >= n_groups) break;
            Rng graph_stream = root.derive({kGraphSalt, static_cast<std::uint64_t>(gi)});
            Graph g = spec.generate(graph_stream.next_u64());
            int lo = gi * reps_per_graph;
            int hi = std::min(reps, lo + reps_per_graph);
            for (int rep = lo; rep < hi; ++rep) {
                Rng stream = root.derive({kRepSalt, design_salt, static_cast<std::uint64_t>(rep)});
                outcomes[rep] = run_one_replication(g, design, model, stream);
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    RunResult r = aggregate(std::move(outcomes), design, model, master_seed);
    r.graph_label = spec.label();
    r.graph_params = spec.params();
    r.reps = reps;
    return r;
}

RunResult run_replications_fixed(const Graph& g, const DesignSpec& design,
                                 const OutcomeModel& model, int reps, std::uint64_t master_seed,
                                 int threads, std::uint64_t design_salt) {
    if (reps < 2) throw ParameterError("run_replications: reps must be >= 2");
    if (threads < 1) threads = 1;
    Rng root(master_seed);
    std::vector<RepOutcome> outcomes(reps);
    std::atomic<int> next_rep{0};
    auto worker = [&]() {
        for (;;) {
            int rep = next_rep.fetch_add(1);
            if (rep >= reps) break;
            Rng stream = root.derive({kRepSalt, design_salt, static_cast<std::uint64_t>(rep)});
            outcomes[rep] = run_one_replication(g, design, model, stream);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    RunResult r = aggregate(std::move(outcomes), design, model, master_seed);
    r.graph_label = "fixed";
    char buf[32];
    std::snprintf(buf, sizeof buf, "n=%d", g.n);
    r.graph_params = buf;
    r.reps = reps;
    return r;
}

std::vector<RunResult> benchmark_suite(const BenchmarkConfig& config, std::ostream* log) {
    std::vector<double> gammas = config.gamma_sweep;
    if (gammas.empty()) gammas.push_back(config.model.gamma);
    Rng cfg_root(config.seed);
    std::vector<RunResult> rows;
    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
        OutcomeModel model = config.model;
        model.gamma = gammas[gi];
        for (std::size_t row = 0; row < config.graphs.size(); ++row) {
            Rng row_stream =
                cfg_root.derive({static_cast<std::uint64_t>(gi), static_cast<std::uint64_t>(row)});
            std::uint64_t row_master = row_stream.next_u64();
            for (std::size_t di = 0; di < config.designs.size(); ++di) {
                DesignName d = config.designs[di];
                if (d == DesignName::ego_clusters && config.estimand != Estimand::spillover) {
                    if (log)
                        *log << "skip: ego-clusters does not support estimand '"
                             << estimand_label(config.estimand) << "'\n";
                    continue;
                }
                DesignSpec ds;
                ds.name = d;
                ds.estimand = config.estimand;
                ds.rho_target = config.rho_target;
                ds.spillover_anchor = config.spillover_anchor;
                ds.optimizer = config.optimizer;
                RunResult r =
                    run_replications(config.graphs[row], ds, model, config.reps, row_master,
                                     config.reps_per_graph, config.threads, di + 1);
                if (log)
                    *log << "done: " << r.graph_label << " " << r.graph_params << " " << r.design
                         << " gamma=" << model.gamma << " bias=" << r.bias << " mae=" << r.mae
                         << " var=" << r.variance << "\n";
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

namespace {
std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}
}  // namespace

std::string report_csv_header() {
    return "graph,params,design,estimand,bias,variance,reps,failures,mean_norm_delta,"
           "mean_var_rho,mae,mean_estimate,true_effect,reps_used,gamma,seed";
}

std::string to_csv_row(const RunResult& r) {
    std::ostringstream os;
    os << r.graph_label << "," << r.graph_params << "," << r.design << "," << r.estimand << ","
       << fmt(r.bias) << "," << fmt(r.variance) << "," << r.reps << "," << r.failures << ","
       << fmt(r.mean_norm_delta) << "," << fmt(r.mean_var_rho) << "," << fmt(r.mae) << ","
       << fmt(r.mean_estimate) << "," << fmt(r.true_effect) << "," << r.used << ","
       << fmt(r.model_gamma) << "," << r.master_seed;
    return os.str();
}

void write_report_csv(const std::vector<RunResult>& rows, std::ostream& out) {
    out << report_csv_header() << "\n";
    for (const auto& r : rows) out << to_csv_row(r) << "\n";
}

namespace {

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw SchemaError("invalid integer for key '" + key + "': " + value);
    }
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw SchemaError("invalid number for key '" + key + "': " + value);
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    std::string t = lower(value);
    if (t == "on" || t == "true" || t == "1" || t == "yes") return true;
    if (t == "off" || t == "false" || t == "0" || t == "no") return false;
    throw SchemaError("invalid boolean for key '" + key + "': " + value);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

GraphSpec parse_graph_line(const std::string& value) {
    std::istringstream is(value);
    std::string fam;
    is >> fam;
    auto family = parse_family(fam);
    if (!family) throw SchemaError("unknown graph family '" + fam + "'");
    GraphSpec spec;
    spec.family = *family;
    bool saw_n = false;
    std::string tok;
    while (is >> tok) {
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw SchemaError("graph parameter must be key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "n") {
            spec.n = to_int("graph.n", val);
            saw_n = true;
        } else if (key == "p") {
            spec.p = to_double("graph.p", val);
        } else if (key == "m") {
            spec.m = to_int("graph.m", val);
        } else if (key == "k") {
            spec.k = to_int("graph.k", val);
        } else {
            throw SchemaError("unknown graph parameter '" + key + "'");
        }
    }
    if (!saw_n) throw SchemaError("graph entry is missing n");
    return spec;
}

}  // namespace

BenchmarkConfig parse_benchmark_config(std::istream& in) {
    BenchmarkConfig config;
    std::string line;
    bool saw_estimand = false;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw SchemaError("expected 'key = value': " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw SchemaError("expected 'key = value': " + line);

        if (key == "reps") {
            config.reps = to_int(key, value);
        } else if (key == "reps_per_graph") {
            config.reps_per_graph = to_int(key, value);
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(std::stoull(value));
        } else if (key == "threads") {
            config.threads = to_int(key, value);
        } else if (key == "estimand") {
            auto e = parse_estimand(value);
            if (!e) throw SchemaError("unknown estimand '" + value + "'");
            config.estimand = *e;
            saw_estimand = true;
        } else if (key == "rho_target") {
            config.rho_target = to_double(key, value);
        } else if (key == "spillover_anchor") {
            config.spillover_anchor = to_int(key, value);
        } else if (key == "model.alpha") {
            config.model.alpha = to_double(key, value);
        } else if (key == "model.beta") {
            config.model.beta = to_double(key, value);
        } else if (key == "model.gamma") {
            config.model.gamma = to_double(key, value);
        } else if (key == "model.sigma") {
            config.model.sigma = to_double(key, value);
        } else if (key == "model.unit_shift") {
            config.model.unit_shift = to_bool(key, value);
        } else if (key == "optimizer.restarts") {
            config.optimizer.restarts = to_int(key, value);
        } else if (key == "optimizer.max_iters") {
            config.optimizer.max_iters = to_int(key, value);
        } else if (key == "optimizer.exact_threshold") {
            config.optimizer.exact_threshold = to_int(key, value);
        } else if (key == "gamma_sweep") {
            std::istringstream gs(value);
            std::string tok;
            config.gamma_sweep.clear();
            while (gs >> tok) config.gamma_sweep.push_back(to_double(key, tok));
            if (config.gamma_sweep.empty()) throw SchemaError("gamma_sweep has no values");
        } else if (key == "graph") {
            config.graphs.push_back(parse_graph_line(value));
        } else if (key == "design") {
            auto d = parse_design(value);
            if (!d) throw SchemaError("unknown design '" + value + "'");
            config.designs.push_back(*d);
        } else {
            throw SchemaError("unknown key '" + key + "'");
        }
    }
    if (config.graphs.empty()) throw SchemaError("config has no 'graph' entries");
    if (config.designs.empty()) throw SchemaError("config has no 'design' entries");
    if (config.reps < 2) throw SchemaError("reps must be >= 2");
    if (!saw_estimand) throw SchemaError("config is missing 'estimand'");
    config.optimizer.validate();
    return config;
}

BenchmarkConfig load_benchmark_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    return parse_benchmark_config(in);
}

}  // namespace iset
