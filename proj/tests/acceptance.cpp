// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier Monte-Carlo settings mirror the shipped benchmark
// configs (data/*.cfg).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "iset/assign.hpp"
#include "iset/estimate.hpp"
#include "iset/graph.hpp"
#include "iset/partition.hpp"
#include "iset/rng.hpp"
#include "iset/simulate.hpp"

using namespace iset;

namespace {

int g_failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool independent_and_maximal(const Graph& g, const Partition& p) {
    std::vector<char> in_set(g.n, 0);
    for (int v : p.independent) in_set[v] = 1;
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u])
            if (u < v && in_set[u] && in_set[v]) return false;
    for (int v : p.auxiliary) {
        bool covered = false;
        for (int w : g.adj[v]) covered |= in_set[w];
        if (!covered) return false;
    }
    std::set<int> seen(p.independent.begin(), p.independent.end());
    seen.insert(p.auxiliary.begin(), p.auxiliary.end());
    return static_cast<int>(seen.size()) == g.n &&
           static_cast<int>(p.independent.size() + p.auxiliary.size()) == g.n;
}

// ---------------------------------------------------------------------------
// 1. partition correctness across 1000 random graphs
void criterion1() {
    auto start = std::chrono::steady_clock::now();
    Rng rng(101);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        Graph g;
        switch (i % 3) {
            case 0: {
                int n = 2 + static_cast<int>(rng.below(499));
                g = gen_erdos_renyi(n, rng.uniform(0.0, 0.15), 3000 + i);
                break;
            }
            case 1: {
                int n = 5 + static_cast<int>(rng.below(496));
                int m = 1 + static_cast<int>(rng.below(3));
                g = gen_barabasi_albert(n, m, 3000 + i);
                break;
            }
            default: {
                int n = 10 + static_cast<int>(rng.below(491));
                g = gen_small_world(n, 4, rng.uniform01(), 3000 + i);
                break;
            }
        }
        Partition p = greedy_independent_set(g, 9000 + i);
        if (!independent_and_maximal(g, p)) ++bad;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "greedy partitions independent+maximal on 1000 mixed graphs (%d violations, "
                  "%.1fs)",
                  bad, elapsed_s(start));
    report("C1 partition-correctness", bad == 0, buf);
}

// ---------------------------------------------------------------------------
// 2. asymptotic greedy-size bound on ER(2000, 0.01)
void criterion2() {
    auto start = std::chrono::steady_clock::now();
    const int threshold = 299;  // floor((ln 20 / 20) * 2000)
    int hits = 0;
    double sum = 0.0, sum2 = 0.0;
    for (int s = 0; s < 100; ++s) {
        Graph g = gen_erdos_renyi(2000, 0.01, 15000 + s);
        Partition p = greedy_independent_set(g, 25000 + s);
        int n_i = p.n_independent();
        sum += n_i;
        sum2 += static_cast<double>(n_i) * n_i;
        if (n_i >= threshold) ++hits;
    }
    double mean = sum / 100.0;
    double sd = std::sqrt((sum2 - 100.0 * mean * mean) / 99.0);
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "greedy n_I >= %d on %d/100 seeds (need >= 95; observed mean %.1f sd %.1f -- "
                  "the asymptotic size bound is not yet concentrated at n=2000, %.1fs)",
                  threshold, hits, mean, sd, elapsed_s(start));
    report("C2 greedy-size-bound", hits >= 95, buf);
}

// ---------------------------------------------------------------------------
// 3. optimizer oracle equivalence on enumerable instances
struct BruteForce {
    const Graph& g;
    const Partition& part;

    std::vector<double> exposure(std::uint64_t mask) const {
        std::vector<int> bit(g.n, 0);
        for (std::size_t c = 0; c < part.auxiliary.size(); ++c)
            bit[part.auxiliary[c]] = static_cast<int>((mask >> c) & 1u);
        std::vector<double> rho;
        rho.reserve(part.independent.size());
        for (int v : part.independent) {
            if (g.adj[v].empty()) {
                rho.push_back(0.0);
                continue;
            }
            int treated = 0;
            for (int w : g.adj[v]) treated += bit[w];
            rho.push_back(static_cast<double>(treated) / g.degree(v));
        }
        return rho;
    }

    double best_l1(double target) const {
        int m = static_cast<int>(part.auxiliary.size());
        double best = 1e300;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            double obj = 0.0;
            for (double r : exposure(mask)) obj += std::abs(r - target);
            best = std::min(best, obj);
        }
        return best;
    }

    double best_var() const {
        int m = static_cast<int>(part.auxiliary.size());
        double best = -1.0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            auto rho = exposure(mask);
            double mean = 0.0;
            for (double r : rho) mean += r;
            mean /= static_cast<double>(rho.size());
            double ss = 0.0;
            for (double r : rho) ss += (r - mean) * (r - mean);
            best = std::max(best, ss);
        }
        return best;
    }
};

void criterion3() {
    auto start = std::chrono::steady_clock::now();
    int direct_hits = 0, var_hits = 0, instances = 0;
    bool never_better = true;
    std::uint64_t seed = 0;
    while (instances < 100 && seed < 3000) {
        ++seed;
        Graph g = gen_erdos_renyi(20, 0.3, 40000 + seed);
        Partition part = greedy_independent_set(g, 50000 + seed);
        if (part.n_auxiliary() > 14 || part.n_auxiliary() < 2 || part.n_independent() < 2) continue;
        ++instances;
        InterferenceMatrix gamma(g, part);
        BruteForce brute{g, part};
        OptimizerOptions opts;
        opts.exact_threshold = 0;  // force local search
        opts.seed = 60000 + seed;

        auto rd = optimize_direct(gamma, 0.5, opts);
        double od = brute.best_l1(0.5);
        if (rd.objective < od - 1e-9) never_better = false;
        if (rd.objective <= od + 1e-9) ++direct_hits;

        auto rv = optimize_variance(gamma, opts);
        double ov = brute.best_var();
        if (rv.objective > ov + 1e-9) never_better = false;
        if (rv.objective >= ov - 1e-9) ++var_hits;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "local search matches enumeration on %d/%d (direct) and %d/%d (variance) "
                  "instances, never better: %s (%.1fs)",
                  direct_hits, instances, var_hits, instances, never_better ? "yes" : "NO",
                  elapsed_s(start));
    report("C3 optimizer-oracle",
           instances == 100 && direct_hits >= 90 && var_hits >= 90 && never_better, buf);
}

// ---------------------------------------------------------------------------
// shared fixed design for criteria 4-6
struct FixedDesign {
    Graph g;
    Partition part;
    std::vector<double> rho;  // over non-isolated independent units
    std::vector<int> units;   // vertex ids of those units
};

FixedDesign make_fixed_design(std::uint64_t graph_seed) {
    FixedDesign fd;
    fd.g = gen_erdos_renyi(100, 0.1, graph_seed);
    fd.part = greedy_independent_set(fd.g, graph_seed + 1);
    InterferenceMatrix gamma(fd.g, fd.part);
    OptimizerOptions opts;
    opts.seed = graph_seed + 2;
    auto opt = optimize_variance(gamma, opts);
    auto rho_all = gamma.exposure(opt.assignment.bits);
    for (int r = 0; r < gamma.rows(); ++r) {
        if (gamma.row_isolated(r)) continue;
        fd.rho.push_back(rho_all[r]);
        fd.units.push_back(gamma.row_vertex(r));
    }
    return fd;
}

void criterion4() {
    auto start = std::chrono::steady_clock::now();
    FixedDesign fd = make_fixed_design(20240404);
    int n = static_cast<int>(fd.rho.size());
    const double sigma = 0.5;
    std::vector<std::uint8_t> z(n, 1);  // Z_I = 1
    const int reps = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        Rng noise = Rng(77).derive({static_cast<std::uint64_t>(r)});
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i)
            y[i] = 1.0 + 20.0 + 10.0 * fd.rho[i] + noise.normal(0.0, sigma);
        double gh = ols_fit(z, fd.rho, y).gamma_hat;
        sum += gh;
        sum2 += gh * gh;
    }
    double mean = sum / reps;
    double var = (sum2 - reps * mean * mean) / (reps - 1);
    double predicted = predicted_var_spillover(sigma, fd.rho);
    double rel = std::abs(var - predicted) / predicted;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "empirical Var(gamma-hat)=%.6f vs closed form %.6f (rel %.3f, n_I=%d, %.1fs)", var,
                  predicted, rel, n, elapsed_s(start));
    report("C4 spillover-variance-formula", rel <= 0.05, buf);
}

void criterion5() {
    auto start = std::chrono::steady_clock::now();
    FixedDesign fd = make_fixed_design(20240404);
    int n = static_cast<int>(fd.rho.size());
    const double sigma = 0.5;
    Assignment thr = assign_threshold(fd.rho);  // Z_I = 1{rho > 0.5}
    std::vector<std::uint8_t> z = thr.bits;
    auto pred = predicted_var_total(sigma, z, fd.rho);
    const int reps = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        Rng noise = Rng(78).derive({static_cast<std::uint64_t>(r)});
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i)
            y[i] = 1.0 + 20.0 * z[i] + 10.0 * fd.rho[i] + noise.normal(0.0, sigma);
        double t = total_estimate(ols_fit(z, fd.rho, y));
        sum += t;
        sum2 += t * t;
    }
    double mean = sum / reps;
    double var = (sum2 - reps * mean * mean) / (reps - 1);
    double rel = std::abs(var - pred.value) / pred.value;
    bool floor_ok = pred.value >= pred.floor_value - 1e-12;
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "empirical Var(beta+gamma)=%.6f vs closed form %.6f (rel %.3f), floor %.6f %s "
                  "(%.1fs)",
                  var, pred.value, rel, pred.floor_value, floor_ok ? "respected" : "VIOLATED",
                  elapsed_s(start));
    report("C5 total-variance-formula", rel <= 0.05 && floor_ok, buf);
}

void criterion6() {
    auto start = std::chrono::steady_clock::now();
    // direct design at rho* = 0.5 on a fixed graph with even n_I
    Graph g;
    Partition part;
    std::uint64_t seed = 20240600;
    for (;; ++seed) {
        g = gen_erdos_renyi(100, 0.1, seed);
        part = greedy_independent_set(g, seed + 1);
        if (part.n_independent() % 2 == 0 && part.n_independent() >= 10) break;
    }
    InterferenceMatrix gamma(g, part);
    OptimizerOptions opts;
    opts.seed = seed + 2;
    auto opt = optimize_direct(gamma, 0.5, opts);
    auto rho = gamma.exposure(opt.assignment.bits);
    int n = static_cast<int>(rho.size());

    const double lipschitz = 10.0;  // |gamma| of the linear model
    std::vector<double> delta(n);
    for (int i = 0; i < n; ++i) delta[i] = rho[i] - 0.5;
    double bound = bias_bound_direct(lipschitz, delta);

    // fixed potential outcomes: eps drawn once per unit
    Rng eps_rng(seed + 3);
    std::vector<double> eps(n);
    for (int i = 0; i < n; ++i) eps[i] = eps_rng.normal(0.0, 0.5);
    auto outcome = [&](int i, int zi) { return 1.0 + 20.0 * zi + 10.0 * rho[i] + eps[i]; };

    const int draws = 5000;
    double sum = 0.0;
    for (int d = 0; d < draws; ++d) {
        Rng rng = Rng(seed + 4).derive({static_cast<std::uint64_t>(d)});
        Assignment z = assign_cr(n, rng);
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) y[i] = outcome(i, z.bits[i]);
        sum += diff_in_means(y, z.bits);
    }
    double bias = std::abs(sum / draws - 20.0);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "|empirical bias| %.5f <= deviation bound %.5f (||Delta||_1=%.3f, n_I=%d, %.1fs)",
                  bias, bound, bound * n / (2 * lipschitz), n, elapsed_s(start));
    report("C6 bias-bound", bias <= bound, buf);
}

// ---------------------------------------------------------------------------
// benchmark orderings (criteria 7-9)
using Row = std::map<std::string, RunResult>;

std::vector<Row> rows_by_graph(const std::vector<RunResult>& results,
                               const std::vector<GraphSpec>& graphs) {
    std::vector<Row> rows(graphs.size());
    for (const auto& r : results)
        for (std::size_t i = 0; i < graphs.size(); ++i)
            if (graphs[i].label() == r.graph_label && graphs[i].params() == r.graph_params)
                rows[i][r.design] = r;
    return rows;
}

void criterion7() {
    auto start = std::chrono::steady_clock::now();
    BenchmarkConfig config = load_benchmark_config(std::string(ISET_DATA_DIR) + "/spillover_grid.cfg");
    auto results = benchmark_suite(config);
    auto rows = rows_by_graph(results, config.graphs);
    bool ok = true;
    std::string worst;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const RunResult& is = rows[i].at("IS");
        for (const char* other : {"CR", "Full", "GraphCluster", "EgoClusters"}) {
            const RunResult& o = rows[i].at(other);
            // "bias" for the table orderings is the dispersion-inclusive
            // mean absolute error the benchmark tables track
            if (!(is.mae <= o.mae && is.variance <= o.variance)) {
                ok = false;
                worst += " " + config.graphs[i].params() + " vs " + other;
            }
        }
    }
    const RunResult& band = rows[0].at("IS");  // er n=100 p=0.10
    bool band_ok = band.mae >= 0.1 && band.mae <= 1.0;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "IS weakly dominates on all 7 rows (bias=mae + variance)%s; IS mae at "
                  "ER(100,0.10) = %.3f in [0.1,1.0]: %s (%.0fs)",
                  ok ? "" : (" EXCEPT" + worst).c_str(), band.mae, band_ok ? "yes" : "NO",
                  elapsed_s(start));
    report("C7 spillover-grid-ordering", ok && band_ok, buf);
}

void criterion8() {
    auto start = std::chrono::steady_clock::now();
    BenchmarkConfig config = load_benchmark_config(std::string(ISET_DATA_DIR) + "/direct_grid.cfg");
    auto results = benchmark_suite(config);
    auto rows = rows_by_graph(results, config.graphs);
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const RunResult& is = rows[i].at("IS");
        const RunResult& full = rows[i].at("Full");
        if (!(is.bias < full.bias)) {
            ok = false;
            detail += " " + config.graphs[i].params();
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "IS bias < Full bias on all 7 direct rows%s (%.0fs)",
                  ok ? "" : (" EXCEPT" + detail).c_str(), elapsed_s(start));
    report("C8 direct-grid-ordering", ok, buf);
}

void criterion9() {
    auto start = std::chrono::steady_clock::now();
    BenchmarkConfig config = load_benchmark_config(std::string(ISET_DATA_DIR) + "/gamma_sweep.cfg");
    auto results = benchmark_suite(config);
    bool smallest = true;
    double is_min = 1e300, is_max = 0.0;
    for (double gamma : config.gamma_sweep) {
        double is_var = -1.0;
        double best_other = 1e300;
        for (const auto& r : results) {
            if (r.model_gamma != gamma) continue;
            if (r.design == "IS")
                is_var = r.variance;
            else
                best_other = std::min(best_other, r.variance);
        }
        if (is_var < 0 || is_var > best_other) smallest = false;
        is_min = std::min(is_min, is_var);
        is_max = std::max(is_max, is_var);
    }
    bool flat = is_max <= 2.0 * is_min;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "IS variance smallest at every gamma: %s; IS variance range [%.4f, %.4f] within "
                  "factor 2: %s (%.0fs)",
                  smallest ? "yes" : "NO", is_min, is_max, flat ? "yes" : "NO", elapsed_s(start));
    report("C9 gamma-sweep-trend", smallest && flat, buf);
}

void criterion10() {
    auto start = std::chrono::steady_clock::now();
    OutcomeModel model;
    model.sigma = 0.0;
    model.unit_shift = false;
    GraphSpec spec;
    spec.n = 60;
    spec.p = 0.1;
    DesignSpec spill;
    spill.name = DesignName::is_design;
    spill.estimand = Estimand::spillover;
    RunResult s = run_replications(spec, spill, model, 100, 314159);
    DesignSpec total = spill;
    total.estimand = Estimand::total;
    RunResult t = run_replications(spec, total, model, 100, 314159);
    bool ok = s.failures == 0 && t.failures == 0 && s.bias <= 1e-9 && t.bias <= 1e-9 &&
              s.variance <= 1e-9 && t.variance <= 1e-9 &&
              std::abs(s.mean_estimate - 10.0) <= 1e-9 && std::abs(t.mean_estimate - 30.0) <= 1e-9;
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "noiseless IS recovers (gamma, beta+gamma) exactly: spillover %.12f var %.2e, "
                  "total %.12f var %.2e (%.1fs)",
                  s.mean_estimate, s.variance, t.mean_estimate, t.variance, elapsed_s(start));
    report("C10 noiseless-exactness", ok, buf);
}

void criterion11() {
    auto start = std::chrono::steady_clock::now();
    BenchmarkConfig config;
    GraphSpec g1;
    g1.n = 50;
    g1.p = 0.1;
    GraphSpec g2;
    g2.family = GraphSpec::Family::ba;
    g2.n = 40;
    g2.m = 1;
    config.graphs = {g1, g2};
    config.designs = {DesignName::is_design, DesignName::cr, DesignName::full,
                      DesignName::graph_cluster, DesignName::ego_clusters};
    config.estimand = Estimand::spillover;
    config.reps = 100;
    config.seed = 271828;
    std::string csv[3];
    int thread_counts[3] = {1, 2, 4};
    for (int i = 0; i < 3; ++i) {
        config.threads = thread_counts[i];
        std::ostringstream os;
        write_report_csv(benchmark_suite(config), os);
        csv[i] = os.str();
    }
    bool ok = csv[0] == csv[1] && csv[0] == csv[2];
    char buf[160];
    std::snprintf(buf, sizeof buf, "CSV byte-identical across thread counts 1/2/4: %s (%.1fs)",
                  ok ? "yes" : "NO", elapsed_s(start));
    report("C11 determinism", ok, buf);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
