#include "iset/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "iset/assign.hpp"
#include "iset/errors.hpp"
#include "iset/estimate.hpp"
#include "iset/graph.hpp"
#include "iset/partition.hpp"
#include "iset/rng.hpp"
#include "iset/simulate.hpp"

namespace iset {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw DataError("cannot write to: " + path);
    return f;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string family = "er";
    int n = 100;
    double p = 0.1;
    int m = 1;
    int k = 4;
    std::uint64_t seed = 1;
    std::string out_path;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    auto fam = parse_family(a.family);
    if (!fam) throw ParameterError("unknown graph family: " + a.family);
    GraphSpec spec;
    spec.family = *fam;
    spec.n = a.n;
    spec.p = a.p;
    spec.m = a.m;
    spec.k = a.k;
    Graph g = spec.generate(a.seed);
    std::vector<std::string> header{std::string(kToolVersion),
                                    "command: generate family=" + spec.label() + " " +
                                        spec.params() + " seed=" + std::to_string(a.seed)};
    std::ofstream f = open_out(a.out_path);
    save_edge_list(g, f, header);
    out << "n=" << g.n << " edges=" << g.edge_count << " mean_degree=" << fmt(mean_degree(g))
        << "\n";
    return 0;
}

// ------------------------------------------------------------------ design

struct DesignArgs {
    std::string graph_path;
    bool one_based = false;
    std::string estimand = "spillover";
    double rho_target = 0.5;
    int anchor = 0;
    double sigma = -1.0;      // <0 = not provided
    double lipschitz = -1.0;  // <0 = not provided
    std::uint64_t seed = 1;
    int restarts = 20;
    int max_iters = 0;
    int exact_threshold = 12;
    std::string out_path;
};

int cmd_design(const DesignArgs& a, std::ostream& out) {
    auto estimand = parse_estimand(a.estimand);
    if (!estimand) throw ParameterError("unknown estimand: " + a.estimand);
    if (*estimand != Estimand::direct && a.rho_target != 0.5)
        throw ParameterError("--rho-target applies to the direct estimand only");
    if (a.anchor != 0 && a.anchor != 1) throw ParameterError("--anchor must be 0 or 1");
    Graph g = load_edge_list_file(a.graph_path, a.one_based);

    Rng root(a.seed);
    Rng part_stream = root.derive({1});
    Partition part = greedy_independent_set(g, part_stream.next_u64());
    InterferenceMatrix gamma(g, part);
    OptimizerOptions opts;
    opts.restarts = a.restarts;
    opts.max_iters = a.max_iters;
    opts.exact_threshold = a.exact_threshold;
    opts.seed = root.derive({2}).next_u64();

    OptimizeResult opt;
    std::vector<double> rho;
    std::vector<int> z_ind(part.n_independent(), 0);  // -1 marks the withheld CRD unit
    std::vector<std::string> diag;

    if (*estimand == Estimand::direct) {
        opt = optimize_direct(gamma, a.rho_target, opts);
        rho = gamma.exposure(opt.assignment.bits);
        double l1 = 0.0;
        for (double r : rho) l1 += std::abs(r - a.rho_target);
        diag.push_back("rho_target: " + fmt17(a.rho_target));
        diag.push_back("objective: " + fmt17(opt.objective));
        diag.push_back("norm_delta: " + fmt17(l1));
        if (a.lipschitz >= 0) {
            std::vector<double> delta(rho.size());
            for (std::size_t i = 0; i < rho.size(); ++i) delta[i] = rho[i] - a.rho_target;
            diag.push_back("bias_bound: " + fmt17(bias_bound_direct(a.lipschitz, delta)));
        }
        Rng assign_stream = root.derive({3});
        int n_i = part.n_independent();
        std::vector<int> keep(n_i);
        for (int i = 0; i < n_i; ++i) keep[i] = i;
        if (n_i % 2 == 1 && n_i > 1) {
            int drop = static_cast<int>(assign_stream.below(static_cast<std::uint64_t>(n_i)));
            keep.erase(keep.begin() + drop);
            z_ind[drop] = -1;
        }
        if (keep.size() >= 2) {
            Assignment crd = assign_cr(static_cast<int>(keep.size()), assign_stream);
            for (std::size_t i = 0; i < keep.size(); ++i) z_ind[keep[i]] = crd.bits[i];
        }
    } else {
        opt = optimize_variance(gamma, opts);
        rho = gamma.exposure(opt.assignment.bits);
        std::vector<double> rho_used;
        for (int r = 0; r < gamma.rows(); ++r)
            if (!gamma.row_isolated(r)) rho_used.push_back(rho[r]);
        double var_rho = population_variance(rho_used);
        diag.push_back("objective: " + fmt17(opt.objective));
        diag.push_back("var_rho: " + fmt17(var_rho));
        if (*estimand == Estimand::spillover) {
            for (auto& z : z_ind) z = a.anchor;
            if (a.sigma >= 0 && var_rho > 0)
                diag.push_back("predicted_var_spillover: " +
                               fmt17(a.sigma * a.sigma /
                                     (static_cast<double>(rho_used.size()) * var_rho)));
        } else {
            Assignment thr = assign_threshold(rho);
            for (int r = 0; r < gamma.rows(); ++r) z_ind[r] = thr.bits[r];
            if (a.sigma >= 0) {
                std::vector<std::uint8_t> z_used;
                for (int r = 0; r < gamma.rows(); ++r)
                    if (!gamma.row_isolated(r)) z_used.push_back(thr.bits[r]);
                try {
                    TotalVariancePrediction pv = predicted_var_total(a.sigma, z_used, rho_used);
                    diag.push_back("predicted_var_total: " + fmt17(pv.value));
                    diag.push_back("predicted_var_floor: " + fmt17(pv.floor_value));
                } catch (const DegenerateDesignError& e) {
                    diag.push_back(std::string("predicted_var_total: degenerate (") + e.what() +
                                   ")");
                }
            }
        }
    }

    std::ofstream f = open_out(a.out_path);
    f << "# " << kToolVersion << "\n";
    f << "# command: design\n";
    f << "# graph: " << a.graph_path << (a.one_based ? " (one-based)" : "") << "\n";
    f << "# graph_n: " << g.n << "\n";
    f << "# graph_edges: " << g.edge_count << "\n";
    f << "# estimand: " << estimand_label(*estimand) << "\n";
    f << "# seed: " << a.seed << "\n";
    f << "# optimizer: restarts=" << a.restarts << " max_iters=" << a.max_iters
      << " exact_threshold=" << a.exact_threshold << "\n";
    if (*estimand == Estimand::spillover) f << "# anchor: " << a.anchor << "\n";
    for (const auto& d : diag) f << "# " << d << "\n";
    f << "# n_independent: " << part.n_independent() << "\n";
    f << "# n_auxiliary: " << part.n_auxiliary() << "\n";
    f << "# independent:";
    for (int v : part.independent) f << " " << v;
    f << "\n# auxiliary:";
    for (int v : part.auxiliary) f << " " << v;
    f << "\n";
    f << "vertex,role,z,rho,degree,isolated\n";
    std::vector<int> role(g.n, -1), idx(g.n, -1);
    for (int r = 0; r < gamma.rows(); ++r) {
        role[gamma.row_vertex(r)] = 0;
        idx[gamma.row_vertex(r)] = r;
    }
    for (int c = 0; c < gamma.cols(); ++c) {
        role[gamma.col_vertex(c)] = 1;
        idx[gamma.col_vertex(c)] = c;
    }
    for (int v = 0; v < g.n; ++v) {
        if (role[v] == 0) {
            int r = idx[v];
            std::string z = z_ind[r] < 0 ? "x" : std::to_string(z_ind[r]);
            f << v << ",I," << z << "," << fmt17(rho[r]) << "," << g.degree(v) << ","
              << (gamma.row_isolated(r) ? 1 : 0) << "\n";
        } else {
            f << v << ",A," << int(opt.assignment.bits[idx[v]]) << ",," << g.degree(v) << ",0\n";
        }
    }
    out << "n_independent=" << part.n_independent() << " n_auxiliary=" << part.n_auxiliary()
        << " objective=" << fmt(opt.objective) << " restarts=" << opt.restarts_used
        << " flips=" << opt.flips << (opt.exact ? " exact=1" : "") << "\n";
    return 0;
}

// ---------------------------------------------------------------- estimate

struct DesignRow {
    int vertex = 0;
    char role = 'A';
    int z = 0;  // -1 = withheld from the CRD
    double rho = 0.0;
    int degree = 0;
    bool isolated = false;
};

struct DesignFile {
    std::string estimand;
    double rho_target = std::nan("");
    std::vector<DesignRow> rows;
};

DesignFile load_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open design file: " + path);
    DesignFile df;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            if (hs >> key) {
                if (key == "estimand:") hs >> df.estimand;
                if (key == "rho_target:") hs >> df.rho_target;
            }
            continue;
        }
        if (!saw_header) {  // the CSV column header line
            saw_header = true;
            continue;
        }
        DesignRow row;
        std::string field;
        std::istringstream ls(line);
        try {
            std::getline(ls, field, ',');
            row.vertex = std::stoi(field);
            std::getline(ls, field, ',');
            if (field != "I" && field != "A") throw std::invalid_argument("role");
            row.role = field[0];
            std::getline(ls, field, ',');
            row.z = field == "x" ? -1 : std::stoi(field);
            std::getline(ls, field, ',');
            row.rho = field.empty() ? 0.0 : std::stod(field);
            std::getline(ls, field, ',');
            row.degree = std::stoi(field);
            std::getline(ls, field, ',');
            row.isolated = field == "1";
        } catch (const std::exception&) {
            throw ParseError("design file: malformed row", line_no);
        }
        df.rows.push_back(row);
    }
    if (df.estimand.empty()) throw DataError("design file has no estimand header");
    if (df.rows.empty()) throw DataError("design file has no rows");
    return df;
}

std::map<int, double> load_outcomes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open outcomes file: " + path);
    std::map<int, double> y;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        std::string tv, ty;
        if (!(ls >> tv)) continue;
        if (tv == "vertex" || tv == "vertex_id" || tv == "id") continue;  // header row
        if (!(ls >> ty)) throw ParseError("outcomes: expected 'vertex,y'", line_no);
        try {
            std::size_t pos = 0;
            int v = std::stoi(tv, &pos);
            if (pos != tv.size()) throw std::invalid_argument("");
            double val = std::stod(ty, &pos);
            if (pos != ty.size()) throw std::invalid_argument("");
            y[v] = val;
        } catch (const std::exception&) {
            throw ParseError("outcomes: malformed row", line_no);
        }
    }
    return y;
}

struct EstimateArgs {
    std::string design_path;
    std::string outcomes_path;
    double sigma = -1.0;
    double lipschitz = -1.0;
    std::string out_path;  // empty = stdout
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
    DesignFile df = load_design_file(a.design_path);
    std::map<int, double> outcomes = load_outcomes(a.outcomes_path);

    std::vector<const DesignRow*> ind;
    for (const auto& r : df.rows)
        if (r.role == 'I') ind.push_back(&r);

    std::vector<int> missing;
    for (const auto* r : ind)
        if (!outcomes.count(r->vertex)) missing.push_back(r->vertex);
    if (!missing.empty()) {
        std::string ids;
        for (int v : missing) ids += " " + std::to_string(v);
        throw DataError("missing outcomes for independent units:" + ids);
    }

    EstimateSummary summary;
    if (df.estimand == "direct") {
        std::vector<double> y;
        std::vector<std::uint8_t> z;
        std::vector<double> delta;
        for (const auto* r : ind) {
            if (!std::isnan(df.rho_target)) delta.push_back(r->rho - df.rho_target);
            if (r->z < 0) continue;  // withheld unit
            y.push_back(outcomes.at(r->vertex));
            z.push_back(static_cast<std::uint8_t>(r->z));
        }
        summary.estimand = "direct(" + fmt(df.rho_target) + ")";
        summary.point = diff_in_means(y, z);
        if (!delta.empty()) {
            double l1 = 0.0;
            for (double d : delta) l1 += std::abs(d);
            summary.norm_delta = l1;
            if (a.lipschitz >= 0) summary.bias_bound = bias_bound_direct(a.lipschitz, delta);
        }
        std::vector<double> rho_all;
        for (const auto* r : ind) rho_all.push_back(r->rho);
        summary.var_rho = population_variance(rho_all);
    } else if (df.estimand == "spillover" || df.estimand == "total") {
        std::vector<double> y, rho;
        std::vector<std::uint8_t> z;
        for (const auto* r : ind) {
            if (r->isolated) continue;
            y.push_back(outcomes.at(r->vertex));
            rho.push_back(r->rho);
            z.push_back(static_cast<std::uint8_t>(r->z < 0 ? 0 : r->z));
        }
        OlsFit fit = ols_fit(z, rho, y);
        summary.estimand = df.estimand;
        double var_rho = population_variance(rho);
        summary.var_rho = var_rho;
        if (df.estimand == "spillover") {
            summary.point = spillover_estimate(fit);
            if (a.sigma >= 0 && var_rho > 0) summary.predicted_variance = predicted_var_spillover(a.sigma, rho);
        } else {
            summary.point = total_estimate(fit);
            double mz = 0, mr = 0;
            for (std::size_t i = 0; i < z.size(); ++i) {
                mz += z[i];
                mr += rho[i];
            }
            mz /= z.size();
            mr /= rho.size();
            double vz = 0, vr = 0, cov = 0;
            for (std::size_t i = 0; i < z.size(); ++i) {
                vz += (z[i] - mz) * (z[i] - mz);
                vr += (rho[i] - mr) * (rho[i] - mr);
                cov += (z[i] - mz) * (rho[i] - mr);
            }
            if (vz > 0 && vr > 0) summary.corr_z_rho = cov / std::sqrt(vz * vr);
            if (a.sigma >= 0) summary.predicted_variance = predicted_var_total(a.sigma, z, rho).value;
        }
    } else {
        throw DataError("design file has unknown estimand: " + df.estimand);
    }

    std::string text = estimate_csv_header() + "\n" + to_csv_row(summary) + "\n";
    if (a.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f = open_out(a.out_path);
        f << "# " << kToolVersion << "\n";
        f << "# command: estimate --design " << a.design_path << " --outcomes "
          << a.outcomes_path << "\n";
        f << text;
    }
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string family = "er";
    int n = 100;
    double p = 0.1;
    int m = 1;
    int k = 4;
    std::string fixed_graph;
    std::string design = "IS";
    std::string estimand = "spillover";
    double rho_target = 0.5;
    int anchor = 0;
    double alpha = 1.0, beta = 20.0, gamma = 10.0, sigma = 0.5;
    bool unit_shift = false;
    int reps = 200;
    int reps_per_graph = 1;
    int restarts = 20;
    int exact_threshold = 12;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_path;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    auto design = parse_design(a.design);
    if (!design) throw ParameterError("unknown design: " + a.design);
    auto estimand = parse_estimand(a.estimand);
    if (!estimand) throw ParameterError("unknown estimand: " + a.estimand);
    if (*design == DesignName::ego_clusters && *estimand != Estimand::spillover)
        throw ParameterError("ego-clusters design supports the spillover estimand only");

    DesignSpec spec;
    spec.name = *design;
    spec.estimand = *estimand;
    spec.rho_target = a.rho_target;
    spec.spillover_anchor = a.anchor;
    spec.optimizer.restarts = a.restarts;
    spec.optimizer.exact_threshold = a.exact_threshold;

    OutcomeModel model;
    model.alpha = a.alpha;
    model.beta = a.beta;
    model.gamma = a.gamma;
    model.sigma = a.sigma;
    model.unit_shift = a.unit_shift;

    RunResult r;
    if (!a.fixed_graph.empty()) {
        Graph g = load_edge_list_file(a.fixed_graph);
        r = run_replications_fixed(g, spec, model, a.reps, a.seed, a.threads);
    } else {
        auto fam = parse_family(a.family);
        if (!fam) throw ParameterError("unknown graph family: " + a.family);
        GraphSpec gs;
        gs.family = *fam;
        gs.n = a.n;
        gs.p = a.p;
        gs.m = a.m;
        gs.k = a.k;
        r = run_replications(gs, spec, model, a.reps, a.seed, a.reps_per_graph, a.threads);
    }
    std::string text = report_csv_header() + "\n" + to_csv_row(r) + "\n";
    if (a.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f = open_out(a.out_path);
        f << text;
    }
    return 0;
}

// --------------------------------------------------------------- benchmark

struct BenchmarkArgs {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;  // 0 = keep config value
};

void write_config_header(std::ostream& f, const BenchmarkConfig& c, const std::string& path) {
    f << "# " << kToolVersion << "\n";
    f << "# command: benchmark --config " << path << "\n";
    f << "# estimand: " << estimand_label(c.estimand) << " reps: " << c.reps
      << " reps_per_graph: " << c.reps_per_graph << " seed: " << c.seed << "\n";
    f << "# model: alpha=" << c.model.alpha << " beta=" << c.model.beta
      << " gamma=" << c.model.gamma << " sigma=" << c.model.sigma
      << " unit_shift=" << (c.model.unit_shift ? "on" : "off") << "\n";
    f << "# optimizer: restarts=" << c.optimizer.restarts << " max_iters=" << c.optimizer.max_iters
      << " exact_threshold=" << c.optimizer.exact_threshold << "\n";
}

void write_sweep_series(const std::vector<RunResult>& rows, const std::vector<double>& gammas,
                        const std::vector<std::string>& designs, const std::string& path,
                        double RunResult::* field, const BenchmarkConfig& config,
                        const std::string& config_path) {
    std::ofstream f = open_out(path);
    write_config_header(f, config, config_path);
    f << "gamma";
    for (const auto& d : designs) f << "," << d;
    f << "\n";
    for (double g : gammas) {
        f << fmt(g);
        for (const auto& d : designs) {
            f << ",";
            for (const auto& r : rows)
                if (r.model_gamma == g && r.design == d) {
                    f << fmt(r.*field);
                    break;
                }
        }
        f << "\n";
    }
}

int cmd_benchmark(const BenchmarkArgs& a, std::ostream& out) {
    BenchmarkConfig config = load_benchmark_config(a.config_path);
    if (a.threads > 0) config.threads = a.threads;
    std::filesystem::create_directories(a.out_dir);
    std::vector<RunResult> rows = benchmark_suite(config, &out);
    std::string table_path =
        a.out_dir + "/report_" + estimand_label(config.estimand) + ".csv";
    {
        std::ofstream f = open_out(table_path);
        write_config_header(f, config, a.config_path);
        write_report_csv(rows, f);
    }
    out << "wrote " << table_path << "\n";
    if (!config.gamma_sweep.empty()) {
        std::vector<std::string> designs;
        for (auto d : config.designs) {
            if (d == DesignName::ego_clusters && config.estimand != Estimand::spillover) continue;
            designs.push_back(design_label(d));
        }
        write_sweep_series(rows, config.gamma_sweep, designs, a.out_dir + "/sweep_bias.csv",
                           &RunResult::bias, config, a.config_path);
        write_sweep_series(rows, config.gamma_sweep, designs, a.out_dir + "/sweep_mae.csv",
                           &RunResult::mae, config, a.config_path);
        write_sweep_series(rows, config.gamma_sweep, designs, a.out_dir + "/sweep_variance.csv",
                           &RunResult::variance, config, a.config_path);
        out << "wrote " << a.out_dir << "/sweep_{bias,mae,variance}.csv\n";
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"independent-set design toolkit for network experiments under interference"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* c_gen = app.add_subcommand("generate", "generate a random graph, write an edge list");
    c_gen->add_option("--family", gen.family, "er | ba | sw")->capture_default_str();
    c_gen->add_option("--n", gen.n, "vertex count")->capture_default_str();
    c_gen->add_option("--p", gen.p, "edge or rewiring probability")->capture_default_str();
    c_gen->add_option("--m", gen.m, "edges per new vertex (ba)")->capture_default_str();
    c_gen->add_option("--k", gen.k, "base ring degree (sw, even)")->capture_default_str();
    c_gen->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    c_gen->add_option("--out", gen.out_path, "output edge-list path")->required();

    DesignArgs des;
    auto* c_des = app.add_subcommand("design", "partition a graph and optimize assignments");
    c_des->add_option("--graph", des.graph_path, "input edge-list path")->required();
    c_des->add_flag("--one-based", des.one_based, "input ids are 1-based");
    c_des->add_option("--estimand", des.estimand, "direct | spillover | total")
        ->capture_default_str();
    c_des->add_option("--rho-target", des.rho_target, "target exposure (direct)")
        ->capture_default_str();
    c_des->add_option("--anchor", des.anchor, "constant Z_I for spillover (0 or 1)")
        ->capture_default_str();
    c_des->add_option("--sigma", des.sigma, "noise sd for predicted variances");
    c_des->add_option("--lipschitz", des.lipschitz, "Lipschitz constant for the bias bound");
    c_des->add_option("--seed", des.seed, "RNG seed")->capture_default_str();
    c_des->add_option("--restarts", des.restarts, "optimizer restarts")->capture_default_str();
    c_des->add_option("--max-iters", des.max_iters, "optimizer flip limit per restart (0=10*n_A)")
        ->capture_default_str();
    c_des->add_option("--exact-threshold", des.exact_threshold,
                      "enumerate exactly when n_A <= this")
        ->capture_default_str();
    c_des->add_option("--out", des.out_path, "output design path")->required();

    EstimateArgs est;
    auto* c_est = app.add_subcommand("estimate", "estimate effects from a design and outcomes");
    c_est->add_option("--design", est.design_path, "design file from 'design'")->required();
    c_est->add_option("--outcomes", est.outcomes_path, "CSV of vertex,y")->required();
    c_est->add_option("--sigma", est.sigma, "noise sd for predicted variances");
    c_est->add_option("--lipschitz", est.lipschitz, "Lipschitz constant for the bias bound");
    c_est->add_option("--out", est.out_path, "output CSV path (default stdout)");

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Monte-Carlo replications of one design cell");
    c_sim->add_option("--family", sim.family, "er | ba | sw")->capture_default_str();
    c_sim->add_option("--n", sim.n, "vertex count")->capture_default_str();
    c_sim->add_option("--p", sim.p, "edge/rewiring probability")->capture_default_str();
    c_sim->add_option("--m", sim.m, "edges per new vertex (ba)")->capture_default_str();
    c_sim->add_option("--k", sim.k, "base ring degree (sw)")->capture_default_str();
    c_sim->add_option("--fixed-graph", sim.fixed_graph, "edge-list path; hold the graph fixed");
    c_sim->add_option("--design", sim.design, "IS | CR | Full | GraphCluster | EgoClusters")
        ->capture_default_str();
    c_sim->add_option("--estimand", sim.estimand, "direct | spillover | total")
        ->capture_default_str();
    c_sim->add_option("--rho-target", sim.rho_target, "target exposure (direct)")
        ->capture_default_str();
    c_sim->add_option("--anchor", sim.anchor, "constant Z_I for IS spillover")
        ->capture_default_str();
    c_sim->add_option("--alpha", sim.alpha, "outcome baseline")->capture_default_str();
    c_sim->add_option("--beta", sim.beta, "direct coefficient")->capture_default_str();
    c_sim->add_option("--gamma", sim.gamma, "spillover coefficient")->capture_default_str();
    c_sim->add_option("--sigma", sim.sigma, "noise sd")->capture_default_str();
    c_sim->add_flag("--unit-shift", sim.unit_shift, "add Unif(0,1) per-unit shift");
    c_sim->add_option("--reps", sim.reps, "replications")->capture_default_str();
    c_sim->add_option("--reps-per-graph", sim.reps_per_graph, "replications per generated graph")
        ->capture_default_str();
    c_sim->add_option("--restarts", sim.restarts, "optimizer restarts")->capture_default_str();
    c_sim->add_option("--exact-threshold", sim.exact_threshold, "exact enumeration threshold")
        ->capture_default_str();
    c_sim->add_option("--seed", sim.seed, "master seed")->capture_default_str();
    c_sim->add_option("--threads", sim.threads, "worker threads")->capture_default_str();
    c_sim->add_option("--out", sim.out_path, "output CSV path (default stdout)");

    BenchmarkArgs bench;
    auto* c_bench = app.add_subcommand("benchmark", "run a benchmark config, write CSV tables");
    c_bench->add_option("--config", bench.config_path, "benchmark config path")->required();
    c_bench->add_option("--out-dir", bench.out_dir, "output directory")->capture_default_str();
    c_bench->add_option("--threads", bench.threads, "override config threads");

    try {
        app.parse(argc, argv);
        if (*c_gen) return cmd_generate(gen, out);
        if (*c_des) return cmd_design(des, out);
        if (*c_est) return cmd_estimate(est, out);
        if (*c_sim) return cmd_simulate(sim, out);
        if (*c_bench) return cmd_benchmark(bench, out);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return 3;
    } catch (const DimensionError& e) {
        err << "dimension error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateDesignError& e) {
        err << "degenerate design: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace iset
