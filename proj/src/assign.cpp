#include "iset/assign.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "iset/errors.hpp"

namespace iset {

int Assignment::count_ones() const {
    return static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

void OptimizerOptions::validate() const {
    if (restarts < 1) throw ParameterError("optimizer: restarts must be >= 1");
    if (max_iters < 0) throw ParameterError("optimizer: max_iters must be >= 0");
    if (exact_threshold < 0 || exact_threshold > 24)
        throw ParameterError("optimizer: exact_threshold must be in [0, 24]");
}

double direct_objective(const InterferenceMatrix& gamma, const std::vector<std::uint8_t>& z,
                        double rho_target) {
    if (static_cast<int>(z.size()) != gamma.cols())
        throw DimensionError("direct_objective: assignment length != n_A");
    double obj = 0.0;
    for (int r = 0; r < gamma.rows(); ++r) {
        if (gamma.row_isolated(r)) {
            obj += std::abs(rho_target);
            continue;
        }
        int treated = 0;
        for (int c : gamma.row_cols(r)) treated += z[c];
        obj += std::abs(static_cast<double>(treated) / gamma.row_degree(r) - rho_target);
    }
    return obj;
}

double variance_objective(const InterferenceMatrix& gamma, const std::vector<std::uint8_t>& z) {
    if (static_cast<int>(z.size()) != gamma.cols())
        throw DimensionError("variance_objective: assignment length != n_A");
    int n = gamma.rows();
    if (n == 0) return 0.0;
    double s1 = 0.0, s2 = 0.0;
    for (int r = 0; r < n; ++r) {
        double rho = 0.0;
        if (!gamma.row_isolated(r)) {
            int treated = 0;
            for (int c : gamma.row_cols(r)) treated += z[c];
            rho = static_cast<double>(treated) / gamma.row_degree(r);
        }
        s1 += rho;
        s2 += rho * rho;
    }
    return s2 - s1 * s1 / n;
}

namespace {

constexpr double kImproveEps = 1e-12;

// Shared local-search state: per-row treated-neighbor counts plus the
// running moments needed by either objective.
struct SearchState {
    const InterferenceMatrix& gamma;
    std::vector<std::uint8_t> z;
    std::vector<int> counts;  // treated columns per row

    explicit SearchState(const InterferenceMatrix& g) : gamma(g), z(g.cols(), 0), counts(g.rows(), 0) {}

    void load(const std::vector<std::uint8_t>& bits) {
        z = bits;
        std::fill(counts.begin(), counts.end(), 0);
        for (int c = 0; c < gamma.cols(); ++c)
            if (z[c])
                for (int r : gamma.col_rows(c)) ++counts[r];
    }

    void flip(int c) {
        int delta = z[c] ? -1 : +1;
        z[c] = static_cast<std::uint8_t>(1 - z[c]);
        for (int r : gamma.col_rows(c)) counts[r] += delta;
    }
};

// Objective adaptors. "score" is oriented so that larger is better.
struct DirectObjective {
    double rho_target;

    double score(const SearchState& s) const {
        double obj = 0.0;
        for (int r = 0; r < s.gamma.rows(); ++r) {
            if (s.gamma.row_isolated(r)) {
                obj += std::abs(rho_target);
                continue;
            }
            obj += std::abs(static_cast<double>(s.counts[r]) / s.gamma.row_degree(r) - rho_target);
        }
        return -obj;
    }

    double flip_gain(const SearchState& s, int c) const {
        int step = s.z[c] ? -1 : +1;
        double gain = 0.0;
        for (int r : s.gamma.col_rows(c)) {
            double d = s.gamma.row_degree(r);
            double cur = std::abs(s.counts[r] / d - rho_target);
            double alt = std::abs((s.counts[r] + step) / d - rho_target);
            gain += cur - alt;
        }
        return gain;
    }
};

struct VarianceObjective {
    double score(const SearchState& s) const {
        int n = s.gamma.rows();
        if (n == 0) return 0.0;
        double s1 = 0.0, s2 = 0.0;
        for (int r = 0; r < n; ++r) {
            double rho = s.gamma.row_isolated(r)
                             ? 0.0
                             : static_cast<double>(s.counts[r]) / s.gamma.row_degree(r);
            s1 += rho;
            s2 += rho * rho;
        }
        return s2 - s1 * s1 / n;
    }

    double flip_gain(const SearchState& s, int c) const {
        int n = s.gamma.rows();
        double s1 = 0.0;
        for (int r = 0; r < n; ++r)
            if (!s.gamma.row_isolated(r))
                s1 += static_cast<double>(s.counts[r]) / s.gamma.row_degree(r);
        double step = s.z[c] ? -1.0 : 1.0;
        double d_s1 = 0.0, d_s2 = 0.0;
        for (int r : s.gamma.col_rows(c)) {
            double d = s.gamma.row_degree(r);
            double rho = s.counts[r] / d;
            double t = step / d;
            d_s1 += t;
            d_s2 += 2.0 * rho * t + t * t;
        }
        return d_s2 - (2.0 * s1 * d_s1 + d_s1 * d_s1) / n;
    }
};

// The variance flip_gain above rescans all rows for s1; cache it instead.
// Kept as a wrapper so the simple version stays readable and testable.
struct VarianceObjectiveFast {
    mutable double s1 = 0.0;
    mutable bool s1_valid = false;

    void invalidate() const { s1_valid = false; }

    double refresh_s1(const SearchState& s) const {
        double v = 0.0;
        for (int r = 0; r < s.gamma.rows(); ++r)
            if (!s.gamma.row_isolated(r))
                v += static_cast<double>(s.counts[r]) / s.gamma.row_degree(r);
        s1 = v;
        s1_valid = true;
        return v;
    }

    double score(const SearchState& s) const { return VarianceObjective{}.score(s); }

    double flip_gain(const SearchState& s, int c) const {
        int n = s.gamma.rows();
        double base_s1 = s1_valid ? s1 : refresh_s1(s);
        double step = s.z[c] ? -1.0 : 1.0;
        double d_s1 = 0.0, d_s2 = 0.0;
        for (int r : s.gamma.col_rows(c)) {
            double d = s.gamma.row_degree(r);
            double rho = s.counts[r] / d;
            double t = step / d;
            d_s1 += t;
            d_s2 += 2.0 * rho * t + t * t;
        }
        return d_s2 - (2.0 * base_s1 * d_s1 + d_s1 * d_s1) / n;
    }
};

template <class Objective>
void local_search(SearchState& state, const Objective& obj, int max_flips, long& flips,
                  std::vector<double>* trace) {
    int m = state.gamma.cols();
    if (trace) trace->push_back(obj.score(state));
    for (int it = 0; it < max_flips; ++it) {
        double best_gain = kImproveEps;
        int best_col = -1;
        for (int c = 0; c < m; ++c) {
            double g = obj.flip_gain(state, c);
            if (g > best_gain) {
                best_gain = g;
                best_col = c;
            }
        }
        if (best_col < 0) break;
        state.flip(best_col);
        if constexpr (requires { obj.invalidate(); }) obj.invalidate();
        ++flips;
        if (trace) trace->push_back(obj.score(state));
    }
}

template <class Objective>
OptimizeResult enumerate_exact(const InterferenceMatrix& gamma, const Objective& obj) {
    int m = gamma.cols();
    SearchState state(gamma);
    double best_score = obj.score(state);
    std::uint64_t best_mask = 0, mask = 0;
    std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t k = 1; k < total; ++k) {
        int bit = std::countr_zero(k);  // Gray-code order: flip one column per step
        state.flip(bit);
        if constexpr (requires { obj.invalidate(); }) obj.invalidate();
        mask ^= std::uint64_t{1} << bit;
        double sc = obj.score(state);
        if (sc > best_score + kImproveEps) {
            best_score = sc;
            best_mask = mask;
        }
    }
    OptimizeResult result;
    result.assignment.scope = Scope::auxiliary;
    result.assignment.bits.resize(m);
    for (int c = 0; c < m; ++c)
        result.assignment.bits[c] = static_cast<std::uint8_t>((best_mask >> c) & 1u);
    result.exact = true;
    return result;
}

template <class Objective>
OptimizeResult optimize(const InterferenceMatrix& gamma, const Objective& obj,
                        const OptimizerOptions& opts,
                        const std::vector<std::vector<std::uint8_t>>& fixed_inits) {
    opts.validate();
    int m = gamma.cols();
    OptimizeResult result;
    result.assignment.scope = Scope::auxiliary;

    if (m == 0) {
        SearchState state(gamma);
        result.objective = obj.score(state);
        return result;
    }

    if (m <= opts.exact_threshold) {
        result = enumerate_exact(gamma, obj);
        SearchState state(gamma);
        state.load(result.assignment.bits);
        result.objective = obj.score(state);
        return result;
    }

    int max_flips = opts.max_iters > 0 ? opts.max_iters : 10 * m;
    Rng base(opts.seed);
    SearchState state(gamma);
    double best_score = 0.0;
    bool have_best = false;
    std::vector<std::uint8_t> best_bits;

    for (int restart = 0; restart < opts.restarts; ++restart) {
        std::vector<std::uint8_t> init(m, 0);
        if (restart < static_cast<int>(fixed_inits.size())) {
            init = fixed_inits[restart];
        } else {
            Rng stream = base.derive({static_cast<std::uint64_t>(restart)});
            for (int c = 0; c < m; ++c) init[c] = stream.bernoulli(0.5) ? 1 : 0;
        }
        state.load(init);
        if constexpr (requires { obj.invalidate(); }) obj.invalidate();
        std::vector<double>* trace = nullptr;
        if (opts.record_trace) {
            result.traces.emplace_back();
            trace = &result.traces.back();
        }
        local_search(state, obj, max_flips, result.flips, trace);
        double sc = obj.score(state);
        if (!have_best || sc > best_score + kImproveEps) {
            best_score = sc;
            best_bits = state.z;
            have_best = true;
        }
        ++result.restarts_used;
    }

    result.assignment.bits = std::move(best_bits);
    state.load(result.assignment.bits);
    result.objective = obj.score(state);
    return result;
}

}  // namespace

OptimizeResult optimize_direct(const InterferenceMatrix& gamma, double rho_target,
                               const OptimizerOptions& opts) {
    if (!(rho_target >= 0.0 && rho_target <= 1.0))
        throw ParameterError("optimize_direct: rho_target must be in [0,1]");
    int m = gamma.cols();
    std::vector<std::vector<std::uint8_t>> inits;
    inits.emplace_back(m, std::uint8_t{0});
    inits.emplace_back(m, std::uint8_t{1});
    inits.emplace_back(m, static_cast<std::uint8_t>(std::lround(rho_target) != 0 ? 1 : 0));
    DirectObjective obj{rho_target};
    OptimizeResult result = optimize(gamma, obj, opts, inits);
    result.objective = direct_objective(gamma, result.assignment.bits, rho_target);
    return result;
}

OptimizeResult optimize_variance(const InterferenceMatrix& gamma, const OptimizerOptions& opts) {
    int m = gamma.cols();
    std::vector<std::vector<std::uint8_t>> inits;
    inits.emplace_back(m, std::uint8_t{0});
    inits.emplace_back(m, std::uint8_t{1});
    VarianceObjectiveFast obj;
    OptimizeResult result = optimize(gamma, obj, opts, inits);
    result.objective = variance_objective(gamma, result.assignment.bits);
    return result;
}

Assignment assign_cr(int count, Rng& rng, Scope scope) {
    if (count < 2) throw ParameterError("assign_cr: count must be >= 2");
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    Assignment a;
    a.scope = scope;
    a.bits.assign(count, 0);
    for (int i = 0; i < count / 2; ++i) a.bits[order[i]] = 1;
    return a;
}

Assignment assign_constant(int count, int z, Scope scope) {
    if (count < 0) throw ParameterError("assign_constant: count must be >= 0");
    if (z != 0 && z != 1) throw ParameterError("assign_constant: z must be 0 or 1");
    Assignment a;
    a.scope = scope;
    a.bits.assign(count, static_cast<std::uint8_t>(z));
    return a;
}

Assignment assign_threshold(const std::vector<double>& rho) {
    Assignment a;
    a.scope = Scope::independent;
    a.bits.resize(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) a.bits[i] = rho[i] > 0.5 ? 1 : 0;
    return a;
}

Assignment baseline_full_cr(const Graph& g, Rng& rng) {
    Assignment a = assign_cr(g.n, rng, Scope::all);
    return a;
}

std::vector<std::vector<int>> greedy_ball_clusters(const Graph& g, Rng& rng) {
    std::vector<char> covered(g.n, 0);
    std::vector<int> pool(g.n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<std::vector<int>> clusters;
    while (!pool.empty()) {
        std::size_t k = static_cast<std::size_t>(rng.below(pool.size()));
        int v = pool[k];
        if (covered[v]) {
            pool[k] = pool.back();
            pool.pop_back();
            continue;
        }
        std::vector<int> cluster{v};
        covered[v] = 1;
        for (int w : g.adj[v])
            if (!covered[w]) {
                covered[w] = 1;
                cluster.push_back(w);
            }
        clusters.push_back(std::move(cluster));
    }
    return clusters;
}

Assignment baseline_graph_cluster(const Graph& g, Rng& rng) {
    auto clusters = greedy_ball_clusters(g, rng);
    Assignment a;
    a.scope = Scope::all;
    a.bits.assign(g.n, 0);
    for (const auto& cluster : clusters) {
        std::uint8_t coin = rng.bernoulli(0.5) ? 1 : 0;
        for (int v : cluster) a.bits[v] = coin;
    }
    return a;
}

EgoClusterResult baseline_ego_clusters(const Graph& g, Rng& rng, EgoTreatment mode) {
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<char> claimed(g.n, 0);
    EgoClusterResult res;
    res.assignment.scope = Scope::all;
    res.assignment.bits.assign(g.n, 0);
    for (int v : order) {
        if (claimed[v]) continue;
        bool free_neighborhood = true;
        for (int w : g.adj[v])
            if (claimed[w]) {
                free_neighborhood = false;
                break;
            }
        if (!free_neighborhood) continue;
        claimed[v] = 1;
        std::vector<int> alters(g.adj[v]);
        for (int w : alters) claimed[w] = 1;
        std::uint8_t coin = rng.bernoulli(0.5) ? 1 : 0;
        res.assignment.bits[v] = mode == EgoTreatment::block ? coin : 0;
        for (int w : alters) res.assignment.bits[w] = coin;
        res.egos.push_back(v);
        res.alters.push_back(std::move(alters));
        res.cluster_treated.push_back(coin);
    }
    for (int v = 0; v < g.n; ++v)
        if (!claimed[v]) res.assignment.bits[v] = rng.bernoulli(0.5) ? 1 : 0;
    return res;
}

}  // namespace iset
