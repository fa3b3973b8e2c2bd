#include "iset/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "iset/errors.hpp"

namespace iset {

double diff_in_means(const std::vector<double>& y, const std::vector<std::uint8_t>& z) {
    if (y.size() != z.size()) throw DimensionError("diff_in_means: y and z length mismatch");
    int n = static_cast<int>(y.size());
    if (n < 2 || n % 2 != 0)
        throw ParameterError("diff_in_means: needs an even number of units (>= 2)");
    int treated = 0;
    for (auto b : z) treated += b;
    if (treated != n / 2)
        throw ParameterError("diff_in_means: assignment must treat exactly half of the units");
    double sum_t = 0.0, sum_c = 0.0;
    for (int i = 0; i < n; ++i) (z[i] ? sum_t : sum_c) += y[i];
    double half = n / 2.0;
    return sum_t / half - sum_c / half;
}

double mean_difference(const std::vector<double>& y, const std::vector<std::uint8_t>& z) {
    if (y.size() != z.size()) throw DimensionError("mean_difference: y and z length mismatch");
    double sum_t = 0.0, sum_c = 0.0;
    int n_t = 0, n_c = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (z[i]) {
            sum_t += y[i];
            ++n_t;
        } else {
            sum_c += y[i];
            ++n_c;
        }
    }
    if (n_t == 0 || n_c == 0) throw DegenerateDesignError("mean_difference: empty treatment arm");
    return sum_t / n_t - sum_c / n_c;
}

namespace {

// Householder QR solve of the n x k column set; returns coefficients and the
// residual sum of squares. Throws on rank deficiency, naming the column.
std::vector<double> qr_solve(std::vector<std::vector<double>> cols, std::vector<double> y,
                             const std::vector<std::string>& names, double* rss_out) {
    int k = static_cast<int>(cols.size());
    int n = static_cast<int>(y.size());
    std::vector<double> col_norm(k, 0.0);
    for (int j = 0; j < k; ++j)
        for (double v : cols[j]) col_norm[j] += v * v;

    for (int j = 0; j < k; ++j) {
        double normx = 0.0;
        for (int i = j; i < n; ++i) normx += cols[j][i] * cols[j][i];
        normx = std::sqrt(normx);
        if (normx <= 1e-12 * std::sqrt(std::max(col_norm[j], 1.0)))
            throw DegenerateDesignError("singular design: column '" + names[j] +
                                        "' is collinear with the preceding columns");
        double s = cols[j][j] >= 0 ? 1.0 : -1.0;
        double u1 = cols[j][j] + s * normx;
        // Householder vector w: w[j] = 1, w[i] = cols[j][i]/u1 for i > j
        std::vector<double> w(n - j, 0.0);
        w[0] = 1.0;
        for (int i = j + 1; i < n; ++i) w[i - j] = cols[j][i] / u1;
        double tau = s * u1 / normx;
        cols[j][j] = -s * normx;
        for (int i = j + 1; i < n; ++i) cols[j][i] = 0.0;
        for (int jj = j + 1; jj < k; ++jj) {
            double dot = 0.0;
            for (int i = j; i < n; ++i) dot += w[i - j] * cols[jj][i];
            dot *= tau;
            for (int i = j; i < n; ++i) cols[jj][i] -= dot * w[i - j];
        }
        double dot = 0.0;
        for (int i = j; i < n; ++i) dot += w[i - j] * y[i];
        dot *= tau;
        for (int i = j; i < n; ++i) y[i] -= dot * w[i - j];
    }

    std::vector<double> coef(k, 0.0);
    for (int j = k - 1; j >= 0; --j) {
        double v = y[j];
        for (int jj = j + 1; jj < k; ++jj) v -= cols[jj][j] * coef[jj];
        coef[j] = v / cols[j][j];
    }
    if (rss_out) {
        double rss = 0.0;
        for (int i = k; i < n; ++i) rss += y[i] * y[i];
        *rss_out = rss;
    }
    return coef;
}

bool is_constant(const std::vector<std::uint8_t>& z) {
    return std::adjacent_find(z.begin(), z.end(), std::not_equal_to<>()) == z.end();
}

}  // namespace

OlsFit ols_fit(const std::vector<std::uint8_t>& z, const std::vector<double>& rho,
               const std::vector<double>& y) {
    int n = static_cast<int>(y.size());
    if (static_cast<int>(z.size()) != n || static_cast<int>(rho.size()) != n)
        throw DimensionError("ols_fit: input length mismatch");
    if (n < 3) throw DegenerateDesignError("ols_fit: needs at least 3 units");

    bool drop_z = is_constant(z);
    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    cols.emplace_back(n, 1.0);
    names.emplace_back("intercept");
    if (!drop_z) {
        std::vector<double> zc(n);
        for (int i = 0; i < n; ++i) zc[i] = z[i];
        cols.push_back(std::move(zc));
        names.emplace_back("Z");
    }
    cols.push_back(rho);
    names.emplace_back("rho");

    int k = static_cast<int>(cols.size());
    double rss = 0.0;
    std::vector<double> coef = qr_solve(std::move(cols), y, names, &rss);

    OlsFit fit;
    fit.n_used = n;
    fit.alpha_hat = coef[0];
    if (drop_z) {
        fit.gamma_hat = coef[1];
    } else {
        fit.beta_hat = coef[1];
        fit.gamma_hat = coef[2];
    }
    fit.residual_variance = n > k ? rss / (n - k) : 0.0;
    return fit;
}

double spillover_estimate(const OlsFit& fit) { return fit.gamma_hat; }

double total_estimate(const OlsFit& fit) {
    if (!fit.beta_hat)
        throw DegenerateDesignError(
            "total_estimate: fit has no treatment coefficient (Z was constant)");
    return *fit.beta_hat + fit.gamma_hat;
}

double bias_bound_direct(double lipschitz, const std::vector<double>& delta) {
    if (lipschitz < 0) throw ParameterError("bias_bound_direct: L must be >= 0");
    if (delta.empty()) throw ParameterError("bias_bound_direct: empty deviation vector");
    double l1 = 0.0;
    for (double d : delta) l1 += std::abs(d);
    return 2.0 * lipschitz / static_cast<double>(delta.size()) * l1;
}

double population_variance(const std::vector<double>& v) {
    int n = static_cast<int>(v.size());
    if (n == 0) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / n;
}

double predicted_var_spillover(double sigma, const std::vector<double>& rho) {
    if (rho.empty()) throw DegenerateDesignError("predicted_var_spillover: empty exposure vector");
    double var_rho = population_variance(rho);
    if (var_rho <= 0.0)
        throw DegenerateDesignError("predicted_var_spillover: exposures are constant");
    double n = static_cast<double>(rho.size());
    return sigma * sigma / (n * var_rho);
}

TotalVariancePrediction predicted_var_total(double sigma, const std::vector<std::uint8_t>& z,
                                            const std::vector<double>& rho) {
    int n = static_cast<int>(rho.size());
    if (static_cast<int>(z.size()) != n)
        throw DimensionError("predicted_var_total: z and rho length mismatch");
    if (n == 0) throw DegenerateDesignError("predicted_var_total: empty design");
    double mean_z = 0.0, mean_r = 0.0;
    for (int i = 0; i < n; ++i) {
        mean_z += z[i];
        mean_r += rho[i];
    }
    mean_z /= n;
    mean_r /= n;
    double var_z = 0.0, var_r = 0.0, cov = 0.0;
    for (int i = 0; i < n; ++i) {
        double dz = z[i] - mean_z, dr = rho[i] - mean_r;
        var_z += dz * dz;
        var_r += dr * dr;
        cov += dz * dr;
    }
    var_z /= n;
    var_r /= n;
    cov /= n;
    if (var_z <= 0.0 || var_r <= 0.0)
        throw DegenerateDesignError("predicted_var_total: constant Z or constant rho");
    double s = var_z * var_r - cov * cov;
    if (s <= 1e-15 * var_z * var_r)
        throw DegenerateDesignError("predicted_var_total: |Corr(Z, rho)| = 1");
    TotalVariancePrediction out;
    double var_diff = var_z + var_r - 2.0 * cov;  // Var[Z - rho]
    out.value = sigma * sigma / n * var_diff / s;
    out.floor_value = sigma * sigma / (n * var_r);
    return out;
}

namespace {
std::string opt_field(const std::optional<double>& v) {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", *v);
    return buf;
}
}  // namespace

std::string estimate_csv_header() {
    return "estimand,point,predicted_variance,bias_bound,norm_delta,var_rho,corr_z_rho";
}

std::string to_csv_row(const EstimateSummary& s) {
    char point[32];
    std::snprintf(point, sizeof point, "%.12g", s.point);
    return s.estimand + "," + point + "," + opt_field(s.predicted_variance) + "," +
           opt_field(s.bias_bound) + "," + opt_field(s.norm_delta) + "," + opt_field(s.var_rho) +
           "," + opt_field(s.corr_z_rho);
}

}  // namespace iset
