#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iset {

/// Least-squares fit of y on [1, Z, rho]. When Z is constant the Z column is
/// dropped and beta_hat is absent (the constant-treatment spillover design).
struct OlsFit {
    double alpha_hat = 0.0;
    std::optional<double> beta_hat;
    double gamma_hat = 0.0;
    double residual_variance = 0.0;  // RSS / (n_used - #columns)
    int n_used = 0;
};

/// One estimate with its diagnostics, as written to CSV by the CLI.
struct EstimateSummary {
    std::string estimand;  // "direct(rho)" | "spillover" | "total"
    double point = 0.0;
    std::optional<double> predicted_variance;
    std::optional<double> bias_bound;
    std::optional<double> norm_delta;
    std::optional<double> var_rho;
    std::optional<double> corr_z_rho;
};

/// Difference in means for a balanced assignment: requires an even number of
/// units with exactly half treated.
double diff_in_means(const std::vector<double>& y, const std::vector<std::uint8_t>& z);

/// Mean difference with whatever arm sizes are realized (used by baseline
/// designs that cannot guarantee balance). Throws DegenerateDesignError when
/// either arm is empty.
double mean_difference(const std::vector<double>& y, const std::vector<std::uint8_t>& z);

/// Householder-QR least squares; no normal-equation inversion. Throws
/// DegenerateDesignError on rank deficiency, naming the collinear column.
OlsFit ols_fit(const std::vector<std::uint8_t>& z, const std::vector<double>& rho,
               const std::vector<double>& y);

double spillover_estimate(const OlsFit& fit);
double total_estimate(const OlsFit& fit);  // beta_hat + gamma_hat

/// Bias bound (2L/n_I) * ||delta||_1 on the difference-in-means estimator
/// when outcomes are L-Lipschitz in the exposure and the realized exposures
/// deviate from the target by delta_i = rho_i - rho.
double bias_bound_direct(double lipschitz, const std::vector<double>& delta);

/// Conditional variance sigma^2 / (n_I * Var_n[rho]) of gamma_hat under a
/// constant own-treatment design; Var_n uses divisor n_I. Throws
/// DegenerateDesignError when rho is constant.
double predicted_var_spillover(double sigma, const std::vector<double>& rho);

struct TotalVariancePrediction {
    double value = 0.0;        // sigma^2/n_I * Var[Z - rho] / (Var Z Var rho - Cov^2)
    double floor_value = 0.0;  // sigma^2 / (n_I * Var_n[rho])
};

/// Conditional variance of beta_hat + gamma_hat under the threshold design;
/// all moments use divisor n_I. Requires |Corr(Z, rho)| < 1 and both
/// variances positive.
TotalVariancePrediction predicted_var_total(double sigma, const std::vector<std::uint8_t>& z,
                                            const std::vector<double>& rho);

/// Population (divisor n) variance; helper shared by the predictions above.
double population_variance(const std::vector<double>& v);

std::string to_csv_row(const EstimateSummary& s);
std::string estimate_csv_header();

}  // namespace iset
