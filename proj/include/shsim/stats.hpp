#pragma once

#include <optional>
#include <vector>

namespace shsim::stats {

// Regularized incomplete gamma functions, evaluated locally (series for
// x < a+1, continued fraction otherwise). lower + upper == 1.
double regularized_gamma_lower(double a, double x);
double regularized_gamma_upper(double a, double x);

// Survival function of the chi-square distribution with df degrees of freedom.
double chi_square_sf(double x, int df);

// Standard normal two-sided tail probability for |z|.
double normal_two_sided_p(double z);

struct ChiSquareResult {
    double chi2 = 0.0;
    int df = 0;
    double p = 1.0;
    double cramers_v = 0.0;
};

// Pearson chi-square test of homogeneity over a counts matrix (rows =
// groups, columns = categories). Throws std::invalid_argument when the table
// is degenerate or an expected cell is zero.
ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<double>>& counts);

struct PoissonZResult {
    double z = 0.0;
    double p = 1.0;
    // Pooled-SD Cohen's d; absent when the pooled deviation is zero.
    std::optional<double> cohens_d;
};

// Z-test for a difference of mean counts under Poisson variance.
PoissonZResult poisson_length_test(const std::vector<double>& sample_a,
                                   const std::vector<double>& sample_b);

} // namespace shsim::stats
