#include "shsim/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace shsim::stats {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEpsilon = 1e-14;

double gamma_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for the upper tail.
double gamma_cf(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / kEpsilon;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEpsilon) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double regularized_gamma_lower(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("gamma shape must be positive");
    if (x < 0.0) throw std::invalid_argument("gamma argument must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_series(a, x);
    return 1.0 - gamma_cf(a, x);
}

double regularized_gamma_upper(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("gamma shape must be positive");
    if (x < 0.0) throw std::invalid_argument("gamma argument must be nonnegative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_series(a, x);
    return gamma_cf(a, x);
}

double chi_square_sf(double x, int df) {
    if (df < 1) throw std::invalid_argument("chi-square df must be >= 1");
    return regularized_gamma_upper(df / 2.0, x / 2.0);
}

double normal_two_sided_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<double>>& counts) {
    const std::size_t rows = counts.size();
    if (rows < 2) throw std::invalid_argument("chi-square needs at least two rows");
    const std::size_t cols = counts.front().size();
    if (cols < 2) throw std::invalid_argument("chi-square needs at least two columns");
    for (const auto& row : counts)
        if (row.size() != cols) throw std::invalid_argument("ragged counts matrix");

    std::vector<double> row_total(rows, 0.0), col_total(cols, 0.0);
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (counts[r][c] < 0) throw std::invalid_argument("counts must be nonnegative");
            row_total[r] += counts[r][c];
            col_total[c] += counts[r][c];
            total += counts[r][c];
        }
    if (total <= 0) throw std::invalid_argument("counts matrix is empty");

    ChiSquareResult out;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            double expected = row_total[r] * col_total[c] / total;
            if (expected <= 0)
                throw std::invalid_argument("zero expected cell at row " + std::to_string(r) +
                                            ", column " + std::to_string(c));
            double diff = counts[r][c] - expected;
            out.chi2 += diff * diff / expected;
        }
    out.df = static_cast<int>((rows - 1) * (cols - 1));
    out.p = chi_square_sf(out.chi2, out.df);
    out.cramers_v =
        std::sqrt(out.chi2 / (total * static_cast<double>(std::min(rows - 1, cols - 1))));
    return out;
}

PoissonZResult poisson_length_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("both samples must be nonempty");
    auto mean = [](const std::vector<double>& v) {
        double sum = 0.0;
        for (double x : v) sum += x;
        return sum / v.size();
    };
    const double ma = mean(a), mb = mean(b);
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());

    PoissonZResult out;
    double denom = std::sqrt(ma / na + mb / nb);
    out.z = denom > 0 ? (ma - mb) / denom : 0.0;
    out.p = denom > 0 ? normal_two_sided_p(out.z) : 1.0;

    auto sq_dev = [](const std::vector<double>& v, double m) {
        double sum = 0.0;
        for (double x : v) sum += (x - m) * (x - m);
        return sum;
    };
    if (a.size() + b.size() > 2) {
        double pooled_var = (sq_dev(a, ma) + sq_dev(b, mb)) / (na + nb - 2.0);
        if (pooled_var > 0) out.cohens_d = (ma - mb) / std::sqrt(pooled_var);
    }
    return out;
}

} // namespace shsim::stats
