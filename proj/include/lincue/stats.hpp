#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lincue {

struct StatsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gaussian kernel density estimate with Silverman bandwidth.
struct DensityEstimate {
    std::vector<double> sample;
    double bandwidth = 0.0;

    double evaluate(double x) const;
    double min() const;
    double max() const;
    // Support grid bounds: sample range extended by 4 bandwidths.
    double grid_lo() const { return min() - 4.0 * bandwidth; }
    double grid_hi() const { return max() + 4.0 * bandwidth; }
};

// Fits a DensityEstimate. Requires sample size >= 2 with finite values.
// h = 0.9 * min(sd, IQR/1.34) * N^(-1/5); constant-ish samples fall back to
// max(1e-3, 1e-3*|mean|).
DensityEstimate kde_fit(const std::vector<double>& sample);

enum class OvlScale { Medium, High, VeryHigh };

const char* ovl_scale_name(OvlScale s);
OvlScale ovl_scale_of(double value);

struct OvlResult {
    double value = 0.0;
    int grid_points = 0;
    std::string feature_name;
    OvlScale scale = OvlScale::Medium;
};

inline constexpr int kOvlGridPoints = 2048;

// Integral of min(f, g) over [lo, hi] by the trapezoid rule on a uniform grid.
double overlap_integral(const std::function<double(double)>& f,
                        const std::function<double(double)>& g,
                        double lo, double hi, int grid_points = kOvlGridPoints);

// Overlapping coefficient of two fitted densities on the shared grid spanning
// both samples' ranges extended by 4 bandwidths; clamped to [0, 1].
OvlResult ovl(const DensityEstimate& p, const DensityEstimate& q,
              const std::string& feature_name = "", int grid_points = kOvlGridPoints);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::string test_name;
};

// Midranks (average ranks for ties), 1-based.
std::vector<double> midranks(const std::vector<double>& values);

// Two-group Kruskal-Wallis with tie correction; p-value from chi-square with
// one degree of freedom. All-identical pooled data yields H = 0, p = 1.
TestResult kruskal_wallis(const std::vector<double>& group_a, const std::vector<double>& group_b);

// Spearman rank correlation with average-rank ties; two-sided p from the
// t approximation with n-2 degrees of freedom. Throws on constant input.
TestResult spearman(const std::vector<double>& x, const std::vector<double>& y);

// Pairwise Spearman rho over columns; symmetric with unit diagonal. Constant
// columns get zero off-diagonal entries (with a warning) rather than an error.
std::vector<std::vector<double>> spearman_matrix(const std::vector<std::vector<double>>& columns);

// Binomial tail probabilities, summed in log space.
double binom_sf(int k, int n, double p);   // P(X >= k)
double binom_cdf(int k, int n, double p);  // P(X <= k)

}  // namespace lincue
