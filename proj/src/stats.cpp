#include "lincue/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lincue/log.hpp"
#include "lincue/special.hpp"

namespace lincue {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

double sample_sd(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (n - 1.0));
}

// Linear-interpolation quantile on a sorted copy (numpy default scheme).
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double DensityEstimate::evaluate(double x) const {
    const double n = static_cast<double>(sample.size());
    double acc = 0.0;
    for (double xi : sample) {
        const double u = (x - xi) / bandwidth;
        acc += std::exp(-0.5 * u * u);
    }
    return acc * kInvSqrt2Pi / (n * bandwidth);
}

double DensityEstimate::min() const { return *std::min_element(sample.begin(), sample.end()); }
double DensityEstimate::max() const { return *std::max_element(sample.begin(), sample.end()); }

DensityEstimate kde_fit(const std::vector<double>& sample) {
    if (sample.size() < 2) throw StatsError("kde_fit: need at least 2 samples");
    for (double x : sample) {
        if (!std::isfinite(x)) throw StatsError("kde_fit: non-finite sample value");
    }
    std::vector<double> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    const double sd = sample_sd(sample);
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    // Sparse integer-valued samples often have IQR == 0 while sd > 0; taking
    // the min literally would rail the bandwidth to the degenerate fallback,
    // so the IQR term only participates when it is informative.
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    double h = 0.9 * spread * std::pow(static_cast<double>(sample.size()), -0.2);
    if (h <= 0.0) {
        const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(sample.size());
        h = std::max(1e-3, 1e-3 * std::fabs(mean));
    }
    return DensityEstimate{sample, h};
}

const char* ovl_scale_name(OvlScale s) {
    switch (s) {
        case OvlScale::Medium: return "Medium";
        case OvlScale::High: return "High";
        case OvlScale::VeryHigh: return "VeryHigh";
    }
    return "Medium";
}

OvlScale ovl_scale_of(double value) {
    if (value < 0.70) return OvlScale::Medium;
    if (value < 0.83) return OvlScale::High;
    return OvlScale::VeryHigh;
}

double overlap_integral(const std::function<double(double)>& f,
                        const std::function<double(double)>& g,
                        double lo, double hi, int grid_points) {
    const int n = grid_points;
    const double dx = (hi - lo) / static_cast<double>(n - 1);
    double acc = 0.0;
    double prev = std::min(f(lo), g(lo));
    for (int i = 1; i < n; ++i) {
        const double x = lo + dx * static_cast<double>(i);
        const double cur = std::min(f(x), g(x));
        acc += 0.5 * (prev + cur) * dx;
        prev = cur;
    }
    return acc;
}

OvlResult ovl(const DensityEstimate& p, const DensityEstimate& q,
              const std::string& feature_name, int grid_points) {
    // 6 bandwidths of margin: the mass a kernel sheds beyond the grid is then
    // ~1e-9, so identical densities integrate to 1 within 1e-6.
    const double lo = std::min(p.min() - 6.0 * p.bandwidth, q.min() - 6.0 * q.bandwidth);
    const double hi = std::max(p.max() + 6.0 * p.bandwidth, q.max() + 6.0 * q.bandwidth);
    double value = overlap_integral([&p](double x) { return p.evaluate(x); },
                                    [&q](double x) { return q.evaluate(x); },
                                    lo, hi, grid_points);
    value = std::clamp(value, 0.0, 1.0);
    return OvlResult{value, grid_points, feature_name, ovl_scale_of(value)};
}

std::vector<double> midranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

TestResult kruskal_wallis(const std::vector<double>& group_a, const std::vector<double>& group_b) {
    if (group_a.empty() || group_b.empty()) throw StatsError("kruskal_wallis: both groups must be non-empty");
    const std::size_t na = group_a.size(), nb = group_b.size();
    const std::size_t n = na + nb;
    if (n < 3) throw StatsError("kruskal_wallis: need at least 3 values in total");

    std::vector<double> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), group_a.begin(), group_a.end());
    pooled.insert(pooled.end(), group_b.begin(), group_b.end());
    const std::vector<double> ranks = midranks(pooled);

    double ra = 0.0;
    for (std::size_t i = 0; i < na; ++i) ra += ranks[i];
    double rb = 0.0;
    for (std::size_t i = na; i < n; ++i) rb += ranks[i];

    const double dn = static_cast<double>(n);
    double h = 12.0 / (dn * (dn + 1.0)) *
                   (ra * ra / static_cast<double>(na) + rb * rb / static_cast<double>(nb)) -
               3.0 * (dn + 1.0);

    // Tie correction over the pooled sample.
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_sum = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        i = j + 1;
    }
    const double correction = 1.0 - tie_sum / (dn * dn * dn - dn);
    if (correction <= 0.0) {
        // Every pooled value identical: no evidence of any difference.
        return TestResult{0.0, 1.0, "kruskal-wallis"};
    }
    h /= correction;
    if (h < 0.0) h = 0.0;  // guards tiny negative rounding
    return TestResult{h, chi2_sf(h, 1.0), "kruskal-wallis"};
}

TestResult spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw StatsError("spearman: length mismatch");
    const std::size_t n = x.size();
    if (n < 3) throw StatsError("spearman: need at least 3 pairs");
    const std::vector<double> rx = midranks(x);
    const std::vector<double> ry = midranks(y);

    const double dn = static_cast<double>(n);
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / dn;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / dn;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mx;
        const double dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw StatsError("spearman: constant input");
    double rho = sxy / std::sqrt(sxx * syy);
    rho = std::clamp(rho, -1.0, 1.0);

    double p;
    const double denom = 1.0 - rho * rho;
    if (denom <= 0.0) {
        p = 0.0;
    } else {
        const double t = std::fabs(rho) * std::sqrt((dn - 2.0) / denom);
        p = std::min(1.0, 2.0 * student_t_sf(t, dn - 2.0));
    }
    return TestResult{rho, p, "spearman"};
}

std::vector<std::vector<double>> spearman_matrix(const std::vector<std::vector<double>>& columns) {
    const std::size_t d = columns.size();
    std::vector<std::vector<double>> m(d, std::vector<double>(d, 0.0));
    std::vector<bool> constant(d, false);
    for (std::size_t i = 0; i < d; ++i) {
        constant[i] = std::all_of(columns[i].begin(), columns[i].end(),
                                  [&](double v) { return v == columns[i][0]; });
        if (constant[i]) log_warning("spearman_matrix: column " + std::to_string(i) + " is constant; correlations set to 0");
        m[i][i] = 1.0;
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            double rho = 0.0;
            if (!constant[i] && !constant[j]) rho = spearman(columns[i], columns[j]).statistic;
            m[i][j] = rho;
            m[j][i] = rho;
        }
    }
    return m;
}

namespace {

double binom_log_terms_sum(int from, int to, int n, double p) {
    // log-sum-exp over C(n,j) p^j (1-p)^(n-j), j in [from, to]
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(to - from + 1));
    for (int j = from; j <= to; ++j) {
        const double lc = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
        logs.push_back(lc + j * lp + (n - j) * lq);
    }
    const double m = *std::max_element(logs.begin(), logs.end());
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - m);
    return std::min(1.0, std::exp(m) * acc);
}

}  // namespace

double binom_sf(int k, int n, double p) {
    if (k < 0 || n < 0 || k > n) throw StatsError("binom_sf: need 0 <= k <= n");
    if (p < 0.0 || p > 1.0) throw StatsError("binom_sf: p outside [0, 1]");
    if (k == 0) return 1.0;
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    return binom_log_terms_sum(k, n, n, p);
}

double binom_cdf(int k, int n, double p) {
    if (k < 0 || n < 0 || k > n) throw StatsError("binom_cdf: need 0 <= k <= n");
    if (p < 0.0 || p > 1.0) throw StatsError("binom_cdf: p outside [0, 1]");
    if (k == n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;
    return binom_log_terms_sum(0, k, n, p);
}

}  // namespace lincue
