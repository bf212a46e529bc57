#pragma once

namespace lincue {

// Numeric special functions backing the p-value computations. Self-contained
// so p-values are reproducible bit-for-bit across platforms.

// Regularized lower incomplete gamma P(a, x) and upper Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

// Standard normal CDF.
double normal_cdf(double x);

// Survival functions used by the tests below.
double chi2_sf(double x, double df);     // via gamma_q(df/2, x/2)
double student_t_sf(double t, double df);  // one-sided P(T >= t)

}  // namespace lincue
