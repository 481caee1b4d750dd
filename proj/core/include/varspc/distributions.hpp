#pragma once

namespace varspc::dist {

// Regularized lower incomplete gamma P(a, x); series for x < a + 1,
// continued fraction otherwise. Absolute error below 1e-12 over the
// parameter ranges used by the chart computations.
double reg_lower_gamma(double a, double x);

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

// Central chi-square CDF with v degrees of freedom.
double chi2_cdf(double x, double v);

// Upper quantile: value q with P(X > q) = alpha for X ~ chi2(v).
double chi2_quantile_upper(double alpha, double v);

// Noncentral chi-square CDF, noncentrality d >= 0, evaluated as a Poisson
// mixture of central CDFs truncated when the neglected mass is < 1e-12.
double noncentral_chi2_cdf(double x, double v, double d);

// Upper quantile of the F distribution with (d1, d2) degrees of freedom.
double f_quantile_upper(double alpha, double d1, double d2);

}  // namespace varspc::dist
