#pragma once

namespace fatune::stats {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
/// I_0 = 0 and I_1 = 1 exactly.
double incomplete_beta(double a, double b, double x);

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly so small tails keep their relative accuracy.
double gamma_q(double a, double x);

// Distribution functions. Non-positive degrees of freedom throw
// InvalidArgument.
double t_cdf(double t, double df);
double f_cdf(double x, double d1, double d2);
double chi2_cdf(double x, double df);

// Upper tails 1 - CDF, evaluated without cancellation.
double t_sf(double t, double df);
double f_sf(double x, double d1, double d2);
double chi2_sf(double x, double df);

} // namespace fatune::stats
