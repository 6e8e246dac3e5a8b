#pragma once

// Distribution support functions used by the statistical tests: regularized
// incomplete beta/gamma, normal/t/chi-square CDFs and quantiles. Implemented
// locally so the test modules carry no external stats dependency.

namespace mesgencov::special {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double inc_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(a, x).
double inc_gamma_p(double a, double x);

// Standard normal CDF and quantile.
double norm_cdf(double z);
double norm_quantile(double p);

// Student-t CDF, survival and quantile with nu degrees of freedom.
double t_cdf(double t, double nu);
double t_quantile(double p, double nu);

// Chi-square CDF and quantile with k degrees of freedom.
double chisq_cdf(double x, double k);
double chisq_quantile(double p, double k);

}  // namespace mesgencov::special
