#pragma once

#include <cstddef>

namespace graphcorr {

struct Chi2Params {
  double df = 1.0;
  double noncentrality = 0.0;

  /// Throws std::domain_error unless df >= 1 and noncentrality >= 0.
  void validate() const;
};

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly.
double gamma_q(double a, double x);

double chi2_cdf(double x, double df);
/// Upper tail 1 - chi2_cdf(x, df) without cancellation.
double chi2_sf(double x, double df);
/// Bracketed bisection on chi2_cdf. Requires p in (0, 1).
double chi2_quantile(double p, double df);

/// Poisson mixture of central chi-square cdfs with weights Pois(mu / 2),
/// truncated once the remaining Poisson mass is below 1e-10.
double noncentral_chi2_cdf(double x, double df, double mu);

double normal_cdf(double z);

/// mu = r^2 ((K^2 + 1) / (4 K^2) n^2 - n / 2)
double sbm_noncentrality(std::size_t blocks, std::size_t n, double r);

/// Limiting power of the block-correlation chi-square test at level alpha.
double sbm_theoretical_power(std::size_t blocks, std::size_t n, double r, double alpha);

}  // namespace graphcorr
