#include "graphcorr/statdist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphcorr {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

double log_prefactor(double a, double x) { return -x + a * std::log(x) - std::lgamma(a); }

double series_p(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < kMaxIter; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double continued_fraction_q(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("incomplete gamma: a must be positive");
  if (!(x >= 0.0)) throw std::domain_error("incomplete gamma: x must be nonnegative");
}

void check_df(double df) {
  if (!(df > 0.0) || !std::isfinite(df)) throw std::domain_error("chi-square: df must be positive");
}

}  // namespace

void Chi2Params::validate() const {
  if (!(df >= 1.0)) throw std::domain_error("chi-square: df must be at least 1");
  if (!(noncentrality >= 0.0)) throw std::domain_error("chi-square: noncentrality must be nonnegative");
}

double gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return x < a + 1.0 ? series_p(a, x) : 1.0 - continued_fraction_q(a, x);
}

double gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return x < a + 1.0 ? 1.0 - series_p(a, x) : continued_fraction_q(a, x);
}

double chi2_cdf(double x, double df) {
  check_df(df);
  if (!(x >= 0.0)) throw std::domain_error("chi2_cdf: x must be nonnegative");
  return gamma_p(0.5 * df, 0.5 * x);
}

double chi2_sf(double x, double df) {
  check_df(df);
  if (!(x >= 0.0)) throw std::domain_error("chi2_sf: x must be nonnegative");
  return gamma_q(0.5 * df, 0.5 * x);
}

double chi2_quantile(double p, double df) {
  check_df(df);
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("chi2_quantile: p must lie in (0, 1)");
  double lo = 0.0;
  double hi = std::max(1.0, df);
  while (chi2_cdf(hi, df) < p) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (chi2_cdf(mid, df) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double noncentral_chi2_cdf(double x, double df, double mu) {
  check_df(df);
  if (!(x >= 0.0)) throw std::domain_error("noncentral_chi2_cdf: x must be nonnegative");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::domain_error("noncentral_chi2_cdf: mu must be nonnegative");
  if (mu == 0.0) return chi2_cdf(x, df);
  const double lambda = 0.5 * mu;
  const double log_lambda = std::log(lambda);
  double mass = 0.0;
  double total = 0.0;
  const auto cap = static_cast<long>(lambda + 50.0 * std::sqrt(lambda) + 1000.0);
  for (long j = 0; j <= cap; ++j) {
    const double jd = static_cast<double>(j);
    const double w = std::exp(-lambda + jd * log_lambda - std::lgamma(jd + 1.0));
    mass += w;
    total += w * chi2_cdf(x, df + 2.0 * jd);
    if (jd > lambda && 1.0 - mass < 1e-10) break;
  }
  return std::min(1.0, std::max(0.0, total));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double sbm_noncentrality(std::size_t blocks, std::size_t n, double r) {
  const double k = static_cast<double>(blocks);
  const double nn = static_cast<double>(n);
  return r * r * ((k * k + 1.0) / (4.0 * k * k) * nn * nn - nn / 2.0);
}

double sbm_theoretical_power(std::size_t blocks, std::size_t n, double r, double alpha) {
  if (blocks < 1) throw std::domain_error("sbm_theoretical_power: need at least one block");
  if (n < 2) throw std::domain_error("sbm_theoretical_power: need n >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("sbm_theoretical_power: alpha must lie in (0, 1)");
  const double df = static_cast<double>(blocks * (blocks + 1) / 2);
  const double mu = sbm_noncentrality(blocks, n, r);
  if (mu == 0.0) return alpha;
  return 1.0 - noncentral_chi2_cdf(chi2_quantile(1.0 - alpha, df), df, mu);
}

}  // namespace graphcorr
