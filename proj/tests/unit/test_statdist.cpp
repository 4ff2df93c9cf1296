#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <cmath>
#include <random>

#include "graphcorr/statdist.hpp"

using namespace graphcorr;

TEST_CASE("chi-square cdf matches Boost across a grid") {
  for (double df : {1.0, 2.0, 3.0, 6.0, 10.0, 28.0, 55.0}) {
    boost::math::chi_squared dist(df);
    for (double x : {0.01, 0.5, 1.0, 2.5, 5.0, 7.8, 12.0, 30.0, 80.0}) {
      CHECK(std::abs(chi2_cdf(x, df) - boost::math::cdf(dist, x)) <= 1e-8);
      CHECK(std::abs(chi2_sf(x, df) - boost::math::cdf(boost::math::complement(dist, x))) <= 1e-8);
    }
  }
  CHECK(chi2_cdf(0.0, 4.0) == 0.0);
}

TEST_CASE("df = 2 closed form") {
  for (double x = 0.0; x < 40.0; x += 0.37) CHECK(std::abs(chi2_cdf(x, 2.0) - (1.0 - std::exp(-x / 2.0))) <= 1e-10);
}

TEST_CASE("chi-square quantile") {
  CHECK(chi2_quantile(0.95, 3.0) == doctest::Approx(7.8147).epsilon(1e-5));
  for (double df : {1.0, 3.0, 6.0, 15.0}) {
    for (double p : {0.01, 0.1, 0.5, 0.9, 0.95, 0.999}) {
      const double q = chi2_quantile(p, df);
      CHECK(std::abs(chi2_cdf(q, df) - p) <= 1e-7);
      CHECK(q == doctest::Approx(boost::math::quantile(boost::math::chi_squared(df), p)).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(chi2_quantile(0.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(chi2_quantile(1.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(chi2_cdf(-1.0, 3.0), std::domain_error);
}

TEST_CASE("noncentral chi-square") {
  CHECK(noncentral_chi2_cdf(4.0, 3.0, 0.0) == chi2_cdf(4.0, 3.0));
  CHECK(1.0 - noncentral_chi2_cdf(7.8147, 3.0, 7.8) == doctest::Approx(0.64).epsilon(0.01 / 0.64));
  for (double mu : {0.5, 3.0, 7.8, 26.0, 120.0}) {
    boost::math::non_central_chi_squared dist(3.0, mu);
    for (double x : {1.0, 5.0, 10.0, 40.0, 150.0}) {
      CHECK(std::abs(noncentral_chi2_cdf(x, 3.0, mu) - boost::math::cdf(dist, x)) <= 1e-8);
    }
  }
  double previous = 1.0;
  for (double mu = 0.0; mu < 30.0; mu += 1.5) {
    const double v = noncentral_chi2_cdf(9.0, 6.0, mu);
    CHECK(v <= previous + 1e-15);
    previous = v;
  }
}

TEST_CASE("noncentral chi-square agrees with simulation") {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> z;
  const double mu = 7.8;
  const double x = 7.8147;
  std::size_t above = 0;
  const std::size_t draws = 1000000;
  for (std::size_t i = 0; i < draws; ++i) {
    const double a = z(gen) + std::sqrt(mu);
    const double b = z(gen);
    const double c = z(gen);
    above += a * a + b * b + c * c > x;
  }
  const double mc = static_cast<double>(above) / static_cast<double>(draws);
  CHECK(std::abs(mc - (1.0 - noncentral_chi2_cdf(x, 3.0, mu))) < 0.002);
}

TEST_CASE("theoretical power of the block test") {
  CHECK(sbm_noncentrality(2, 1000, 0.005) == doctest::Approx(7.8));
  CHECK(sbm_theoretical_power(3, 500, 0.0, 0.05) == 0.05);
  CHECK(std::abs(sbm_theoretical_power(2, 1000, 0.005, 0.05) - 0.642) <= 0.005);
  CHECK(std::abs(sbm_theoretical_power(5, 2000, 0.005, 0.05) - 0.932) <= 0.005);
  CHECK_THROWS(sbm_theoretical_power(0, 100, 0.1, 0.05));
  CHECK_THROWS(sbm_theoretical_power(2, 1, 0.1, 0.05));
  CHECK_THROWS(sbm_theoretical_power(2, 100, 0.1, 1.0));
}

TEST_CASE("parameter validation and normal cdf") {
  CHECK_THROWS((Chi2Params{0.5, 0.0}.validate()));
  CHECK_THROWS((Chi2Params{2.0, -1.0}.validate()));
  CHECK_NOTHROW((Chi2Params{2.0, 1.0}.validate()));
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
}
