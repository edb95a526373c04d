#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "fstefan/error.hpp"
#include "fstefan/specfun.hpp"
#include "oracles.hpp"

using namespace fstefan;

namespace
{
const double kPi = 3.14159265358979323846;
}

TEST_CASE("gamma_fn at integers and half integers")
{
  double fact = 1.0;
  for (int n = 1; n <= 20; ++n) {
    CHECK(gamma_fn(n) == doctest::Approx(fact).epsilon(1e-13));
    fact *= n;
  }
  CHECK(gamma_fn(1.0) == 1.0);
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-15));
  // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
  CHECK(gamma_fn(0.5) == doctest::Approx(1.7724538509055160).epsilon(1e-14));
  double ratio = 1.0;  // (2n)! / (4^n n!)
  for (int n = 1; n <= 12; ++n) {
    ratio *= (2.0 * n) * (2.0 * n - 1.0) / (4.0 * n);
    CHECK(gamma_fn(n + 0.5) == doctest::Approx(ratio * std::sqrt(kPi)).epsilon(1e-12));
  }
}

TEST_CASE("gamma_fn reflection and duplication over [-10, 30]")
{
  for (double x = -9.75; x < 30.0; x += 0.37) {
    if (x < 1.0 && x > 0.0) {
      CHECK(gamma_fn(x) * gamma_fn(1.0 - x) == doctest::Approx(kPi / std::sin(kPi * x)).epsilon(1e-12));
    }
    if (x > 0.0 && x < 15.0) {
      const double lhs = gamma_fn(x) * gamma_fn(x + 0.5);
      const double rhs = std::pow(2.0, 1.0 - 2.0 * x) * std::sqrt(kPi) * gamma_fn(2.0 * x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    if (x < 0.0) CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
  }
}

TEST_CASE("gamma_fn rejects poles, rgamma vanishes there")
{
  for (double p : {0.0, -1.0, -2.0, -7.0}) {
    CHECK_THROWS_AS(gamma_fn(p), DomainError);
    CHECK(rgamma(p) == 0.0);
  }
  CHECK(rgamma(0.5) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-15));
  CHECK(rgamma(-0.5) == doctest::Approx(-0.5 / std::sqrt(kPi)).epsilon(1e-14));
}

TEST_CASE("wright at z = 0 is a single term")
{
  for (double mu : {-0.05, -0.25, -0.45}) CHECK(wright({0.0, mu, 1.0}) == 1.0);
  CHECK(wright({0.0, -0.3, 2.5}) == doctest::Approx(1.0 / std::tgamma(2.5)).epsilon(1e-15));
}

TEST_CASE("wright reduces to erfc and to the Gaussian at mu = -1/2")
{
  double worst_erfc = 0.0, worst_gauss = 0.0;
  for (int i = 0; i <= 120; ++i) {
    const double x = 0.05 * i;
    worst_erfc = std::max(worst_erfc, std::fabs(wright({-x, -0.5, 1.0}) - oracle::erfc(0.5 * x)));
    worst_gauss = std::max(worst_gauss, std::fabs(wright({-x, -0.5, 0.5}) - std::exp(-0.25 * x * x) / std::sqrt(kPi)));
  }
  CHECK(worst_erfc <= 1e-10);
  CHECK(worst_gauss <= 1e-10);
  // erfc(1/2) by quadrature
  CHECK(wright({-1.0, -0.5, 1.0}) == doctest::Approx(0.4795001221869535).epsilon(1e-13));
}

TEST_CASE("wright matches closed forms at mu = 0 and mu = 1")
{
  for (double z : {-2.0, -0.5, 0.3, 1.7}) {
    CHECK(wright({z, 0.0, 1.5}) == doctest::Approx(std::exp(z) / std::tgamma(1.5)).epsilon(1e-13));
    CHECK(wright({z, -0.3, 0.9}) == doctest::Approx(oracle::wright(z, -0.3, 0.9)).epsilon(1e-12));
  }
  for (double z : {0.25, 1.0, 4.0}) {
    CHECK(wright({z, 1.0, 1.0}) == doctest::Approx(boost::math::cyl_bessel_i(0, 2.0 * std::sqrt(z))).epsilon(1e-13));
  }
}

TEST_CASE("wright is strictly decreasing and inside (0,1) for negative arguments")
{
  CHECK(wright({-0.5, -0.35, 1.0}) > 0.0);
  CHECK(wright({-0.5, -0.35, 1.0}) < wright({-0.4, -0.35, 1.0}));
  for (double g : {0.2, 0.5, 0.8}) {
    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
      const double w = wright({-0.05 * i, -0.5 * g, 1.0});
      CHECK(w > 0.0);
      CHECK(w < prev);
      prev = w;
    }
  }
}

TEST_CASE("wright_prime: shift identity values and finite differences")
{
  CHECK(wright_prime({0.0, -0.25, 1.0}) == doctest::Approx(1.0 / std::tgamma(0.75)).epsilon(1e-15));
  CHECK(wright_prime({-1.0, -0.5, 1.0}) == doctest::Approx(0.4393912894677224).epsilon(1e-13));

  const double h = 1e-5;
  auto fd = [h](double z, double mu, double nu) {
    return (wright({z + h, mu, nu}) - wright({z - h, mu, nu})) / (2.0 * h);
  };
  CHECK(wright_prime({-0.8, -0.45, 1.0}) == doctest::Approx(fd(-0.8, -0.45, 1.0)).epsilon(1e-6));
  for (double g : {0.2, 0.5, 0.8}) {
    for (int i = 0; i <= 50; ++i) {
      const double z = -0.1 * i;
      const double exact = wright_prime({z, -0.5 * g, 1.0});
      CHECK(std::fabs(fd(z, -0.5 * g, 1.0) - exact) <= 1e-6 * std::fabs(exact));
    }
  }
}

TEST_CASE("wright gives up instead of returning a truncated sum")
{
  CHECK_THROWS_AS(wright({-8.0, -0.5, 1.0}, 1e-16, 5), ConvergenceError);
}

TEST_CASE("reliable radius bounds the derivative profiles")
{
  for (double g : {0.3, 0.5, 0.8, 1.0}) {
    const double mu = -0.5 * g;
    const double r = wright_reliable_radius(mu, 1.0 + mu);
    CHECK(r > 8.0);
    CHECK(std::fabs(wright_prime({-r, mu, 1.0})) < 1e-6);
    CHECK(std::fabs(wright({-r, mu, 1.0 + 2.0 * mu})) < 1e-5);
  }
  CHECK(wright_reliable_radius(-0.25, 0.75, 1e4) < wright_reliable_radius(-0.25, 0.75, 1e8));
}
