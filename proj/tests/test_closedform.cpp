#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>

#include "fstefan/closedform.hpp"
#include "fstefan/error.hpp"
#include "fstefan/fracops.hpp"
#include "fstefan/specfun.hpp"
#include "oracles.hpp"

using namespace fstefan;

namespace
{

Material with_stefan(double ste, double c = 1.0) { return {1.0, c, 1.0, c / ste}; }

// Independent sigma: bisection on the front equation with the plain double Wright series.
double sigma_oracle(double gamma, double ste)
{
  const double mu = -0.5 * gamma;
  auto f = [&](double s) {
    return s * std::tgamma(1.0 + 0.5 * gamma) / std::tgamma(1.0 - 0.5 * gamma) -
           ste * oracle::wright(-s, mu, 1.0 + mu) / (1.0 - oracle::wright(-s, mu, 1.0));
  };
  return oracle::bisect(f, 1e-6, 3.0, 100);
}

}  // namespace

TEST_CASE("material and parameter validation")
{
  CHECK_THROWS_AS(validate(Material{0.0, 1.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(Material{1.0, 1.0, -1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(FracParams{0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(FracParams{1.01, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(FracParams{0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(BoundaryData{0.0}), DomainError);
  const Material m{2.0, 3.0, 5.0, 7.0};
  CHECK(m.alpha() == doctest::Approx(5.0 / 6.0).epsilon(1e-16));
  CHECK(FracParams{1.0, 123.0}.tau_factor() == 1.0);
}

TEST_CASE("lambda_scale")
{
  CHECK(lambda_scale({1.0, 1.0, 4.0, 1.0}, {1.0, 9.0}) == doctest::Approx(2.0));
  CHECK(lambda_scale({1.0, 1.0, 1.0, 1.0}, {0.5, 1.0}) == doctest::Approx(1.0));
  CHECK(lambda_scale({1.0, 1.0, 2.0, 1.0}, {0.5, 3.0}) == doctest::Approx(1.8612097182).epsilon(1e-10));
  // conventions coincide for alpha = 1 or gamma = 1
  CHECK(lambda_scale({1.0, 1.0, 1.0, 1.0}, {0.4, 3.0}, LambdaConvention::AlphaPower) ==
        doctest::Approx(lambda_scale({1.0, 1.0, 1.0, 1.0}, {0.4, 3.0})));
  CHECK(lambda_scale({1.0, 1.0, 4.0, 1.0}, {1.0, 3.0}, LambdaConvention::AlphaPower) == doctest::Approx(2.0));
  CHECK(lambda_scale({1.0, 1.0, 4.0, 1.0}, {0.5, 1.0}, LambdaConvention::AlphaPower) ==
        doctest::Approx(std::pow(4.0, 0.25)));
}

TEST_CASE("sigma at gamma = 1 matches the classical Neumann root")
{
  for (double ste : {0.1, 1.0, 5.0}) {
    const double ref = oracle::neumann_sigma(ste);
    CHECK(std::fabs(sigma_solve(with_stefan(ste), {1.0, 1.0}, {1.0}) - ref) < 1e-8);
    CHECK(std::fabs(neumann_classical(with_stefan(ste), {1.0}).sigma - ref) < 1e-8);
  }
  // frozen from the bisection oracle
  CHECK(neumann_classical(with_stefan(1.0), {1.0}).sigma == doctest::Approx(1.2401252666).epsilon(1e-9));
}

TEST_CASE("sigma against an independent root of the front equation")
{
  for (double g : {0.3, 0.5, 0.7, 0.9})
    for (double ste : {0.1, 1.0}) {
      CAPTURE(g);
      CAPTURE(ste);
      CHECK(sigma_solve(with_stefan(ste), {g, 1.0}, {1.0}) == doctest::Approx(sigma_oracle(g, ste)).epsilon(1e-9));
    }
  // frozen from the oracle above
  CHECK(sigma_solve(with_stefan(1.0), {0.5, 1.0}, {1.0}) == doctest::Approx(0.95630).epsilon(1e-4));
}

TEST_CASE("small Stefan number asymptote")
{
  for (double g : {0.4, 1.0}) {
    auto gap = [g](double ste) {
      const double asym = std::sqrt(ste * std::tgamma(1.0 - 0.5 * g) / std::tgamma(1.0 + 0.5 * g));
      return std::fabs(sigma_solve(with_stefan(ste), {g, 1.0}, {1.0}) / asym - 1.0);
    };
    CHECK(gap(1e-4) < 5e-3);
    CHECK(gap(1e-4) < gap(1e-3));
    CHECK(gap(1e-3) < gap(1e-2));
  }
  const double s = neumann_classical(with_stefan(1e-4), {1.0}).sigma;
  CHECK(s * s / 2e-4 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("sigma satisfies the fractional Stefan condition")
{
  // rho l D^g s + k tau^(1-g) u_x(s-, t) = 0 with D^g s from the power rule
  for (double g : {0.3, 0.5, 0.7, 0.9})
    for (double ste : {0.1, 1.0, 5.0}) {
      const Material m = with_stefan(ste, 2.0);
      const FracParams f{g, 1.7};
      const auto sol = similarity_solution(m, f, {1.3});
      CHECK(std::fabs(sigma_residual(sol.sigma, g, stefan_number(m, {1.3}))) < 1e-10);
      for (double t : {0.3, 1.0, 4.0}) {
        const double lhs = m.rho * m.l * sol.sigma * sol.lambda * caputo_power_rule(0.5 * g, g, t);
        const double rhs = -m.k * f.tau_factor() * similarity_u_x(sol, similarity_s(sol, t), t);
        CHECK(std::fabs(lhs - rhs) < 1e-6 * std::fabs(rhs));
      }
    }
}

TEST_CASE("alpha-power convention solves its own scaled equation")
{
  const Material m{1.0, 0.5, 2.0, 1.0};
  const FracParams f{0.6, 2.0};
  const auto sol = similarity_solution(m, f, {1.0}, 1e-12, LambdaConvention::AlphaPower);
  const double ratio = sol.lambda * sol.lambda / (m.alpha() * f.tau_factor());
  CHECK(std::fabs(sigma_residual(sol.sigma, 0.6, stefan_number(m, {1.0}), ratio)) < 1e-10);
  CHECK(sol.lambda == doctest::Approx(lambda_scale(m, f, LambdaConvention::AlphaPower)));
}

TEST_CASE("gamma = 1 profile equals the erf solution")
{
  const Material m{1.0, 1.0, 1.0, 1.0};
  const auto sol = similarity_solution(m, {1.0, 1.0}, {1.0});
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ut(0.05, 2.0), ux(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = ut(rng);
    const double x = ux(rng) * 1.2 * similarity_s(sol, t);
    worst = std::max(worst, std::fabs(similarity_u(sol, x, t) - oracle::neumann_u(sol.sigma, 1.0, 1.0, x, t)));
  }
  CHECK(worst < 1e-9);
  CHECK(similarity_s(sol, 2.0) == doctest::Approx(sol.sigma * std::sqrt(2.0)));
}

TEST_CASE("boundary values, bounds and monotonicity of the profile")
{
  for (double g : {0.3, 0.6, 1.0}) {
    const auto sol = similarity_solution(with_stefan(0.7), {g, 2.0}, {3.0});
    for (double t : {0.01, 0.5, 3.0}) {
      const double s = similarity_s(sol, t);
      CHECK(similarity_u(sol, 0.0, t) == doctest::Approx(3.0).epsilon(1e-14));
      CHECK(std::fabs(similarity_u_unclipped(sol, s, t)) < 1e-12);
      CHECK(similarity_u(sol, 1.5 * s, t) == 0.0);
      double prev = 3.0;
      for (int i = 1; i < 100; ++i) {
        const double u = similarity_u(sol, s * i / 100.0, t);
        CHECK(u < prev);
        CHECK(u >= 0.0);
        prev = u;
      }
      CHECK(similarity_s_inverse(sol, s) == doctest::Approx(t).epsilon(1e-13));
    }
    CHECK(similarity_s(sol, 0.0) == 0.0);
  }
  CHECK_THROWS_AS(similarity_u(similarity_solution(with_stefan(1.0), {0.5, 1.0}, {1.0}), 0.1, 0.0), DomainError);
}

TEST_CASE("similarity_s power evaluation")
{
  const auto sol = make_similarity_solution(1.0, 1.0, 0.8, 1.0, 1.0);
  CHECK(similarity_s(sol, 16.0) == doctest::Approx(3.0314331330).epsilon(1e-10));
  CHECK(similarity_s_dot(sol, 16.0) == doctest::Approx(0.4 * 3.0314331330 / 16.0).epsilon(1e-10));
}

TEST_CASE("analytic derivatives against finite differences")
{
  const auto sol = similarity_solution(with_stefan(1.0), {0.55, 1.0}, {1.0});
  const double t = 0.8, h = 1e-5;
  for (double f : {0.1, 0.5, 0.9}) {
    const double x = f * similarity_s(sol, t);
    auto u = [&](double xx, double tt) { return similarity_u_unclipped(sol, xx, tt); };
    CHECK(similarity_u_t(sol, x, t) == doctest::Approx((u(x, t + h) - u(x, t - h)) / (2 * h)).epsilon(1e-6));
    CHECK(similarity_u_x(sol, x, t) == doctest::Approx((u(x + h, t) - u(x - h, t)) / (2 * h)).epsilon(1e-6));
    const double hx = 1e-3;
    CHECK(similarity_u_xx(sol, x, t) ==
          doctest::Approx((u(x + hx, t) - 2 * u(x, t) + u(x - hx, t)) / (hx * hx)).epsilon(1e-5));
  }
}

TEST_CASE("the Wright profile solves the fractional heat equation on the half-line")
{
  // Caputo side by tanh-sinh quadrature of the analytic u_t, independent of analysis.cpp
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ut(0.2, 2.0), ux(0.05, 1.5);
  for (double g : {0.3, 0.7}) {
    const Material m{1.0, 1.0, 1.3, 1.0};
    const FracParams f{g, 1.0};
    const auto sol = similarity_solution(m, f, {1.0});
    boost::math::quadrature::tanh_sinh<double> q;
    for (int i = 0; i < 5; ++i) {
      const double t = ut(rng), x = ux(rng) * similarity_s(sol, t);
      const double t_cut = std::pow(x / (sol.lambda * sol.wright_radius), 2.0 / g);
      auto kernel = [&](double tp, double tc) {
        return std::pow(tc > 0.0 ? tc : t - tp, -g) * similarity_u_t(sol, x, tp);
      };
      const double caputo = q.integrate(kernel, t_cut, t) / std::tgamma(1.0 - g);
      const double rhs = m.alpha() * f.tau_factor() * similarity_u_xx(sol, x, t);
      CHECK(std::fabs(caputo - rhs) < 1e-3 * std::fabs(rhs));
    }
  }
}

TEST_CASE("front exponent is exactly gamma/2")
{
  const auto sol = similarity_solution(with_stefan(1.0), {0.6, 1.0}, {1.0});
  const double slope = (std::log(similarity_s(sol, 10.0)) - std::log(similarity_s(sol, 0.1))) / std::log(100.0);
  CHECK(std::fabs(slope - 0.3) < 1e-12);
}
