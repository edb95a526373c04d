#include "fstefan/closedform.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fstefan/error.hpp"
#include "fstefan/specfun.hpp"

namespace fstefan
{

namespace
{

void require_positive(double v, const char* name)
{
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be positive and finite (got " << v << ")";
    throw DomainError(os.str());
  }
}

// Refines a sign-changing bracket with TOMS 748 and returns the end point with smaller |f|.
template <typename F>
double refine_root(F f, double lo, double hi, double f_lo, double f_hi)
{
  std::uintmax_t max_iter = 200;
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(50), max_iter);
  return std::fabs(f(a)) <= std::fabs(f(b)) ? a : b;
}

}  // namespace

double FracParams::tau_factor() const { return std::pow(tau, 1.0 - gamma); }

void validate(const Material& mat)
{
  require_positive(mat.rho, "rho");
  require_positive(mat.c, "c");
  require_positive(mat.k, "k");
  require_positive(mat.l, "l");
}

void validate(const FracParams& frac)
{
  if (!(frac.gamma > 0.0 && frac.gamma <= 1.0)) {
    std::ostringstream os;
    os << "gamma must lie in (0, 1] (got " << frac.gamma << ")";
    throw DomainError(os.str());
  }
  require_positive(frac.tau, "tau");
}

void validate(const BoundaryData& bc) { require_positive(bc.u0, "u0"); }

double stefan_number(const Material& mat, const BoundaryData& bc) { return mat.c * bc.u0 / mat.l; }

double lambda_scale(const Material& mat, const FracParams& frac, LambdaConvention convention)
{
  validate(mat);
  validate(frac);
  if (convention == LambdaConvention::AlphaPower)
    return std::pow(frac.tau, 0.5 * (1.0 - frac.gamma)) * std::pow(mat.alpha(), 0.5 * frac.gamma);
  return std::sqrt(mat.alpha() * frac.tau_factor());
}

SimilaritySolution make_similarity_solution(double sigma, double lambda, double gamma, double u0, double stefan)
{
  require_positive(sigma, "sigma");
  require_positive(lambda, "lambda");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("similarity solution: gamma must lie in (0, 1]");
  SimilaritySolution sol{sigma, lambda, gamma, u0, stefan};
  const double mu = -0.5 * gamma;
  sol.front_drop = 1.0 - wright({-sigma, mu, 1.0});
  sol.wright_radius = std::min(wright_reliable_radius(mu, 1.0 + mu), wright_reliable_radius(mu, 1.0 + 2.0 * mu));
  return sol;
}

double sigma_residual(double sigma, double gamma, double stefan, double ratio)
{
  const double mu = -0.5 * gamma;
  const double g_ratio = gamma_fn(1.0 + 0.5 * gamma) / gamma_fn(1.0 - 0.5 * gamma);
  const double drop = 1.0 - wright({-sigma, mu, 1.0});
  return ratio * sigma * g_ratio - stefan * wright({-sigma, mu, 1.0 + mu}) / drop;
}

double sigma_solve(const Material& mat, const FracParams& frac, const BoundaryData& bc, double tol,
                   LambdaConvention convention)
{
  validate(mat);
  validate(frac);
  validate(bc);
  if (!(tol > 0.0)) throw DomainError("sigma_solve: tol must be positive");
  const double ste = stefan_number(mat, bc);
  require_positive(ste, "Stefan number");

  const double g = frac.gamma;
  const double lambda = lambda_scale(mat, frac, convention);
  const double ratio = lambda * lambda / (mat.alpha() * frac.tau_factor());
  auto F = [&](double s) { return sigma_residual(s, g, ste, ratio); };

  // Small-Ste asymptote; F < 0 near 0 and grows roughly linearly once the W-ratio has decayed.
  const double sigma0 = std::sqrt(ste * gamma_fn(1.0 - 0.5 * g) / gamma_fn(1.0 + 0.5 * g) / ratio);
  const double sigma_max = 2.0 * std::max(1.0, sigma0) * 4.0;

  double lo = std::min(sigma0, 1.0) * 1e-6;
  double f_lo = F(lo);
  if (!(f_lo < 0.0)) {
    std::ostringstream os;
    os << "sigma_solve: F(" << lo << ") = " << f_lo << " is not negative";
    throw BracketError(os.str());
  }
  double hi = std::min(sigma0, sigma_max);
  double f_hi = F(hi);
  while (f_hi <= 0.0) {
    lo = hi;
    f_lo = f_hi;
    if (hi >= sigma_max) {
      std::ostringstream os;
      os << "sigma_solve: no sign change of F on (0, " << sigma_max << "] (gamma=" << g << ", Ste=" << ste << ")";
      throw BracketError(os.str());
    }
    hi = std::min(2.0 * hi, sigma_max);
    f_hi = F(hi);
  }
  const double root = refine_root(F, lo, hi, f_lo, f_hi);
  if (std::fabs(F(root)) > tol) {
    std::ostringstream os;
    os << "sigma_solve: |F(sigma)| = " << std::fabs(F(root)) << " exceeds tol " << tol;
    throw ConvergenceError(os.str());
  }
  return root;
}

SimilaritySolution similarity_solution(const Material& mat, const FracParams& frac, const BoundaryData& bc,
                                       double tol, LambdaConvention convention)
{
  const double sigma = sigma_solve(mat, frac, bc, tol, convention);
  return make_similarity_solution(sigma, lambda_scale(mat, frac, convention), frac.gamma, bc.u0,
                                  stefan_number(mat, bc));
}

namespace
{

double similarity_z(const SimilaritySolution& sol, double x, double t)
{
  if (!(t > 0.0)) {
    std::ostringstream os;
    os << "similarity solution: t must be > 0 (got " << t << ")";
    throw DomainError(os.str());
  }
  if (x < 0.0) throw DomainError("similarity solution: x must be >= 0");
  return -x / (sol.lambda * std::pow(t, 0.5 * sol.gamma));
}

double scaled_wright_derivative(const SimilaritySolution& sol, double z, int order)
{
  if (std::fabs(z) > sol.wright_radius) return 0.0;
  const double mu = -0.5 * sol.gamma;
  return wright({z, mu, 1.0 + order * mu});
}

}  // namespace

double similarity_u_unclipped(const SimilaritySolution& sol, double x, double t)
{
  const double z = similarity_z(sol, x, t);
  return sol.u0 * (1.0 - (1.0 - wright({z, -0.5 * sol.gamma, 1.0})) / sol.front_drop);
}

double similarity_u(const SimilaritySolution& sol, double x, double t)
{
  similarity_z(sol, x, t);
  if (x >= similarity_s(sol, t)) return 0.0;
  return similarity_u_unclipped(sol, x, t);
}

double similarity_u_t(const SimilaritySolution& sol, double x, double t)
{
  const double z = similarity_z(sol, x, t);
  const double b = sol.u0 / sol.front_drop;
  return b * scaled_wright_derivative(sol, z, 1) * 0.5 * sol.gamma * (-z) / t;
}

double similarity_u_x(const SimilaritySolution& sol, double x, double t)
{
  const double z = similarity_z(sol, x, t);
  const double len = sol.lambda * std::pow(t, 0.5 * sol.gamma);
  return -sol.u0 / sol.front_drop * scaled_wright_derivative(sol, z, 1) / len;
}

double similarity_u_xx(const SimilaritySolution& sol, double x, double t)
{
  const double z = similarity_z(sol, x, t);
  const double len = sol.lambda * std::pow(t, 0.5 * sol.gamma);
  return sol.u0 / sol.front_drop * scaled_wright_derivative(sol, z, 2) / (len * len);
}

double similarity_s(const SimilaritySolution& sol, double t)
{
  if (t < 0.0) throw DomainError("similarity_s: t must be >= 0");
  if (t == 0.0) return 0.0;
  return sol.sigma * sol.lambda * std::pow(t, 0.5 * sol.gamma);
}

double similarity_s_dot(const SimilaritySolution& sol, double t)
{
  if (!(t > 0.0)) throw DomainError("similarity_s_dot: t must be > 0");
  return 0.5 * sol.gamma * sol.sigma * sol.lambda * std::pow(t, 0.5 * sol.gamma - 1.0);
}

double similarity_s_inverse(const SimilaritySolution& sol, double x)
{
  if (x < 0.0) throw DomainError("similarity_s_inverse: x must be >= 0");
  return std::pow(x / (sol.sigma * sol.lambda), 2.0 / sol.gamma);
}

SimilaritySolution neumann_classical(const Material& mat, const BoundaryData& bc, double tol)
{
  validate(mat);
  validate(bc);
  if (!(tol > 0.0)) throw DomainError("neumann_classical: tol must be positive");
  const double ste = stefan_number(mat, bc);
  auto F = [ste](double s) {
    const double h = 0.5 * s;
    return std::sqrt(std::numbers::pi) * h * std::exp(h * h) * std::erf(h) - ste;
  };
  double lo = 0.0, hi = 1.0;
  while (F(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0) {
      std::ostringstream os;
      os << "neumann_classical: no sign change on (0, 64] for Ste=" << ste;
      throw BracketError(os.str());
    }
  }
  const double sigma = refine_root(F, lo, hi, F(lo), F(hi));
  if (std::fabs(F(sigma)) > tol * std::max(1.0, ste)) throw ConvergenceError("neumann_classical: root not resolved");
  return make_similarity_solution(sigma, std::sqrt(mat.alpha()), 1.0, bc.u0, ste);
}

}  // namespace fstefan
