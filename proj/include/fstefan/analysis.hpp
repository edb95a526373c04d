#pragma once

// Residual evaluators and diagnostics for comparing the fractional Stefan formulations.

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "fstefan/closedform.hpp"
#include "fstefan/fracops.hpp"
#include "fstefan/solver.hpp"

namespace fstefan
{

struct SpaceTimePoint
{
  double x = 0.0;
  double t = 0.0;
};

struct ResidualSummary
{
  double max_abs = 0.0;
  double mean = 0.0;
  double mean_abs = 0.0;
  int positive = 0;
  int negative = 0;
};

struct ResidualReport
{
  std::vector<SpaceTimePoint> points;
  Eigen::VectorXd values;
  ResidualSummary summary;
};

ResidualReport make_report(std::vector<SpaceTimePoint> points, Eigen::VectorXd values);

/// Time resolution used when a closed-form temperature is sampled for an L1 evaluation.
struct QuadratureOptions
{
  int time_levels = 20000;
  double fd_step_fraction = 1e-3;  // central-difference step for u_xx, as a fraction of s(t)
};

/// Residual of the coupled heat equation whose memory starts at the arrival time s^-1(x):
///   (rho c / Gamma(1-g)) int_{s^-1(x)}^t (t-t')^-g u_t dt' - k tau^(1-g) u_xx.
/// The windowed Caputo term uses caputo_l1_window on a uniform sampling of u(x, .) on [0, t];
/// u_xx is a central difference. Throws DomainError for points outside 0 < x < s(t).
ResidualReport model_a_residual(const SimilaritySolution& sol, const Material& mat, const FracParams& frac,
                                const std::vector<SpaceTimePoint>& points, const QuadratureOptions& opts = {});

/// Same residual for a numerical history; u is interpolated linearly in x, t is snapped to the
/// nearest level and s^-1(x) is taken from the state's front path.
ResidualReport model_a_residual(const SimState& state, const Material& mat, const FracParams& frac,
                                const std::vector<SpaceTimePoint>& points);

/// (rho c / Gamma(1-g)) int_0^{s^-1(x)} (t-t')^-g u_t(x,t') dt' for the closed-form solution, by
/// adaptive Gauss-Kronrod quadrature with the analytic u_t.
///
/// This is the term by which the closed-form solution of the half-line problem misses the coupled
/// equation. Throws DomainError unless 0 < x < s(t).
double memory_tail(const SimilaritySolution& sol, const Material& mat, const FracParams& frac, double x, double t);

/// Caputo derivative of order g of the closed-form temperature over [0, t] by adaptive quadrature.
/// Used to check that the Wright profile solves D^g u = alpha tau^(1-g) u_xx on the half-line.
double similarity_caputo(const SimilaritySolution& sol, double gamma, double x, double t);

/// A candidate (u, s) pair for the latent-memory formulation.
struct FrontCandidate
{
  std::function<double(double, double)> u;     // u(x, t), zero beyond the front
  std::function<double(double, double)> u_xx;  // inside the liquid
  std::function<double(double)> s;
  std::function<double(double)> s_dot;
  std::function<double(double)> s_inverse;
  std::function<double(double)> front_gradient;  // u_x(s(t)-, t)
};

FrontCandidate make_candidate(const SimilaritySolution& sol);

/// (l/c) (t - s^-1(x))^-g / Gamma(1-g): the latent-memory term of the third formulation.
double latent_memory_term(double l_over_c, double gamma, double elapsed);

struct ModelCReport
{
  ResidualReport equation;  // D^g u + latent term - tau^(1-g) alpha u_xx at each point
  ResidualReport front;     // rho l s'(t) + tau^(1-g) k RL^(1-g)[u_x(s-,.)](t) at each point's t
};

/// Evaluates both sides of the third formulation for a candidate; evaluation only, no solve.
/// Throws DomainError for points outside the liquid or at the singular time t = s^-1(x).
ModelCReport model_c_terms(const FrontCandidate& candidate, const Material& mat, const FracParams& frac,
                           const std::vector<SpaceTimePoint>& points, const QuadratureOptions& opts = {});

/// Memory flux tau^(1-g) RL^(1-g) q at every level.
Eigen::VectorXd nonlocal_flux(const TimeSeriesd& q_history, const FracParams& frac);

struct EnergyBalance
{
  Eigen::VectorXd times;
  Eigen::VectorXd lhs;           // L1 Caputo derivative of the trapezoid total energy
  Eigen::VectorXd rhs;           // tau^(1-g) q(0+, t), second-order one-sided difference
  Eigen::VectorXd rel_mismatch;  // |lhs - rhs| / |rhs| (absolute when rhs = 0)
  ResidualReport report;         // rel_mismatch against (0, t)

  /// Largest relative mismatch over levels >= first_level.
  double max_mismatch(int first_level) const;
};

EnergyBalance energy_balance_check(const SimState& state, const Material& mat, const FracParams& frac);

struct PowerFit
{
  double p = 0.0;
  double A = 0.0;
  double r2 = 0.0;
};

/// Least-squares fit log s = log A + p log t over samples with t in [t_lo, t_hi] and s > 0.
/// Throws DomainError with fewer than 10 samples or a degenerate window.
PowerFit exponent_fit(const FrontPath& front, double t_lo, double t_hi);

/// Least-squares prefactor A of s = A t^p for a fixed exponent over the same kind of window.
double prefactor_fit(const FrontPath& front, double p, double t_lo, double t_hi);

}  // namespace fstefan
