#include "fstefan/selftest.hpp"

#include <algorithm>
#include <cmath>

#include "fstefan/analysis.hpp"
#include "fstefan/closedform.hpp"
#include "fstefan/fracops.hpp"
#include "fstefan/solver.hpp"
#include "fstefan/specfun.hpp"

namespace fstefan
{

namespace
{

SelftestCheck at_most(std::string name, double value, double tol)
{
  return {std::move(name), value, tol, std::isfinite(value) && value <= tol};
}

double wright_erfc_error()
{
  double worst = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double x = 0.1 * i;
    worst = std::max(worst, std::fabs(wright({-x, -0.5, 1.0}) - std::erfc(0.5 * x)));
  }
  return worst;
}

double wright_prime_error()
{
  double worst = 0.0;
  for (double z : {-3.0, -1.0, -0.2, 0.7}) {
    const double h = 1e-5;
    const WrightArgs a{z, -0.35, 0.65};
    const double fd = (wright({z + h, a.mu, a.nu}) - wright({z - h, a.mu, a.nu})) / (2 * h);
    worst = std::max(worst, std::fabs(fd - wright_prime(a)) / std::fabs(wright_prime(a)));
  }
  return worst;
}

double neumann_sigma_gap()
{
  double worst = 0.0;
  for (double ste : {0.1, 1.0, 5.0}) {
    const Material m{1.0, 1.0, 1.0, 1.0 / ste};
    worst = std::max(worst, std::fabs(sigma_solve(m, {1.0, 1.0}, {1.0}) - neumann_classical(m, {1.0}).sigma));
  }
  return worst;
}

double caputo_power_error()
{
  const int n = 256;
  TimeSeriesd f{Eigen::VectorXd(n + 1), 1.0 / n};
  for (int i = 0; i <= n; ++i) f.values[i] = std::pow(f.time(i), 2.0);
  return std::fabs(caputo_l1(f, 0.5)[n] - caputo_power_rule(2.0, 0.5, 1.0));
}

double near_classical_flux_error()
{
  const int n = 400;
  TimeSeriesd q{Eigen::VectorXd(n + 1), 1.0 / n};
  for (int i = 0; i <= n; ++i) q.values[i] = 1.0 + std::sin(3.0 * q.time(i));
  const Eigen::VectorXd out = nonlocal_flux(q, {0.999, 1.0});
  return ((out - q.values).cwiseAbs().array() / q.values.cwiseAbs().array()).tail(n - 10).maxCoeff();
}

double closed_form_exponent_error()
{
  const Material m{1.0, 1.0, 1.0, 1.0};
  const auto sol = similarity_solution(m, {0.6, 1.0}, {1.0});
  FrontPath path{Eigen::VectorXd::LinSpaced(101, 0.0, 1.0), Eigen::VectorXd(101)};
  for (int i = 0; i <= 100; ++i) path.positions[i] = similarity_s(sol, path.times[i]);
  return std::fabs(exponent_fit(path, 0.1, 1.0).p - 0.3);
}

}  // namespace

std::vector<SelftestCheck> run_selftest()
{
  std::vector<SelftestCheck> checks;
  checks.push_back(at_most("wright_erfc_identity", wright_erfc_error(), 1e-10));
  checks.push_back(at_most("wright_prime_vs_difference", wright_prime_error(), 1e-6));
  checks.push_back(at_most("sigma_matches_neumann", neumann_sigma_gap(), 1e-8));
  checks.push_back(at_most("caputo_l1_power_rule", caputo_power_error(), 2e-3));
  checks.push_back(at_most("nonlocal_flux_near_classical", near_classical_flux_error(), 1e-2));
  checks.push_back(at_most("closed_form_exponent", closed_form_exponent_error(), 1e-10));

  const Material unit{1.0, 1.0, 1.0, 1.0};
  const BoundaryData bc{1.0};
  {
    const Grid1D grid{2.0, 200, 1.0, 200};
    const SimState st = run(unit, {1.0, 1.0}, bc, grid);
    const auto exact = neumann_classical(unit, bc);
    double err = 0.0;
    for (int n = grid.nt / 10; n <= grid.nt; ++n)
      err = std::max(err, std::fabs(st.front.positions[n] - similarity_s(exact, grid.t(n))) /
                              similarity_s(exact, grid.t(n)));
    checks.push_back(at_most("solver_vs_neumann", err, 0.05));
  }
  {
    const FracParams frac{0.5, 1.0};
    const SimState st = run(unit, frac, bc, {2.0, 100, 1.0, 200});
    checks.push_back(at_most("energy_balance", energy_balance_check(st, unit, frac).max_mismatch(5), 0.05));
  }
  {
    // The closed form of the half-line problem leaves a one-signed memory tail behind the front.
    const FracParams frac{0.5, 1.0};
    const auto sol = similarity_solution(unit, frac, bc);
    double smallest = INFINITY;
    for (double f : {0.2, 0.5, 0.8}) smallest = std::min(smallest, std::fabs(memory_tail(sol, unit, frac, f * similarity_s(sol, 1.0), 1.0)));
    checks.push_back({"memory_tail_nonzero", smallest, 1e-8, smallest > 1e-8});
  }
  return checks;
}

}  // namespace fstefan
