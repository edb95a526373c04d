#include "fstefan/analysis.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "fstefan/error.hpp"
#include "fstefan/specfun.hpp"

namespace fstefan
{

namespace
{

[[noreturn]] void outside_liquid(const SpaceTimePoint& p, double s, const char* who)
{
  std::ostringstream os;
  os << who << ": point (x=" << p.x << ", t=" << p.t << ") is outside the liquid region 0 < x < s(t)=" << s;
  throw DomainError(os.str());
}

// int_{t_from}^{t_to} (t - t')^-g u_t(x, t') dt', requires g < 1. On [t/2, t] the substitution
// w = (t - t')^(1-g) removes the kernel singularity; below t/2 the variable v = log t' resolves the
// steep onset of u_t as t' -> 0.
double kernel_integral(const SimilaritySolution& sol, double gamma, double x, double t, double t_from, double t_to)
{
  using boost::math::quadrature::gauss_kronrod;
  if (!(t_to > t_from)) return 0.0;
  const double q = 1.0 - gamma;
  const double split = std::clamp(0.5 * t, t_from, t_to);
  double total = 0.0;
  if (split > t_from) {
    auto early = [&](double v) {
      const double tp = std::exp(v);
      return std::pow(t - tp, -gamma) * similarity_u_t(sol, x, tp) * tp;
    };
    total += gauss_kronrod<double, 31>::integrate(early, std::log(t_from), std::log(split), 10, 1e-9);
  }
  if (t_to > split) {
    auto late = [&](double w) { return similarity_u_t(sol, x, t - std::pow(w, 1.0 / q)) / q; };
    total += gauss_kronrod<double, 31>::integrate(late, std::pow(t - t_to, q), std::pow(t - split, q), 10, 1e-9);
  }
  return total;
}

// Time before which |z| exceeds the reliable Wright radius; u_t is treated as 0 there.
double cutoff_time(const SimilaritySolution& sol, double x)
{
  return std::pow(x / (sol.lambda * sol.wright_radius), 2.0 / sol.gamma);
}

double interpolate_node_values(const Eigen::MatrixXd& field, int level, double x, double dx)
{
  const int nodes = static_cast<int>(field.cols());
  const double pos = x / dx;
  int i = static_cast<int>(std::floor(pos));
  i = std::clamp(i, 0, nodes - 2);
  const double w = pos - i;
  return (1.0 - w) * field(level, i) + w * field(level, i + 1);
}

}  // namespace

ResidualReport make_report(std::vector<SpaceTimePoint> points, Eigen::VectorXd values)
{
  if (static_cast<Eigen::Index>(points.size()) != values.size())
    throw DomainError("make_report: points and values differ in length");
  ResidualReport r{std::move(points), std::move(values), {}};
  if (r.values.size() == 0) return r;
  r.summary.max_abs = r.values.cwiseAbs().maxCoeff();
  r.summary.mean = r.values.mean();
  r.summary.mean_abs = r.values.cwiseAbs().mean();
  r.summary.positive = static_cast<int>((r.values.array() > 0.0).count());
  r.summary.negative = static_cast<int>((r.values.array() < 0.0).count());
  return r;
}

ResidualReport model_a_residual(const SimilaritySolution& sol, const Material& mat, const FracParams& frac,
                                const std::vector<SpaceTimePoint>& points, const QuadratureOptions& opts)
{
  const double rho_c = mat.rho * mat.c;
  const double conduct = mat.k * frac.tau_factor();
  Eigen::VectorXd values(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto [x, t] = points[p];
    const double s = t > 0.0 ? similarity_s(sol, t) : 0.0;
    if (!(x > 0.0 && x < s)) outside_liquid(points[p], s, "model_a_residual");

    const int levels = opts.time_levels;
    TimeSeriesd u{Eigen::VectorXd::Zero(levels + 1), t / levels};
    const auto start = std::max<Eigen::Index>(1, std::lround(similarity_s_inverse(sol, x) / u.dt));
    if (start >= levels) outside_liquid(points[p], s, "model_a_residual (front within one time step)");
    for (Eigen::Index j = start; j <= levels; ++j) u.values[j] = similarity_u_unclipped(sol, x, u.time(j));
    const double caputo = caputo_l1_window(u, start, frac.gamma, Eigen::Index(levels));

    const double h = opts.fd_step_fraction * s;
    const double uxx = (similarity_u_unclipped(sol, x + h, t) - 2.0 * similarity_u_unclipped(sol, x, t) +
                        similarity_u_unclipped(sol, x - h, t)) /
                       (h * h);
    values[p] = rho_c * caputo - conduct * uxx;
  }
  return make_report(points, std::move(values));
}

ResidualReport model_a_residual(const SimState& state, const Material& mat, const FracParams& frac,
                                const std::vector<SpaceTimePoint>& points)
{
  const Grid1D& grid = state.grid;
  const double dx = grid.dx(), dt = grid.dt();
  const double rho_c = mat.rho * mat.c;
  const double conduct = mat.k * frac.tau_factor();
  Eigen::VectorXd values(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto [x, t] = points[p];
    const int n = static_cast<int>(std::lround(t / dt));
    if (n < 1 || n >= state.levels_done) {
      std::ostringstream os;
      os << "model_a_residual: t=" << t << " is not inside the simulated horizon";
      throw DomainError(os.str());
    }
    const double s = state.front.positions[n];
    if (!(x - dx > 0.0 && x + dx < s)) outside_liquid(points[p], s, "model_a_residual (stencil)");

    TimeSeriesd u{Eigen::VectorXd(n + 1), dt};
    for (int j = 0; j <= n; ++j) u.values[j] = interpolate_node_values(state.temperature, j, x, dx);
    const double arrival = state.front.arrival_time(x);
    const auto start = std::clamp<Eigen::Index>(std::lround(arrival / dt), 0, n - 1);
    const double caputo = caputo_l1_window(u, start, frac.gamma, Eigen::Index(n));

    const double uxx = (interpolate_node_values(state.temperature, n, x + dx, dx) - 2.0 * u.values[n] +
                        interpolate_node_values(state.temperature, n, x - dx, dx)) /
                       (dx * dx);
    values[p] = rho_c * caputo - conduct * uxx;
  }
  return make_report(points, std::move(values));
}

double memory_tail(const SimilaritySolution& sol, const Material& mat, const FracParams& frac, double x, double t)
{
  const double s = t > 0.0 ? similarity_s(sol, t) : 0.0;
  if (!(x > 0.0 && x < s)) outside_liquid({x, t}, s, "memory_tail");
  const double weight = mat.rho * mat.c * rgamma(1.0 - frac.gamma);
  if (weight == 0.0) return 0.0;  // gamma = 1: the kernel carries no memory
  const double arrival = similarity_s_inverse(sol, x);
  return weight * kernel_integral(sol, frac.gamma, x, t, cutoff_time(sol, x), arrival);
}

double similarity_caputo(const SimilaritySolution& sol, double gamma, double x, double t)
{
  if (!(x > 0.0) || !(t > 0.0)) throw DomainError("similarity_caputo: need x > 0 and t > 0");
  if (gamma >= 1.0) return similarity_u_t(sol, x, t);
  const double t_cut = std::min(cutoff_time(sol, x), t);
  return rgamma(1.0 - gamma) * kernel_integral(sol, gamma, x, t, t_cut, t);
}

FrontCandidate make_candidate(const SimilaritySolution& sol)
{
  FrontCandidate c;
  c.u = [sol](double x, double t) { return t > 0.0 ? similarity_u(sol, x, t) : 0.0; };
  c.u_xx = [sol](double x, double t) { return similarity_u_xx(sol, x, t); };
  c.s = [sol](double t) { return similarity_s(sol, t); };
  c.s_dot = [sol](double t) { return similarity_s_dot(sol, t); };
  c.s_inverse = [sol](double x) { return similarity_s_inverse(sol, x); };
  c.front_gradient = [sol](double t) { return similarity_u_x(sol, similarity_s(sol, t), t); };
  return c;
}

double latent_memory_term(double l_over_c, double gamma, double elapsed)
{
  if (!(elapsed > 0.0)) throw DomainError("latent_memory_term: singular at t = s^-1(x)");
  return l_over_c * std::pow(elapsed, -gamma) * rgamma(1.0 - gamma);
}

ModelCReport model_c_terms(const FrontCandidate& cand, const Material& mat, const FracParams& frac,
                           const std::vector<SpaceTimePoint>& points, const QuadratureOptions& opts)
{
  const double g = frac.gamma;
  const double tf = frac.tau_factor();
  Eigen::VectorXd eq(points.size()), fr(points.size());
  std::vector<SpaceTimePoint> front_points;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto [x, t] = points[p];
    const double s = t > 0.0 ? cand.s(t) : 0.0;
    if (!(x > 0.0 && x < s)) outside_liquid(points[p], s, "model_c_terms");
    const double elapsed = t - cand.s_inverse(x);
    if (!(elapsed > 1e-12 * t)) throw DomainError("model_c_terms: point sits at the singular time t = s^-1(x)");

    const int levels = opts.time_levels;
    TimeSeriesd u{Eigen::VectorXd::Zero(levels + 1), t / levels};
    for (int j = 1; j <= levels; ++j) u.values[j] = cand.u(x, u.time(j));
    const double caputo = caputo_l1_window(u, Eigen::Index(0), g, Eigen::Index(levels));
    eq[p] = caputo + latent_memory_term(mat.l / mat.c, g, elapsed) - tf * mat.alpha() * cand.u_xx(x, t);

    const int rl_levels = std::min(levels, 2000);
    TimeSeriesd grad{Eigen::VectorXd(rl_levels + 1), t / rl_levels};
    for (int j = 1; j <= rl_levels; ++j) grad.values[j] = cand.front_gradient(grad.time(j));
    grad.values[0] = grad.values[1];  // the gradient is singular at t = 0
    const Eigen::VectorXd rl = rl_operator(grad, 1.0 - g);
    fr[p] = mat.rho * mat.l * cand.s_dot(t) + tf * mat.k * rl[rl_levels];
    front_points.push_back({s, t});
  }
  return {make_report(points, std::move(eq)), make_report(std::move(front_points), std::move(fr))};
}

Eigen::VectorXd nonlocal_flux(const TimeSeriesd& q_history, const FracParams& frac)
{
  validate(frac);
  return frac.tau_factor() * rl_operator(q_history, 1.0 - frac.gamma);
}

double EnergyBalance::max_mismatch(int first_level) const
{
  if (first_level >= rel_mismatch.size()) return 0.0;
  return rel_mismatch.tail(rel_mismatch.size() - first_level).maxCoeff();
}

EnergyBalance energy_balance_check(const SimState& state, const Material& mat, const FracParams& frac)
{
  const Grid1D& grid = state.grid;
  const int levels = state.levels_done;
  const double dx = grid.dx();
  if (levels < 2) throw DomainError("energy_balance_check: need a completed run");

  TimeSeriesd total{Eigen::VectorXd(levels), grid.dt()};
  EnergyBalance eb;
  eb.times = state.front.times.head(levels);
  eb.rhs.resize(levels);
  for (int n = 0; n < levels; ++n) {
    const auto e = state.enthalpy.row(n);
    total.values[n] = dx * (e.sum() - 0.5 * (e[0] + e[grid.nx]));
    const auto u = state.temperature.row(n);
    eb.rhs[n] = frac.tau_factor() * mat.k * (3.0 * u[0] - 4.0 * u[1] + u[2]) / (2.0 * dx);
  }
  eb.lhs = caputo_l1(total, frac.gamma);
  eb.rel_mismatch.resize(levels);
  std::vector<SpaceTimePoint> pts;
  for (int n = 0; n < levels; ++n) {
    const double diff = std::fabs(eb.lhs[n] - eb.rhs[n]);
    eb.rel_mismatch[n] = eb.rhs[n] != 0.0 ? diff / std::fabs(eb.rhs[n]) : diff;
    pts.push_back({0.0, eb.times[n]});
  }
  eb.report = make_report(std::move(pts), eb.rel_mismatch);
  return eb;
}

namespace
{

void window_samples(const FrontPath& front, double t_lo, double t_hi, std::vector<double>& t, std::vector<double>& s)
{
  for (Eigen::Index i = 0; i < front.times.size(); ++i) {
    const double ti = front.times[i], si = front.positions[i];
    if (ti >= t_lo && ti <= t_hi && ti > 0.0 && si > 0.0) {
      t.push_back(ti);
      s.push_back(si);
    }
  }
  if (t.size() < 10) {
    std::ostringstream os;
    os << "exponent fit: window [" << t_lo << ", " << t_hi << "] holds " << t.size()
       << " samples with s > 0; need at least 10";
    throw DomainError(os.str());
  }
}

}  // namespace

PowerFit exponent_fit(const FrontPath& front, double t_lo, double t_hi)
{
  std::vector<double> t, s;
  window_samples(front, t_lo, t_hi, t, s);
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  const Eigen::VectorXd X = Eigen::Map<const Eigen::VectorXd>(t.data(), n).array().log();
  const Eigen::VectorXd Y = Eigen::Map<const Eigen::VectorXd>(s.data(), n).array().log();
  const Eigen::VectorXd dX = X.array() - X.mean();
  const Eigen::VectorXd dY = Y.array() - Y.mean();
  if (X.maxCoeff() == X.minCoeff() || Y.maxCoeff() == Y.minCoeff())
    throw DomainError("exponent fit: degenerate window (constant times or positions)");
  const double sxx = dX.squaredNorm(), syy = dY.squaredNorm(), sxy = dX.dot(dY);
  PowerFit fit;
  fit.p = sxy / sxx;
  fit.A = std::exp(Y.mean() - fit.p * X.mean());
  fit.r2 = sxy * sxy / (sxx * syy);
  return fit;
}

double prefactor_fit(const FrontPath& front, double p, double t_lo, double t_hi)
{
  std::vector<double> t, s;
  window_samples(front, t_lo, t_hi, t, s);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double tp = std::pow(t[i], p);
    num += s[i] * tp;
    den += tp * tp;
  }
  return num / den;
}

}  // namespace fstefan
