#include "fstefan/solver.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "fstefan/error.hpp"
#include "fstefan/fracops.hpp"
#include "fstefan/specfun.hpp"

namespace fstefan
{

void validate(const Grid1D& grid)
{
  if (grid.nx < 8 || grid.nt < 8) {
    std::ostringstream os;
    os << "grid: need nx >= 8 and nt >= 8 (got nx=" << grid.nx << ", nt=" << grid.nt << ")";
    throw DomainError(os.str());
  }
  if (!(grid.x_max > 0.0) || !(grid.t_max > 0.0)) throw DomainError("grid: x_max and t_max must be positive");
}

double FrontPath::arrival_time(double x) const
{
  const Eigen::Index n = positions.size();
  if (n == 0) return std::numeric_limits<double>::infinity();
  if (x <= positions[0]) return times[0];
  const double* first = positions.data();
  const double* it = std::lower_bound(first, first + n, x);
  if (it == first + n) return std::numeric_limits<double>::infinity();
  const Eigen::Index j = it - first;
  const double p0 = positions[j - 1], p1 = positions[j];
  return times[j - 1] + (x - p0) / (p1 - p0) * (times[j] - times[j - 1]);
}

double extract_front(const Eigen::Ref<const Eigen::RowVectorXd>& phi, double dx)
{
  const Eigen::Index n = phi.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (phi[i] < 0.5) {
      if (i == 0) return 0.0;
      return (i - 1) * dx + dx * (phi[i - 1] - 0.5) / (phi[i - 1] - phi[i]);
    }
  }
  return (n - 1) * dx;
}

SimState initial_state(const Grid1D& grid, const Material& mat, const BoundaryData& bc, Scheme scheme)
{
  validate(grid);
  SimState st;
  st.grid = grid;
  st.scheme = scheme;
  const Eigen::Index levels = grid.nt + 1, nodes = grid.nx + 1;
  st.temperature = Eigen::MatrixXd::Zero(levels, nodes);
  st.liquid_fraction = Eigen::MatrixXd::Zero(levels, nodes);
  st.enthalpy = Eigen::MatrixXd::Zero(levels, nodes);
  st.temperature.col(0).setConstant(bc.u0);
  st.liquid_fraction.col(0).setConstant(1.0);
  st.enthalpy.col(0).setConstant(mat.rho * mat.c * bc.u0 + mat.rho * mat.l);
  st.front.times = Eigen::VectorXd::LinSpaced(levels, 0.0, grid.t_max);
  st.front.positions = Eigen::VectorXd::Zero(levels);
  st.levels_done = 1;
  return st;
}

double explicit_dt_limit(const Material& mat, const FracParams& frac, double dx)
{
  const double g = frac.gamma;
  const double bound = (2.0 - std::pow(2.0, 1.0 - g)) * gamma_fn(2.0 - g) * mat.rho * mat.c * dx * dx /
                       (2.0 * mat.k * frac.tau_factor());
  return std::pow(bound, 1.0 / g);
}

namespace
{

// sum_{k=1}^{n-1} b_k (f_{n-k} - f_{n-k-1}) for a column of the history.
template <typename Column>
double memory_sum(const Column& f, const Eigen::VectorXd& b, int n)
{
  double acc = 0.0;
  for (int k = 1; k < n; ++k) acc += b[k] * (f[n - k] - f[n - k - 1]);
  return acc;
}

void check_stability(const SimState& st, const Material& mat, const FracParams& frac)
{
  const double limit = explicit_dt_limit(mat, frac, st.grid.dx());
  if (st.grid.dt() > limit) {
    std::ostringstream os;
    os << "explicit scheme unstable: dt=" << st.grid.dt() << " exceeds the limit " << limit
       << " for dx=" << st.grid.dx() << " (increase nt or use the front-tracking scheme)";
    throw StabilityError(os.str());
  }
}

void front_out_of_domain(double s, const Grid1D& grid)
{
  std::ostringstream os;
  os << "front reached the right boundary (s=" << s << ", x_max=" << grid.x_max << "); enlarge x_max";
  throw StabilityError(os.str());
}

// Solves the tridiagonal system in place (Thomas algorithm); sub/diag/sup/rhs have equal length.
void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag, std::vector<double>& sup,
                       std::vector<double>& rhs)
{
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

// One implicit level of the front-tracking scheme for a trial front position.
class TrackingLevel
{
 public:
  TrackingLevel(const SimState& st, const Material& mat, const FracParams& frac, const BoundaryData& bc,
                const Eigen::VectorXd& b, int n)
      : dx_(st.grid.dx()), u0_(bc.u0)
  {
    const double c0 = l1_scale(frac.gamma, st.grid.dt());
    a_ = mat.k * frac.tau_factor() / (mat.rho * mat.c * c0);
    latent_ = mat.rho * mat.l * c0;
    conduct_ = mat.k * frac.tau_factor();
    s_prev_ = st.front.positions[n - 1];

    const bool memory = frac.gamma < 1.0;
    const int active = std::min(st.grid.nx - 1, static_cast<int>(std::ceil(s_prev_ / dx_)));
    base_.assign(st.grid.nx, 0.0);
    for (int i = 1; i <= active; ++i) {
      const auto col = st.temperature.col(i);
      base_[i] = col[n - 1] - (memory ? memory_sum(col, b, n) : 0.0);
    }
    front_memory_ = memory ? memory_sum(st.front.positions, b, n) : 0.0;
  }

  double previous_front() const { return s_prev_; }

  // Number of liquid interior nodes for front s: nodes 1..J with x_J < s <= x_{J+1}.
  int liquid_nodes(double s) const { return static_cast<int>(std::ceil(s / dx_)) - 1; }

  // Fills u (nodes 1..J) for the trial front and returns u_x(s-).
  double solve(double s, std::vector<double>& u) const
  {
    const int J = std::max(liquid_nodes(s), 0);
    u.assign(J + 1, 0.0);
    u[0] = u0_;
    if (J == 0) return s > 0.0 ? -u0_ / s : 0.0;

    const double h = s - J * dx_;
    const double r = a_ / (dx_ * dx_);
    std::vector<double> sub(J, -r), diag(J, 1.0 + 2.0 * r), sup(J, -r), rhs(J);
    for (int i = 1; i <= J; ++i) rhs[i - 1] = base_[i];
    rhs[0] += r * u0_;
    sub[0] = 0.0;
    sup[J - 1] = 0.0;
    // nonuniform stencil at the last liquid node, the front carries u = 0
    const double w = 2.0 * a_ / (dx_ + h);
    diag[J - 1] = 1.0 + w * (1.0 / h + 1.0 / dx_);
    if (J > 1) {
      sub[J - 1] = -w / dx_;
    } else {
      rhs[0] += w / dx_ * u0_ - r * u0_;
    }
    solve_tridiagonal(sub, diag, sup, rhs);
    for (int i = 1; i <= J; ++i) u[i] = rhs[i - 1];

    // quadratic through (s, 0), (x_J, u_J), (x_{J-1}, u_{J-1})
    const double d1 = h, d2 = h + dx_;
    const double f1 = u[J], f2 = u[J - 1];
    return -(f1 * d2 / (d1 * (d2 - d1)) - f2 * d1 / (d2 * (d2 - d1)));
  }

  // Discrete fractional Stefan condition rho l D^g s + k tau^(1-g) u_x(s-).
  double stefan_residual(double s, std::vector<double>& u) const
  {
    const double grad = solve(s, u);
    return latent_ * (s - s_prev_ + front_memory_) + conduct_ * grad;
  }

 private:
  double dx_, u0_;
  double a_ = 0.0, latent_ = 0.0, conduct_ = 0.0;
  double s_prev_ = 0.0, front_memory_ = 0.0;
  std::vector<double> base_;
};

void step_tracking(SimState& st, const Material& mat, const FracParams& frac, const BoundaryData& bc,
                   const Eigen::VectorXd& b, int n)
{
  const Grid1D& grid = st.grid;
  const TrackingLevel level(st, mat, frac, bc, b, n);
  const double s_prev = level.previous_front();
  const double s_limit = grid.x_max - grid.dx();
  std::vector<double> u;

  auto G = [&](double s) { return level.stefan_residual(s, u); };

  double s_new = s_prev;
  if (s_prev == 0.0 || G(s_prev) < 0.0) {
    // the front only advances; bracket the root above s_prev
    double delta = 0.0;
    if (n >= 2) delta = 2.0 * (s_prev - st.front.positions[n - 2]);
    if (!(delta > 0.0)) delta = 1e-3 * grid.dx();
    double lo = s_prev > 0.0 ? s_prev : 1e-9 * grid.dx();
    double f_lo = G(lo);
    double hi = s_prev + delta;
    double f_hi = G(hi);
    while (f_hi < 0.0) {
      lo = hi;
      f_lo = f_hi;
      delta *= 2.0;
      hi = s_prev + delta;
      if (hi > s_limit) front_out_of_domain(hi, grid);
      f_hi = G(hi);
    }
    if (f_lo < 0.0) {
      std::uintmax_t max_iter = 100;
      const auto [a, c] = boost::math::tools::toms748_solve(G, lo, hi, f_lo, f_hi,
                                                            boost::math::tools::eps_tolerance<double>(48), max_iter);
      s_new = std::fabs(G(a)) <= std::fabs(G(c)) ? a : c;
    } else {
      s_new = s_prev;  // no melting even at the smallest trial advance
    }
  }
  if (s_new > s_limit) front_out_of_domain(s_new, grid);
  level.solve(s_new, u);

  const double dx = grid.dx();
  for (int i = 0; i <= grid.nx; ++i) {
    const double ui = i < static_cast<int>(u.size()) ? u[i] : 0.0;
    const double phi = i == 0 ? 1.0 : std::clamp((s_new - i * dx) / dx + 0.5, 0.0, 1.0);
    st.temperature(n, i) = ui;
    st.liquid_fraction(n, i) = phi;
    st.enthalpy(n, i) = mat.rho * mat.c * ui + mat.rho * mat.l * phi;
  }
  st.front.positions[n] = s_new;
}

void step_enthalpy(SimState& st, const Material& mat, const FracParams& frac, const BoundaryData& bc,
                   const Eigen::VectorXd& b, int n)
{
  const Grid1D& grid = st.grid;
  const double dx = grid.dx();
  const double gain = gamma_fn(2.0 - frac.gamma) * std::pow(grid.dt(), frac.gamma) * mat.k * frac.tau_factor() /
                      (dx * dx);
  const double rho_c = mat.rho * mat.c, rho_l = mat.rho * mat.l;
  const bool memory = frac.gamma < 1.0;

  st.enthalpy(n, 0) = rho_c * bc.u0 + rho_l;
  st.temperature(n, 0) = bc.u0;
  st.liquid_fraction(n, 0) = 1.0;
  for (int i = 1; i < grid.nx; ++i) {
    const auto e = st.enthalpy.col(i);
    const double lap =
        st.temperature(n - 1, i + 1) - 2.0 * st.temperature(n - 1, i) + st.temperature(n - 1, i - 1);
    const double e_new = e[n - 1] - (memory ? memory_sum(e, b, n) : 0.0) + gain * lap;
    st.enthalpy(n, i) = e_new;
    st.temperature(n, i) = e_new >= rho_l ? (e_new - rho_l) / rho_c : 0.0;
    st.liquid_fraction(n, i) = e_new >= rho_l ? 1.0 : e_new / rho_l;
  }
  st.enthalpy(n, grid.nx) = 0.0;
  st.temperature(n, grid.nx) = 0.0;
  st.liquid_fraction(n, grid.nx) = 0.0;

  if (st.liquid_fraction(n, grid.nx - 1) > 0.0) front_out_of_domain(extract_front(st.liquid_fraction.row(n), dx), grid);
  st.front.positions[n] = extract_front(st.liquid_fraction.row(n), dx);
}

}  // namespace

void step(SimState& state, const Material& mat, const FracParams& frac, const BoundaryData& bc, int n)
{
  if (n < 1 || n > state.grid.nt || state.levels_done < n) {
    std::ostringstream os;
    os << "step: level " << n << " requested with " << state.levels_done << " populated levels";
    throw DomainError(os.str());
  }
  // L1 weights for the whole horizon, shared by all levels
  const Eigen::VectorXd b = l1_weights(frac.gamma, Eigen::Index(n + 1));
  if (state.scheme == Scheme::ExplicitEnthalpy) {
    check_stability(state, mat, frac);
    step_enthalpy(state, mat, frac, bc, b, n);
  } else {
    step_tracking(state, mat, frac, bc, b, n);
  }
  state.levels_done = std::max(state.levels_done, n + 1);
}

SimState run(const Material& mat, const FracParams& frac, const BoundaryData& bc, const Grid1D& grid, Scheme scheme)
{
  validate(mat);
  validate(frac);
  validate(bc);
  validate(grid);
  SimState st = initial_state(grid, mat, bc, scheme);
  if (scheme == Scheme::ExplicitEnthalpy) check_stability(st, mat, frac);

  const Eigen::VectorXd b = l1_weights(frac.gamma, Eigen::Index(grid.nt + 1));
  for (int n = 1; n <= grid.nt; ++n) {
    if (scheme == Scheme::ExplicitEnthalpy) {
      step_enthalpy(st, mat, frac, bc, b, n);
    } else {
      step_tracking(st, mat, frac, bc, b, n);
    }
    st.levels_done = n + 1;
  }
  return st;
}

}  // namespace fstefan
