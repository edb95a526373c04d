#pragma once

// Fractional-in-time operators on uniform grids: the L1 discretisation of the Caputo
// derivative (full and moving-lower-limit windows), the Riemann-Liouville integral and
// derivative, and the Caputo power rule used as a closed-form oracle.
//
// All kernels are templated on the scalar type. Level n of a series sits at t_n = n*dt.

#include <Eigen/Core>
#include <cmath>
#include <sstream>

#include "fstefan/error.hpp"

namespace fstefan
{

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Uniformly sampled history f(t_n), n = 0..size-1.
template <typename Scalar>
struct TimeSeries
{
  VectorX<Scalar> values;
  Scalar dt{};

  Eigen::Index size() const { return values.size(); }
  Scalar time(Eigen::Index n) const { return static_cast<Scalar>(n) * dt; }
};

using TimeSeriesd = TimeSeries<double>;

namespace detail
{

template <typename Scalar>
void check_series(const TimeSeries<Scalar>& f, const char* who)
{
  if (f.size() < 2 || !(f.dt > Scalar(0))) {
    std::ostringstream os;
    os << who << ": need at least 2 samples and dt > 0 (got " << f.size() << " samples, dt=" << f.dt << ")";
    throw DomainError(os.str());
  }
}

template <typename Scalar>
void check_order(Scalar gamma, const char* who)
{
  if (!(gamma > Scalar(0) && gamma <= Scalar(1))) {
    std::ostringstream os;
    os << who << ": order gamma must lie in (0, 1], got " << gamma;
    throw DomainError(os.str());
  }
}

// b_m = (m+1)^p - m^p, m = 0..count-1.
template <typename Scalar>
VectorX<Scalar> power_increments(Scalar p, Eigen::Index count)
{
  VectorX<Scalar> b(count);
  for (Eigen::Index m = 0; m < count; ++m) {
    const Scalar mm = static_cast<Scalar>(m);
    b[m] = std::pow(mm + Scalar(1), p) - (m == 0 ? Scalar(0) : std::pow(mm, p));
  }
  return b;
}

// Memory sum shared by caputo_l1 and caputo_l1_window so both produce identical arithmetic.
template <typename Scalar>
Scalar l1_level(const VectorX<Scalar>& f, const VectorX<Scalar>& b, Eigen::Index start, Eigen::Index n,
                Scalar scale)
{
  Scalar acc(0);
  for (Eigen::Index j = start; j < n; ++j) acc += b[n - 1 - j] * (f[j + 1] - f[j]);
  return acc * scale;
}

}  // namespace detail

/// L1 weights b_m = (m+1)^(1-gamma) - m^(1-gamma). b_0 = 1, and b_m = 0 for m >= 1 at gamma = 1.
template <typename Scalar>
VectorX<Scalar> l1_weights(Scalar gamma, Eigen::Index count)
{
  detail::check_order(gamma, "l1_weights");
  return detail::power_increments(Scalar(1) - gamma, count);
}

/// Leading L1 coefficient dt^-gamma / Gamma(2 - gamma).
template <typename Scalar>
Scalar l1_scale(Scalar gamma, Scalar dt)
{
  return std::pow(dt, -gamma) / std::tgamma(Scalar(2) - gamma);
}

/// L1 approximation of the Caputo derivative of order gamma at every level; level 0 is 0.
/// At gamma = 1 this is the backward difference.
template <typename Scalar>
VectorX<Scalar> caputo_l1(const TimeSeries<Scalar>& f, Scalar gamma)
{
  detail::check_series(f, "caputo_l1");
  detail::check_order(gamma, "caputo_l1");
  const Eigen::Index n_levels = f.size();
  const VectorX<Scalar> b = l1_weights(gamma, n_levels);
  const Scalar scale = l1_scale(gamma, f.dt);
  VectorX<Scalar> out = VectorX<Scalar>::Zero(n_levels);
  for (Eigen::Index n = 1; n < n_levels; ++n) out[n] = detail::l1_level(f.values, b, Eigen::Index(0), n, scale);
  return out;
}

/// L1 approximation of (1/Gamma(1-gamma)) * int_{t_start}^{t_n} (t_n - t')^-gamma f'(t') dt'.
template <typename Scalar>
Scalar caputo_l1_window(const TimeSeries<Scalar>& f, Eigen::Index start_index, Scalar gamma, Eigen::Index n)
{
  detail::check_series(f, "caputo_l1_window");
  detail::check_order(gamma, "caputo_l1_window");
  if (start_index < 0 || start_index >= n || n >= f.size()) {
    std::ostringstream os;
    os << "caputo_l1_window: need 0 <= start < n <= last index (start=" << start_index << ", n=" << n
       << ", last=" << f.size() - 1 << ")";
    throw DomainError(os.str());
  }
  const VectorX<Scalar> b = l1_weights(gamma, n);
  return detail::l1_level(f.values, b, start_index, n, l1_scale(gamma, f.dt));
}

/// Riemann-Liouville operator of order delta in (-1, 1) at every level.
///
/// delta < 0 is the fractional integral of order -delta: product-rectangle rule with the
/// kernel integrated exactly over each cell and f replaced by its cell average.
/// delta > 0 is the derivative d/dt I^(1-delta) f, taken by a backward difference of the
/// integral (forward at level 0). delta = 0 returns f.
template <typename Scalar>
VectorX<Scalar> rl_operator(const TimeSeries<Scalar>& f, Scalar delta)
{
  detail::check_series(f, "rl_operator");
  if (!(delta > Scalar(-1) && delta < Scalar(1))) {
    std::ostringstream os;
    os << "rl_operator: delta must lie in (-1, 1), got " << delta;
    throw DomainError(os.str());
  }
  if (delta == Scalar(0)) return f.values;

  const Eigen::Index n_levels = f.size();
  const Scalar order = delta < Scalar(0) ? -delta : Scalar(1) - delta;
  const VectorX<Scalar> c = detail::power_increments(order, n_levels);
  const Scalar scale = std::pow(f.dt, order) / std::tgamma(order + Scalar(1));

  VectorX<Scalar> integral = VectorX<Scalar>::Zero(n_levels);
  for (Eigen::Index n = 1; n < n_levels; ++n) {
    Scalar acc(0);
    for (Eigen::Index j = 0; j < n; ++j) acc += c[n - 1 - j] * Scalar(0.5) * (f.values[j] + f.values[j + 1]);
    integral[n] = acc * scale;
  }
  if (delta < Scalar(0)) return integral;

  VectorX<Scalar> out(n_levels);
  for (Eigen::Index n = 1; n < n_levels; ++n) out[n] = (integral[n] - integral[n - 1]) / f.dt;
  out[0] = out[1];
  return out;
}

/// Caputo derivative of t^beta: Gamma(beta+1)/Gamma(beta+1-gamma) t^(beta-gamma).
template <typename Scalar>
Scalar caputo_power_rule(Scalar beta, Scalar gamma, Scalar t)
{
  if (!(beta > Scalar(0))) {
    std::ostringstream os;
    os << "caputo_power_rule: beta must be > 0 (got " << beta << "); the derivative of a constant is 0";
    throw DomainError(os.str());
  }
  detail::check_order(gamma, "caputo_power_rule");
  if (!(t > Scalar(0))) throw DomainError("caputo_power_rule: t must be > 0");
  return std::tgamma(beta + Scalar(1)) / std::tgamma(beta + Scalar(1) - gamma) * std::pow(t, beta - gamma);
}

}  // namespace fstefan
