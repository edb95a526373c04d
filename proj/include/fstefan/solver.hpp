#pragma once

// Fixed-grid solvers for the one-phase fractional Stefan problem
//
//   rho c D^g u = k tau^(1-g) u_xx            0 < x < s(t)
//   rho l D^g s = -k tau^(1-g) u_x(s(t)-, t)
//   u(0,t) = u0, u(s(t),t) = 0, s(0) = 0, material initially solid at the melting point,
//
// where the Caputo memory at a point x starts when the front arrives there.

#include <Eigen/Core>

#include "fstefan/closedform.hpp"

namespace fstefan
{

struct Grid1D
{
  double x_max = 1.0;
  int nx = 100;
  double t_max = 1.0;
  int nt = 100;

  double dx() const { return x_max / nx; }
  double dt() const { return t_max / nt; }
  double x(int i) const { return i * dx(); }
  double t(int n) const { return n * dt(); }
};

void validate(const Grid1D& grid);

/// Sampled interface trajectory; positions are non-decreasing and start at 0.
struct FrontPath
{
  Eigen::VectorXd times;
  Eigen::VectorXd positions;

  /// Arrival time at x by monotone linear interpolation; +inf if the front never reaches x.
  double arrival_time(double x) const;
};

enum class Scheme {
  /// Implicit L1 scheme with the interface tracked inside a cell (default).
  FrontTracking,
  /// Explicit L1 update of the nodal enthalpy, D^g e_i = tau^(1-g) k Lap(u)_i. For g < 1 this keeps
  /// the memory of each node's latent jump locally, which is a different front law than the
  /// fractional Stefan condition; it coincides with FrontTracking's model at g = 1.
  ExplicitEnthalpy,
};

/// Space-time history on the grid. Row n of each matrix is time level n, column i is node x_i.
struct SimState
{
  Grid1D grid;
  Scheme scheme = Scheme::FrontTracking;
  Eigen::MatrixXd enthalpy;         // J/m^3, e = rho c u + rho l phi
  Eigen::MatrixXd temperature;      // K
  Eigen::MatrixXd liquid_fraction;  // [0, 1]
  FrontPath front;
  int levels_done = 0;  // levels 0..levels_done-1 are populated
};

/// Level 0: solid at the melting temperature, boundary node pinned to u0.
SimState initial_state(const Grid1D& grid, const Material& mat, const BoundaryData& bc,
                       Scheme scheme = Scheme::FrontTracking);

/// Largest dt allowed by the explicit scheme's discrete maximum principle:
/// dt^g <= (2 - 2^(1-g)) Gamma(2-g) rho c dx^2 / (2 k tau^(1-g)).
double explicit_dt_limit(const Material& mat, const FracParams& frac, double dx);

/// Advances level n (1 <= n <= nt) in place; levels 0..n-1 must be populated.
/// Throws StabilityError if the explicit bound is violated or the front reaches the far boundary.
void step(SimState& state, const Material& mat, const FracParams& frac, const BoundaryData& bc, int n);

/// Full run from the initial state. Validates all inputs (and the stability bound for the
/// explicit scheme) before stepping.
SimState run(const Material& mat, const FracParams& frac, const BoundaryData& bc, const Grid1D& grid,
             Scheme scheme = Scheme::FrontTracking);

/// Position where a liquid-fraction profile crosses 1/2, linearly interpolated between nodes.
double extract_front(const Eigen::Ref<const Eigen::RowVectorXd>& liquid_fraction, double dx);

}  // namespace fstefan
