#pragma once

// Exact similarity solutions: the Wright-function solution of the fractional problem whose
// heat equation is posed on the whole half-line, and the classical Neumann solution (gamma = 1)
// used as the independent reference.

namespace fstefan
{

struct Material
{
  double rho = 1.0;  // kg/m^3
  double c = 1.0;    // J/(kg K)
  double k = 1.0;    // W/(m K)
  double l = 1.0;    // J/kg

  double alpha() const { return k / (rho * c); }
};

struct FracParams
{
  double gamma = 1.0;  // (0, 1]
  double tau = 1.0;    // s

  /// tau^(1-gamma), the factor that keeps the fractional balance laws dimensionally consistent.
  double tau_factor() const;
};

struct BoundaryData
{
  double u0 = 1.0;  // K above the melting temperature
};

void validate(const Material& mat);
void validate(const FracParams& frac);
void validate(const BoundaryData& bc);

/// Stefan number c u0 / l.
double stefan_number(const Material& mat, const BoundaryData& bc);

/// Dimensional: lambda = (alpha tau^(1-gamma))^(1/2), the scale that makes x/(lambda t^(gamma/2))
/// dimensionless for D^gamma u = alpha tau^(1-gamma) u_xx.
/// AlphaPower: lambda = tau^((1-gamma)/2) alpha^(gamma/2). Both agree at gamma = 1 or alpha = 1.
enum class LambdaConvention { Dimensional, AlphaPower };

double lambda_scale(const Material& mat, const FracParams& frac,
                    LambdaConvention convention = LambdaConvention::Dimensional);

/// Closed-form pair u(x,t), s(t) = sigma lambda t^(gamma/2).
///
/// Besides the defining constants it caches 1 - W(-sigma, -gamma/2, 1) and the radius up to
/// which the Wright series of the derivatives is evaluated reliably.
struct SimilaritySolution
{
  double sigma = 0.0;
  double lambda = 1.0;
  double gamma = 1.0;
  double u0 = 1.0;
  double stefan = 0.0;

  double front_drop = 1.0;      // 1 - W(-sigma, -gamma/2, 1)
  double wright_radius = 30.0;  // |z| beyond which W' and W'' are treated as 0
};

SimilaritySolution make_similarity_solution(double sigma, double lambda, double gamma, double u0, double stefan);

/// F(sigma) = ratio sigma Gamma(1+g/2)/Gamma(1-g/2) - Ste W(-sigma,-g/2,1-g/2) / (1 - W(-sigma,-g/2,1)).
///
/// ratio = lambda^2 / (alpha tau^(1-g)) is 1 under the dimensional convention.
double sigma_residual(double sigma, double gamma, double stefan, double ratio = 1.0);

/// Unique root sigma > 0 of sigma_residual, bracketed by scanning upwards and refined with
/// TOMS 748. Throws DomainError for non-positive Ste, BracketError if no sign change is found
/// below the scan ceiling, ConvergenceError if |F(sigma)| > tol at the refined root.
double sigma_solve(const Material& mat, const FracParams& frac, const BoundaryData& bc, double tol = 1e-12,
                   LambdaConvention convention = LambdaConvention::Dimensional);

SimilaritySolution similarity_solution(const Material& mat, const FracParams& frac, const BoundaryData& bc,
                                       double tol = 1e-12,
                                       LambdaConvention convention = LambdaConvention::Dimensional);

/// Temperature: the Wright profile for 0 <= x < s(t), 0 beyond the front. Throws for t <= 0.
double similarity_u(const SimilaritySolution& sol, double x, double t);

/// The Wright profile on the whole half-line (no clipping at the front).
double similarity_u_unclipped(const SimilaritySolution& sol, double x, double t);

/// Analytic derivatives of the unclipped profile.
double similarity_u_t(const SimilaritySolution& sol, double x, double t);
double similarity_u_x(const SimilaritySolution& sol, double x, double t);
double similarity_u_xx(const SimilaritySolution& sol, double x, double t);

double similarity_s(const SimilaritySolution& sol, double t);
double similarity_s_dot(const SimilaritySolution& sol, double t);

/// Arrival time of the front at x: (x / (sigma lambda))^(2/gamma).
double similarity_s_inverse(const SimilaritySolution& sol, double x);

/// Classical Neumann solution (gamma = 1), sigma from Ste = sqrt(pi) (sigma/2) e^(sigma^2/4) erf(sigma/2)
/// with erf from the C library.
SimilaritySolution neumann_classical(const Material& mat, const BoundaryData& bc, double tol = 1e-12);

}  // namespace fstefan
