#pragma once

namespace fstefan
{

/// Arguments of the Wright function W(z, mu, nu) = sum_k z^k / (k! Gamma(mu k + nu)).
struct WrightArgs
{
  double z = 0.0;
  double mu = 0.0;  // mu > -1
  double nu = 1.0;
};

inline constexpr int kWrightMaxTerms = 500;

/// Gamma(x). Throws DomainError at 0 and the negative integers.
double gamma_fn(double x);

/// 1/Gamma(x), entire: returns exactly 0 at the poles of Gamma.
double rgamma(double x);

/// Wright function by direct series summation.
///
/// Terms are accumulated in extended precision. Summation stops once three consecutive
/// terms fall below tol * |partial sum| and k exceeds |z|; for negative z the terms
/// alternate and first grow, so a single small term is not a safe stopping point.
/// The fixed-width series loses accuracy for |z| beyond ~30 (see wright_reliable_radius).
///
/// Throws DomainError for mu <= -1 or tol <= 0, ConvergenceError if max_terms is reached.
double wright(const WrightArgs& args, double tol = 1e-16, int max_terms = kWrightMaxTerms);

/// dW/dz, via the shift identity W'(z, mu, nu) = W(z, mu, mu + nu).
double wright_prime(const WrightArgs& args, double tol = 1e-16, int max_terms = kWrightMaxTerms);

/// Largest |z| for which the biggest series term of W(-|z|, mu, nu) stays below max_term.
///
/// The cancellation error of the summation is roughly max_term * 1e-19, so the default
/// keeps absolute errors near 1e-11.
double wright_reliable_radius(double mu, double nu, double max_term = 1e8);

}  // namespace fstefan
