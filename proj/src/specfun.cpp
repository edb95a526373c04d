#include "fstefan/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fstefan/error.hpp"

namespace fstefan
{

namespace
{

bool is_gamma_pole(double x) { return x <= 0.0 && x == std::floor(x); }

// sin(pi a) with the argument reduced first, so it is exactly zero at integers.
long double sin_pi(long double a)
{
  const long double pi = std::numbers::pi_v<long double>;
  long double r = a - 2.0L * std::nearbyint(a / 2.0L);  // r in [-1, 1]
  if (r > 0.5L) return std::sin(pi * (1.0L - r));
  if (r < -0.5L) return -std::sin(pi * (1.0L + r));
  return std::sin(pi * r);
}

// log|1/Gamma(a)| and its sign; sign == 0 at the poles.
struct LogValue
{
  long double log_abs = 0.0L;
  int sign = 0;
};

LogValue log_rgamma(long double a)
{
  if (a <= 0.0L && a == std::floor(a)) return {};
  if (a > 0.0L) return {-std::lgamma(a), 1};
  // reflection: 1/Gamma(a) = Gamma(1-a) sin(pi a) / pi
  const long double s = sin_pi(a);
  if (s == 0.0L) return {};
  return {std::lgamma(1.0L - a) + std::log(std::fabs(s)) - std::log(std::numbers::pi_v<long double>),
          s > 0.0L ? 1 : -1};
}

// k-th term z^k / (k! Gamma(mu k + nu)) in log form.
LogValue wright_term(long double z, long double mu, long double nu, int k)
{
  LogValue g = log_rgamma(mu * k + nu);
  if (g.sign == 0) return {};
  if (k == 0) return g;
  if (z == 0.0L) return {};
  g.log_abs += k * std::log(std::fabs(z)) - std::lgamma(static_cast<long double>(k) + 1.0L);
  if (z < 0.0L && (k % 2 == 1)) g.sign = -g.sign;
  return g;
}

void check_wright_args(const WrightArgs& a, double tol)
{
  if (!(a.mu > -1.0)) {
    std::ostringstream os;
    os << "wright: mu must be > -1 (got " << a.mu << ")";
    throw DomainError(os.str());
  }
  if (!(tol > 0.0)) throw DomainError("wright: tol must be positive");
  if (!std::isfinite(a.z) || !std::isfinite(a.nu)) throw DomainError("wright: non-finite argument");
}

}  // namespace

double gamma_fn(double x)
{
  if (is_gamma_pole(x)) {
    std::ostringstream os;
    os << "gamma_fn: pole at x = " << x;
    throw DomainError(os.str());
  }
  return std::tgamma(x);
}

double rgamma(double x)
{
  if (is_gamma_pole(x)) return 0.0;
  if (x > 0.5) return 1.0 / std::tgamma(x);
  const LogValue v = log_rgamma(x);
  return v.sign * static_cast<double>(std::exp(v.log_abs));
}

double wright(const WrightArgs& args, double tol, int max_terms)
{
  check_wright_args(args, tol);
  const long double z = args.z, mu = args.mu, nu = args.nu;
  const long double abs_z = std::fabs(z);

  long double sum = 0.0L;
  int small_run = 0;
  for (int k = 0; k < max_terms; ++k) {
    const LogValue t = wright_term(z, mu, nu, k);
    const long double term = t.sign == 0 ? 0.0L : t.sign * std::exp(t.log_abs);
    sum += term;
    if (std::fabs(term) <= tol * std::fabs(sum)) {
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= 3 && k > abs_z) return static_cast<double>(sum);
  }
  std::ostringstream os;
  os << "wright: series did not converge within " << max_terms << " terms (z=" << args.z
     << ", mu=" << args.mu << ", nu=" << args.nu << ")";
  throw ConvergenceError(os.str());
}

double wright_prime(const WrightArgs& args, double tol, int max_terms)
{
  check_wright_args(args, tol);
  return wright({args.z, args.mu, args.mu + args.nu}, tol, max_terms);
}

double wright_reliable_radius(double mu, double nu, double max_term)
{
  if (!(mu > -1.0)) throw DomainError("wright_reliable_radius: mu must be > -1");
  const long double log_cap = std::log(static_cast<long double>(max_term));
  auto peak_exceeds = [&](double r) {
    for (int k = 0; k < kWrightMaxTerms; ++k) {
      const LogValue t = wright_term(-r, mu, nu, k);
      if (t.sign != 0 && t.log_abs > log_cap) return true;
    }
    return false;
  };
  double lo = 0.0, hi = 1.0;
  while (!peak_exceeds(hi) && hi < 1e3) hi *= 2.0;
  if (!peak_exceeds(hi)) return hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (peak_exceeds(mid) ? hi : lo) = mid;
  }
  return lo;
}

}  // namespace fstefan
