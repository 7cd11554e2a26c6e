#include "deltaprop/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace deltaprop::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLogDblMax = 709.782712893384;

// Node spacing of the corrected trapezoidal sum.  The quadrature error
// of the rule itself is O(e^{-pi^2/h^2}) ~ 1e-107, so the scheme is
// rounding-limited.
constexpr double kH = 0.2;
constexpr int kNodes = 34;  // e^{-(N h)^2} = e^{-46.2}, below double eps

// Trapezoidal sum over e^{-t^2}/(z - t) with pole-residue correction
// (Chiarella-Reichel).  Two interleaved node families keep both the
// small denominators z - t_n and the correction denominator 1 -+ u
// bounded away from zero for real z.
Complex w_trapezoid(Complex z) {
  const double x = z.real();
  const double frac = x / kH - std::floor(x / kH);
  const bool midpoint = frac < 0.25 || frac > 0.75;
  const double offset = midpoint ? 0.5 : 0.0;

  Complex sum = 0.0;
  for (int n = -kNodes; n <= kNodes; ++n) {
    const double t = (n + offset) * kH;
    sum += std::exp(-t * t) / (z - t);
  }
  sum *= Complex(0.0, kH / kPi);

  // exp(-z^2) * u computed from the combined exponent; its real part is
  // y^2 - x^2 - 2 pi y / h <= 0 on the region where this branch runs.
  const Complex u = std::exp(Complex(0.0, 2.0 * kPi / kH) * z);
  const Complex corr = 2.0 * std::exp(-z * z + Complex(0.0, 2.0 * kPi / kH) * z);
  if (midpoint) {
    return sum + corr / (1.0 + u);
  }
  return sum - corr / (1.0 - u);
}

// Laplace continued fraction; adequate only well away from the origin.
Complex w_continued_fraction(Complex z) {
  constexpr int kDepth = 24;
  const Complex i_over_sqrt_pi(0.0, 0.5641895835477562869480794515607726);
  Complex f = 0.0;
  for (int n = kDepth; n >= 1; --n) {
    f = (0.5 * n) / (z - f);
  }
  return i_over_sqrt_pi / (z - f);
}

Complex w_upper(Complex z) {
  if (std::norm(z) >= 256.0) {
    return w_continued_fraction(z);
  }
  return w_trapezoid(z);
}

}  // namespace

Complex faddeyeva(Complex z) {
  if (std::isnan(z.real()) || std::isnan(z.imag())) {
    throw std::invalid_argument("faddeyeva: NaN input");
  }
  if (z.imag() >= 0.0) {
    return w_upper(z);
  }
  // w(z) = 2 e^{-z^2} - w(-z); |e^{-z^2}| = e^{y^2 - x^2} may overflow.
  const double log_mag = z.imag() * z.imag() - z.real() * z.real();
  if (log_mag > kLogDblMax) {
    throw std::overflow_error("faddeyeva: e^{-z^2} overflows in lower half plane");
  }
  return 2.0 * std::exp(-z * z) - w_upper(-z);
}

Complex moshinsky(const MoshinskyArgs& args) {
  return moshinsky(args.x, args.k, args.tau);
}

Complex moshinsky(double x, Complex k, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("moshinsky: tau must be positive");
  }
  const Complex z = 0.5 * Complex(1.0, 1.0) * std::sqrt(tau) * (k - x / tau);
  const Complex phase = std::exp(Complex(0.0, x * x / (2.0 * tau)));
  if (-z.imag() >= 0.0) {
    return 0.5 * phase * w_upper(-z);
  }
  // Reflection path.  Using i x^2/(2 tau) - z^2 = i (k x - k^2 tau / 2),
  // M = e^{i(kx - k^2 tau/2)} - e^{i x^2/2 tau} w(z) / 2 with Im z > 0.
  const Complex expo = Complex(0.0, 1.0) * (k * x - 0.5 * k * k * tau);
  if (expo.real() > kLogDblMax) {
    throw std::overflow_error("moshinsky: plane-wave factor overflows");
  }
  return std::exp(expo) - 0.5 * phase * w_upper(z);
}

Complex moshinsky_primitive(double a, double b, Complex c, double k,
                            double tau, double x) {
  if (a == 0.0) {
    throw std::domain_error("moshinsky_primitive: a must be nonzero");
  }
  const Complex denom = k + c * a;
  const double scale = std::abs(k) + std::abs(c * a);
  if (std::abs(denom) <= 1e-12 * (scale > 0.0 ? scale : 1.0)) {
    throw std::domain_error("moshinsky_primitive: resonant denominator k + c a");
  }
  const Complex diff = moshinsky(a * x + b, c, tau) -
                       moshinsky(a * x + b, Complex(-k / a, 0.0), tau);
  return std::exp(Complex(0.0, k * x)) / (Complex(0.0, 1.0) * denom) * diff;
}

}  // namespace deltaprop::specfun
