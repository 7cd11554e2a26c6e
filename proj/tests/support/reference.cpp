#include "reference.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "deltaprop/specfun.hpp"

namespace deltaprop::testsupport {

namespace {

using mp = boost::multiprecision::cpp_bin_float_50;

const mp kPi = boost::math::constants::pi<mp>();

}  // namespace

std::complex<double> wofz_reference(std::complex<double> z) {
  // w(z) = (i/pi) integral e^{-u^2} / (z - u) du along Im u = y0, with the
  // contour kept below the pole so the formula continues to the lower half
  // plane.  Parametrize u = s + i y0.
  const mp xz = z.real(), yz = z.imag();
  const mp y0 = (yz < 0 ? yz : mp(0)) - 1;

  auto quotient = [&](const mp& s) {
    // e^{-(s + i y0)^2} = e^{y0^2 - s^2} (cos(2 s y0) - i sin(2 s y0))
    const mp mag = exp(y0 * y0 - s * s);
    const mp nre = mag * cos(2 * s * y0);
    const mp nim = -mag * sin(2 * s * y0);
    const mp dre = xz - s;
    const mp dim = yz - y0;
    const mp d2 = dre * dre + dim * dim;
    return std::pair<mp, mp>{(nre * dre + nim * dim) / d2,
                             (nim * dre - nre * dim) / d2};
  };

  using gk = boost::math::quadrature::gauss_kronrod<mp, 61>;
  const mp qre = gk::integrate(
      [&](const mp& s) { return quotient(s).first; },
      -std::numeric_limits<mp>::infinity(), std::numeric_limits<mp>::infinity(),
      12, mp(1e-35));
  const mp qim = gk::integrate(
      [&](const mp& s) { return quotient(s).second; },
      -std::numeric_limits<mp>::infinity(), std::numeric_limits<mp>::infinity(),
      12, mp(1e-35));

  // multiply by i/pi
  const mp wre = -qim / kPi;
  const mp wim = qre / kPi;
  return {static_cast<double>(wre), static_cast<double>(wim)};
}

std::complex<double> integral_reference(double a, double b,
                                        std::complex<double> c, double k,
                                        double tau, double x1, double x2) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto f = [&](double x) {
    return std::exp(std::complex<double>(0, k * x)) *
           specfun::moshinsky(a * x + b, c, tau);
  };
  const double re =
      gk::integrate([&](double x) { return f(x).real(); }, x1, x2, 14, 1e-13);
  const double im =
      gk::integrate([&](double x) { return f(x).imag(); }, x1, x2, 14, 1e-13);
  return {re, im};
}

}  // namespace deltaprop::testsupport
