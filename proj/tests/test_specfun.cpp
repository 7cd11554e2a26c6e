#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "deltaprop/specfun.hpp"
#include "support/reference.hpp"

using deltaprop::specfun::faddeyeva;
using deltaprop::specfun::moshinsky;
using deltaprop::specfun::moshinsky_primitive;
using deltaprop::testsupport::integral_reference;
using deltaprop::testsupport::wofz_reference;
using Complex = std::complex<double>;

namespace {
double rel(Complex got, Complex ref) {
  return std::abs(got - ref) / std::max(std::abs(ref), 1e-300);
}
}  // namespace

TEST_CASE("known values") {
  CHECK(rel(faddeyeva(0.0), Complex(1.0, 0.0)) < 1e-15);
  // w(iy) = e^{y^2} erfc(y), real
  const double y = 1.5;
  CHECK(rel(faddeyeva(Complex(0, y)),
            Complex(std::exp(y * y) * std::erfc(y), 0.0)) < 1e-14);
  // Re w(x) = e^{-x^2} on the real axis
  for (const double x : {0.3, 1.0, 2.7, 5.5}) {
    CHECK(std::abs(faddeyeva(x).real() - std::exp(-x * x)) < 1e-14);
  }
}

TEST_CASE("matches quadrature reference, upper half plane") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> ux(-8.0, 8.0), uy(0.0, 8.0);
  for (int i = 0; i < 40; ++i) {
    const Complex z(ux(rng), uy(rng));
    CHECK(rel(faddeyeva(z), wofz_reference(z)) < 1e-13);
  }
}

TEST_CASE("matches quadrature reference, lower half plane") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> ux(-6.0, 6.0), uy(-6.0, 0.0);
  for (int i = 0; i < 30; ++i) {
    const Complex z(ux(rng), uy(rng));
    CHECK(rel(faddeyeva(z), wofz_reference(z)) < 1e-12);
  }
}

TEST_CASE("large argument branch is continuous") {
  // Points straddling the |z|^2 = 256 switch between the trapezoid sum and
  // the continued fraction.
  for (const double phi : {0.1, 0.8, 1.5, 2.4, 3.0}) {
    const Complex dir(std::cos(phi), std::sin(phi));
    const Complex a = faddeyeva(15.999 * dir);
    const Complex b = faddeyeva(16.001 * dir);
    CHECK(std::abs(a - b) / std::abs(a) < 1e-3);
    CHECK(rel(faddeyeva(16.001 * dir), wofz_reference(16.001 * dir)) < 1e-13);
  }
}

TEST_CASE("error conditions") {
  CHECK_THROWS_AS(faddeyeva(Complex(std::nan(""), 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(faddeyeva(Complex(0.0, -30.0)), std::overflow_error);
  CHECK_THROWS_AS(moshinsky(1.0, Complex(1.0, 0.0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(moshinsky(1.0, Complex(1.0, 0.0), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(moshinsky_primitive(0.0, 0.0, Complex(1, 0), 1.0, 1.0, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(moshinsky_primitive(-1.0, 0.0, Complex(2.0, 0.0), 2.0, 1.0, 0.0),
                  std::domain_error);
}

TEST_CASE("moshinsky agrees with its definition") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), uk(0.3, 2.5), ut(0.2, 2.0);
  for (int i = 0; i < 25; ++i) {
    const double x = ux(rng), tau = ut(rng);
    const Complex k = (i % 2 == 0) ? Complex(uk(rng), 0.0) : Complex(0.0, -uk(rng));
    const Complex z = 0.5 * Complex(1, 1) * std::sqrt(tau) * (k - x / tau);
    const Complex ref = 0.5 * std::exp(Complex(0, x * x / (2 * tau))) *
                        wofz_reference(-z);
    CHECK(rel(moshinsky(x, k, tau), ref) < 1e-12);
  }
}

TEST_CASE("antiderivative matches adaptive quadrature") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.3, 1.5), ux(-1.0, 1.5), ug(0.3, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double a = (i % 2 == 0) ? -1.0 : 1.0;
    const double b = u(rng), k = u(rng), tau = u(rng);
    const Complex c = (i % 3 == 0) ? Complex(u(rng), 0.0) : Complex(0.0, -ug(rng));
    const double x1 = ux(rng), x2 = x1 + u(rng);
    const Complex got = moshinsky_primitive(a, b, c, k, tau, x2) -
                        moshinsky_primitive(a, b, c, k, tau, x1);
    const Complex ref = integral_reference(a, b, c, k, tau, x1, x2);
    CHECK(std::abs(got - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
  }
}
