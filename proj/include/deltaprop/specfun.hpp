#ifndef DELTAPROP_SPECFUN_HPP
#define DELTAPROP_SPECFUN_HPP

#include <complex>

namespace deltaprop::specfun {

using Complex = std::complex<double>;

/// Faddeyeva function w(z) = e^{-z^2} erfc(-iz).
///
/// Upper half plane (Im z >= 0): better than 1e-13 relative accuracy.
/// Lower half plane: evaluated through the reflection
/// w(z) = 2 e^{-z^2} - w(-z); throws std::overflow_error when e^{-z^2}
/// is not representable in double precision.
/// Throws std::invalid_argument on NaN input.
Complex faddeyeva(Complex z);

/// Arguments of the Moshinsky function M(x, k, tau).
/// tau = hbar*t/m must be strictly positive; the tau -> 0+ limit
/// (a cut-off plane wave) is the caller's business.
struct MoshinskyArgs {
  double x;
  Complex k;
  double tau;
};

/// Moshinsky function M(x,k,tau) = e^{i x^2 / 2 tau} w(-z) / 2 with
/// z = (1+i)/2 sqrt(tau) (k - x/tau).
///
/// When -z falls in the lower half plane the product
/// e^{i x^2/2 tau} e^{-z^2} is formed from the analytically combined
/// exponent i(kx - k^2 tau / 2), so no intermediate overflows or loses
/// the phase.
Complex moshinsky(const MoshinskyArgs& args);
Complex moshinsky(double x, Complex k, double tau);

/// Closed-form antiderivative
///   F(x) = e^{ikx} / (i (k + c a)) [M(ax+b, c, tau) - M(ax+b, -k/a, tau)]
/// so that F(x2) - F(x1) = integral_{x1}^{x2} e^{ikx'} M(ax'+b, c, tau) dx'.
/// Throws std::domain_error when |k + c a| is below tolerance (resonant
/// denominator) or a == 0.
Complex moshinsky_primitive(double a, double b, Complex c, double k,
                            double tau, double x);

}  // namespace deltaprop::specfun

#endif
