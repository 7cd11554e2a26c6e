#include "deltaprop/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "deltaprop/specfun.hpp"

namespace deltaprop::dynamics {

namespace {

void require_t(double t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("dynamics: requires t > 0");
  }
}

double two_level_strength(const kernels::LaserSystem& sys) {
  if (sys.n_levels != 2) {
    throw std::invalid_argument("dynamics: two-level system required");
  }
  return sys.v(0, 1);
}

}  // namespace

Spinor shutter_free(double x, double t, const ShutterScenario& sc) {
  require_t(t);
  const double tau = sc.sys.hbar * t / sc.sys.mass;
  return {specfun::moshinsky(x, Complex(sc.k, 0.0), tau), Complex(0.0, 0.0)};
}

Spinor shutter_with_laser(double x, double t, const ShutterScenario& sc) {
  require_t(t);
  const double v0 = two_level_strength(sc.sys);
  const double xi = sc.sys.xi;
  if (!(xi > 0.0)) {
    throw std::invalid_argument("shutter_with_laser: laser must sit at xi > 0");
  }
  Spinor psi = shutter_free(x, t, sc);
  if (v0 == 0.0) return psi;

  const double m = sc.sys.mass, hb = sc.sys.hbar;
  const double tau = hb * t / m;
  const Complex kappa(0.0, -m * v0 / (hb * hb));
  const double b = std::abs(x - xi) + xi;
  for (int a : {+1, -1}) {
    const Complex ak = static_cast<double>(a) * kappa;
    // k real and kappa purely imaginary: the denominator cannot vanish.
    const Complex coeff = 0.5 * kappa / (sc.k - ak);
    const Complex diff = specfun::moshinsky(b, Complex(sc.k, 0.0), tau) -
                         specfun::moshinsky(b, ak, tau);
    psi[0] += static_cast<double>(a) * coeff * diff;
    psi[1] += coeff * diff;
  }
  return psi;
}

ScatteringCoefficients stationary_scattering(double k, double v0, double mass,
                                             double hbar) {
  if (!(k > 0.0) || v0 < 0.0) {
    throw std::invalid_argument("stationary_scattering: need k > 0, V0 >= 0");
  }
  const double g = mass * v0 / (hbar * hbar * k);
  Complex tp = 1.0 / Complex(1.0, g);   // +V0 eigenchannel
  Complex tm = 1.0 / Complex(1.0, -g);  // -V0 eigenchannel
  Complex rp = tp - 1.0;
  Complex rm = tm - 1.0;
  ScatteringCoefficients c;
  c.t1 = 0.25 * std::norm(tp + tm);
  c.t2 = 0.25 * std::norm(tp - tm);
  c.r1 = 0.25 * std::norm(rp + rm);
  c.r2 = 0.25 * std::norm(rp - rm);
  return c;
}

Spinor sine_packet_free(double x, double t, const SinePacketScenario& sc) {
  require_t(t);
  const double L = sc.length;
  const double tau = sc.sys.hbar * t / sc.sys.mass;
  // Note: the free prefactor is 1/(2i) sqrt(2/L); see ERRATA.md.
  const Complex pref = std::sqrt(2.0 / L) / Complex(0.0, 2.0);
  Complex amp = 0.0;
  for (int beta : {+1, -1}) {
    const double qb = sc.q + beta * sc.n * M_PI / L;
    amp += static_cast<double>(beta) *
           (std::exp(Complex(0.0, qb * L)) *
                specfun::moshinsky(x - L, Complex(qb, 0.0), tau) -
            specfun::moshinsky(x, Complex(qb, 0.0), tau));
  }
  return {pref * amp, Complex(0.0, 0.0)};
}

Spinor sine_packet_with_laser(double x, double t, const SinePacketScenario& sc) {
  require_t(t);
  const double L = sc.length;
  const double xi = sc.sys.xi;
  if (!(xi > L)) {
    throw std::invalid_argument("sine_packet_with_laser: laser must sit at xi > L");
  }
  const double v0 = two_level_strength(sc.sys);
  Spinor psi = sine_packet_free(x, t, sc);
  if (v0 == 0.0) return psi;

  const double m = sc.sys.mass, hb = sc.sys.hbar;
  const double tau = hb * t / m;
  const Complex kappa(0.0, -m * v0 / (hb * hb));
  const Complex pref =
      -(m * v0 / (2.0 * hb * hb)) * std::sqrt(2.0 / L) / Complex(0.0, 2.0);

  // The correction is the kernel's Moshinsky term integrated against the
  // initial packet over [0, L]; with xi > L the image distance is
  // |x-xi| + xi - x', handled in closed form by the Eq.-(28) primitive
  // with a = -1, b = |x-xi| + xi.
  const double b = std::abs(x - xi) + xi;
  for (int beta : {+1, -1}) {
    const double qb = sc.q + beta * sc.n * M_PI / L;
    for (int a : {+1, -1}) {
      const Complex ak = static_cast<double>(a) * kappa;
      const Complex integral =
          specfun::moshinsky_primitive(-1.0, b, ak, qb, tau, L) -
          specfun::moshinsky_primitive(-1.0, b, ak, qb, tau, 0.0);
      const Complex term = pref * static_cast<double>(beta) * integral;
      psi[0] += static_cast<double>(a) * term;
      psi[1] += term;
    }
  }
  return psi;
}

ChannelDensity channel_density(std::span<const Spinor> field) {
  if (field.empty()) {
    throw std::invalid_argument("channel_density: empty field");
  }
  ChannelDensity d;
  d.rho1.reserve(field.size());
  d.rho2.reserve(field.size());
  d.total.reserve(field.size());
  for (const Spinor& s : field) {
    const double r1 = std::norm(s[0]);
    const double r2 = std::norm(s[1]);
    d.rho1.push_back(r1);
    d.rho2.push_back(r2);
    d.total.push_back(r1 + r2);
  }
  return d;
}

}  // namespace deltaprop::dynamics
