#ifndef DELTAPROP_DYNAMICS_HPP
#define DELTAPROP_DYNAMICS_HPP

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "deltaprop/kernels.hpp"

namespace deltaprop::dynamics {

using Complex = std::complex<double>;
using Spinor = std::array<Complex, 2>;

/// Beam e^{ikx} Theta(-x) |1> released at t = 0 (shutter edge at x = 0).
struct ShutterScenario {
  double k = 1.0;  // incident wavenumber, > 0
  kernels::LaserSystem sys = kernels::LaserSystem::two_level(1.0, 1.0);
};

/// Ground-state eigenmode n of a box [0, L], boosted by wavenumber q and
/// released at t = 0; the laser sits at xi > L.
struct SinePacketScenario {
  double length = 1.0;
  int n = 1;
  double q = 1.0;
  kernels::LaserSystem sys = kernels::LaserSystem::two_level(1.0, 2.0);
};

struct ScatteringCoefficients {
  double r1 = 0, r2 = 0, t1 = 0, t2 = 0;
  double sum() const { return r1 + r2 + t1 + t2; }
};

Spinor shutter_free(double x, double t, const ShutterScenario& sc);
Spinor shutter_with_laser(double x, double t, const ShutterScenario& sc);

/// Stationary two-channel scattering off the delta laser, ground-state
/// input: eigenchannel amplitudes t_pm = 1/(1 pm i m V0 / hbar^2 k)
/// recombined into channel probabilities.
ScatteringCoefficients stationary_scattering(double k, double v0,
                                             double mass = 1.0,
                                             double hbar = 1.0);

Spinor sine_packet_free(double x, double t, const SinePacketScenario& sc);
Spinor sine_packet_with_laser(double x, double t, const SinePacketScenario& sc);

struct ChannelDensity {
  std::vector<double> rho1, rho2, total;
};

/// |<1|Psi>|^2, |<2|Psi>|^2 and their sum over a sampled field.
/// Throws std::invalid_argument on an empty field.
ChannelDensity channel_density(std::span<const Spinor> field);

}  // namespace deltaprop::dynamics

#endif
