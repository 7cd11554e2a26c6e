#ifndef DELTAPROP_ORACLE_HPP
#define DELTAPROP_ORACLE_HPP

#include <complex>
#include <functional>
#include <vector>

#include "deltaprop/kernels.hpp"

namespace deltaprop::oracle {

using Complex = std::complex<double>;

/// Uniform spatial grid plus integrator controls.  sigma is the width of
/// the unit-mass Gaussian that replaces the delta laser; it must be
/// resolvable (sigma >= 2 dx).
struct GridSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  int n_points = 1024;
  double dt = 1e-3;
  double sigma = 0.1;

  double dx() const { return (x_max - x_min) / (n_points - 1); }
  double x(int i) const { return x_min + i * dx(); }
};

/// Multi-channel wavefunction sampled on a grid.  Channel-major storage:
/// psi[ch * n_points + i].
struct GridState {
  GridSpec grid;
  int n_levels = 2;
  std::vector<Complex> psi;
  double t = 0.0;

  Complex& at(int ch, int i) { return psi[static_cast<std::size_t>(ch) * grid.n_points + i]; }
  Complex at(int ch, int i) const { return psi[static_cast<std::size_t>(ch) * grid.n_points + i]; }
  double norm() const;  // sqrt of the trapezoidal integral of |psi|^2
};

enum class Boundary { reflecting, absorbing };

struct TdseOptions {
  Boundary boundary = Boundary::reflecting;
  double mask_width = 0.0;  // absorbing layer width (absorbing boundary only)
  bool check_sentinel = true;
  double sentinel_threshold = 1e-8;  // max |psi|^2 allowed near the edges
};

struct TdseStats {
  double max_norm_drift = 0.0;  // unitary (reflecting) runs only
  double sentinel_max = 0.0;
  int steps = 0;
};

/// Strang-split spectral integrator for
///   i hbar dPsi/dt = (p^2/2m) Psi + V delta_sigma(x - xi) Psi.
/// Kinetic step exact in the sine (reflecting) or Fourier (absorbing)
/// eigenbasis; potential step is the exact matrix exponential of the
/// regularized coupling.  Second order in dt, unitary up to rounding for
/// reflecting boundaries.
/// Throws std::invalid_argument on grid violations (sigma < 2 dx, dt <= 0)
/// and std::runtime_error when sentinel probes detect edge contamination.
GridState evolve_tdse(const GridState& initial, const kernels::LaserSystem& sys,
                      double t_final, const TdseOptions& options = {},
                      TdseStats* stats = nullptr);

using KernelEvaluator =
    std::function<kernels::KernelMatrix(double x, double t, double xp, double tp)>;

/// Direct quadrature of Psi(x,t) = integral K(x,t|x',t0) Psi(x',t0) dx'
/// with a composite Simpson rule over the sampled initial state.
/// Throws std::runtime_error when the rule has not converged (full-grid
/// vs half-grid estimates differ by more than rel_tol in L2).
GridState quadrature_propagate(const KernelEvaluator& kernel,
                               const GridState& initial, double t,
                               double rel_tol = 1e-6, bool parallel = true);

/// Same Simpson quadrature, evaluated at arbitrary output points instead of
/// the initial grid.  Returns one amplitude vector (n_levels entries) per
/// output point.
std::vector<std::vector<Complex>> quadrature_field(
    const KernelEvaluator& kernel, const GridState& initial, double t,
    const std::vector<double>& xs_out, double rel_tol = 1e-6,
    bool parallel = true);

}  // namespace deltaprop::oracle

#endif
