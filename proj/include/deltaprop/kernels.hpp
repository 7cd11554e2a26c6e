#ifndef DELTAPROP_KERNELS_HPP
#define DELTAPROP_KERNELS_HPP

#include <complex>
#include <utility>
#include <vector>

namespace deltaprop::kernels {

using Complex = std::complex<double>;

enum class ThreeLevelConfig { ladder, vee, lambda };

/// N-level atom coupled by delta lasers at a common position xi.
/// coupling(i,j) = hbar * Omega_ij / 2, symmetric with zero diagonal.
struct LaserSystem {
  int n_levels = 2;
  std::vector<double> coupling;  // row-major n x n
  double xi = 0.0;
  double mass = 1.0;
  double hbar = 1.0;

  double v(int i, int j) const { return coupling[i * n_levels + j]; }

  static LaserSystem two_level(double v0, double xi, double mass = 1.0,
                               double hbar = 1.0);
  static LaserSystem three_level(ThreeLevelConfig config, double va, double vb,
                                 double xi, double mass = 1.0,
                                 double hbar = 1.0);
  /// Star topology: hub level `hub` coupled to every other level with
  /// strengths `spokes` (one entry per non-hub level, in level order).
  static LaserSystem star(const std::vector<double>& spokes, int hub, double xi,
                          double mass = 1.0, double hbar = 1.0);

  /// Hub detection for star-shaped couplings (any 2-level system counts).
  /// Throws std::invalid_argument when the sparsity is not a star.
  int find_hub() const;
  std::vector<double> spoke_strengths(int hub) const;
};

/// Value of the N x N propagator matrix at one spacetime point pair.
struct KernelMatrix {
  int n = 0;
  std::vector<Complex> entries;  // row-major
  double x = 0, t = 0, xp = 0, tp = 0;

  Complex operator()(int i, int k) const { return entries[i * n + k]; }
  Complex& at(int i, int k) { return entries[i * n + k]; }
};

/// Free single-channel propagator sqrt(m / 2 pi i hbar dt) e^{i m (x-x')^2 / 2 hbar dt}
/// with the principal branch of the square root.
Complex free_kernel(double x, double t, double xp, double tp, double mass = 1.0,
                    double hbar = 1.0);

/// Propagator of a single channel with one delta potential g delta(x - xi):
/// K0 - (m g / hbar^2) M(|x-xi| + |xi-x'|, -i m g / hbar^2, hbar dt / m).
/// The scalar building block of every spectral construction below.
Complex single_delta_kernel(double g, double x, double t, double xp, double tp,
                            double xi, double mass = 1.0, double hbar = 1.0);

KernelMatrix two_level_kernel(const LaserSystem& sys, double x, double t,
                              double xp, double tp);
KernelMatrix three_level_kernel(ThreeLevelConfig config, const LaserSystem& sys,
                                double x, double t, double xp, double tp);
KernelMatrix star_kernel(const LaserSystem& sys, double x, double t, double xp,
                         double tp);

/// Infinitely strong laser coupling levels j and n: both become totally
/// reflected at xi (Dirichlet image), all other channels stay free.
KernelMatrix mirror_kernel(const LaserSystem& sys, std::pair<int, int> hard_pair,
                           double x, double t, double xp, double tp);

/// Two spokes l, n of a star driven to infinite strength at fixed ratio
/// c = V_l / V_n.  The hub j is totally reflected; the {l,n} subspace is
/// reflected through the projector onto the driven combination
/// (c|l> + |n>)/sqrt(1+c^2).
KernelMatrix two_strong_kernel(const LaserSystem& sys, std::pair<int, int> pair,
                               int hub, double c, double x, double t, double xp,
                               double tp);

/// Independent route: K = U diag(single_delta_kernel(g_i)) U^T built from
/// the closed-form eigendecomposition of the coupling matrix (star shapes
/// only, which covers every configuration in this library).
KernelMatrix spectral_kernel(const LaserSystem& sys, double x, double t,
                             double xp, double tp);

/// Closed-form orthonormal eigensystem of a star coupling matrix.
struct StarEigensystem {
  std::vector<double> values;            // n eigenvalues
  std::vector<std::vector<double>> vecs; // orthonormal eigenvectors
};
StarEigensystem star_eigensystem(const LaserSystem& sys);

}  // namespace deltaprop::kernels

#endif
