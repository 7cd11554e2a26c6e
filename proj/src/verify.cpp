#include "deltaprop/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>

#include "deltaprop/csv.hpp"
#include "deltaprop/dynamics.hpp"
#include "deltaprop/grid_eval.hpp"
#include "deltaprop/kernels.hpp"
#include "deltaprop/oracle.hpp"
#include "deltaprop/specfun.hpp"
#include "deltaprop/units.hpp"

#ifndef DELTAPROP_DATA_DIR
#define DELTAPROP_DATA_DIR "data/fixtures"
#endif

namespace deltaprop::verify {

namespace {

using Complex = std::complex<double>;
using kernels::KernelMatrix;
using kernels::LaserSystem;
using kernels::ThreeLevelConfig;

constexpr double kPi = 3.141592653589793238462643383279502884;

CheckResult check(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured <= tolerance};
}

double rel_matrix_diff(const KernelMatrix& a, const KernelMatrix& b) {
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    scale = std::max(scale, std::abs(b.entries[i]));
    diff = std::max(diff, std::abs(a.entries[i] - b.entries[i]));
  }
  return diff / std::max(scale, 1e-300);
}

// Richardson-extrapolated central second derivative.
Complex d2(const std::function<Complex(double)>& f, double x, double h) {
  auto fd = [&](double hh) {
    return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh);
  };
  return (4.0 * fd(h / 2.0) - fd(h)) / 3.0;
}

// Richardson-extrapolated central first derivative.
Complex d1(const std::function<Complex(double)>& f, double x, double h) {
  auto fd = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
  return (4.0 * fd(h / 2.0) - fd(h)) / 3.0;
}

// One-sided first derivative into the region sign*(x' - x) > 0.
Complex d1_onesided(const std::function<Complex(double)>& f, double x,
                    double sign, double h) {
  auto fd = [&](double hh) {
    const double s = sign * hh;
    return (-3.0 * f(x) + 4.0 * f(x + s) - f(x + 2.0 * s)) / (2.0 * s);
  };
  return (4.0 * fd(h / 2.0) - fd(h)) / 3.0;
}

oracle::GridState gaussian_state(const oracle::GridSpec& grid, int n_levels,
                                 double x0, double width, double k0) {
  oracle::GridState st;
  st.grid = grid;
  st.n_levels = n_levels;
  st.psi.assign(static_cast<std::size_t>(n_levels) * grid.n_points, 0.0);
  const double norm = std::pow(kPi * width * width, -0.25);
  for (int i = 0; i < grid.n_points; ++i) {
    const double u = (grid.x(i) - x0) / width;
    st.at(0, i) = norm * std::exp(-0.5 * u * u) * std::exp(Complex(0, k0 * grid.x(i)));
  }
  return st;
}

// Analytic free evolution of the Gaussian produced by gaussian_state.
Complex free_gaussian(double x, double t, double x0, double width, double k0,
                      double mass = 1.0, double hbar = 1.0) {
  const Complex i(0.0, 1.0);
  const Complex a = width * width + i * hbar * t / mass;
  const double xc = x - x0 - hbar * k0 * t / mass;
  return std::pow(kPi, -0.25) * std::sqrt(width / a) *
         std::exp(-0.5 * xc * xc / a + i * (k0 * (x - x0) - 0.5 * hbar * k0 * k0 * t / mass));
}

std::vector<LaserSystem> sample_systems(double xi) {
  std::vector<LaserSystem> out;
  out.push_back(LaserSystem::two_level(0.7, xi));
  out.push_back(LaserSystem::three_level(ThreeLevelConfig::ladder, 0.8, 1.3, xi));
  out.push_back(LaserSystem::three_level(ThreeLevelConfig::vee, 1.1, 0.6, xi));
  out.push_back(LaserSystem::three_level(ThreeLevelConfig::lambda, 0.5, 0.9, xi));
  out.push_back(LaserSystem::star({0.4, 1.2, 0.8, 0.3}, 0, xi));
  return out;
}

KernelMatrix direct_kernel(const LaserSystem& sys, double x, double t, double xp,
                           double tp) {
  if (sys.n_levels == 2) return kernels::two_level_kernel(sys, x, t, xp, tp);
  return kernels::star_kernel(sys, x, t, xp, tp);
}

}  // namespace

std::string fixtures_dir() {
  if (const char* env = std::getenv("DELTAPROP_FIXTURES")) return env;
  return DELTAPROP_DATA_DIR;
}

std::vector<CheckResult> verify_specfun(const std::string& fixtures) {
  std::vector<CheckResult> out;

  {
    const auto table = csv::read(fixtures + "/faddeyeva_grid.csv");
    double worst = 0.0;
    for (const auto& row : table.rows) {
      const Complex z(row[0], row[1]);
      const Complex ref(row[2], row[3]);
      const Complex got = specfun::faddeyeva(z);
      worst = std::max(worst, std::abs(got - ref) / std::max(std::abs(ref), 1e-300));
    }
    out.push_back(check("faddeyeva matches frozen reference grid", worst, 1e-12));
  }

  {
    const auto table = csv::read(fixtures + "/moshinsky_values.csv");
    double worst = 0.0;
    for (const auto& row : table.rows) {
      const Complex got = specfun::moshinsky(row[0], Complex(row[1], row[2]), row[3]);
      const Complex ref(row[4], row[5]);
      worst = std::max(worst, std::abs(got - ref) / std::max(std::abs(ref), 1e-300));
    }
    out.push_back(check("moshinsky matches frozen reference values", worst, 1e-12));
  }

  {
    // w(z) + w(-z) = 2 e^{-z^2}
    double worst = 0.0;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 100; ++i) {
      const Complex z(u(rng), u(rng));
      const Complex lhs = specfun::faddeyeva(z) + specfun::faddeyeva(-z);
      const Complex rhs = 2.0 * std::exp(-z * z);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1.0));
    }
    out.push_back(check("faddeyeva reflection identity", worst, 1e-12));
  }

  {
    // w(z) -> i / (sqrt(pi) z) far from the origin.
    double worst = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double phi = kPi * (j + 0.5) / 8.0;
      const Complex z = 1e4 * Complex(std::cos(phi), std::sin(phi));
      const Complex ref = Complex(0, 1) / (std::sqrt(kPi) * z);
      worst = std::max(worst,
                       std::abs(specfun::faddeyeva(z) - ref) / std::abs(ref));
    }
    out.push_back(check("faddeyeva asymptotic tail", worst, 1e-6));
  }

  {
    // i dM/dtau = -(1/2) d2M/dx2
    double worst = 0.0;
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uk(0.3, 2.0), ut(0.3, 2.0);
    for (int i = 0; i < 12; ++i) {
      const double x = ux(rng), tau = ut(rng);
      const Complex k(uk(rng), (i % 3 == 0) ? -uk(rng) : 0.0);
      const Complex mt = d1([&](double tt) { return specfun::moshinsky(x, k, tt); },
                            tau, 1e-3);
      const Complex mxx = d2([&](double xx) { return specfun::moshinsky(xx, k, tau); },
                             x, 1e-3);
      const Complex lhs = Complex(0, 1) * mt;
      const Complex rhs = -0.5 * mxx;
      worst = std::max(worst,
                       std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
    }
    out.push_back(check("moshinsky free evolution residual", worst, 1e-5));
  }

  {
    // tau -> 0+ recovers the chopped plane wave e^{i(kx - k^2 tau/2)} Theta(-x).
    const double k = 1.3, tau = 1e-6;
    const Complex phase = std::exp(Complex(0, -k * k * tau / 2.0));
    const Complex behind = specfun::moshinsky(-1.0, k, tau);
    const Complex ahead = specfun::moshinsky(1.0, k, tau);
    const double e1 = std::abs(behind - std::exp(Complex(0, -k)) * phase);
    const double e2 = std::abs(ahead);
    out.push_back(check("moshinsky short time limit", std::max(e1, e2), 1e-3));
  }

  {
    // d/dx of the antiderivative reproduces the integrand.
    double worst = 0.0;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.3, 1.5), ux(-1.0, 1.5);
    for (int i = 0; i < 12; ++i) {
      const double a = (i % 2 == 0) ? -1.0 : 1.0;
      const double b = u(rng), k = u(rng), tau = u(rng), x = ux(rng);
      const Complex c(0.2 * u(rng), -u(rng));
      const Complex got = d1(
          [&](double xx) {
            return specfun::moshinsky_primitive(a, b, c, k, tau, xx);
          },
          x, 1e-3);
      const Complex ref = std::exp(Complex(0, k * x)) *
                          specfun::moshinsky(a * x + b, c, tau);
      worst = std::max(worst, std::abs(got - ref) / std::max(std::abs(ref), 1e-6));
    }
    out.push_back(check("antiderivative derivative check", worst, 1e-8));
  }

  return out;
}

std::vector<CheckResult> verify_kernels() {
  std::vector<CheckResult> out;
  const double xi = 0.4;
  const auto systems = sample_systems(xi);

  {
    // K_ik(x,t|x',t') = K_ki(x',t|x,t')
    double worst = 0.0;
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), ut(0.1, 2.0);
    for (int d = 0; d < 200; ++d) {
      const auto& sys = systems[d % systems.size()];
      const double x = ux(rng), xp = ux(rng), t = ut(rng);
      const KernelMatrix a = kernels::spectral_kernel(sys, x, t, xp, 0.0);
      KernelMatrix b = kernels::spectral_kernel(sys, xp, t, x, 0.0);
      // transpose b in place
      for (int i = 0; i < b.n; ++i)
        for (int k = i + 1; k < b.n; ++k) std::swap(b.at(i, k), b.at(k, i));
      worst = std::max(worst, rel_matrix_diff(a, b));
    }
    out.push_back(check("kernel exchange symmetry", worst, 1e-13));
  }

  {
    // Channel-basis construction vs eigenbasis construction.
    double worst = 0.0;
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), ut(0.1, 2.0);
    for (const auto& sys : systems) {
      for (int d = 0; d < 100; ++d) {
        const double x = ux(rng), xp = ux(rng), t = ut(rng);
        const KernelMatrix a = direct_kernel(sys, x, t, xp, 0.0);
        const KernelMatrix b = kernels::spectral_kernel(sys, x, t, xp, 0.0);
        worst = std::max(worst, rel_matrix_diff(a, b));
      }
    }
    out.push_back(check("direct vs eigenbasis kernel routes", worst, 1e-12));
  }

  {
    // Zero coupling: diagonal free propagation, off-diagonal exactly zero.
    double worst = 0.0;
    const auto z2 = LaserSystem::two_level(0.0, xi);
    const auto z3 = LaserSystem::three_level(ThreeLevelConfig::ladder, 0.0, 0.0, xi);
    for (const double x : {-1.7, 0.4, 2.2}) {
      const KernelMatrix a = kernels::two_level_kernel(z2, x, 0.9, -0.5, 0.0);
      const KernelMatrix b =
          kernels::three_level_kernel(ThreeLevelConfig::ladder, z3, x, 0.9, -0.5, 0.0);
      const Complex free = kernels::free_kernel(x, 0.9, -0.5, 0.0);
      for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k)
          worst = std::max(worst, std::abs(a(i, k) - (i == k ? free : 0.0)));
      for (int i = 0; i < b.n; ++i)
        for (int k = 0; k < b.n; ++k)
          worst = std::max(worst, std::abs(b(i, k) - (i == k ? free : 0.0)));
    }
    out.push_back(check("zero coupling reduces to free kernel", worst, 1e-15));
  }

  {
    // Decoupled level in a ladder with the upper rung switched off.
    double worst = 0.0;
    const auto partial =
        LaserSystem::three_level(ThreeLevelConfig::ladder, 0.9, 0.0, xi);
    const auto pair = LaserSystem::two_level(0.9, xi);
    for (const double x : {-1.3, 0.9}) {
      const KernelMatrix a = kernels::three_level_kernel(ThreeLevelConfig::ladder,
                                                         partial, x, 0.7, 0.2, 0.0);
      const KernelMatrix b = kernels::two_level_kernel(pair, x, 0.7, 0.2, 0.0);
      const Complex free = kernels::free_kernel(x, 0.7, 0.2, 0.0);
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          worst = std::max(worst, std::abs(a(i, k) - b(i, k)));
      worst = std::max(worst, std::abs(a(2, 2) - free));
      worst = std::max(worst, std::abs(a(0, 2)) + std::abs(a(1, 2)));
      worst = std::max(worst, std::abs(a(2, 0)) + std::abs(a(2, 1)));
    }
    out.push_back(check("switched-off rung decouples exactly", worst, 1e-14));
  }

  {
    // Propagating a narrow packet for a short time reproduces the packet,
    // with the residual shrinking linearly in t.
    const auto sys = LaserSystem::two_level(1.0, 0.0);
    oracle::GridSpec grid;
    grid.x_min = -1.7;
    grid.x_max = 3.3;
    grid.n_points = 20001;
    const auto init = gaussian_state(grid, 2, 0.8, 0.5, 0.0);
    std::vector<double> probes;
    for (int i = 0; i <= 8; ++i) probes.push_back(0.4 + 0.1 * i);
    auto kernel = [&](double x, double t, double xp, double tp) {
      return kernels::two_level_kernel(sys, x, t, xp, tp);
    };
    auto err_at = [&](double t) {
      const auto field = oracle::quadrature_field(kernel, init, t, probes, 1e-5);
      double e = 0.0;
      for (std::size_t i = 0; i < probes.size(); ++i) {
        const double u = (probes[i] - 0.8) / 0.5;
        const Complex psi0 =
            std::pow(kPi * 0.25, -0.25) * std::exp(-0.5 * u * u);
        e = std::max(e, std::abs(field[i][0] - psi0) + std::abs(field[i][1]));
      }
      return e;
    };
    const double e1 = err_at(2e-3), e2 = err_at(1e-3);
    out.push_back(check("short time identity limit", e2, 2e-2));
    out.push_back(check("short time limit first order rate",
                        std::abs(e2 / e1 - 0.5), 0.2));
  }

  {
    // Norm conservation through the coupled kernel.
    const auto sys = LaserSystem::two_level(1.0, 0.0);
    oracle::GridSpec grid;
    grid.x_min = -6.0;
    grid.x_max = 7.0;
    grid.n_points = 2081;
    const auto init = gaussian_state(grid, 2, 1.0, 1.0, 0.0);
    std::vector<double> xs_out = grid_eval::linspace(-10.0, 12.0, 1761);
    auto kernel = [&](double x, double t, double xp, double tp) {
      return kernels::two_level_kernel(sys, x, t, xp, tp);
    };
    const auto field = oracle::quadrature_field(kernel, init, 0.5, xs_out, 1e-6);
    double sum = 0.0;
    const double h = xs_out[1] - xs_out[0];
    for (std::size_t i = 0; i < xs_out.size(); ++i) {
      const double w = (i == 0 || i + 1 == xs_out.size()) ? 0.5 : 1.0;
      sum += w * (std::norm(field[i][0]) + std::norm(field[i][1]));
    }
    out.push_back(check("kernel propagation preserves norm",
                        std::abs(std::sqrt(sum * h) - 1.0), 1e-6));
  }

  {
    // Spatial derivative jump of the kernel across the laser matches the
    // coupling matrix: dK/dx(xi+) - dK/dx(xi-) = (2m/hbar^2) V K(xi).
    double worst = 0.0;
    for (const auto& sys : systems) {
      const double t = 0.8, xp = -1.1;
      const int n = sys.n_levels;
      KernelMatrix at_xi = kernels::spectral_kernel(sys, sys.xi, t, xp, 0.0);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          auto f = [&](double x) {
            return kernels::spectral_kernel(sys, x, t, xp, 0.0)(i, k);
          };
          const Complex jump =
              d1_onesided(f, sys.xi, +1.0, 1e-3) - d1_onesided(f, sys.xi, -1.0, 1e-3);
          Complex rhs = 0.0;
          for (int j = 0; j < n; ++j) rhs += 2.0 * sys.v(i, j) * at_xi(j, k);
          worst = std::max(worst, std::abs(jump - rhs) /
                                      std::max(1.0, std::abs(rhs)));
        }
      }
    }
    out.push_back(check("derivative jump matches coupling strength", worst, 1e-6));
  }

  {
    // One dominant coupling: the driven pair approaches total reflection.
    auto limit_err = [&](double g) {
      const auto sys = LaserSystem::two_level(g, xi);
      double worst = 0.0;
      for (const double x : {0.9, 1.6}) {
        for (const double xp : {0.7, 2.1}) {
          const KernelMatrix a = kernels::two_level_kernel(sys, x, 0.8, xp, 0.0);
          const KernelMatrix b =
              kernels::mirror_kernel(sys, {0, 1}, x, 0.8, xp, 0.0);
          worst = std::max(worst, rel_matrix_diff(a, b));
        }
      }
      return worst;
    };
    const double e_weak = limit_err(1e4), e_strong = limit_err(1e6);
    out.push_back(check("strong coupling mirror limit", e_strong, 1e-4));
    out.push_back(check("mirror limit improves with strength",
                        e_strong / e_weak, 0.1));
  }

  {
    // Two dominant spokes: hub reflected, driven combination reflected.
    double worst = 0.0;
    for (const double c : {0.5, 1.0, 2.0}) {
      const double g = 1e6;
      const auto sys = LaserSystem::star({c * g, g}, 0, xi);
      for (const double x : {0.9, 1.8}) {
        const KernelMatrix a = kernels::star_kernel(sys, x, 0.8, 1.2, 0.0);
        const KernelMatrix b =
            kernels::two_strong_kernel(sys, {1, 2}, 0, c, x, 0.8, 1.2, 0.0);
        worst = std::max(worst, rel_matrix_diff(a, b));
      }
    }
    out.push_back(check("two strong spokes projector limit", worst, 1e-4));
  }

  return out;
}

std::vector<CheckResult> verify_dynamics() {
  std::vector<CheckResult> out;

  {
    // On resonance k = m V0 / hbar^2 all four probabilities are 1/4.
    double worst = 0.0;
    for (int i = 1; i <= 10; ++i) {
      const double v0 = 0.3 * i;
      const auto s = dynamics::stationary_scattering(v0, v0);
      worst = std::max({worst, std::abs(s.r1 - 0.25), std::abs(s.r2 - 0.25),
                        std::abs(s.t1 - 0.25), std::abs(s.t2 - 0.25)});
    }
    out.push_back(check("resonant quarter splitting", worst, 1e-12));
  }

  {
    double worst = 0.0;
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0.05, 5.0);
    for (int i = 0; i < 1000; ++i) {
      const auto s = dynamics::stationary_scattering(u(rng), u(rng));
      worst = std::max(worst, std::abs(s.sum() - 1.0));
    }
    out.push_back(check("scattering probabilities sum to one", worst, 1e-12));
  }

  {
    // Laser switched off: full solution collapses to the free beam.
    dynamics::ShutterScenario sc;
    sc.k = 1.4;
    sc.sys = LaserSystem::two_level(0.0, 2.0);
    double worst = 0.0;
    for (const double x : {-3.0, 0.5, 2.7, 6.0}) {
      const auto a = dynamics::shutter_with_laser(x, 1.7, sc);
      const auto b = dynamics::shutter_free(x, 1.7, sc);
      worst = std::max(worst, std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]));
    }
    out.push_back(check("zero coupling beam reduces to free", worst, 1e-15));
  }

  dynamics::ShutterScenario sh;
  sh.k = 1.2;
  sh.sys = LaserSystem::two_level(0.9, 1.5);

  {
    // Spinor derivative jump at the laser equals 2 V psi(xi) (hbar=m=1).
    const double t = 2.3, xi = sh.sys.xi;
    double worst = 0.0;
    for (int ch = 0; ch < 2; ++ch) {
      auto f = [&](double x) { return dynamics::shutter_with_laser(x, t, sh)[ch]; };
      const Complex jump =
          d1_onesided(f, xi, +1.0, 1e-3) - d1_onesided(f, xi, -1.0, 1e-3);
      const auto at_xi = dynamics::shutter_with_laser(xi, t, sh);
      Complex rhs = 0.0;
      for (int j = 0; j < 2; ++j) rhs += 2.0 * sh.sys.v(ch, j) * at_xi[j];
      worst = std::max(worst, std::abs(jump - rhs) / std::max(1.0, std::abs(rhs)));
    }
    out.push_back(check("beam derivative jump at the laser", worst, 1e-6));
  }

  {
    // i dpsi/dt = -(1/2) d2psi/dx2 away from the laser.
    double worst = 0.0;
    for (const double x : {-1.2, 0.6, 2.8}) {
      for (int ch = 0; ch < 2; ++ch) {
        auto in_t = [&](double tt) { return dynamics::shutter_with_laser(x, tt, sh)[ch]; };
        auto in_x = [&](double xx) { return dynamics::shutter_with_laser(xx, 2.1, sh)[ch]; };
        const Complex lhs = Complex(0, 1) * d1(in_t, 2.1, 1e-3);
        const Complex rhs = -0.5 * d2(in_x, x, 1e-3);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-3});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
      }
    }
    out.push_back(check("beam free evolution off the laser", worst, 1e-4));
  }

  {
    // Resonant beam: the reflected wave interferes with the incident one,
    // pushing the density past the bare beam value on the near side.
    dynamics::ShutterScenario res;
    res.k = 2.0;
    res.sys = LaserSystem::two_level(2.0, 20.0);
    double peak = 0.0;
    for (int i = 0; i < 160; ++i) {
      const double x = 2.0 + i * 0.1;
      const auto psi = dynamics::shutter_with_laser(x, 40.0, res);
      peak = std::max(peak, std::norm(psi[0]) + std::norm(psi[1]));
    }
    CheckResult r;
    r.name = "reflection interference fringe contrast";
    r.measured = peak;
    r.tolerance = 1.1;  // must exceed this
    r.pass = peak >= r.tolerance;
    out.push_back(r);
  }

  dynamics::SinePacketScenario sp;
  sp.length = 1.0;
  sp.n = 1;
  sp.q = 5.0;
  sp.sys = LaserSystem::two_level(1.3, 2.5);

  {
    // Short times reproduce the boosted box mode inside [0, L].
    double worst = 0.0;
    const double t = 1e-5;
    for (const double x : {0.2, 0.5, 0.8}) {
      const auto psi = dynamics::sine_packet_free(x, t, sp);
      const Complex ref = std::sqrt(2.0 / sp.length) *
                          std::sin(sp.n * kPi * x / sp.length) *
                          std::exp(Complex(0, sp.q * x));
      worst = std::max(worst, std::abs(psi[0] - ref) + std::abs(psi[1]));
    }
    out.push_back(check("packet short time shape", worst, 1e-3));
  }

  {
    // Free packet norm stays one.  The box mode has power-law momentum
    // tails, so the position tail beyond |x| ~ k_max t sets the floor:
    // keep t modest and the window wide.
    const auto xs = grid_eval::linspace(-40.0, 45.0, 8501);
    const auto field = grid_eval::field_grid(
        [&](double x, double t) { return dynamics::sine_packet_free(x, t, sp); },
        xs, 0.3);
    double sum = 0.0;
    const double h = xs[1] - xs[0];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double w = (i == 0 || i + 1 == xs.size()) ? 0.5 : 1.0;
      sum += w * (std::norm(field[i][0]) + std::norm(field[i][1]));
    }
    out.push_back(check("free packet norm conservation",
                        std::abs(std::sqrt(sum * h) - 1.0), 1e-6));
  }

  {
    // Full packet solution: derivative jump and free evolution off the laser.
    const double t = 0.6, xi = sp.sys.xi;
    double worst_jump = 0.0, worst_eq = 0.0;
    const auto at_xi = dynamics::sine_packet_with_laser(xi, t, sp);
    for (int ch = 0; ch < 2; ++ch) {
      auto f = [&](double x) { return dynamics::sine_packet_with_laser(x, t, sp)[ch]; };
      const Complex jump =
          d1_onesided(f, xi, +1.0, 1e-3) - d1_onesided(f, xi, -1.0, 1e-3);
      Complex rhs = 0.0;
      for (int j = 0; j < 2; ++j) rhs += 2.0 * sp.sys.v(ch, j) * at_xi[j];
      worst_jump = std::max(worst_jump,
                            std::abs(jump - rhs) / std::max(1.0, std::abs(rhs)));
    }
    for (const double x : {1.1, 3.4}) {
      for (int ch = 0; ch < 2; ++ch) {
        auto in_t = [&](double tt) {
          return dynamics::sine_packet_with_laser(x, tt, sp)[ch];
        };
        auto in_x = [&](double xx) {
          return dynamics::sine_packet_with_laser(xx, t, sp)[ch];
        };
        const Complex lhs = Complex(0, 1) * d1(in_t, t, 1e-3);
        const Complex rhs = -0.5 * d2(in_x, x, 1e-3);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-3});
        worst_eq = std::max(worst_eq, std::abs(lhs - rhs) / scale);
      }
    }
    out.push_back(check("packet derivative jump at the laser", worst_jump, 1e-6));
    out.push_back(check("packet free evolution off the laser", worst_eq, 1e-4));
  }

  return out;
}

std::vector<CheckResult> verify_oracle() {
  std::vector<CheckResult> out;

  {
    // Free Gaussian against the analytic solution (kinetic step is exact,
    // so the error floor is set by the box walls only).
    oracle::GridSpec grid;
    grid.x_min = -40.0;
    grid.x_max = 40.0;
    grid.n_points = 2048;
    grid.dt = 0.01;
    const auto init = gaussian_state(grid, 2, 0.0, 1.0, 2.0);
    const auto sys = LaserSystem::two_level(0.0, 0.0);
    const auto fin = oracle::evolve_tdse(init, sys, 2.0);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
      const Complex ref = free_gaussian(grid.x(i), 2.0, 0.0, 1.0, 2.0);
      num += std::norm(fin.at(0, i) - ref) + std::norm(fin.at(1, i));
      den += std::norm(ref);
    }
    out.push_back(check("grid solver free gaussian error",
                        std::sqrt(num / den), 1e-6));
  }

  {
    // Unitarity with the laser on (reflecting box).
    oracle::GridSpec grid;
    grid.x_min = -20.0;
    grid.x_max = 20.0;
    grid.n_points = 1024;
    grid.dt = 5e-4;
    grid.sigma = 0.15;
    const auto init = gaussian_state(grid, 2, -4.0, 1.0, 3.0);
    const auto sys = LaserSystem::two_level(1.0, 0.0);
    const auto fin = oracle::evolve_tdse(init, sys, 1.5);
    out.push_back(check("grid solver norm conservation",
                        std::abs(fin.norm() - init.norm()), 1e-10));
  }

  {
    // Shrinking the regularized laser width converges monotonically to the
    // closed-form kernel propagation, and halving the step is ~4x better.
    oracle::GridSpec grid;
    grid.x_min = -20.0;
    grid.x_max = 20.0;
    grid.n_points = 4096;
    grid.dt = 5e-4;
    const double h = grid.dx();
    const auto sys = LaserSystem::two_level(1.5, 0.0);
    const auto init = gaussian_state(grid, 2, -4.0, 1.0, 3.0);
    const double t1 = 1.2;

    // Probe positions snapped onto grid nodes, so the grid field needs no
    // interpolation when compared with the quadrature reference.
    std::vector<double> probes;
    for (const double target : grid_eval::linspace(-8.0, 8.0, 33)) {
      const int idx = static_cast<int>(std::lround((target - grid.x_min) / h));
      probes.push_back(grid.x(idx));
    }
    oracle::GridSpec qgrid = grid;
    qgrid.x_min = -9.0;
    qgrid.x_max = 1.0;
    qgrid.n_points = 12001;
    const auto qinit = gaussian_state(qgrid, 2, -4.0, 1.0, 3.0);
    const auto ref = oracle::quadrature_field(
        [&](double x, double t, double xp, double tp) {
          return kernels::two_level_kernel(sys, x, t, xp, tp);
        },
        qinit, t1, probes, 1e-7);

    // Absorbing edges: the sharp regularized laser scatters a little
    // split-step noise to high wavenumbers, which would otherwise wrap
    // off the walls and trip the sentinel at amplitudes far below the
    // tolerance of this comparison.
    oracle::TdseOptions topt;
    topt.boundary = oracle::Boundary::absorbing;
    topt.mask_width = 5.0;
    topt.sentinel_threshold = 1e-6;

    auto run_probes = [&](double sigma) {
      oracle::GridSpec g = grid;
      g.sigma = sigma;
      auto st = init;
      st.grid = g;
      const auto fin = oracle::evolve_tdse(st, sys, t1, topt);
      std::vector<std::array<Complex, 2>> vals(probes.size());
      for (std::size_t i = 0; i < probes.size(); ++i) {
        const int idx = static_cast<int>(std::lround((probes[i] - g.x_min) / g.dx()));
        vals[i] = {fin.at(0, idx), fin.at(1, idx)};
      }
      return vals;
    };
    auto err = [&](const std::vector<std::array<Complex, 2>>& vals) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < probes.size(); ++i) {
        for (int ch = 0; ch < 2; ++ch) {
          num += std::norm(vals[i][ch] - ref[i][ch]);
          den += std::norm(ref[i][ch]);
        }
      }
      return std::sqrt(num / den);
    };

    const auto f8 = run_probes(8.0 * h);
    const auto f4 = run_probes(4.0 * h);
    const auto f2 = run_probes(2.0 * h);
    const double e8 = err(f8), e4 = err(f4), e2 = err(f2);
    CheckResult mono;
    mono.name = "laser width convergence is monotone";
    mono.measured = std::max(e4 / e8, e2 / e4);
    mono.tolerance = 1.0;
    mono.pass = e2 < e4 && e4 < e8;
    out.push_back(mono);

    // The leading regularization error is first order in sigma (the exact
    // field has a derivative kink at the laser), so extrapolate with
    // weights 2, -1 before comparing against the quadrature route.
    auto extrap = f2;
    for (std::size_t i = 0; i < extrap.size(); ++i) {
      for (int ch = 0; ch < 2; ++ch) {
        extrap[i][ch] = 2.0 * f2[i][ch] - f4[i][ch];
      }
    }
    out.push_back(
        check("grid solver matches quadrature route", err(extrap), 5e-3));

    // Step halving at fixed sigma: compare against a much finer step so the
    // sigma error cancels, expecting second order.
    const double sref = 4.0 * h;
    // The coarse-step runs shed splitting noise well above the sentinel
    // threshold by design; the check only measures how that error shrinks.
    oracle::TdseOptions dopt = topt;
    dopt.check_sentinel = false;
    auto fine = [&](double dt) {
      oracle::GridSpec g = grid;
      g.sigma = sref;
      g.dt = dt;
      auto st = init;
      st.grid = g;
      return oracle::evolve_tdse(st, sys, t1, dopt);
    };
    const auto base = fine(5e-4 / 8.0);
    auto err_vs_base = [&](const oracle::GridState& s) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < s.psi.size(); ++i) {
        num += std::norm(s.psi[i] - base.psi[i]);
        den += std::norm(base.psi[i]);
      }
      return std::sqrt(num / den);
    };
    const double ed = err_vs_base(fine(8e-3));
    const double ed2 = err_vs_base(fine(4e-3));
    out.push_back(check("time step halving is second order",
                        std::abs(ed / ed2 - 4.0), 1.5));
  }

  return out;
}

std::vector<CheckResult> verify_all(const std::string& fixtures) {
  std::vector<CheckResult> out;
  for (auto&& r : verify_specfun(fixtures)) out.push_back(std::move(r));
  for (auto&& r : verify_kernels()) out.push_back(std::move(r));
  for (auto&& r : verify_dynamics()) out.push_back(std::move(r));
  for (auto&& r : verify_oracle()) out.push_back(std::move(r));
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

TdseCertification certify_shutter_tdse() {
  // Resonant 87Rb beam at 1 cm/s, laser at 50 um, certified at 50 ms, all
  // mapped to natural units on the micron scale.  The grid run starts from
  // the closed-form field a few natural time units earlier: a true beam
  // cannot be represented on a finite grid from t = 0, and near the laser
  // the interaction is continuously active, so the window still exercises
  // the coupled jump condition.
  const units::UnitSystem u = units::UnitSystem::rb87_micron();
  dynamics::ShutterScenario sc;
  sc.k = u.to_natural(0.01, units::Dimension::velocity);
  sc.sys = LaserSystem::two_level(sc.k, 50.0);
  const double t1 = u.to_natural(50e-3, units::Dimension::time);
  const double t0 = t1 - 1.0;

  // The resonant coupling is V0 = k ~ 13.7, so the regularized laser must
  // satisfy V0 sigma << 1 for percent accuracy, and the splitting error
  // grows like dt^2 / sigma, so dt must shrink with sigma.  A short
  // certified span on a narrow window around the laser buys the needed
  // resolution: over 1 natural time unit influence propagates ~ k ~ 14 um,
  // so a window [0, 120] with 90 um of margin plus 30 um of absorbing
  // mask is clean.
  oracle::GridSpec grid;
  grid.x_min = -120.0;
  grid.x_max = 200.0;
  grid.n_points = 1 << 17;
  grid.dt = 1e-4;

  auto closed = [&](double x, double t) {
    return dynamics::shutter_with_laser(x, t, sc);
  };
  oracle::GridState init;
  init.grid = grid;
  init.n_levels = 2;
  init.psi.assign(2 * static_cast<std::size_t>(grid.n_points), 0.0);
  init.t = t0;
  for (int i = 0; i < grid.n_points; ++i) {
    const auto psi = closed(grid.x(i), t0);
    init.at(0, i) = psi[0];
    init.at(1, i) = psi[1];
  }

  oracle::TdseOptions opt;
  opt.boundary = oracle::Boundary::absorbing;
  opt.mask_width = 30.0;
  opt.check_sentinel = false;  // the beam occupies the domain by design

  auto run = [&](double sigma) {
    auto st = init;
    st.grid.sigma = sigma;
    return oracle::evolve_tdse(st, sc.sys, t1, opt);
  };
  const double h = grid.dx();
  const auto coarse = run(4.0 * h);
  const auto finer = run(2.0 * h);

  // Compare on a window clear of both masks and of the left-mask wake.
  TdseCertification cert;
  double num_c = 0.0, num_f = 0.0, num_r = 0.0, den = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    if (x < 0.0 || x > 120.0) continue;
    const auto psi = closed(x, t1);
    for (int ch = 0; ch < 2; ++ch) {
      // regularization error is first order in sigma: weights 2, -1
      const Complex rich = 2.0 * finer.at(ch, i) - coarse.at(ch, i);
      num_c += std::norm(coarse.at(ch, i) - psi[ch]);
      num_f += std::norm(finer.at(ch, i) - psi[ch]);
      num_r += std::norm(rich - psi[ch]);
      den += std::norm(psi[ch]);
    }
  }
  cert.l2_coarse = std::sqrt(num_c / den);
  cert.l2_fine = std::sqrt(num_f / den);
  cert.l2_extrapolated = std::sqrt(num_r / den);
  return cert;
}

TdseCertification certify_sine_packet_tdse() {
  // Fig.-6 style scenario: n = 1 mode of a 50 um box boosted to 1 cm/s,
  // resonant laser at 100 um.
  const units::UnitSystem u = units::UnitSystem::rb87_micron();
  dynamics::SinePacketScenario sp;
  sp.length = 50.0;
  sp.n = 1;
  sp.q = u.to_natural(0.01, units::Dimension::velocity);
  sp.sys = LaserSystem::two_level(sp.q, 100.0);
  // Certify across the laser transit itself (classical arrival of the
  // packet center at ~5, exit by ~8) rather than the figure's 100 ms
  // endpoint: the remaining evolution is free flight and the full span
  // needs a far larger domain than the oracle budget allows.
  const double t0 = 5.0;
  const double t1 = 8.0;

  // Same resolution strategy as the beam certification: restart from the
  // closed form shortly before the target on a narrow window around the
  // laser, so sigma can be made small against the resonant coupling.
  oracle::GridSpec grid;
  grid.x_min = -100.0;
  grid.x_max = 280.0;
  grid.n_points = 1 << 17;
  grid.dt = 1e-4;

  oracle::GridState init;
  init.grid = grid;
  init.n_levels = 2;
  init.psi.assign(2 * static_cast<std::size_t>(grid.n_points), 0.0);
  init.t = t0;
  for (int i = 0; i < grid.n_points; ++i) {
    const auto psi = dynamics::sine_packet_with_laser(grid.x(i), t0, sp);
    init.at(0, i) = psi[0];
    init.at(1, i) = psi[1];
  }

  oracle::TdseOptions opt;
  opt.boundary = oracle::Boundary::absorbing;
  opt.mask_width = 30.0;
  opt.check_sentinel = false;  // the split packet spans the whole domain

  auto run = [&](double sigma) {
    auto st = init;
    st.grid.sigma = sigma;
    return oracle::evolve_tdse(st, sp.sys, t1, opt);
  };
  const double h = grid.dx();
  const auto coarse = run(4.0 * h);
  const auto finer = run(2.0 * h);

  TdseCertification cert;
  double num_c = 0.0, num_f = 0.0, num_r = 0.0, den = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    if (x < 25.0 || x > 175.0) continue;
    const auto psi = dynamics::sine_packet_with_laser(x, t1, sp);
    for (int ch = 0; ch < 2; ++ch) {
      // regularization error is first order in sigma: weights 2, -1
      const Complex rich = 2.0 * finer.at(ch, i) - coarse.at(ch, i);
      num_c += std::norm(coarse.at(ch, i) - psi[ch]);
      num_f += std::norm(finer.at(ch, i) - psi[ch]);
      num_r += std::norm(rich - psi[ch]);
      den += std::norm(psi[ch]);
    }
  }
  cert.l2_coarse = std::sqrt(num_c / den);
  cert.l2_fine = std::sqrt(num_f / den);
  cert.l2_extrapolated = std::sqrt(num_r / den);
  return cert;
}

}  // namespace deltaprop::verify
