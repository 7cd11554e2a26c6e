#include "deltaprop/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "deltaprop/specfun.hpp"

namespace deltaprop::kernels {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_dt(double t, double tp) {
  if (!(t > tp)) {
    throw std::invalid_argument("kernel: requires t > t'");
  }
}

double image_distance(double x, double xp, double xi) {
  return std::abs(x - xi) + std::abs(xi - xp);
}

KernelMatrix make_matrix(int n, double x, double t, double xp, double tp) {
  KernelMatrix k;
  k.n = n;
  k.entries.assign(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
  k.x = x;
  k.t = t;
  k.xp = xp;
  k.tp = tp;
  return k;
}

}  // namespace

LaserSystem LaserSystem::two_level(double v0, double xi, double mass,
                                   double hbar) {
  LaserSystem s;
  s.n_levels = 2;
  s.coupling = {0.0, v0, v0, 0.0};
  s.xi = xi;
  s.mass = mass;
  s.hbar = hbar;
  return s;
}

LaserSystem LaserSystem::three_level(ThreeLevelConfig config, double va,
                                     double vb, double xi, double mass,
                                     double hbar) {
  LaserSystem s;
  s.n_levels = 3;
  s.coupling.assign(9, 0.0);
  s.xi = xi;
  s.mass = mass;
  s.hbar = hbar;
  auto set = [&s](int i, int j, double v) {
    s.coupling[i * 3 + j] = v;
    s.coupling[j * 3 + i] = v;
  };
  switch (config) {
    case ThreeLevelConfig::ladder:  // va = V12, vb = V23
      set(0, 1, va);
      set(1, 2, vb);
      break;
    case ThreeLevelConfig::vee:  // va = V12, vb = V13
      set(0, 1, va);
      set(0, 2, vb);
      break;
    case ThreeLevelConfig::lambda:  // va = V13, vb = V23
      set(0, 2, va);
      set(1, 2, vb);
      break;
  }
  return s;
}

LaserSystem LaserSystem::star(const std::vector<double>& spokes, int hub,
                              double xi, double mass, double hbar) {
  const int n = static_cast<int>(spokes.size()) + 1;
  if (n < 2 || hub < 0 || hub >= n) {
    throw std::invalid_argument("LaserSystem::star: bad hub or size");
  }
  LaserSystem s;
  s.n_levels = n;
  s.coupling.assign(static_cast<std::size_t>(n) * n, 0.0);
  s.xi = xi;
  s.mass = mass;
  s.hbar = hbar;
  int spoke = 0;
  for (int i = 0; i < n; ++i) {
    if (i == hub) continue;
    s.coupling[i * n + hub] = spokes[spoke];
    s.coupling[hub * n + i] = spokes[spoke];
    ++spoke;
  }
  return s;
}

int LaserSystem::find_hub() const {
  const int n = n_levels;
  if (n == 2) return 0;
  // The hub is a level touching every nonzero coupling.
  for (int candidate = 0; candidate < n; ++candidate) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n && ok; ++j) {
        if (v(i, j) != 0.0 && i != candidate && j != candidate) ok = false;
      }
    }
    if (ok) return candidate;
  }
  throw std::invalid_argument("LaserSystem: coupling is not star-shaped");
}

std::vector<double> LaserSystem::spoke_strengths(int hub) const {
  std::vector<double> out;
  out.reserve(n_levels - 1);
  for (int i = 0; i < n_levels; ++i) {
    if (i != hub) out.push_back(v(i, hub));
  }
  return out;
}

Complex free_kernel(double x, double t, double xp, double tp, double mass,
                    double hbar) {
  require_dt(t, tp);
  const double dt = t - tp;
  const Complex pref = std::sqrt(mass / (2.0 * kPi * Complex(0.0, 1.0) * hbar * dt));
  const double dx = x - xp;
  return pref * std::exp(Complex(0.0, mass * dx * dx / (2.0 * hbar * dt)));
}

Complex single_delta_kernel(double g, double x, double t, double xp, double tp,
                            double xi, double mass, double hbar) {
  require_dt(t, tp);
  const double d = image_distance(x, xp, xi);
  const double tau = hbar * (t - tp) / mass;
  const Complex kappa(0.0, -mass * g / (hbar * hbar));
  return free_kernel(x, t, xp, tp, mass, hbar) -
         (mass * g / (hbar * hbar)) * specfun::moshinsky(d, kappa, tau);
}

KernelMatrix two_level_kernel(const LaserSystem& sys, double x, double t,
                              double xp, double tp) {
  require_dt(t, tp);
  if (sys.n_levels != 2 || sys.coupling.size() != 4 ||
      sys.coupling[0] != 0.0 || sys.coupling[3] != 0.0 ||
      sys.coupling[1] != sys.coupling[2]) {
    throw std::invalid_argument("two_level_kernel: coupling must be [[0,V0],[V0,0]]");
  }
  const double v0 = sys.v(0, 1);
  const double m = sys.mass, hb = sys.hbar;
  const double d = image_distance(x, xp, sys.xi);
  const double tau = hb * (t - tp) / m;
  const Complex kappa(0.0, -m * v0 / (hb * hb));

  KernelMatrix k = make_matrix(2, x, t, xp, tp);
  const Complex k0 = free_kernel(x, t, xp, tp, m, hb);
  k.at(0, 0) = k0;
  k.at(1, 1) = k0;
  for (int a : {+1, -1}) {
    const Complex mosh =
        specfun::moshinsky(d, static_cast<double>(a) * kappa, tau);
    const Complex term = (m * v0 / (2.0 * hb * hb)) * mosh;
    k.at(0, 0) -= term * static_cast<double>(a);
    k.at(1, 1) -= term * static_cast<double>(a);
    k.at(0, 1) -= term;
    k.at(1, 0) -= term;
  }
  return k;
}

KernelMatrix three_level_kernel(ThreeLevelConfig config, const LaserSystem& sys,
                                double x, double t, double xp, double tp) {
  require_dt(t, tp);
  if (sys.n_levels != 3) {
    throw std::invalid_argument("three_level_kernel: need 3 levels");
  }
  int hub = -1;
  switch (config) {
    case ThreeLevelConfig::ladder:
      hub = 1;
      break;
    case ThreeLevelConfig::vee:
      hub = 0;
      break;
    case ThreeLevelConfig::lambda:
      hub = 2;
      break;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (i != hub && j != hub && sys.v(i, j) != 0.0) {
        throw std::invalid_argument("three_level_kernel: coupling sparsity mismatch");
      }
    }
  }
  double vm2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (i != hub) vm2 += sys.v(i, hub) * sys.v(i, hub);
  }
  if (vm2 == 0.0) {
    KernelMatrix k = make_matrix(3, x, t, xp, tp);
    const Complex k0 = free_kernel(x, t, xp, tp, sys.mass, sys.hbar);
    for (int i = 0; i < 3; ++i) k.at(i, i) = k0;
    return k;
  }
  // All three configurations are stars; the star form reproduces the
  // printed 3x3 matrices entry by entry.
  return star_kernel(sys, x, t, xp, tp);
}

KernelMatrix star_kernel(const LaserSystem& sys, double x, double t, double xp,
                         double tp) {
  require_dt(t, tp);
  const int n = sys.n_levels;
  const int hub = sys.find_hub();
  const std::vector<double> vs = sys.spoke_strengths(hub);
  double vm2 = 0.0;
  for (double v : vs) vm2 += v * v;
  const double vm = std::sqrt(vm2);
  if (vm == 0.0) {
    throw std::domain_error("star_kernel: all spoke strengths zero (V_m = 0)");
  }

  const double m = sys.mass, hb = sys.hbar;
  const double d = image_distance(x, xp, sys.xi);
  const double tau = hb * (t - tp) / m;

  KernelMatrix k = make_matrix(n, x, t, xp, tp);
  const Complex k0 = free_kernel(x, t, xp, tp, m, hb);
  for (int i = 0; i < n; ++i) k.at(i, i) = k0;

  // Spoke strengths indexed by level for readable entry formulas.
  std::vector<double> vlev(n, 0.0);
  {
    int s = 0;
    for (int i = 0; i < n; ++i) {
      if (i != hub) vlev[i] = vs[s++];
    }
  }

  for (int a : {+1, -1}) {
    const Complex karg(0.0, -a * m * vm / (hb * hb));
    const Complex pref =
        (m / (2.0 * hb * hb * vm)) * specfun::moshinsky(d, karg, tau);
    for (int i = 0; i < n; ++i) {
      for (int kk = 0; kk < n; ++kk) {
        double entry;
        if (i == hub && kk == hub) {
          entry = a * vm2;
        } else if (i == hub) {
          entry = vlev[kk] * vm;
        } else if (kk == hub) {
          entry = vlev[i] * vm;
        } else {
          entry = a * vlev[i] * vlev[kk];
        }
        k.at(i, kk) -= pref * entry;
      }
    }
  }
  return k;
}

KernelMatrix mirror_kernel(const LaserSystem& sys, std::pair<int, int> hard_pair,
                           double x, double t, double xp, double tp) {
  require_dt(t, tp);
  const int n = sys.n_levels;
  KernelMatrix k = make_matrix(n, x, t, xp, tp);
  const Complex k0 = free_kernel(x, t, xp, tp, sys.mass, sys.hbar);
  const double d = image_distance(x, xp, sys.xi);
  const Complex image = free_kernel(d, t, 0.0, tp, sys.mass, sys.hbar);
  for (int i = 0; i < n; ++i) {
    k.at(i, i) = k0;
    if (i == hard_pair.first || i == hard_pair.second) {
      k.at(i, i) -= image;
    }
  }
  return k;
}

KernelMatrix two_strong_kernel(const LaserSystem& sys, std::pair<int, int> pair,
                               int hub, double c, double x, double t, double xp,
                               double tp) {
  require_dt(t, tp);
  if (!(c > 0.0)) {
    throw std::invalid_argument("two_strong_kernel: ratio c must be positive");
  }
  const auto [l, n_lvl] = pair;
  if (l >= n_lvl || l == hub || n_lvl == hub) {
    throw std::invalid_argument("two_strong_kernel: need l < n, both != hub");
  }
  const int n = sys.n_levels;
  KernelMatrix k = make_matrix(n, x, t, xp, tp);
  const Complex k0 = free_kernel(x, t, xp, tp, sys.mass, sys.hbar);
  const double d = image_distance(x, xp, sys.xi);
  const Complex image = free_kernel(d, t, 0.0, tp, sys.mass, sys.hbar);

  // Projector onto the driven spoke combination (c|l> + |n>)/sqrt(1+c^2);
  // the hub is totally reflected.  (The printed strong-ratio matrix with
  // 1/sqrt(1+c^2) entries does not reproduce the V -> infinity limit of
  // the star kernel; this normalisation does.  See ERRATA.md.)
  const double norm = 1.0 + c * c;
  for (int i = 0; i < n; ++i) k.at(i, i) = k0;
  k.at(hub, hub) -= image;
  k.at(l, l) -= image * (c * c / norm);
  k.at(n_lvl, n_lvl) -= image * (1.0 / norm);
  k.at(l, n_lvl) -= image * (c / norm);
  k.at(n_lvl, l) -= image * (c / norm);
  return k;
}

StarEigensystem star_eigensystem(const LaserSystem& sys) {
  const int n = sys.n_levels;
  const int hub = sys.find_hub();
  const std::vector<double> vs = sys.spoke_strengths(hub);
  double vm2 = 0.0;
  for (double v : vs) vm2 += v * v;
  const double vm = std::sqrt(vm2);

  StarEigensystem es;
  std::vector<int> spokes;
  for (int i = 0; i < n; ++i) {
    if (i != hub) spokes.push_back(i);
  }

  if (vm == 0.0) {
    es.values.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      std::vector<double> e(n, 0.0);
      e[i] = 1.0;
      es.vecs.push_back(std::move(e));
    }
    return es;
  }

  // Unit spoke vector in level coordinates.
  std::vector<double> vhat(n, 0.0);
  for (std::size_t s = 0; s < spokes.size(); ++s) {
    vhat[spokes[s]] = vs[s] / vm;
  }

  // +-V_m channels: (|hub> +- vhat)/sqrt(2).
  for (int a : {+1, -1}) {
    std::vector<double> e(n, 0.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    e[hub] = inv_sqrt2;
    for (int i : spokes) e[i] = a * vhat[i] * inv_sqrt2;
    es.values.push_back(a * vm);
    es.vecs.push_back(std::move(e));
  }

  // Null space: Gram-Schmidt of the spoke unit vectors against vhat and
  // previously accepted null vectors.
  for (int i : spokes) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    double dot = 0.0;
    for (int j = 0; j < n; ++j) dot += e[j] * vhat[j];
    for (int j = 0; j < n; ++j) e[j] -= dot * vhat[j];
    for (std::size_t v = 2; v < es.vecs.size(); ++v) {
      double d2 = 0.0;
      for (int j = 0; j < n; ++j) d2 += e[j] * es.vecs[v][j];
      for (int j = 0; j < n; ++j) e[j] -= d2 * es.vecs[v][j];
    }
    double nrm = 0.0;
    for (double c : e) nrm += c * c;
    nrm = std::sqrt(nrm);
    if (nrm > 1e-10) {
      for (double& c : e) c /= nrm;
      es.values.push_back(0.0);
      es.vecs.push_back(std::move(e));
    }
    if (static_cast<int>(es.vecs.size()) == n) break;
  }
  if (static_cast<int>(es.vecs.size()) != n) {
    throw std::logic_error("star_eigensystem: incomplete basis");
  }
  return es;
}

KernelMatrix spectral_kernel(const LaserSystem& sys, double x, double t,
                             double xp, double tp) {
  require_dt(t, tp);
  const int n = sys.n_levels;
  const StarEigensystem es = star_eigensystem(sys);
  KernelMatrix k = make_matrix(n, x, t, xp, tp);
  for (int ch = 0; ch < n; ++ch) {
    const Complex kch = single_delta_kernel(es.values[ch], x, t, xp, tp, sys.xi,
                                            sys.mass, sys.hbar);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        k.at(i, j) += es.vecs[ch][i] * es.vecs[ch][j] * kch;
      }
    }
  }
  return k;
}

}  // namespace deltaprop::kernels
