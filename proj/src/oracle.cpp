#include "deltaprop/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace deltaprop::oracle {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Cyclic Jacobi eigensolver for small symmetric matrices (levels <= ~8).
// Kept independent of the closed-form star eigendecomposition used by the
// spectral route.
struct SmallEigensystem {
  std::vector<double> values;
  std::vector<double> vectors;  // column c = eigenvector c, row-major a[i*n+c]
};

SmallEigensystem jacobi_eigensystem(std::vector<double> a, int n) {
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double sign = theta >= 0.0 ? 1.0 : -1.0;
        const double tt = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(tt * tt + 1.0);
        const double s = tt * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a[i * n + p], aiq = a[i * n + q];
          a[i * n + p] = c * aip - s * aiq;
          a[i * n + q] = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a[p * n + i], aqi = a[q * n + i];
          a[p * n + i] = c * api - s * aqi;
          a[q * n + i] = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v[i * n + p], viq = v[i * n + q];
          v[i * n + p] = c * vip - s * viq;
          v[i * n + q] = s * vip + c * viq;
        }
      }
    }
  }
  SmallEigensystem es;
  es.values.resize(n);
  for (int i = 0; i < n; ++i) es.values[i] = a[i * n + i];
  es.vectors = std::move(v);
  return es;
}

struct FftwPlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

double absorber(double u) {
  // cos^(1/8) profile: flat in the interior, zero at the wall.
  return std::pow(std::cos(0.5 * kPi * u), 0.125);
}

}  // namespace

double GridState::norm() const {
  const int n = grid.n_points;
  double sum = 0.0;
  for (int ch = 0; ch < n_levels; ++ch) {
    for (int i = 0; i < n; ++i) {
      double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      sum += w * std::norm(at(ch, i));
    }
  }
  return std::sqrt(sum * grid.dx());
}

GridState evolve_tdse(const GridState& initial, const kernels::LaserSystem& sys,
                      double t_final, const TdseOptions& options,
                      TdseStats* stats) {
  const GridSpec& g = initial.grid;
  const int n = g.n_points;
  const int nl = initial.n_levels;
  if (n < 2) throw std::invalid_argument("evolve_tdse: n_points >= 2 required");
  if (!(g.dt > 0.0)) throw std::invalid_argument("evolve_tdse: dt must be positive");
  if (g.sigma < 2.0 * g.dx()) {
    throw std::invalid_argument("evolve_tdse: sigma must be >= 2 grid spacings");
  }
  if (!(t_final > initial.t)) {
    throw std::invalid_argument("evolve_tdse: t_final must exceed initial time");
  }
  if (nl != sys.n_levels) {
    throw std::invalid_argument("evolve_tdse: channel count mismatch");
  }

  const double hbar = sys.hbar, mass = sys.mass;
  GridState state = initial;

  // Kinetic phases in the reflecting (sine) or periodic (Fourier) basis.
  const bool reflecting = options.boundary == Boundary::reflecting;
  std::vector<Complex> kin(n);
  const double h = g.dx();
  if (reflecting) {
    const double wall_span = (n + 1) * h;  // Dirichlet walls half a cell outside
    for (int k = 0; k < n; ++k) {
      const double kap = kPi * (k + 1) / wall_span;
      kin[k] = std::exp(Complex(0.0, -hbar * kap * kap * g.dt / (2.0 * mass)));
    }
  } else {
    const double span = n * h;
    for (int k = 0; k < n; ++k) {
      const double m = (k <= n / 2) ? k : k - n;
      const double kap = 2.0 * kPi * m / span;
      kin[k] = std::exp(Complex(0.0, -hbar * kap * kap * g.dt / (2.0 * mass)));
    }
  }

  // Coupling eigensystem for the exact potential half-step.
  const SmallEigensystem es = jacobi_eigensystem(sys.coupling, nl);

  // Regularized delta weights; the Gaussian support is cut at +-10 sigma.
  std::vector<double> delta_w(n, 0.0);
  int i_lo = n, i_hi = -1;
  for (int i = 0; i < n; ++i) {
    const double u = (g.x(i) - sys.xi) / g.sigma;
    if (std::abs(u) < 10.0) {
      delta_w[i] = std::exp(-0.5 * u * u) / (g.sigma * std::sqrt(2.0 * kPi));
      i_lo = std::min(i_lo, i);
      i_hi = std::max(i_hi, i);
    }
  }

  // Absorbing mask.
  std::vector<double> mask;
  if (!reflecting && options.mask_width > 0.0) {
    mask.assign(n, 1.0);
    for (int i = 0; i < n; ++i) {
      const double dl = g.x(i) - g.x_min;
      const double dr = g.x_max - g.x(i);
      const double d = std::min(dl, dr);
      if (d < options.mask_width) mask[i] = absorber(1.0 - d / options.mask_width);
    }
  }

  // FFTW workspace.
  std::vector<double> re(n), im(n);
  std::vector<Complex> cbuf(n);
  std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan_r2r, plan_fwd, plan_bwd;
  if (reflecting) {
    plan_r2r.reset(fftw_plan_r2r_1d(n, re.data(), re.data(), FFTW_RODFT00,
                                    FFTW_ESTIMATE));
  } else {
    auto* cptr = reinterpret_cast<fftw_complex*>(cbuf.data());
    plan_fwd.reset(fftw_plan_dft_1d(n, cptr, cptr, FFTW_FORWARD, FFTW_ESTIMATE));
    plan_bwd.reset(fftw_plan_dft_1d(n, cptr, cptr, FFTW_BACKWARD, FFTW_ESTIMATE));
  }

  auto kinetic_step = [&](int ch) {
    Complex* psi = &state.psi[static_cast<std::size_t>(ch) * n];
    if (reflecting) {
      for (int i = 0; i < n; ++i) {
        re[i] = psi[i].real();
        im[i] = psi[i].imag();
      }
      fftw_execute_r2r(plan_r2r.get(), re.data(), re.data());
      fftw_execute_r2r(plan_r2r.get(), im.data(), im.data());
      const double scale = 1.0 / (2.0 * (n + 1));
      for (int k = 0; k < n; ++k) {
        const Complex c = Complex(re[k], im[k]) * kin[k] * scale;
        re[k] = c.real();
        im[k] = c.imag();
      }
      fftw_execute_r2r(plan_r2r.get(), re.data(), re.data());
      fftw_execute_r2r(plan_r2r.get(), im.data(), im.data());
      for (int i = 0; i < n; ++i) psi[i] = Complex(re[i], im[i]);
    } else {
      std::copy(psi, psi + n, cbuf.begin());
      fftw_execute(plan_fwd.get());
      const double scale = 1.0 / n;
      for (int k = 0; k < n; ++k) cbuf[k] *= kin[k] * scale;
      fftw_execute(plan_bwd.get());
      std::copy(cbuf.begin(), cbuf.end(), psi);
    }
  };

  std::vector<Complex> tmp(nl), rot(nl);
  auto potential_half_step = [&](double step) {
    for (int i = i_lo; i <= i_hi; ++i) {
      const double w = delta_w[i];
      if (w == 0.0) continue;
      for (int c = 0; c < nl; ++c) {
        rot[c] = 0.0;
        for (int r = 0; r < nl; ++r) rot[c] += es.vectors[r * nl + c] * state.at(r, i);
        rot[c] *= std::exp(Complex(0.0, -es.values[c] * w * 0.5 * step / hbar));
      }
      for (int r = 0; r < nl; ++r) {
        tmp[r] = 0.0;
        for (int c = 0; c < nl; ++c) tmp[r] += es.vectors[r * nl + c] * rot[c];
        state.at(r, i) = tmp[r];
      }
    }
  };

  TdseStats local;
  double prev_norm = reflecting ? state.norm() : 0.0;
  const int sentinel_cells = std::max(2, n / 200);

  double t = initial.t;
  while (t < t_final - 1e-15 * std::max(1.0, std::abs(t_final))) {
    // Steps land exactly on t_final; the last fractional step reuses the
    // same phases only when it is a full dt, otherwise rebuilds them.
    double step = std::min(g.dt, t_final - t);
    if (step < g.dt * (1.0 - 1e-12)) {
      if (reflecting) {
        const double wall_span = (n + 1) * h;
        for (int k = 0; k < n; ++k) {
          const double kap = kPi * (k + 1) / wall_span;
          kin[k] = std::exp(Complex(0.0, -hbar * kap * kap * step / (2.0 * mass)));
        }
      } else {
        const double span = n * h;
        for (int k = 0; k < n; ++k) {
          const double m = (k <= n / 2) ? k : k - n;
          const double kap = 2.0 * kPi * m / span;
          kin[k] = std::exp(Complex(0.0, -hbar * kap * kap * step / (2.0 * mass)));
        }
      }
    }
    potential_half_step(step);
    for (int ch = 0; ch < nl; ++ch) kinetic_step(ch);
    potential_half_step(step);
    if (!mask.empty()) {
      for (int ch = 0; ch < nl; ++ch) {
        Complex* psi = &state.psi[static_cast<std::size_t>(ch) * n];
        for (int i = 0; i < n; ++i) psi[i] *= mask[i];
      }
    }
    t += step;
    state.t = t;
    ++local.steps;

    if (reflecting) {
      const double nn = state.norm();
      local.max_norm_drift =
          std::max(local.max_norm_drift, std::abs(nn - prev_norm));
      prev_norm = nn;
    }
    if (options.check_sentinel) {
      // Probe just inside the usable region.
      int probe_lo = 0, probe_hi = n - 1;
      if (!mask.empty()) {
        const int skip = static_cast<int>(options.mask_width / h) + 1;
        probe_lo = skip;
        probe_hi = n - 1 - skip;
      }
      for (int c = 0; c < nl; ++c) {
        for (int i = 0; i < sentinel_cells; ++i) {
          local.sentinel_max = std::max(local.sentinel_max,
                                        std::norm(state.at(c, probe_lo + i)));
          local.sentinel_max = std::max(local.sentinel_max,
                                        std::norm(state.at(c, probe_hi - i)));
        }
      }
    }
  }

  if (options.check_sentinel && local.sentinel_max > options.sentinel_threshold) {
    throw std::runtime_error("evolve_tdse: boundary contamination detected by sentinel probes");
  }
  if (stats) *stats = local;
  return state;
}

std::vector<std::vector<Complex>> quadrature_field(
    const KernelEvaluator& kernel, const GridState& initial, double t,
    const std::vector<double>& xs_out, double rel_tol, bool parallel) {
  const GridSpec& g = initial.grid;
  const int n = g.n_points;
  const int nl = initial.n_levels;
  const double h = g.dx();
  const int n_out = static_cast<int>(xs_out.size());

  // Composite Simpson weights (trapezoid patch on the last interval when
  // the point count is even; the initial state is compactly supported so
  // the edge samples are ~0 anyway).
  std::vector<double> w(n, 0.0);
  const int last = (n % 2 == 1) ? n - 1 : n - 2;
  for (int j = 0; j < last; j += 2) {
    w[j] += h / 3.0;
    w[j + 1] += 4.0 * h / 3.0;
    w[j + 2] += h / 3.0;
  }
  if (n % 2 == 0) {
    w[n - 2] += h / 2.0;
    w[n - 1] += h / 2.0;
  }
  // Coarse rule on every other sample, for the convergence estimate.
  std::vector<double> wc(n, 0.0);
  for (int j = 0; j + 4 < n + 1; j += 4) {
    wc[j] += 2.0 * h / 3.0;
    wc[j + 2] += 8.0 * h / 3.0;
    wc[j + 4] += 2.0 * h / 3.0;
  }

  std::vector<std::vector<Complex>> out(n_out, std::vector<Complex>(nl, 0.0));
  std::vector<std::vector<Complex>> coarse(n_out, std::vector<Complex>(nl, 0.0));

#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (int i = 0; i < n_out; ++i) {
    std::vector<Complex> acc(nl, 0.0), acc_c(nl, 0.0);
    for (int j = 0; j < n; ++j) {
      if (w[j] == 0.0 && wc[j] == 0.0) continue;
      bool skip = true;
      for (int c = 0; c < nl; ++c) {
        if (initial.at(c, j) != Complex(0.0, 0.0)) skip = false;
      }
      if (skip) continue;
      const kernels::KernelMatrix km = kernel(xs_out[i], t, g.x(j), initial.t);
      for (int r = 0; r < nl; ++r) {
        Complex s = 0.0;
        for (int c = 0; c < nl; ++c) s += km(r, c) * initial.at(c, j);
        acc[r] += w[j] * s;
        acc_c[r] += wc[j] * s;
      }
    }
    out[i] = acc;
    coarse[i] = acc_c;
  }

  double num = 0.0, den = 0.0;
  for (int i = 0; i < n_out; ++i) {
    for (int r = 0; r < nl; ++r) {
      num += std::norm(out[i][r] - coarse[i][r]);
      den += std::norm(out[i][r]);
    }
  }
  if (den > 0.0 && std::sqrt(num / den) > rel_tol) {
    throw std::runtime_error("quadrature_field: quadrature has not converged");
  }
  return out;
}

GridState quadrature_propagate(const KernelEvaluator& kernel,
                               const GridState& initial, double t,
                               double rel_tol, bool parallel) {
  const GridSpec& g = initial.grid;
  const int n = g.n_points;
  const int nl = initial.n_levels;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = g.x(i);
  const auto field = quadrature_field(kernel, initial, t, xs, rel_tol, parallel);
  GridState out = initial;
  out.t = t;
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < nl; ++r) {
      out.psi[static_cast<std::size_t>(r) * n + i] = field[i][r];
    }
  }
  return out;
}

}  // namespace deltaprop::oracle
