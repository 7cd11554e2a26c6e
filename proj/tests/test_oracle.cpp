#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "deltaprop/kernels.hpp"
#include "deltaprop/oracle.hpp"

using namespace deltaprop;
using kernels::LaserSystem;
using Complex = std::complex<double>;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

oracle::GridState gaussian(const oracle::GridSpec& g, int nl, double x0,
                           double width, double k0) {
  oracle::GridState st;
  st.grid = g;
  st.n_levels = nl;
  st.psi.assign(static_cast<std::size_t>(nl) * g.n_points, 0.0);
  const double norm = std::pow(kPi * width * width, -0.25);
  for (int i = 0; i < g.n_points; ++i) {
    const double u = (g.x(i) - x0) / width;
    st.at(0, i) =
        norm * std::exp(-0.5 * u * u) * std::exp(Complex(0, k0 * g.x(i)));
  }
  return st;
}

}  // namespace

TEST_CASE("input validation") {
  oracle::GridSpec g;
  g.n_points = 64;
  g.sigma = 1e-6;  // unresolvable
  auto st = gaussian(g, 2, 0.0, 1.0, 0.0);
  const auto sys = LaserSystem::two_level(1.0, 0.0);
  CHECK_THROWS_AS(oracle::evolve_tdse(st, sys, 1.0), std::invalid_argument);
  g.sigma = 2.0;
  g.dt = 0.0;
  st.grid = g;
  CHECK_THROWS_AS(oracle::evolve_tdse(st, sys, 1.0), std::invalid_argument);
  g.dt = 0.01;
  st.grid = g;
  CHECK_THROWS_AS(oracle::evolve_tdse(st, sys, -1.0), std::invalid_argument);
  const auto sys3 = LaserSystem::star({1.0, 1.0}, 0, 0.0);
  CHECK_THROWS_AS(oracle::evolve_tdse(st, sys3, 1.0), std::invalid_argument);
}

TEST_CASE("free gaussian spreads analytically") {
  oracle::GridSpec g;
  g.x_min = -40.0;
  g.x_max = 40.0;
  g.n_points = 2048;
  g.dt = 0.01;
  const auto init = gaussian(g, 1, 0.0, 1.0, 2.0);
  LaserSystem sys = LaserSystem::two_level(0.0, 0.0);
  sys.n_levels = 1;
  sys.coupling = {0.0};
  const double t = 2.0;
  const auto fin = oracle::evolve_tdse(init, sys, t);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < g.n_points; ++i) {
    const double x = g.x(i);
    const Complex a(1.0, t);
    const double xc = x - 2.0 * t;
    const Complex ref = std::pow(kPi, -0.25) / std::sqrt(a) *
                        std::exp(-0.5 * xc * xc / a +
                                 Complex(0, 2.0 * x - 2.0 * t));
    num += std::norm(fin.at(0, i) - ref);
    den += std::norm(ref);
  }
  CHECK(std::sqrt(num / den) < 1e-6);
}

TEST_CASE("norm is conserved with reflecting walls and the laser on") {
  oracle::GridSpec g;
  g.x_min = -20.0;
  g.x_max = 20.0;
  g.n_points = 512;
  g.dt = 1e-3;
  g.sigma = 0.3;
  const auto init = gaussian(g, 2, -5.0, 1.0, 3.0);
  const auto sys = LaserSystem::two_level(1.0, 0.0);
  oracle::TdseStats stats;
  const auto fin = oracle::evolve_tdse(init, sys, 1.0, {}, &stats);
  CHECK(std::abs(fin.norm() - init.norm()) < 1e-10);
  CHECK(stats.steps == 1000);
  CHECK(stats.max_norm_drift < 1e-12);
}

TEST_CASE("fractional final step lands exactly on t_final") {
  oracle::GridSpec g;
  g.x_min = -20.0;
  g.x_max = 20.0;
  g.n_points = 256;
  g.dt = 0.3;
  g.sigma = 0.5;
  const auto init = gaussian(g, 2, -5.0, 2.0, 0.0);
  const auto sys = LaserSystem::two_level(0.5, 0.0);
  const auto fin = oracle::evolve_tdse(init, sys, 1.0);
  CHECK(fin.t == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sentinel probes flag wall contamination") {
  oracle::GridSpec g;
  g.x_min = -6.0;
  g.x_max = 6.0;
  g.n_points = 256;
  g.dt = 1e-3;
  g.sigma = 0.3;
  const auto init = gaussian(g, 2, 0.0, 1.0, 4.0);  // runs into the wall
  const auto sys = LaserSystem::two_level(0.5, 0.0);
  CHECK_THROWS_AS(oracle::evolve_tdse(init, sys, 3.0), std::runtime_error);
}

TEST_CASE("quadrature convergence guard fires on an unresolved integrand") {
  oracle::GridSpec g;
  g.x_min = -6.0;
  g.x_max = 6.0;
  g.n_points = 101;  // far too coarse for k0 = 40
  const auto init = gaussian(g, 1, 0.0, 1.0, 40.0);
  auto kernel = [](double x, double t, double xp, double tp) {
    kernels::KernelMatrix m;
    m.n = 1;
    m.entries = {kernels::free_kernel(x, t, xp, tp)};
    return m;
  };
  CHECK_THROWS_AS(oracle::quadrature_field(kernel, init, 0.3, {0.0, 12.0}, 1e-6),
                  std::runtime_error);
}

TEST_CASE("quadrature of the free kernel reproduces the gaussian") {
  oracle::GridSpec g;
  g.x_min = -8.0;
  g.x_max = 8.0;
  g.n_points = 4001;
  const auto init = gaussian(g, 1, 0.0, 1.0, 1.0);
  auto kernel = [](double x, double t, double xp, double tp) {
    kernels::KernelMatrix m;
    m.n = 1;
    m.entries = {kernels::free_kernel(x, t, xp, tp)};
    return m;
  };
  const double t = 0.7;
  const auto got = oracle::quadrature_field(kernel, init, t, {-1.0, 0.4, 2.0});
  const std::vector<double> probes = {-1.0, 0.4, 2.0};
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double x = probes[i];
    const Complex a(1.0, t);
    const double xc = x - t;
    const Complex ref = std::pow(kPi, -0.25) / std::sqrt(a) *
                        std::exp(-0.5 * xc * xc / a + Complex(0, x - 0.5 * t));
    CHECK(std::abs(got[i][0] - ref) < 1e-8);
  }
}

TEST_CASE("grid state norm uses the trapezoid rule") {
  oracle::GridSpec g;
  g.x_min = 0.0;
  g.x_max = 1.0;
  g.n_points = 101;
  oracle::GridState st;
  st.grid = g;
  st.n_levels = 1;
  st.psi.assign(101, Complex(1.0, 0.0));
  CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-14));
}
