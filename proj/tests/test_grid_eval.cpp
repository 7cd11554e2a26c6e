#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "deltaprop/dynamics.hpp"
#include "deltaprop/grid_eval.hpp"
#include "deltaprop/kernels.hpp"

using namespace deltaprop;
using kernels::LaserSystem;

TEST_CASE("linspace") {
  const auto v = grid_eval::linspace(-1.0, 1.0, 5);
  REQUIRE(v.size() == 5);
  CHECK(v.front() == -1.0);
  CHECK(v.back() == 1.0);
  CHECK(v[2] == 0.0);
  CHECK(grid_eval::linspace(3.0, 9.0, 1) == std::vector<double>{3.0});
}

TEST_CASE("parallel and serial kernel grids are bitwise identical") {
  const auto sys = LaserSystem::three_level(kernels::ThreeLevelConfig::vee, 0.8,
                                            1.1, 0.3);
  auto kernel = [&](double x, double t, double xp, double tp) {
    return kernels::spectral_kernel(sys, x, t, xp, tp);
  };
  const auto xs = grid_eval::linspace(-2.0, 2.0, 17);
  const auto xps = grid_eval::linspace(-1.5, 1.5, 13);
  const std::vector<double> ts = {0.4, 1.1};
  const auto par = grid_eval::kernel_grid(kernel, xs, xps, ts);
  const auto ser = grid_eval::kernel_grid_serial(kernel, xs, xps, ts);
  REQUIRE(par.size() == ser.size());
  REQUIRE(par.size() == xs.size() * xps.size() * ts.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].x == ser[i].x);
    CHECK(par[i].t == ser[i].t);
    CHECK(par[i].xp == ser[i].xp);
    for (std::size_t e = 0; e < par[i].entries.size(); ++e) {
      CHECK(par[i].entries[e] == ser[i].entries[e]);
    }
  }
}

TEST_CASE("grid layout is t slowest, then x, then xp") {
  auto kernel = [](double x, double t, double xp, double) {
    kernels::KernelMatrix m;
    m.n = 1;
    m.entries = {std::complex<double>(x, xp)};
    m.x = x;
    m.t = t;
    m.xp = xp;
    return m;
  };
  const std::vector<double> xs = {0.0, 1.0}, xps = {10.0, 11.0, 12.0},
                            ts = {0.5, 0.7};
  const auto out = grid_eval::kernel_grid_serial(kernel, xs, xps, ts);
  REQUIRE(out.size() == 12);
  CHECK(out[0].t == 0.5);
  CHECK(out[0].x == 0.0);
  CHECK(out[0].xp == 10.0);
  CHECK(out[1].xp == 11.0);
  CHECK(out[3].x == 1.0);
  CHECK(out[6].t == 0.7);
}

TEST_CASE("parallel and serial field grids are bitwise identical") {
  dynamics::ShutterScenario sc;
  sc.k = 1.2;
  sc.sys = LaserSystem::two_level(0.8, 1.5);
  auto field = [&](double x, double t) {
    return dynamics::shutter_with_laser(x, t, sc);
  };
  const auto xs = grid_eval::linspace(-4.0, 6.0, 101);
  const auto par = grid_eval::field_grid(field, xs, 1.3);
  const auto ser = grid_eval::field_grid_serial(field, xs, 1.3);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i][0] == ser[i][0]);
    CHECK(par[i][1] == ser[i][1]);
  }
}
