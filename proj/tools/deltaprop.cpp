// Command line front end: kernel and closed-form field evaluation over
// grids, figure-data emission, invariant verification, and grid-solver
// certification runs.
//
// Exit codes: 0 success, 1 configuration/validation error, 2 numerical
// failure during evaluation.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "deltaprop/config.hpp"
#include "deltaprop/csv.hpp"
#include "deltaprop/dynamics.hpp"
#include "deltaprop/grid_eval.hpp"
#include "deltaprop/kernels.hpp"
#include "deltaprop/oracle.hpp"
#include "deltaprop/units.hpp"
#include "deltaprop/verify.hpp"

namespace {

using namespace deltaprop;
using config::RunConfig;
using kernels::LaserSystem;
using units::Dimension;
using units::UnitSystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Physical constants pinned in the repository constants file; compiled-in
// CODATA defaults are the fallback when the file is absent (installed
// binary run outside the source tree).
units::Constants pinned_constants() {
#ifdef DELTAPROP_CONSTANTS_FILE
  if (std::ifstream(DELTAPROP_CONSTANTS_FILE).good()) {
    return units::load_constants(DELTAPROP_CONSTANTS_FILE);
  }
#endif
  return units::Constants{};
}

// Converts config values to natural units.  In SI mode every quantity is
// given in base SI units (m, s, m/s, 1/m, J*m) and mapped through the
// 87Rb-on-microns unit system; with --natural-units values pass through.
struct Scales {
  bool natural = false;
  UnitSystem u = UnitSystem::rb87_micron(pinned_constants());

  double in(double v, Dimension d) const { return natural ? v : u.to_natural(v, d); }
  double out(double v, Dimension d) const {
    return natural ? v : u.from_natural(v, d);
  }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t pos = 0;
    out.push_back(std::stod(cell, &pos));
  }
  if (out.empty()) throw ConfigError("empty list value");
  return out;
}

RunConfig load_config(const std::string& path) {
  if (path.empty()) throw ConfigError("this command requires --config PATH");
  return RunConfig::load(path);
}

void require_positive(double v, const std::string& name) {
  if (!(v > 0.0)) throw ConfigError("config: " + name + " must be positive");
}

std::vector<double> grid_axis(const RunConfig& cfg, const Scales& sc,
                              const std::string& prefix, Dimension d) {
  const double lo = sc.in(cfg.number(prefix + "_min"), d);
  const double hi = sc.in(cfg.number(prefix + "_max"), d);
  const int n = cfg.integer("grid.n" + prefix.substr(prefix.find('.') + 1));
  if (n < 1) throw ConfigError("config: grid point count must be >= 1");
  if (n > 1 && !(hi > lo)) throw ConfigError("config: empty grid range " + prefix);
  return grid_eval::linspace(lo, hi, n);
}

std::vector<double> time_axis(const RunConfig& cfg, const Scales& sc) {
  std::vector<double> ts;
  if (cfg.has("time.t")) {
    ts = {sc.in(cfg.number("time.t"), Dimension::time)};
  } else {
    const double lo = sc.in(cfg.number("time.t_min"), Dimension::time);
    const double hi = sc.in(cfg.number("time.t_max"), Dimension::time);
    const int n = cfg.integer("time.nt");
    if (n < 1) throw ConfigError("config: time.nt must be >= 1");
    ts = grid_eval::linspace(lo, hi, n);
  }
  for (double t : ts) require_positive(t, "evolution time");
  return ts;
}

// ---- cmd_kernel ----------------------------------------------------------

int cmd_kernel(const std::string& config_path, const std::string& out_path,
               bool natural) {
  Scales sc{natural};
  LaserSystem sys;
  std::function<kernels::KernelMatrix(double, double, double, double)> eval;
  std::vector<double> xs, xps, ts;

  try {
    const RunConfig cfg = load_config(config_path);
    cfg.validate_keys({
        "system.config", "system.xi", "system.v0", "system.va", "system.vb",
        "system.spokes", "system.hub", "system.hard_i", "system.hard_j",
        "system.strong_l", "system.strong_n", "system.ratio",
        "grid.x_min", "grid.x_max", "grid.nx",
        "grid.xp_min", "grid.xp_max", "grid.nxp",
        "time.t", "time.t_min", "time.t_max", "time.nt",
    });
    const std::string name = cfg.str("system.config");
    const double xi = sc.in(cfg.number("system.xi"), Dimension::length);
    auto strength = [&](const std::string& key) {
      return sc.in(cfg.number(key), Dimension::energy_length);
    };

    if (name == "two-level") {
      sys = LaserSystem::two_level(strength("system.v0"), xi);
      eval = [sys](double x, double t, double xp, double tp) {
        return kernels::two_level_kernel(sys, x, t, xp, tp);
      };
    } else if (name == "ladder" || name == "vee" || name == "lambda") {
      const auto cfg3 = name == "ladder" ? kernels::ThreeLevelConfig::ladder
                        : name == "vee"  ? kernels::ThreeLevelConfig::vee
                                         : kernels::ThreeLevelConfig::lambda;
      sys = LaserSystem::three_level(cfg3, strength("system.va"),
                                     strength("system.vb"), xi);
      eval = [sys, cfg3](double x, double t, double xp, double tp) {
        return kernels::three_level_kernel(cfg3, sys, x, t, xp, tp);
      };
    } else if (name == "star") {
      std::vector<double> spokes = parse_list(cfg.str("system.spokes"));
      for (double& s : spokes) s = sc.natural ? s : sc.u.to_natural(s, Dimension::energy_length);
      sys = LaserSystem::star(spokes, cfg.integer("system.hub"), xi);
      eval = [sys](double x, double t, double xp, double tp) {
        return kernels::star_kernel(sys, x, t, xp, tp);
      };
    } else if (name == "mirror") {
      std::vector<double> spokes = parse_list(cfg.str("system.spokes"));
      for (double& s : spokes) s = sc.natural ? s : sc.u.to_natural(s, Dimension::energy_length);
      sys = LaserSystem::star(spokes, cfg.integer("system.hub"), xi);
      const std::pair<int, int> hard = {cfg.integer("system.hard_i"),
                                        cfg.integer("system.hard_j")};
      eval = [sys, hard](double x, double t, double xp, double tp) {
        return kernels::mirror_kernel(sys, hard, x, t, xp, tp);
      };
    } else if (name == "two-strong") {
      std::vector<double> spokes = parse_list(cfg.str("system.spokes"));
      for (double& s : spokes) s = sc.natural ? s : sc.u.to_natural(s, Dimension::energy_length);
      const int hub = cfg.integer("system.hub");
      sys = LaserSystem::star(spokes, hub, xi);
      const std::pair<int, int> pair = {cfg.integer("system.strong_l"),
                                        cfg.integer("system.strong_n")};
      const double ratio = cfg.number("system.ratio");
      eval = [sys, pair, hub, ratio](double x, double t, double xp, double tp) {
        return kernels::two_strong_kernel(sys, pair, hub, ratio, x, t, xp, tp);
      };
    } else {
      throw ConfigError("config: unknown system.config name " + name);
    }

    xs = grid_axis(cfg, sc, "grid.x", Dimension::length);
    xps = grid_axis(cfg, sc, "grid.xp", Dimension::length);
    ts = time_axis(cfg, sc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }

  try {
    const auto grid = grid_eval::kernel_grid(eval, xs, xps, ts);
    csv::Writer w(out_path);
    std::vector<std::string> cols = {"x", "xp", "t"};
    const int n = sys.n_levels;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        cols.push_back("re_K_" + std::to_string(i + 1) + std::to_string(k + 1));
        cols.push_back("im_K_" + std::to_string(i + 1) + std::to_string(k + 1));
      }
    }
    w.header(cols);
    for (const auto& km : grid) {
      std::vector<double> row = {sc.out(km.x, Dimension::length),
                                 sc.out(km.xp, Dimension::length),
                                 sc.out(km.t, Dimension::time)};
      for (const auto& e : km.entries) {
        row.push_back(e.real());
        row.push_back(e.imag());
      }
      w.row(row);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}

// ---- field emission shared by shutter / wavepacket / figure --------------

using FieldFn = std::function<dynamics::Spinor(double x, double t)>;

int emit_field_csv(const std::string& out_path, const Scales& sc,
                   const FieldFn& with_laser, const FieldFn& free_field,
                   const std::vector<double>& xs, const std::vector<double>& ts) {
  try {
    csv::Writer w(out_path);
    w.header({"x", "t", "rho_1", "rho_2", "rho_total", "rho_free"});
    for (double t : ts) {
      const auto field = grid_eval::field_grid(with_laser, xs, t);
      const auto ref = grid_eval::field_grid(free_field, xs, t);
      const auto dens = dynamics::channel_density(field);
      const auto dens_free = dynamics::channel_density(ref);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        w.row({sc.out(xs[i], Dimension::length), sc.out(t, Dimension::time),
               dens.rho1[i], dens.rho2[i], dens.total[i], dens_free.total[i]});
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}

int cmd_shutter(const std::string& config_path, const std::string& out_path,
                bool natural) {
  Scales sc{natural};
  dynamics::ShutterScenario scenario;
  std::vector<double> xs, ts;
  try {
    const RunConfig cfg = load_config(config_path);
    cfg.validate_keys({"beam.k", "system.v0", "system.xi", "grid.x_min",
                       "grid.x_max", "grid.nx", "time.t", "time.t_min",
                       "time.t_max", "time.nt"});
    scenario.k = sc.in(cfg.number("beam.k"), Dimension::wavenumber);
    require_positive(scenario.k, "beam.k");
    scenario.sys = LaserSystem::two_level(
        sc.in(cfg.number("system.v0"), Dimension::energy_length),
        sc.in(cfg.number("system.xi"), Dimension::length));
    xs = grid_axis(cfg, sc, "grid.x", Dimension::length);
    ts = time_axis(cfg, sc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return emit_field_csv(
      out_path, sc,
      [&](double x, double t) { return dynamics::shutter_with_laser(x, t, scenario); },
      [&](double x, double t) { return dynamics::shutter_free(x, t, scenario); },
      xs, ts);
}

int cmd_wavepacket(const std::string& config_path, const std::string& out_path,
                   bool natural) {
  Scales sc{natural};
  dynamics::SinePacketScenario scenario;
  std::vector<double> xs, ts;
  try {
    const RunConfig cfg = load_config(config_path);
    cfg.validate_keys({"packet.length", "packet.n", "packet.q", "system.v0",
                       "system.xi", "grid.x_min", "grid.x_max", "grid.nx",
                       "time.t", "time.t_min", "time.t_max", "time.nt"});
    scenario.length = sc.in(cfg.number("packet.length"), Dimension::length);
    require_positive(scenario.length, "packet.length");
    scenario.n = cfg.integer("packet.n");
    if (scenario.n < 1) throw ConfigError("config: packet.n must be >= 1");
    scenario.q = sc.in(cfg.number("packet.q"), Dimension::wavenumber);
    scenario.sys = LaserSystem::two_level(
        sc.in(cfg.number("system.v0"), Dimension::energy_length),
        sc.in(cfg.number("system.xi"), Dimension::length));
    xs = grid_axis(cfg, sc, "grid.x", Dimension::length);
    ts = time_axis(cfg, sc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return emit_field_csv(
      out_path, sc,
      [&](double x, double t) { return dynamics::sine_packet_with_laser(x, t, scenario); },
      [&](double x, double t) { return dynamics::sine_packet_free(x, t, scenario); },
      xs, ts);
}

int cmd_scatter(const std::string& config_path, const std::string& out_path,
                bool natural) {
  Scales sc{natural};
  std::vector<double> ks;
  double v0 = 0.0;
  try {
    const RunConfig cfg = load_config(config_path);
    cfg.validate_keys({"beam.k", "beam.k_min", "beam.k_max", "beam.nk",
                       "system.v0"});
    v0 = sc.in(cfg.number("system.v0"), Dimension::energy_length);
    if (cfg.has("beam.k")) {
      ks = {sc.in(cfg.number("beam.k"), Dimension::wavenumber)};
    } else {
      ks = grid_eval::linspace(sc.in(cfg.number("beam.k_min"), Dimension::wavenumber),
                               sc.in(cfg.number("beam.k_max"), Dimension::wavenumber),
                               cfg.integer("beam.nk"));
    }
    for (double k : ks) require_positive(k, "beam wavenumber");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  try {
    csv::Writer w(out_path);
    w.header({"k", "r1", "r2", "t1", "t2", "sum"});
    for (double k : ks) {
      const auto s = dynamics::stationary_scattering(k, v0);
      w.row({sc.out(k, Dimension::wavenumber), s.r1, s.r2, s.t1, s.t2, s.sum()});
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}

// ---- cmd_figure ----------------------------------------------------------

int cmd_figure(const std::string& which, const std::string& out_path) {
  // Caption parameters, all SI on the 87Rb / micron / 1 cm/s scale.
  const UnitSystem u = UnitSystem::rb87_micron(pinned_constants());
  const double k = u.to_natural(0.01, Dimension::velocity);  // resonant beam
  Scales sc{true};  // natural = micron/ms scale of the captions

  if (which == "fig3" || which == "fig4") {
    dynamics::ShutterScenario scenario;
    scenario.k = k;
    const double xi = which == "fig3" ? 50.0 : 100.0;
    const double t_si = which == "fig3" ? 50e-3 : 150e-3;
    scenario.sys = LaserSystem::two_level(k, xi);
    const double t = u.to_natural(t_si, Dimension::time);
    const double hi = which == "fig3" ? 800.0 : 1700.0;
    const auto xs = grid_eval::linspace(0.0, hi, static_cast<int>(hi * 2) + 1);
    return emit_field_csv(
        out_path, sc,
        [&](double x, double tt) { return dynamics::shutter_with_laser(x, tt, scenario); },
        [&](double x, double tt) { return dynamics::shutter_free(x, tt, scenario); },
        xs, {t});
  }
  if (which == "fig5") {
    dynamics::ShutterScenario scenario;
    scenario.k = k;
    scenario.sys = LaserSystem::two_level(k, 200.0);
    const auto xs = grid_eval::linspace(0.0, 400.0, 201);
    std::vector<double> ts;
    for (int ms = 2; ms <= 40; ++ms) {
      ts.push_back(u.to_natural(ms * 1e-3, Dimension::time));
    }
    return emit_field_csv(
        out_path, sc,
        [&](double x, double tt) { return dynamics::shutter_with_laser(x, tt, scenario); },
        [&](double x, double tt) { return dynamics::shutter_free(x, tt, scenario); },
        xs, ts);
  }
  if (which == "fig6") {
    dynamics::SinePacketScenario scenario;
    scenario.length = 50.0;
    scenario.n = 1;
    scenario.q = k;
    scenario.sys = LaserSystem::two_level(k, 100.0);
    const double t = u.to_natural(100e-3, Dimension::time);
    const auto xs = grid_eval::linspace(-1100.0, 1300.0, 2401);
    return emit_field_csv(
        out_path, sc,
        [&](double x, double tt) { return dynamics::sine_packet_with_laser(x, tt, scenario); },
        [&](double x, double tt) { return dynamics::sine_packet_free(x, tt, scenario); },
        xs, {t});
  }
  std::fprintf(stderr, "error: unknown figure %s (use fig3..fig6)\n", which.c_str());
  return kExitConfig;
}

// ---- cmd_verify ----------------------------------------------------------

int cmd_verify(const std::string& suite, const std::string& out_path) {
  std::vector<verify::CheckResult> results;
  try {
    const std::string fx = verify::fixtures_dir();
    if (suite == "specfun") {
      results = verify::verify_specfun(fx);
    } else if (suite == "kernels") {
      results = verify::verify_kernels();
    } else if (suite == "dynamics") {
      results = verify::verify_dynamics();
    } else if (suite == "oracle") {
      results = verify::verify_oracle();
    } else if (suite == "all") {
      results = verify::verify_all(fx);
    } else {
      std::fprintf(stderr, "error: unknown suite %s\n", suite.c_str());
      return kExitConfig;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }

  std::ostringstream report;
  report << "check,measured,tolerance,pass\n";
  for (const auto& r : results) {
    report << r.name << ',' << csv::Writer::format(r.measured) << ','
           << csv::Writer::format(r.tolerance) << ',' << (r.pass ? 1 : 0) << '\n';
  }
  std::fputs(report.str().c_str(), stdout);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << report.str();
  }
  return verify::all_pass(results) ? kExitOk : kExitNumerical;
}

// ---- cmd_oracle ----------------------------------------------------------

int cmd_oracle(const std::string& config_path, const std::string& out_path) {
  std::string scenario;
  try {
    const RunConfig cfg = load_config(config_path);
    cfg.validate_keys({"oracle.scenario"});
    scenario = cfg.str("oracle.scenario");
    if (scenario != "shutter" && scenario != "packet") {
      throw ConfigError("config: oracle.scenario must be shutter or packet");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  try {
    const auto cert = scenario == "shutter" ? verify::certify_shutter_tdse()
                                            : verify::certify_sine_packet_tdse();
    // sigma is reported in units of the grid spacing; 0 marks the
    // Richardson-extrapolated value.
    csv::Writer w(out_path);
    w.header({"sigma", "dt", "l2_error"});
    w.row({4.0, 0.0, cert.l2_coarse});
    w.row({2.0, 0.0, cert.l2_fine});
    w.row({0.0, 0.0, cert.l2_extrapolated});
    std::printf("l2 coarse %.3e  fine %.3e  extrapolated %.3e  monotone %s\n",
                cert.l2_coarse, cert.l2_fine, cert.l2_extrapolated,
                cert.monotone() ? "yes" : "no");
    if (!cert.monotone() || cert.l2_extrapolated > 0.02) return kExitNumerical;
    return kExitOk;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-form delta-laser propagators and certification tools"};
  app.require_subcommand(1);

  std::string config_path, out_path = "out.csv";
  std::string figure_name, suite = "all";
  bool natural = false;
  app.add_option("--config", config_path, "run configuration file");
  app.add_option("--out", out_path, "output CSV path");
  app.add_flag("--natural-units", natural,
               "config values are natural units (hbar = m = 1), not SI");

  auto* kernel = app.add_subcommand("kernel", "kernel matrix over a grid");
  auto* shutter = app.add_subcommand("shutter", "released beam densities");
  auto* wavepacket = app.add_subcommand("wavepacket", "released box-mode densities");
  auto* scatter = app.add_subcommand("scatter", "stationary scattering coefficients");
  auto* figure = app.add_subcommand("figure", "figure-data CSVs at the captioned parameters");
  figure->add_option("which", figure_name, "fig3 | fig4 | fig5 | fig6")->required();
  auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite");
  verify_cmd->add_option("suite", suite, "specfun | kernels | dynamics | oracle | all");
  auto* oracle_cmd = app.add_subcommand("oracle", "grid-solver certification run");

  CLI11_PARSE(app, argc, argv);

  if (kernel->parsed()) return cmd_kernel(config_path, out_path, natural);
  if (shutter->parsed()) return cmd_shutter(config_path, out_path, natural);
  if (wavepacket->parsed()) return cmd_wavepacket(config_path, out_path, natural);
  if (scatter->parsed()) return cmd_scatter(config_path, out_path, natural);
  if (figure->parsed()) return cmd_figure(figure_name, out_path);
  if (verify_cmd->parsed()) return cmd_verify(suite, out_path);
  if (oracle_cmd->parsed()) return cmd_oracle(config_path, out_path);
  return kExitConfig;
}
