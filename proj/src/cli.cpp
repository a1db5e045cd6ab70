#include "cflow/cli.hpp"

#include "cflow/errors.hpp"
#include "cflow/io.hpp"
#include "cflow/models.hpp"
#include "cflow/nonadiabatic.hpp"
#include "cflow/oracle.hpp"
#include "cflow/runtime.hpp"
#include "cflow/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cflow::cli {

namespace {

using io::format_value;

struct CommonOpts {
  int n = 50;
  IntegratorConfig integ;
  std::string output = "-";
  std::string format = "csv";
};

struct Table {
  std::vector<std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_table(const Table& table, const std::string& path, const std::string& format) {
  std::ofstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw Error("cli: cannot open output file " + path);
  }
  std::ostream& out = (path == "-") ? std::cout : file;
  if (format == "pretty") {
    io::PrettyWriter w(out);
    for (const auto& m : table.meta) w.comment(m);
    w.header(table.columns);
    for (const auto& r : table.rows) w.row(r);
    w.flush();
  } else {
    io::CsvWriter w(out);
    for (const auto& m : table.meta) w.comment(m);
    w.header(table.columns);
    for (const auto& r : table.rows) w.row(r);
  }
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("-n,--n", o.n, "truncation dimension N")
      ->check(CLI::Range(2, 2000))
      ->capture_default_str();
  cmd->add_option("--rel-tol", o.integ.rel_tol, "integrator relative tolerance")
      ->capture_default_str();
  cmd->add_option("--abs-tol", o.integ.abs_tol, "integrator absolute tolerance")
      ->capture_default_str();
  cmd->add_option("--initial-step", o.integ.initial_step)->capture_default_str();
  cmd->add_option("--max-step", o.integ.max_step)->capture_default_str();
  cmd->add_option("--max-steps", o.integ.max_steps)->capture_default_str();
  cmd->add_option("-o,--output", o.output, "output path ('-' = stdout)")
      ->capture_default_str();
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "pretty"}))
      ->capture_default_str();
}

std::vector<std::string> meta_common(const std::string& command, const CommonOpts& o) {
  return {
      std::string("cflow ") + kVersion,
      "command: " + command,
      "n: " + std::to_string(o.n),
      "rel_tol: " + format_value(o.integ.rel_tol),
      "abs_tol: " + format_value(o.integ.abs_tol),
      "max_step: " + format_value(o.integ.max_step),
  };
}

// Explicit --g list wins over the min/max/step grid. Grid endpoints are
// snapped so the last value is exactly g_max.
std::vector<double> coupling_targets(const std::vector<double>& explicit_g, double g_min,
                                     double g_max, double g_step, const char* flag) {
  std::vector<double> targets;
  if (!explicit_g.empty()) {
    targets = explicit_g;
  } else {
    if (!(g_step > 0.0)) throw Error(std::string("cli: ") + flag + "-step must be > 0");
    if (g_max < g_min) throw Error(std::string("cli: ") + flag + "-max must be >= " + flag + "-min");
    const long count = std::lround((g_max - g_min) / g_step);
    for (long k = 0; k <= count; ++k) targets.push_back(g_min + k * g_step);
    if (std::abs(targets.back() - g_max) > 1e-9) {
      targets.push_back(g_max);
    } else {
      targets.back() = g_max;
    }
  }
  if (targets.front() < 0.0) throw Error(std::string("cli: --") + flag + " values must be >= 0");
  for (std::size_t i = 1; i < targets.size(); ++i) {
    if (!(targets[i] > targets[i - 1])) {
      throw Error(std::string("cli: --") + flag + " values must be strictly increasing");
    }
  }
  return targets;
}

void check_levels(const std::vector<int>& levels, int n) {
  for (int level : levels) {
    if (level < 0 || level >= n) {
      std::ostringstream os;
      os << "cli: --levels entry " << level << " outside 0.." << n - 1;
      throw Error(os.str());
    }
  }
}

std::vector<double> x_targets(const std::vector<double>& explicit_x, double x_min,
                              double x_max, int x_points) {
  if (!explicit_x.empty()) {
    for (std::size_t i = 1; i < explicit_x.size(); ++i) {
      if (!(explicit_x[i] > explicit_x[i - 1])) {
        throw Error("cli: --x values must be strictly increasing");
      }
    }
    return explicit_x;
  }
  if (x_points < 2 || !(x_max > x_min)) throw Error("cli: bad x grid parameters");
  std::vector<double> xs(x_points);
  for (int k = 0; k < x_points; ++k) {
    xs[k] = x_min + (x_max - x_min) * k / (x_points - 1);
  }
  return xs;
}

int run_spectrum(ModelKind kind, const CommonOpts& o, const std::vector<double>& targets,
                 const std::vector<int>& levels) {
  check_levels(levels, o.n);
  const ModelSpec spec =
      kind == ModelKind::Aho ? ModelSpec::aho(o.n) : ModelSpec::dwp(o.n, o.integ);
  const ModelSolution sol = solve_model(spec, targets, o.integ);
  const SpectrumTable table = sol.spectrum(levels);

  Table out;
  out.meta = meta_common(kind == ModelKind::Aho ? "aho" : "dwp", o);
  out.meta.push_back("model: " + std::string(kind == ModelKind::Aho ? "aho" : "dwp"));
  out.columns = {"g", "level", "energy"};
  for (std::size_t k = 0; k < table.g_values.size(); ++k) {
    for (int level : levels) {
      out.rows.push_back({format_value(table.g_values[k]), std::to_string(level),
                          format_value(table.energies[k](level))});
    }
  }
  write_table(out, o.output, o.format);
  return 0;
}

int run_nonadiabatic(const CommonOpts& o, ModelKind kind, double v, double g_max,
                     double g_step, int init_level, const std::vector<int>& levels) {
  check_levels(levels, o.n);
  if (init_level < 0 || init_level >= o.n) {
    throw Error("cli: --init-level outside 0..N-1");
  }
  const ModelSpec spec =
      kind == ModelKind::Aho ? ModelSpec::aho(o.n) : ModelSpec::dwp(o.n, o.integ);
  const std::vector<double> samples = coupling_targets({}, 0.0, g_max, g_step, "g");
  const RampTrajectory traj = evolve_ramp(spec, v, g_max, init_level, samples, o.integ);

  Table out;
  out.meta = meta_common("nonadiabatic", o);
  out.meta.push_back("model: " + std::string(kind == ModelKind::Aho ? "aho" : "dwp"));
  out.meta.push_back("ramp_rate: " + format_value(v));
  out.meta.push_back("g_max: " + format_value(g_max));
  out.meta.push_back("init_level: " + std::to_string(init_level));
  out.columns = {"g", "t", "level", "probability", "phase"};
  for (const RampSample& s : traj.samples) {
    for (int level : levels) {
      out.rows.push_back({format_value(s.g), format_value(s.t), std::to_string(level),
                          format_value(s.probabilities(level)),
                          format_value(s.phases(level))});
    }
  }
  write_table(out, o.output, o.format);
  return 0;
}

int run_density(const CommonOpts& o, ModelKind kind, double g_value,
                const std::vector<int>& levels, const std::vector<double>& x_grid) {
  check_levels(levels, o.n);
  const ModelSpec spec =
      kind == ModelKind::Aho ? ModelSpec::aho(o.n) : ModelSpec::dwp(o.n, o.integ);
  std::vector<double> targets;
  if (g_value > 0.0) targets.push_back(g_value);
  if (targets.empty()) targets.push_back(0.0);
  const ModelSolution sol = solve_model(spec, targets, o.integ);

  Table out;
  out.meta = meta_common("density", o);
  out.meta.push_back("model: " + std::string(kind == ModelKind::Aho ? "aho" : "dwp"));
  out.meta.push_back("g: " + format_value(g_value));
  std::vector<DensityResult> densities;
  for (int level : levels) {
    densities.push_back(wavefunction_density(sol, level, g_value, x_grid));
    const DensityResult& d = densities.back();
    out.meta.push_back("raw_norm[" + std::to_string(level) + "]: " + format_value(d.raw_norm));
    if (d.grid_too_narrow) {
      out.meta.push_back("warning: grid too narrow for level " + std::to_string(level) +
                         " (raw norm " + format_value(d.raw_norm) + " < 0.999)");
      std::cerr << "cflow density: grid too narrow for level " << level << "\n";
    }
  }
  out.columns = {"x", "level", "density"};
  for (std::size_t p = 0; p < x_grid.size(); ++p) {
    for (std::size_t li = 0; li < levels.size(); ++li) {
      out.rows.push_back({format_value(x_grid[p]), std::to_string(levels[li]),
                          format_value(densities[li].density[p])});
    }
  }
  write_table(out, o.output, o.format);
  return 0;
}

int run_potential(const CommonOpts& o, double g_prime, const std::vector<double>& x_grid) {
  const std::vector<double> v = potential_curve(g_prime, x_grid);
  Table out;
  out.meta = {std::string("cflow ") + kVersion, "command: potential",
              "g_prime: " + format_value(g_prime)};
  out.columns = {"x", "potential"};
  for (std::size_t p = 0; p < x_grid.size(); ++p) {
    out.rows.push_back({format_value(x_grid[p]), format_value(v[p])});
  }
  write_table(out, o.output, o.format);
  return 0;
}

struct GoldenRow {
  double g = 0.0;
  int level = 0;
  double energy = 0.0;
  double atol = 0.0;
};

std::vector<GoldenRow> read_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cli: cannot read golden file " + path);
  std::vector<GoldenRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("g,", 0) == 0) continue;
    std::istringstream ls(line);
    std::string cell;
    GoldenRow row;
    std::getline(ls, cell, ',');
    row.g = std::stod(cell);
    std::getline(ls, cell, ',');
    row.level = std::stoi(cell);
    std::getline(ls, cell, ',');
    row.energy = std::stod(cell);
    if (std::getline(ls, cell, ',')) row.atol = std::stod(cell);
    rows.push_back(row);
  }
  if (rows.empty()) throw Error("cli: golden file has no data rows: " + path);
  return rows;
}

int run_validate(const CommonOpts& o, ModelKind kind, const std::vector<double>& g_list,
                 double tol, const std::string& golden_path) {
  const ModelSpec spec =
      kind == ModelKind::Aho ? ModelSpec::aho(o.n) : ModelSpec::dwp(o.n, o.integ);
  const char* model_name = kind == ModelKind::Aho ? "aho" : "dwp";

  std::ostringstream report;
  report << "# cflow " << kVersion << "\n# command: validate\n# model: " << model_name
         << "\n# n: " << o.n << "\n";
  bool all_pass = true;

  if (!golden_path.empty()) {
    const std::vector<GoldenRow> golden = read_golden(golden_path);
    std::vector<double> targets;
    for (const GoldenRow& row : golden) {
      if (targets.empty() || row.g > targets.back()) targets.push_back(row.g);
    }
    const ModelSolution sol = solve_model(spec, targets, o.integ);
    report << "# golden: " << golden_path << "\n";
    for (const GoldenRow& row : golden) {
      const double ours = sol.state_at(row.g).energies(row.level);
      const double dev = std::abs(ours - row.energy);
      const double bound = row.atol > 0.0 ? row.atol : tol;
      const bool pass = dev <= bound;
      all_pass = all_pass && pass;
      report << (pass ? "PASS" : "FAIL") << " g=" << format_value(row.g)
             << " level=" << row.level << " ours=" << format_value(ours)
             << " golden=" << format_value(row.energy) << " |diff|=" << format_value(dev, 3)
             << " tol=" << format_value(bound, 3) << "\n";
    }
  } else {
    const ModelSolution sol = solve_model(spec, g_list, o.integ);
    // Independent route: dense diagonalization per coupling value. These are
    // independent problems, so the thread budget applies.
    std::vector<OracleResult> oracle(g_list.size());
    runtime::parallel_for(static_cast<int>(g_list.size()), [&](int k) {
      oracle[k] = jacobi_diagonalize(build_hamiltonian(kind, g_list[k], o.n));
    });
    for (std::size_t k = 0; k < g_list.size(); ++k) {
      // Compare as sorted spectra: flow labels follow continuity, the oracle
      // sorts ascending, and near-degenerate doublets may order differently.
      Vector flow_sorted = sol.states[k].energies;
      std::sort(flow_sorted.data(), flow_sorted.data() + flow_sorted.size());
      double max_dev = 0.0;
      int worst = 0;
      for (int i = 0; i < o.n; ++i) {
        const double dev = std::abs(flow_sorted(i) - oracle[k].eigenvalues(i));
        if (dev > max_dev) {
          max_dev = dev;
          worst = i;
        }
      }
      const bool pass = max_dev < tol;
      all_pass = all_pass && pass;
      report << (pass ? "PASS" : "FAIL") << " g=" << format_value(g_list[k])
             << " max|flow-oracle|=" << format_value(max_dev, 3) << " at level " << worst
             << " (all " << o.n << " levels, tol " << format_value(tol, 3) << ")\n";
    }
  }
  report << (all_pass ? "VALIDATION PASSED" : "VALIDATION FAILED") << "\n";

  if (o.output == "-") {
    std::cout << report.str();
  } else {
    std::ofstream file(o.output);
    if (!file) throw Error("cli: cannot open output file " + o.output);
    file << report.str();
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"coupling-flow solver for quartic oscillators (AHO, double well)"};
  app.set_version_flag("--version", std::string("cflow ") + kVersion);
  app.require_subcommand(1);

  const std::vector<int> default_levels{0, 1, 2, 3, 4, 5};

  // aho / dwp spectra
  CommonOpts aho_opts;
  std::vector<double> aho_g;
  double aho_gmin = 0.0, aho_gmax = 10.0, aho_gstep = 0.1;
  std::vector<int> aho_levels = default_levels;
  CLI::App* aho_cmd = app.add_subcommand("aho", "quartic oscillator spectrum vs g");
  add_common(aho_cmd, aho_opts);
  aho_cmd->add_option("--g", aho_g, "explicit coupling list")->delimiter(',');
  aho_cmd->add_option("--g-min", aho_gmin)->capture_default_str();
  aho_cmd->add_option("--g-max", aho_gmax)->capture_default_str();
  aho_cmd->add_option("--g-step", aho_gstep)->capture_default_str();
  aho_cmd->add_option("--levels", aho_levels, "levels to emit")->delimiter(',');

  CommonOpts dwp_opts;
  std::vector<double> dwp_g;
  double dwp_gmin = 0.0, dwp_gmax = 8.0, dwp_gstep = 0.1;
  std::vector<int> dwp_levels = default_levels;
  CLI::App* dwp_cmd = app.add_subcommand("dwp", "double-well spectrum vs g'");
  add_common(dwp_cmd, dwp_opts);
  dwp_cmd->add_option("--g", dwp_g, "explicit coupling list (g')")->delimiter(',');
  dwp_cmd->add_option("--g-min", dwp_gmin)->capture_default_str();
  dwp_cmd->add_option("--g-max", dwp_gmax)->capture_default_str();
  dwp_cmd->add_option("--g-step", dwp_gstep)->capture_default_str();
  dwp_cmd->add_option("--levels", dwp_levels, "levels to emit")->delimiter(',');

  // nonadiabatic ramp
  CommonOpts na_opts;
  std::string na_model = "dwp";
  double na_v = 3.0, na_gmax = 6.0, na_gstep = 0.05;
  int na_init = 0;
  std::vector<int> na_levels = default_levels;
  CLI::App* na_cmd = app.add_subcommand("nonadiabatic", "linear-ramp transition probabilities");
  add_common(na_cmd, na_opts);
  na_cmd->add_option("--model", na_model)->check(CLI::IsMember({"aho", "dwp"}))
      ->capture_default_str();
  na_cmd->add_option("--v", na_v, "ramp rate v (g = v t)")->capture_default_str();
  na_cmd->add_option("--g-max", na_gmax)->capture_default_str();
  na_cmd->add_option("--g-step", na_gstep, "sample spacing")->capture_default_str();
  na_cmd->add_option("--init-level", na_init)->capture_default_str();
  na_cmd->add_option("--levels", na_levels, "levels to emit")->delimiter(',');

  // density
  CommonOpts den_opts;
  std::string den_model = "dwp";
  double den_g = 0.0;
  std::vector<int> den_levels{0, 1};
  std::vector<double> den_x;
  double den_xmin = -6.0, den_xmax = 6.0;
  int den_xpoints = 601;
  CLI::App* den_cmd = app.add_subcommand("density", "probability densities |psi(x)|^2");
  add_common(den_cmd, den_opts);
  den_cmd->add_option("--model", den_model)->check(CLI::IsMember({"aho", "dwp"}))
      ->capture_default_str();
  den_cmd->add_option("--g", den_g, "coupling value")->required();
  den_cmd->add_option("--levels", den_levels)->delimiter(',');
  den_cmd->add_option("--x", den_x, "explicit x list")->delimiter(',');
  den_cmd->add_option("--x-min", den_xmin)->capture_default_str();
  den_cmd->add_option("--x-max", den_xmax)->capture_default_str();
  den_cmd->add_option("--x-points", den_xpoints)->capture_default_str();

  // potential
  CommonOpts pot_opts;
  double pot_gp = 0.0;
  std::vector<double> pot_x;
  double pot_xmin = -6.0, pot_xmax = 6.0;
  int pot_xpoints = 601;
  CLI::App* pot_cmd = app.add_subcommand("potential", "double-well potential curve");
  add_common(pot_cmd, pot_opts);
  pot_cmd->add_option("--gp", pot_gp, "g' value")->required();
  pot_cmd->add_option("--x", pot_x, "explicit x list")->delimiter(',');
  pot_cmd->add_option("--x-min", pot_xmin)->capture_default_str();
  pot_cmd->add_option("--x-max", pot_xmax)->capture_default_str();
  pot_cmd->add_option("--x-points", pot_xpoints)->capture_default_str();

  // validate
  CommonOpts val_opts;
  std::string val_model = "aho";
  std::vector<double> val_g{0.5, 2.0, 6.0};
  double val_tol = 1e-7;
  std::string val_golden;
  CLI::App* val_cmd = app.add_subcommand("validate", "cross-check flow vs diagonalization");
  add_common(val_cmd, val_opts);
  val_cmd->add_option("--model", val_model)->check(CLI::IsMember({"aho", "dwp"}))
      ->capture_default_str();
  val_cmd->add_option("--g", val_g, "coupling values")->delimiter(',');
  val_cmd->add_option("--tol", val_tol, "max |flow - oracle|")->capture_default_str();
  val_cmd->add_option("--golden", val_golden, "diff against a golden table CSV instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the offending flag
    return 1;
  }

  auto to_kind = [](const std::string& s) {
    return s == "aho" ? ModelKind::Aho : ModelKind::Dwp;
  };

  try {
    if (*aho_cmd) {
      return run_spectrum(ModelKind::Aho, aho_opts,
                          coupling_targets(aho_g, aho_gmin, aho_gmax, aho_gstep, "g"),
                          aho_levels);
    }
    if (*dwp_cmd) {
      return run_spectrum(ModelKind::Dwp, dwp_opts,
                          coupling_targets(dwp_g, dwp_gmin, dwp_gmax, dwp_gstep, "g"),
                          dwp_levels);
    }
    if (*na_cmd) {
      return run_nonadiabatic(na_opts, to_kind(na_model), na_v, na_gmax, na_gstep, na_init,
                              na_levels);
    }
    if (*den_cmd) {
      return run_density(den_opts, to_kind(den_model), den_g, den_levels,
                         x_targets(den_x, den_xmin, den_xmax, den_xpoints));
    }
    if (*pot_cmd) {
      return run_potential(pot_opts, pot_gp, x_targets(pot_x, pot_xmin, pot_xmax, pot_xpoints));
    }
    if (*val_cmd) {
      return run_validate(val_opts, to_kind(val_model), val_g, val_tol, val_golden);
    }
  } catch (const Error& e) {
    std::cerr << "cflow: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "cflow: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cflow::cli
