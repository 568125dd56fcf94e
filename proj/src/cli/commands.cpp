#include "dirac/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "dirac/cli/verify.hpp"
#include "dirac/errors.hpp"

namespace dirac::cli {

namespace {

std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t dim) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) out.emplace_back(i, j);
  }
  return out;
}

Table bracket_table(const Chart& chart) {
  Table t;
  t.columns.push_back("pair");
  for (const auto& l : chart.labels()) t.columns.push_back(l);
  for (const char* c : {"poisson", "dirac", "oracle", "abs_diff"}) t.columns.push_back(c);
  return t;
}

void add_bracket_row(Table& t, const std::string& pair, const PhaseSpacePoint& x, double pb,
                     double db, double oracle) {
  std::vector<Cell> row{pair};
  for (double v : x.coords()) row.emplace_back(v);
  row.emplace_back(pb);
  row.emplace_back(db);
  row.emplace_back(oracle);
  row.emplace_back(std::abs(db - oracle));
  t.add_row(std::move(row));
}

CommandResult brackets_klauder(const Scenario& s) {
  const KlauderModel model = s.klauder_model();
  const ChartPtr& chart = KlauderModel::polar_chart();
  const ConstraintSet cs = model.second_class_set(s.integrator.t0);
  Sampler rng(s.seed);
  CommandResult res;
  res.table = bracket_table(*chart);
  std::vector<ScalarField> coords;
  for (std::size_t i = 0; i < chart->dim(); ++i) coords.push_back(ScalarField::coordinate(chart, i));
  for (std::size_t n = 0; n < s.samples; ++n) {
    const PhaseSpacePoint x = model.sample_point(rng);
    const DiracStructure db(cs, x);
    for (const auto& [i, j] : all_pairs(chart->dim())) {
      add_bracket_row(res.table, chart->label(i) + ":" + chart->label(j), x,
                      poisson_bracket(coords[i], coords[j], x), db.bracket(coords[i], coords[j]),
                      model.dirac_oracle(chart->label(i), chart->label(j), x));
    }
  }
  return res;
}

CommandResult brackets_particle(const Scenario& s) {
  const RelativisticParticle model = s.particle_model();
  const ChartPtr& chart = model.chart();
  const std::size_t d = model.spatial_dim();
  Sampler rng(s.seed);
  CommandResult res;
  res.table = bracket_table(*chart);
  std::vector<ScalarField> coords;
  for (std::size_t i = 0; i < chart->dim(); ++i) coords.push_back(ScalarField::coordinate(chart, i));
  auto is_spatial = [d](std::size_t i) { return i != 0 && i != d + 1; };
  for (std::size_t n = 0; n < s.samples; ++n) {
    const PhaseSpacePoint x = model.sample_on_shell(rng);
    const DiracStructure db(model.second_class_set(x[0]), x);
    for (std::size_t i = 0; i < chart->dim(); ++i) {
      for (std::size_t j = i + 1; j < chart->dim(); ++j) {
        if (!is_spatial(i) || !is_spatial(j)) continue;
        const double oracle = (i <= d && j == i + d + 1) ? 1.0 : 0.0;
        add_bracket_row(res.table, chart->label(i) + ":" + chart->label(j), x,
                        poisson_bracket(coords[i], coords[j], x),
                        db.bracket(coords[i], coords[j]), oracle);
      }
    }
  }
  return res;
}

ConstraintSet custom_constraints(const Scenario& s, const ChartPtr& chart) {
  std::vector<ScalarField> phis;
  for (std::size_t i = 0; i < s.custom.constraints.size(); ++i) {
    phis.push_back(s.custom.constraints[i].field(chart, "phi" + std::to_string(i + 1)));
  }
  return {chart, std::move(phis)};
}

CommandResult brackets_custom(const Scenario& s) {
  const ChartPtr chart = s.custom_chart();
  const ConstraintSet cs = custom_constraints(s, chart);
  Sampler rng(s.seed);
  CommandResult res;
  res.table = bracket_table(*chart);
  std::vector<ScalarField> coords;
  for (std::size_t i = 0; i < chart->dim(); ++i) coords.push_back(ScalarField::coordinate(chart, i));
  const std::size_t n_pairs = chart->pairs();
  for (std::size_t n = 0; n < s.samples; ++n) {
    std::vector<double> z(chart->dim());
    for (auto& v : z) v = rng.uniform(-5.0, 5.0);
    const PhaseSpacePoint x(chart, std::move(z));
    const DiracStructure db(cs, x);
    for (const auto& [i, j] : all_pairs(chart->dim())) {
      // Closed form only without constraints: the canonical relations.
      const double oracle = cs.is_empty() ? (j == i + n_pairs ? 1.0 : 0.0)
                                          : std::numeric_limits<double>::quiet_NaN();
      add_bracket_row(res.table, chart->label(i) + ":" + chart->label(j), x,
                      poisson_bracket(coords[i], coords[j], x), db.bracket(coords[i], coords[j]),
                      oracle);
    }
  }
  return res;
}

Table trajectory_table(const Trajectory& traj, const Chart& chart, const ScalarField& h) {
  Table t;
  t.columns.push_back("t");
  for (const auto& l : chart.labels()) t.columns.push_back(l);
  for (const auto& n : traj.constraint_names) t.columns.push_back("res_" + n);
  t.columns.push_back("H");
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<Cell> row{traj.times[i]};
    for (double v : traj.points[i].coords()) row.emplace_back(v);
    for (double v : traj.residuals[i]) row.emplace_back(v);
    row.emplace_back(h(traj.points[i]));
    t.add_row(std::move(row));
  }
  for (const auto& d : constraint_drift(traj)) {
    t.footer.push_back({std::string("drift"), d.name, d.max_residual, d.growth_rate});
  }
  return t;
}

CommandResult run_flow(const PhaseSpacePoint& x0, const FlowSpec& flow,
                       const IntegratorConfig& cfg, const ConstraintSet* monitor,
                       const ScalarField& h) {
  CommandResult res;
  try {
    res.table = trajectory_table(evolve(x0, flow, cfg, monitor), x0.chart(), h);
  } catch (const FlowInterrupted& e) {
    res.table = trajectory_table(e.partial(), x0.chart(), h);
    res.table.footer.push_back({std::string("interrupted"), std::string(e.what())});
    res.exit_code = kNumericError;
    res.error = e.what();
  }
  return res;
}

const FlowConfig& require_flow(const Scenario& s) {
  if (!s.flow) throw ConfigError("evolve needs a flow block");
  return *s.flow;
}

CommandResult evolve_klauder(const Scenario& s) {
  const FlowConfig& f = require_flow(s);
  const KlauderModel model = s.klauder_model();
  const IntegratorConfig& cfg = s.integrator;
  if (f.kind == FlowKind::gauge) {
    const ScalarField c = model.cartesian_constraint();
    const ConstraintSet monitor(KlauderModel::cartesian_chart(), {c});
    const PhaseSpacePoint x0(KlauderModel::cartesian_chart(), f.x0);
    const double lambda = f.multiplier;
    const FlowSpec flow = GaugeFlow{c, [lambda](double) { return lambda; }};
    return run_flow(x0, flow, cfg, &monitor, c);
  }
  const ScalarField h = model.physical_hamiltonian();
  const PhaseSpacePoint x0 = f.reduced.empty()
                                 ? PhaseSpacePoint(KlauderModel::polar_chart(), f.x0)
                                 : model.embedded_point(f.reduced[0], f.reduced[1], cfg.t0);
  if (f.kind == FlowKind::poisson) {
    const ConstraintSet monitor = model.second_class_set(cfg.t0);
    return run_flow(x0, PoissonFlow{h}, cfg, &monitor, h);
  }
  DiracFlow flow{h, model.second_class_set(cfg.t0), std::nullopt};
  if (model.time_dependent()) flow.time_dependence = model.time_dependence();
  return run_flow(x0, flow, cfg, nullptr, h);
}

CommandResult evolve_particle(const Scenario& s) {
  const FlowConfig& f = require_flow(s);
  const RelativisticParticle model = s.particle_model();
  IntegratorConfig cfg = s.integrator;
  cfg.t0 = f.tau0;
  const PhaseSpacePoint x0 = model.on_shell_point(f.x, f.p, f.tau0);
  const ScalarField zero = ScalarField::constant(model.chart(), 0.0);
  const DiracFlow flow{zero, model.second_class_set(f.tau0), model.time_dependence()};
  return run_flow(x0, flow, cfg, nullptr, zero);
}

CommandResult evolve_custom(const Scenario& s) {
  const FlowConfig& f = require_flow(s);
  if (!s.custom.hamiltonian) throw ConfigError("custom evolve needs params.hamiltonian");
  const ChartPtr chart = s.custom_chart();
  const ScalarField h = s.custom.hamiltonian->field(chart, "H");
  const ConstraintSet cs = custom_constraints(s, chart);
  const PhaseSpacePoint x0(chart, f.x0);
  if (f.kind == FlowKind::poisson || cs.is_empty()) {
    return run_flow(x0, PoissonFlow{h}, s.integrator, cs.is_empty() ? nullptr : &cs, h);
  }
  return run_flow(x0, DiracFlow{h, cs, std::nullopt}, s.integrator, nullptr, h);
}

}  // namespace

CommandResult cmd_brackets(const Scenario& s) {
  switch (s.model) {
    case ModelKind::klauder: return brackets_klauder(s);
    case ModelKind::particle: return brackets_particle(s);
    case ModelKind::custom: return brackets_custom(s);
    case ModelKind::maxwell: break;
  }
  throw ConfigError("brackets: use the maxwell subcommand for the lattice model");
}

CommandResult cmd_evolve(const Scenario& s) {
  switch (s.model) {
    case ModelKind::klauder: return evolve_klauder(s);
    case ModelKind::particle: return evolve_particle(s);
    case ModelKind::custom: return evolve_custom(s);
    case ModelKind::maxwell: break;
  }
  throw ConfigError("evolve: use the maxwell subcommand for the lattice model");
}

CommandResult cmd_quantum(const Scenario& s) {
  if (s.model != ModelKind::klauder || !s.quantum) {
    throw ConfigError("quantum needs the klauder model and a quantum block");
  }
  const KlauderModel model = s.klauder_model();
  const QuantumConfig& q = s.quantum.value();
  const int m_max = q.state.m_max();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  CommandResult res;
  Table& t = res.table;
  t.columns = {"t",       "r_mean", "pr_mean", "pphi_mean", "phi_mean_analytic",
               "phi_mean_quadrature", "re_xy", "im_xy", "re_pxy", "im_pxy", "norm"};
  double max_imag = 0.0;
  bool degenerate = false;
  for (double time : q.times) {
    // Coefficients at time t; expectations are then read off at zero elapsed time.
    const SpectrumTable table(model, m_max, time);
    const CircleState st = model.time_dependent()
                               ? evolve_time_dependent(q.state, model, 0.0, time, q.intervals)
                               : evolve_static(q.state, table, time);
    ReducedExpectations red{nan, nan, nan};
    CartesianExpectations cart{Complex(nan, nan), Complex(nan, nan)};
    try {
      red = expect_reduced(st, table);
      cart = expect_cartesian(st, table, 0.0);
    } catch (const DomainError&) {
      degenerate = true;
    }
    const PhiExpectation phi = expect_phi(st, table, 0.0);
    max_imag = std::max(max_imag, std::abs(phi.imag_residue));
    t.add_row({time, red.r, red.pr, red.pphi, phi.value,
               expect_phi_quadrature(st, table, 0.0, q.panels), cart.xy.real(), cart.xy.imag(),
               cart.pxy.real(), cart.pxy.imag(), std::sqrt(st.norm2())});
  }
  t.footer.push_back({std::string("phi_imag_residue"), max_imag});
  if (degenerate) {
    t.footer.push_back({std::string("note"),
                        std::string("r* = 0 mode (k = 0, m = 0) has weight; r and xy columns undefined")});
  }
  return res;
}

CommandResult cmd_maxwell(const Scenario& s) {
  if (s.model != ModelKind::maxwell) throw ConfigError("maxwell needs model \"maxwell\"");
  const LatticeMaxwell lat = s.maxwell_model();
  const FlowConfig f = s.flow.value_or(FlowConfig{});

  const Eigen::MatrixXd p = lat.transverse_projector();
  const LatticeMaxwell::DiracBlocks blocks = lat.dirac_matrix();

  const Eigen::VectorXd a0 = f.amplitude * lat.eigenmode(f.mode);
  const Eigen::VectorXd e0 = Eigen::VectorXd::Zero(a0.size());
  const double omega = std::sqrt(lat.eigenmode_omega2(f.mode));
  const double e_start = lat.energy(a0, e0);
  const double a0_norm2 = a0.squaredNorm();

  CommandResult res;
  Table& t = res.table;
  t.columns = {"t", "energy", "rel_energy_drift", "gauss_residual", "div_a_residual",
               "mode_amplitude", "mode_amplitude_exact"};
  auto fill = [&](const Trajectory& traj) {
    const auto m = static_cast<Eigen::Index>(lat.components());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      const auto z = traj.points[i].coords();
      const Eigen::Map<const Eigen::VectorXd> a(z.data(), m);
      const Eigen::Map<const Eigen::VectorXd> e(z.data() + m, m);
      const double en = lat.energy(a, e);
      const double amp = a0_norm2 > 0.0 ? a.dot(a0) / a0_norm2 : 0.0;
      const double amp_exact = a0_norm2 > 0.0 ? std::cos(omega * (traj.times[i] - s.integrator.t0)) : 0.0;
      t.add_row({traj.times[i], en, std::abs(en - e_start) / std::max(1.0, std::abs(e_start)),
                 traj.residuals[i][0], traj.residuals[i][1], amp, amp_exact});
    }
  };
  try {
    fill(lat.evolve(a0, e0, s.integrator));
  } catch (const FlowInterrupted& e) {
    fill(e.partial());
    res.exit_code = kNumericError;
    res.error = e.what();
  }
  t.footer.push_back({std::string("projector_idempotence"), (p * p - p).cwiseAbs().maxCoeff()});
  t.footer.push_back({std::string("projector_symmetry"), (p - p.transpose()).cwiseAbs().maxCoeff()});
  t.footer.push_back({std::string("projector_trace"), p.trace()});
  t.footer.push_back({std::string("dirac_ae_vs_projector"), (blocks.ae - p).cwiseAbs().maxCoeff()});
  t.footer.push_back({std::string("dirac_aa_max"), blocks.aa.cwiseAbs().maxCoeff()});
  t.footer.push_back({std::string("dirac_ee_max"), blocks.ee.cwiseAbs().maxCoeff()});
  return res;
}

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  std::string format;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config, "Scenario JSON file")->required();
  sub->add_option("--out", flags.out, "Output path (default: standard output)");
  sub->add_option("--seed", flags.seed, "Override the scenario seed");
  sub->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

int emit(const CommandResult& res, const Scenario& s, const CommonFlags& flags,
         std::ostream& out, std::ostream& err) {
  const std::string format = flags.format.empty() ? s.output.format : flags.format;
  const std::string path = flags.out.empty() ? s.output.path : flags.out;
  std::ofstream file;
  std::ostream* os = &out;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) {
      err << "error: cannot write '" << path << "'\n";
      return kConfigError;
    }
    os = &file;
  }
  if (format == "json") {
    write_json(res.table, *os);
  } else {
    write_csv(res.table, *os);
  }
  if (res.exit_code != kOk) err << "error: " << res.error << '\n';
  return res.exit_code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Constrained Hamiltonian systems: Dirac brackets, flows and circle quantization",
               "dirac");
  app.require_subcommand(1);

  CommonFlags flags;
  using Command = CommandResult (*)(const Scenario&);
  struct Entry {
    const char* name;
    const char* help;
    Command fn;
  };
  const Entry entries[] = {
      {"brackets", "Poisson/Dirac bracket table against closed forms", &cmd_brackets},
      {"evolve", "Integrate a flow and report constraint residuals", &cmd_evolve},
      {"quantum", "Circle-quantized evolution and expectation values", &cmd_quantum},
      {"maxwell", "Lattice Maxwell projector, Dirac matrix and wave evolution", &cmd_maxwell},
  };
  std::vector<std::pair<CLI::App*, Command>> commands;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, flags);
    commands.emplace_back(sub, e.fn);
  }

  std::string suite = "all";
  VerifyOptions vopts;
  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("suite", suite, "Suite to run")->check(CLI::IsMember(verify_suites()));
  verify->add_option("--seed", vopts.seed, "Sampling seed");
  verify->add_option("--perturb-oracle", vopts.oracle_perturbation)->group("");

  std::vector<std::string> argv_store;
  argv_store.emplace_back("dirac");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (verify->parsed()) {
      const auto results = run_verify(suite, vopts);
      bool ok = true;
      for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.suite << '/' << r.name << ' '
            << format_double(r.value) << (r.at_least ? " (min " : " (tol ")
            << format_double(r.tolerance) << ")\n";
        ok = ok && r.pass;
      }
      out << (ok ? "all checks passed" : "verification FAILED") << " (" << results.size()
          << " checks)\n";
      return ok ? kOk : kVerifyFailed;
    }
    for (const auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      Scenario s = load_scenario(flags.config);
      if (sub->count("--seed") > 0) s.seed = flags.seed;
      return emit(fn(s), s, flags, out, err);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UsageError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DegeneracyError& e) {
    err << "degeneracy: " << e.what() << '\n';
    return kNumericError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kNumericError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  }
  return kConfigError;
}

}  // namespace dirac::cli
