#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "coherence/io.hpp"
#include "coherence/power.hpp"

namespace coherence::cli {

namespace {

struct Check {
  std::string name;
  double value;
  double bound;
  bool pass;
};

struct SuiteReport {
  std::vector<Check> checks;
  Json extra = Json::object();

  void add(std::string name, double value, double bound, bool pass) {
    checks.push_back({std::move(name), value, bound, pass});
  }
  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
  Json to_json(const std::string& suite) const {
    Json list = Json::array();
    for (const auto& c : checks) {
      list.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}});
    }
    Json j = {{"suite", suite}, {"pass", pass()}, {"checks", list}};
    for (const auto& [key, value] : extra.items()) j[key] = value;
    return j;
  }
};

ConvexRoofConfig roof_config(const RunConfig& cfg) {
  ConvexRoofConfig roof;
  roof.restarts = cfg.restarts;
  roof.seed = cfg.seed;
  return roof;
}

PowerConfig power_config(const RunConfig& cfg) {
  PowerConfig p;
  p.restarts = cfg.restarts;
  p.seed = cfg.seed;
  return p;
}

Json report_json(const SimulationReport& r) {
  Json flags = Json::array();
  for (const auto& f : r.classification.per_operator) {
    flags.push_back({{"incoherent", f.incoherent}, {"strictly_incoherent", f.strictly_incoherent}});
  }
  return {{"completeness_residual", r.completeness_residual},
          {"choi_distance_lower", r.choi_distance.lower},
          {"choi_distance_upper", r.choi_distance.upper},
          {"incoherent", r.incoherent},
          {"strict", r.strict},
          {"kraus_flags", flags},
          {"failures", r.failures},
          {"pass", r.pass}};
}

void suite_measures(const RunConfig& cfg, SuiteReport& report) {
  for (int d = 2; d <= 8; ++d) {
    const double cr = relative_entropy_of_coherence(flower_state(d));
    report.add("C_r(flower(" + std::to_string(d) + ")) = 1", std::abs(cr - 1.0), 1e-9,
               std::abs(cr - 1.0) <= 1e-9);
  }
  for (int d = 2; d <= 4; ++d) {
    const double cr = relative_entropy_of_coherence(maximally_coherent(d).density());
    const double err = std::abs(cr - std::log2(d));
    report.add("C_r(Psi_" + std::to_string(d) + ") = log2 d", err, 1e-12, err <= 1e-12);
  }
  const ConvexRoofConfig roof = roof_config(cfg);
  for (int i = 0; i < 20; ++i) {
    const int dim = 2 + i % 3;
    const StateKind kind = i % 4 == 3 ? StateKind::Pure : StateKind::Mixed;
    const DensityMatrix rho = random_state(dim, kind, cfg.seed + static_cast<std::uint64_t>(i));
    const double cf = coherence_of_formation(rho, roof).value;
    const double cr = relative_entropy_of_coherence(rho);
    report.add("C_f >= C_r on random state " + std::to_string(i), cf - cr, -1e-9, cf - cr >= -1e-9);
  }
}

void suite_simulate(const RunConfig& cfg, SuiteReport& report) {
  const VerifyTolerances tol{cfg.tolerance, cfg.tolerance, kStructuralTolerance};
  auto record = [&](const std::string& name, const SimulationBundle& bundle) {
    const SimulationReport r = verify_simulation(bundle, tol);
    report.add(name + " completeness", r.completeness_residual, tol.completeness,
               r.completeness_residual <= tol.completeness);
    report.add(name + " Choi distance", r.choi_distance.upper, tol.choi, r.choi_distance.upper <= tol.choi);
    report.add(name + " Kraus incoherent", r.incoherent ? 1.0 : 0.0, 1.0, r.incoherent);
  };
  for (int d = 2; d <= 4; ++d) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(d));
    record("unitary d=" + std::to_string(d), build_unitary_sim(haar_unitary(d, rng)));
  }
  for (int i = 0; i < 3; ++i) {
    const int din = 2 + i % 2;
    const int dout = 2 + (i + 1) % 2;
    const KrausChannel t = random_channel(din, dout, 1 + i, cfg.seed + 100 + static_cast<std::uint64_t>(i));
    record("teleport " + std::to_string(din) + "->" + std::to_string(dout), build_teleport_sim(t));
  }
  for (int i = 0; i < 3; ++i) {
    const KrausChannel t = random_channel(2, 2, 1 + i % 2, cfg.seed + 200 + static_cast<std::uint64_t>(i));
    record("sio qubit #" + std::to_string(i), build_sio_dilation_sim(t));
  }
}

void suite_power(const RunConfig& cfg, SuiteReport& report) {
  const PowerConfig pc = power_config(cfg);
  const int n = std::max(cfg.grid_points, 2);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double theta = std::numbers::pi / 4 * i / (n - 1);
    const double c = std::cos(theta);
    worst = std::min(worst, qubit_cgen(theta).value - binary_entropy(c * c));
  }
  report.add("qubit_cgen >= h2(cos^2 theta)", worst, -1e-9, worst >= -1e-9);

  const double theta = std::numbers::pi / 8;
  const OptResult iso = cgen_isometry(rotation(theta), pc);
  const double gap = std::abs(iso.value - qubit_cgen(theta).value);
  report.add("isometry search matches qubit curve at pi/8", gap, 1e-5, gap <= 1e-5);

  const OptResult deph = coherence_power(dephasing_channel(2), PowerMeasure::RelativeEntropy, false, 1, pc);
  report.add("dephasing has zero power", std::abs(deph.value), 1e-6, std::abs(deph.value) <= 1e-6);

  const KrausChannel mio = bound_coherence_example();
  const OptResult mio_pure = coherence_power(mio, PowerMeasure::RelativeEntropy, true, 1, pc);
  report.add("MIO example: pure C_r power", mio_pure.value, 1e-4, mio_pure.value <= 1e-4);
  const double gain_f = coherence_gain(mio, PowerMeasure::Formation, maximally_coherent(2).density(), 1,
                                       roof_config(cfg));
  report.add("MIO example: C_f gain at Psi_2", gain_f, 0.0, gain_f > 1e-3);
}

void suite_feasibility(const RunConfig& /*cfg*/, SuiteReport& report) {
  const double balanced = 1.0 / std::numbers::sqrt2;
  const std::vector<double> grid = feasibility_grid(200);
  Json tables = Json::object();
  for (const auto& [label, theta] : {std::pair{"pi/16", std::numbers::pi / 16},
                                    std::pair{"pi/8", std::numbers::pi / 8},
                                    std::pair{"pi/4", std::numbers::pi / 4}}) {
    Json rows = Json::array();
    double near = 0.0;
    double far = std::numeric_limits<double>::infinity();
    double argmin = grid.front();
    double min_residual = std::numeric_limits<double>::infinity();
    for (double c : grid) {
      const FeasibilityReport r = qubit_resource_feasibility(theta, c);
      rows.push_back({{"c_prime", c}, {"residual", r.residual}});
      if (std::abs(c - balanced) <= 1e-3) near = std::max(near, r.residual);
      if (std::abs(c - balanced) >= 0.05) far = std::min(far, r.residual);
      if (r.residual < min_residual) {
        min_residual = r.residual;
        argmin = c;
      }
    }
    const std::string tag = std::string(" (theta=") + label + ")";
    report.add("residual near 1/sqrt2" + tag, near, 1e-10, near <= 1e-10);
    report.add("residual far from 1/sqrt2" + tag, far, 1e-4, far >= 1e-4);
    report.add("argmin at 1/sqrt2" + tag, std::abs(argmin - balanced), 1e-3, std::abs(argmin - balanced) <= 1e-3);
    tables[label] = rows;
  }
  report.extra["residual_tables"] = tables;
}

// Runs a command body, turning malformed input and violated preconditions
// into a usage error with the reason on `err`.
template <typename Body>
int guarded(const char* name, std::ostream& err, Body body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << '\n';
    return kUsageError;
  }
}

} // namespace

void validate(const RunConfig& cfg) {
  if (cfg.seed == 0) throw std::invalid_argument("--seed must be positive");
  if (cfg.restarts <= 0) throw std::invalid_argument("--restarts must be positive");
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("--tol must be positive");
  if (cfg.grid_points <= 0) throw std::invalid_argument("--grid must be positive");
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int cmd_figures(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.grid_points < 2) {
    err << "figures: --grid must be at least 2\n";
    return kUsageError;
  }
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_path, ec);
  std::ofstream fig1(cfg.output_path / "fig1.csv");
  std::ofstream fig2(cfg.output_path / "fig2.csv");
  if (!fig1 || !fig2) {
    err << "figures: cannot write into " << cfg.output_path.string() << '\n';
    return kUsageError;
  }
  fig1 << "theta,cgen,h2_cos2\n";
  fig2 << "theta,alpha_star\n";
  const int n = cfg.grid_points;
  for (int i = 0; i < n; ++i) {
    // Exact endpoints; interior nodes evenly spaced.
    const double theta = i == n - 1 ? std::numbers::pi / 4 : std::numbers::pi / 4 * i / (n - 1);
    const QubitCgen q = qubit_cgen(theta);
    const double c = std::cos(theta);
    const double frac = theta / std::numbers::pi;
    fig1 << format_number(frac) << ',' << format_number(q.value) << ','
         << format_number(binary_entropy(c * c)) << '\n';
    fig2 << format_number(frac) << ',' << format_number(q.alpha_star / std::numbers::pi) << '\n';
  }
  if (!fig1 || !fig2) {
    err << "figures: write failed\n";
    return kUsageError;
  }
  out << "wrote " << (cfg.output_path / "fig1.csv").string() << " and "
      << (cfg.output_path / "fig2.csv").string() << '\n';
  return kPass;
}

int cmd_compute(const std::filesystem::path& state_file, const std::string& measure,
                const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (measure != "cr" && measure != "cf" && measure != "rank") {
    err << "compute: unknown measure '" << measure << "' (expected cr, cf or rank)\n";
    return kUsageError;
  }
  return guarded("compute", err, [&] {
    const StateInput input = state_from_json(read_json_file(state_file));
    Json report = {{"measure", measure}, {"dim", input.density.dim()}};
    double value = 0.0;
    if (measure == "cr") {
      value = relative_entropy_of_coherence(input.density);
    } else if (measure == "cf") {
      const ConvexRoofResult r = coherence_of_formation(input.density, roof_config(cfg));
      value = r.value;
      report["residual"] = r.residual;
      report["restart_gap"] = r.restart_gap;
      report["restarts_used"] = r.restarts_used;
      report["analytic"] = r.analytic;
      report["ensemble_size"] = r.ensemble.size();
    } else {
      if (!input.pure) {
        err << "compute: coherence rank needs a pure state vector (dim x 1)\n";
        return static_cast<int>(kUsageError);
      }
      value = coherence_rank(*input.pure, cfg.tolerance);
    }
    report["value"] = value;
    out << format_number(value) << '\n' << report.dump() << '\n';
    return static_cast<int>(kPass);
  });
}

int cmd_simulate(const std::filesystem::path& channel_file, const std::string& protocol,
                 const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (protocol != "unitary" && protocol != "teleport" && protocol != "sio") {
    err << "simulate: unknown protocol '" << protocol << "' (expected unitary, teleport or sio)\n";
    return kUsageError;
  }
  return guarded("simulate", err, [&] {
    const KrausChannel t = channel_from_json(read_json_file(channel_file));
    SimulationBundle bundle = [&] {
      if (protocol == "unitary") {
        if (t.size() != 1 || t.dim_in() != t.dim_out()) {
          throw std::invalid_argument("unitary protocol needs a single square Kraus operator, got " +
                                      std::to_string(t.size()) + " operator(s) of shape " +
                                      std::to_string(t.dim_out()) + "x" + std::to_string(t.dim_in()));
        }
        return build_unitary_sim(t.kraus().front());
      }
      if (protocol == "teleport") return build_teleport_sim(t);
      return build_sio_dilation_sim(t);
    }();
    const SimulationReport r = verify_simulation(bundle, {cfg.tolerance, cfg.tolerance, kStructuralTolerance});
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_path, ec);
    const auto path = cfg.output_path / ("bundle_" + protocol + ".json");
    write_json_file(path, bundle_to_json(bundle));
    Json j = report_json(r);
    j["protocol"] = protocol;
    j["resource_dim"] = bundle.resource.dim();
    j["bundle"] = path.string();
    out << j.dump(2) << '\n';
    if (!r.pass) {
      for (const auto& f : r.failures) err << "simulate: " << f << '\n';
      return static_cast<int>(kVerificationFailure);
    }
    return static_cast<int>(kPass);
  });
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using Runner = void (*)(const RunConfig&, SuiteReport&);
  const std::vector<std::pair<std::string, Runner>> suites = {{"measures", suite_measures},
                                                              {"simulate", suite_simulate},
                                                              {"power", suite_power},
                                                              {"feasibility", suite_feasibility}};
  Json reports = Json::array();
  bool pass = true;
  bool matched = false;
  for (const auto& [name, run] : suites) {
    if (suite != "all" && suite != name) continue;
    matched = true;
    SuiteReport report;
    run(cfg, report);
    pass = pass && report.pass();
    reports.push_back(report.to_json(name));
    for (const auto& c : report.checks) {
      if (!c.pass) err << "verify: FAIL " << name << ": " << c.name << " (value " << c.value << ")\n";
    }
  }
  if (!matched) {
    err << "verify: unknown suite '" << suite << "'\n";
    return kUsageError;
  }
  out << Json{{"pass", pass}, {"suites", reports}}.dump(2) << '\n';
  return pass ? kPass : kVerificationFailure;
}

} // namespace coherence::cli
