// Acceptance criteria runner. With no arguments every criterion runs; with
// numeric arguments only those do. One PASS/FAIL line per criterion, exit 0
// iff all selected criteria passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "coherence/power.hpp"
#include "coherence/random.hpp"
#include "coherence/simulate.hpp"

using namespace coherence;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double h2_cos2(double theta) { return binary_entropy(std::cos(theta) * std::cos(theta)); }

std::vector<double> theta_grid(int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = i == n - 1 ? kPi / 4 : kPi / 4 * i / (n - 1);
  return g;
}

Outcome capacity_curve() {
  const auto grid = theta_grid(50);
  bool ok = true;
  double worst_interior = 1e300, worst_theta = 0.0, endpoint_err = 0.0, below = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double cg = qubit_cgen(grid[i]).value;
    const double h = h2_cos2(grid[i]);
    below = std::min(below, cg - h);
    if (i == 0 || i + 1 == grid.size()) {
      const double target = i == 0 ? 0.0 : 1.0;
      endpoint_err = std::max({endpoint_err, std::abs(cg - h), std::abs(cg - target)});
    } else if (cg - h < worst_interior) {
      worst_interior = cg - h;
      worst_theta = grid[i];
    }
  }
  ok = below >= 0.0 && endpoint_err <= 1e-6 && worst_interior >= 1e-4;
  return {ok, "min(cgen-h2)=" + fmt(below) + " endpoint err=" + fmt(endpoint_err) +
                  " min interior excess=" + fmt(worst_interior) + " at theta/pi=" + fmt(worst_theta / kPi) +
                  " (need >= 1e-4)"};
}

Outcome optimal_angle() {
  const auto grid = theta_grid(50);
  double min_interior = 1e300, max_endpoint = 0.0, max_residual = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const QubitCgen q = qubit_cgen(grid[i]);
    max_residual = std::max(max_residual, std::abs(critical_point_residual(grid[i], q.alpha_star)));
    if (i == 0 || i + 1 == grid.size()) {
      max_endpoint = std::max(max_endpoint, q.alpha_star);
    } else {
      min_interior = std::min(min_interior, q.alpha_star);
    }
  }
  const bool ok = min_interior > 1e-3 && max_endpoint <= 1e-6 && max_residual <= 1e-6;
  return {ok, "min interior alpha*=" + fmt(min_interior) + " rad, max endpoint alpha*=" + fmt(max_endpoint) +
                  ", max stationarity residual=" + fmt(max_residual)};
}

Outcome flower_gap() {
  double worst = 0.0;
  for (int d = 2; d <= 8; ++d) worst = std::max(worst, std::abs(relative_entropy_of_coherence(flower_state(d)) - 1.0));
  ConvexRoofConfig roof;
  roof.qubit_closed_form = false;
  const ConvexRoofResult cf = coherence_of_formation(flower_state(2), roof);
  const bool ok = worst <= 1e-9 && std::abs(cf.value - 1.5) <= 1e-3;
  return {ok, "max |C_r(flower)-1|=" + fmt(worst) + ", C_f(flower(2))=" + std::to_string(cf.value) +
                  " via optimizer (restart gap " + fmt(cf.restart_gap) + ")"};
}

Outcome unitary_protocol() {
  double completeness = 0.0, choi = 0.0, outcome_err = 0.0;
  int strict_ok = 0, total = 0;
  const int dims[] = {2, 3, 4, 5};
  for (int i = 0; i < 10; ++i) {
    const int d = dims[i % 4];
    Rng rng(1000 + static_cast<std::uint64_t>(i));
    const SimulationBundle b = build_unitary_sim(haar_unitary(d, rng));
    const SimulationReport r = verify_simulation(b);
    completeness = std::max(completeness, r.completeness_residual);
    choi = std::max(choi, r.choi_distance.upper);
    for (const auto& f : r.classification.per_operator) strict_ok += f.strictly_incoherent;
    total += static_cast<int>(r.classification.per_operator.size());
    const DensityMatrix rho = random_state(d, StateKind::Mixed, 2000 + static_cast<std::uint64_t>(i));
    for (double p : outcome_probabilities(b, rho)) outcome_err = std::max(outcome_err, std::abs(p - 1.0 / d));
  }
  const bool ok = completeness <= 1e-12 && choi <= 1e-10 && strict_ok == total && outcome_err <= 1e-10;
  return {ok, "completeness=" + fmt(completeness) + " choi=" + fmt(choi) + " strictly incoherent Kraus " +
                  std::to_string(strict_ok) + "/" + std::to_string(total) + " outcome err=" + fmt(outcome_err)};
}

Outcome teleport_protocol() {
  double completeness = 0.0, choi = 0.0;
  int incoherent = 0, total = 0;
  for (int i = 0; i < 10; ++i) {
    Rng pick(3000 + static_cast<std::uint64_t>(i));
    const int din = 2 + static_cast<int>(pick.uniform() * 3);
    const int dout = 2 + static_cast<int>(pick.uniform() * 3);
    const int n = 1 + static_cast<int>(pick.uniform() * din * dout);
    const KrausChannel t = random_channel(din, dout, std::max(n, (din + dout - 1) / dout), 4000 + i);
    const SimulationBundle b = build_teleport_sim(t);
    completeness = std::max(completeness, completeness_residual(b.protocol_kraus.dim_in(), b.protocol_kraus.kraus()));
    choi = std::max(choi, channel_distance_choi(induced_channel(b), t).upper);
    for (const auto& l : b.protocol_kraus.kraus()) incoherent += is_incoherent_operator(l, 1e-12);
    total += static_cast<int>(b.protocol_kraus.size());
  }
  const bool ok = completeness <= 1e-10 && choi <= 1e-10 && incoherent == total;
  return {ok, "completeness=" + fmt(completeness) + " choi=" + fmt(choi) + " incoherent L " +
                  std::to_string(incoherent) + "/" + std::to_string(total)};
}

Outcome sio_protocol() {
  double choi = 0.0;
  int strict_ok = 0, total = 0;
  for (int i = 0; i < 10; ++i) {
    const KrausChannel t = random_channel(2, 2, 1 + i % 2, 5000 + static_cast<std::uint64_t>(i));
    const SimulationBundle b = build_sio_dilation_sim(t);
    choi = std::max(choi, channel_distance_choi(induced_channel(b), t).upper);
    for (const auto& k : b.protocol_kraus.kraus()) strict_ok += is_strictly_incoherent_operator(k);
    total += static_cast<int>(b.protocol_kraus.size());
  }
  const bool ok = choi <= 1e-8 && strict_ok == total;
  return {ok, "choi=" + fmt(choi) + " strictly incoherent Kraus " + std::to_string(strict_ok) + "/" +
                  std::to_string(total) + " (resource dim 4)"};
}

Outcome resource_feasibility() {
  const double balanced = 1.0 / std::numbers::sqrt2;
  const auto grid = feasibility_grid(200);
  double near = 0.0, far = 1e300;
  int near_nodes = 0;
  for (double theta : {kPi / 16, kPi / 8, kPi / 4}) {
    for (double c : grid) {
      const double r = qubit_resource_feasibility(theta, c).residual;
      if (std::abs(c - balanced) <= 1e-3) {
        near = std::max(near, r);
        ++near_nodes;
      }
      if (std::abs(c - balanced) >= 0.05) far = std::min(far, r);
    }
  }
  const bool ok = near_nodes > 0 && near <= 1e-10 && far >= 1e-4;
  return {ok, "max residual near balance=" + fmt(near) + " over " + std::to_string(near_nodes) +
                  " nodes, min residual away=" + fmt(far)};
}

Outcome isometry_additivity() {
  PowerConfig cfg;
  cfg.restarts = 32;
  double worst = 0.0;
  for (const auto& [t1, t2] : {std::pair{kPi / 8, kPi / 8}, std::pair{kPi / 16, kPi / 4}, std::pair{kPi / 6, kPi / 12}}) {
    const double joint = cgen_isometry(kron(rotation(t1), rotation(t2)), cfg).value;
    const double sum = cgen_isometry(rotation(t1), cfg).value + cgen_isometry(rotation(t2), cfg).value;
    worst = std::max(worst, std::abs(joint - sum));
  }
  return {worst <= 1e-3, "max |P(U1 x U2) - P(U1) - P(U2)|=" + fmt(worst)};
}

KrausChannel nearby_channel(const KrausChannel& t, double scale, std::uint64_t seed) {
  const int n = static_cast<int>(t.size());
  ComplexMatrix v(t.dim_out() * n, t.dim_in());
  for (int a = 0; a < n; ++a) v.middleRows(a * t.dim_out(), t.dim_out()) = t.kraus()[a];
  Rng rng(seed);
  v += scale * rng.ginibre(static_cast<int>(v.rows()), static_cast<int>(v.cols()));
  const Eigen::HouseholderQR<ComplexMatrix> qr(v);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(v.rows(), v.cols());
  std::vector<ComplexMatrix> kraus;
  for (int a = 0; a < n; ++a) kraus.push_back(q.middleRows(a * t.dim_out(), t.dim_out()));
  return KrausChannel(t.dim_in(), t.dim_out(), std::move(kraus));
}

Outcome continuity() {
  PowerConfig cfg;
  int violations = 0;
  double slack_r = 1e300, slack_f = 1e300;
  for (int i = 0; i < 10; ++i) {
    const KrausChannel a = random_channel(2, 2, 2, 6000 + static_cast<std::uint64_t>(i));
    const KrausChannel b = nearby_channel(a, 0.02, 7000 + static_cast<std::uint64_t>(i));
    const ContinuityReport r = continuity_check(a, b, 1, cfg);
    violations += !r.holds_r + !r.holds_f;
    slack_r = std::min(slack_r, r.bound_r - std::abs(r.power_r_a - r.power_r_b));
    slack_f = std::min(slack_f, r.bound_f - std::abs(r.power_f_a - r.power_f_b));
  }
  return {violations == 0, std::to_string(violations) + " violations, min slack r=" + fmt(slack_r) +
                               " f=" + fmt(slack_f)};
}

Outcome classifier_coherence() {
  std::vector<KrausChannel> pool;
  for (int i = 0; i < 10; ++i) {
    const int din = 2 + i % 2;
    const int dout = 2 + i % 3;
    pool.push_back(random_channel(din, dout, std::max(1 + i % 3, (din + dout - 1) / dout), 8000 + i));
  }
  for (int i = 0; i < 4; ++i) {
    Rng rng(8100 + static_cast<std::uint64_t>(i));
    pool.push_back(build_unitary_sim(haar_unitary(2 + i % 2, rng)).protocol_kraus);
  }
  for (int i = 0; i < 3; ++i) pool.push_back(build_teleport_sim(random_channel(2, 2, 2, 8200 + i)).protocol_kraus);
  pool.push_back(dephasing_channel(3));
  pool.push_back(bound_coherence_example());
  pool.push_back(identity_channel(2));

  int io_channels = 0, io_failures = 0, disagreements = 0, mio_true = 0;
  for (std::size_t c = 0; c < pool.size(); ++c) {
    const KrausChannel& t = pool[c];
    const bool io = classify_kraus(t).channel_is_io_witnessed;
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
      const DensityMatrix rho = dephase(random_state(t.dim_in(), StateKind::Mixed, 9000 + 100 * c + s));
      worst = std::max(worst, max_off_diagonal(apply_map(t, rho.matrix())));
    }
    if (io) {
      ++io_channels;
      io_failures += worst > 1e-9;
    }
    const bool mio = is_mio(t);
    mio_true += mio;
    disagreements += mio != (worst <= 1e-9);
  }
  const bool ok = io_failures == 0 && disagreements == 0;
  return {ok, std::to_string(io_channels) + " incoherent-Kraus channels, " + std::to_string(io_failures) +
                  " created coherence; is_mio vs direct check disagreements " + std::to_string(disagreements) +
                  "/" + std::to_string(pool.size()) + " (" + std::to_string(mio_true) + " MIO)"};
}

} // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "qubit capacity curve dominates h2(cos^2 theta)", 10, capacity_curve},
      {2, "optimal input angle and stationarity", 10, optimal_angle},
      {3, "flower-state gap between C_r and C_f", 120, flower_gap},
      {4, "unitary simulation from a maximally coherent resource", 30, unitary_protocol},
      {5, "teleportation-based channel simulation", 60, teleport_protocol},
      {6, "strictly incoherent dilation of few-Kraus qubit channels", 30, sio_protocol},
      {7, "qubit resource feasibility for rotations", 30, resource_feasibility},
      {8, "isometry capacity additivity", 300, isometry_additivity},
      {9, "continuity of coherence powers", 300, continuity},
      {10, "incoherence classifiers agree with state action", 10, classifier_coherence},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::printf("%s criterion %d: %s | %s | %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.time_limit_s, in_time ? "" : " TIMEOUT");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
