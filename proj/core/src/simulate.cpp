#include "coherence/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coherence {

namespace {

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

ComplexMatrix matrix_power(const ComplexMatrix& m, int n) {
  ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < n; ++i) out = out * m;
  return out;
}

SimulationBundle finish(std::string protocol, KrausChannel target, PureState resource,
                        KrausChannel protocol_kraus, RegisterLayout registers) {
  const bool strict = classify_kraus(protocol_kraus).channel_is_sio_witnessed;
  return SimulationBundle{std::move(protocol), std::move(target), std::move(resource),
                          std::move(protocol_kraus), std::move(registers), strict};
}

// Fills the columns listed in `open` with an orthonormal completion of the
// columns in `fixed`, taking canonical basis vectors in order as candidates.
void complete_unitary(ComplexMatrix& w, const std::vector<int>& fixed, const std::vector<int>& open) {
  const Eigen::Index n = w.rows();
  std::vector<ComplexVector> basis;
  for (int c : fixed) basis.push_back(w.col(c));
  std::size_t next = 0;
  for (Eigen::Index e = 0; e < n && next < open.size(); ++e) {
    ComplexVector v = ComplexVector::Zero(n);
    v(e) = 1.0;
    // Two passes of classical Gram-Schmidt keep the result orthogonal to
    // working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= b * b.dot(v);
    }
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    v /= norm;
    basis.push_back(v);
    w.col(open[next++]) = v;
  }
  if (next != open.size()) {
    throw std::runtime_error("build_sio_dilation_sim: unitary completion failed");
  }
}

} // namespace

GeneralizedPaulis generalized_paulis(int d) {
  if (d < 1) throw std::invalid_argument("generalized_paulis: dimension must be positive");
  GeneralizedPaulis p{ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d)};
  for (int m = 0; m < d; ++m) {
    p.z(m, m) = std::polar(1.0, 2.0 * std::numbers::pi * m / d);
    p.x((m + 1) % d, m) = 1.0;
  }
  return p;
}

PureState bell_state(int j, int k, int d) {
  const auto paulis = generalized_paulis(d);
  const ComplexMatrix w = matrix_power(paulis.z, j) * matrix_power(paulis.x, k);
  ComplexVector phi = ComplexVector::Zero(d * d);
  for (int m = 0; m < d; ++m) phi(m * d + m) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState::normalized(kron(ComplexMatrix::Identity(d, d), w) * phi);
}

ComplexMatrix teleport_correction(int j, int k, int d) {
  const auto paulis = generalized_paulis(d);
  return (matrix_power(paulis.z, j) * matrix_power(paulis.x, k)).transpose();
}

SimulationBundle build_unitary_sim(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw std::invalid_argument("build_unitary_sim: matrix must be square and non-empty");
  }
  const double defect = isometry_defect(u);
  if (defect > 1e-9) {
    throw std::invalid_argument("build_unitary_sim: matrix is not unitary (defect " +
                                std::to_string(defect) + ")");
  }
  const int d = static_cast<int>(u.rows());
  std::vector<ComplexMatrix> kraus;
  for (int a = 0; a < d; ++a) {
    ComplexMatrix k = ComplexMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) k(i * d + a, j * d + (i + a) % d) = u(i, j);
    }
    kraus.push_back(std::move(k));
  }
  RegisterLayout layout{{d, d}, 1, {d, d}, {0}};
  return finish("unitary", isometry_channel(u), maximally_coherent(d),
                KrausChannel(d * d, d * d, std::move(kraus)), std::move(layout));
}

SimulationBundle build_teleport_sim(const KrausChannel& t) {
  const int da = t.dim_in();
  const int d = t.dim_out();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<ComplexMatrix> kraus;
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const ComplexMatrix bra = bell_state(j, k, d).amplitudes().adjoint();
      const ComplexMatrix correction = teleport_correction(j, k, d);
      for (const auto& ka : t.kraus()) kraus.push_back(kron(bra * kron(ka, id), correction));
    }
  }
  RegisterLayout layout{{da, d, d}, 1, {d}, {0}};
  return finish("teleport", t, bell_state(0, 0, d), KrausChannel(da * d * d, d, std::move(kraus)),
                std::move(layout));
}

SimulationBundle build_sio_dilation_sim(const KrausChannel& t) {
  const int da = t.dim_in();
  const int db = t.dim_out();
  const int n = static_cast<int>(t.size());
  if (n > da) {
    throw std::invalid_argument("build_sio_dilation_sim: channel has " + std::to_string(n) +
                                " Kraus operators but the dilation supports at most |A| = " +
                                std::to_string(da));
  }
  const int dim = da * db;
  // Input ordering (A, B) with B initialized to |0>; output ordering (B, E)
  // with the environment E of dimension |A| labelling the Kraus operator.
  ComplexMatrix w = ComplexMatrix::Zero(dim, dim);
  std::vector<int> fixed;
  std::vector<int> open;
  for (int a = 0; a < da; ++a) {
    for (int alpha = 0; alpha < n; ++alpha) {
      for (int o = 0; o < db; ++o) w(o * da + alpha, a * db) = t.kraus()[alpha](o, a);
    }
    fixed.push_back(a * db);
    for (int b = 1; b < db; ++b) open.push_back(a * db + b);
  }
  complete_unitary(w, fixed, open);

  const SimulationBundle base = build_unitary_sim(w);
  // Embedding |a>|r> -> |a, 0>|r>, itself strictly incoherent.
  ComplexMatrix ket0 = ComplexMatrix::Zero(db, 1);
  ket0(0, 0) = 1.0;
  const ComplexMatrix embed = kron(kron(ComplexMatrix::Identity(da, da), ket0),
                                   ComplexMatrix::Identity(dim, dim));
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : base.protocol_kraus.kraus()) kraus.push_back(k * embed);
  RegisterLayout layout{{da, dim}, 1, {db, da, dim}, {0}};
  return finish("sio", t, maximally_coherent(dim), KrausChannel(da * dim, dim * dim, std::move(kraus)),
                std::move(layout));
}

KrausChannel induced_channel(const SimulationBundle& bundle) {
  const auto& reg = bundle.registers;
  const std::vector<int> system(reg.input_dims.begin(), reg.input_dims.begin() + reg.system_factors);
  const int din = product(system);
  const int dout_total = product(reg.output_dims);
  if (din * bundle.resource.dim() != product(reg.input_dims) ||
      bundle.protocol_kraus.dim_in() != product(reg.input_dims) ||
      bundle.protocol_kraus.dim_out() != dout_total) {
    throw std::invalid_argument("induced_channel: register layout does not match the protocol");
  }

  // For every output row, its index among kept factors and among traced ones.
  const int factors = static_cast<int>(reg.output_dims.size());
  std::vector<bool> kept(factors, false);
  for (int f : reg.kept_outputs) kept.at(f) = true;
  int kept_dim = 1;
  int traced_dim = 1;
  for (int f = 0; f < factors; ++f) (kept[f] ? kept_dim : traced_dim) *= reg.output_dims[f];
  std::vector<int> kept_index(dout_total);
  std::vector<int> traced_index(dout_total);
  for (int row = 0; row < dout_total; ++row) {
    int rest = row;
    int stride = dout_total;
    int ki = 0;
    int ti = 0;
    for (int f = 0; f < factors; ++f) {
      stride /= reg.output_dims[f];
      const int digit = rest / stride;
      rest %= stride;
      if (kept[f]) {
        ki = ki * reg.output_dims[f] + digit;
      } else {
        ti = ti * reg.output_dims[f] + digit;
      }
    }
    kept_index[row] = ki;
    traced_index[row] = ti;
  }

  const ComplexMatrix attach = kron(ComplexMatrix::Identity(din, din),
                                    ComplexMatrix(bundle.resource.amplitudes()));
  std::vector<ComplexMatrix> kraus;
  for (const auto& l : bundle.protocol_kraus.kraus()) {
    const ComplexMatrix m = l * attach;
    std::vector<ComplexMatrix> pieces(traced_dim, ComplexMatrix::Zero(kept_dim, din));
    for (int row = 0; row < dout_total; ++row) pieces[traced_index[row]].row(kept_index[row]) = m.row(row);
    for (auto& p : pieces) {
      if (p.cwiseAbs().maxCoeff() > 0.0) kraus.push_back(std::move(p));
    }
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(kept_dim, din));
  return KrausChannel(din, kept_dim, std::move(kraus));
}

std::vector<double> outcome_probabilities(const SimulationBundle& bundle, const DensityMatrix& rho) {
  const ComplexMatrix joint = kron(rho.matrix(), bundle.resource.projector());
  if (joint.rows() != bundle.protocol_kraus.dim_in()) {
    throw std::invalid_argument("outcome_probabilities: input dimension does not match the protocol");
  }
  std::vector<double> probs;
  for (const auto& l : bundle.protocol_kraus.kraus()) {
    probs.push_back((l * joint * l.adjoint()).trace().real());
  }
  return probs;
}

SimulationReport verify_simulation(const SimulationBundle& bundle, const VerifyTolerances& tol) {
  SimulationReport report;
  const auto& proto = bundle.protocol_kraus;
  report.completeness_residual = completeness_residual(proto.dim_in(), proto.kraus());
  try {
    report.choi_distance = channel_distance_choi(induced_channel(bundle), bundle.target);
  } catch (const std::invalid_argument&) {
    // The induced map is not trace preserving, so there is no channel to compare.
    const double inf = std::numeric_limits<double>::infinity();
    report.choi_distance = {inf, inf};
  }
  report.classification = classify_kraus(proto, tol.structural);
  report.incoherent = report.classification.channel_is_io_witnessed;
  report.strict = report.classification.channel_is_sio_witnessed;
  if (report.completeness_residual > tol.completeness) {
    report.failures.push_back("completeness residual " + std::to_string(report.completeness_residual));
  }
  if (report.choi_distance.upper > tol.choi) {
    report.failures.push_back("Choi distance " + std::to_string(report.choi_distance.upper));
  }
  for (std::size_t i = 0; i < report.classification.per_operator.size(); ++i) {
    if (!report.classification.per_operator[i].incoherent) {
      report.failures.push_back("Kraus operator " + std::to_string(i) + " is not incoherent");
    }
  }
  report.pass = report.failures.empty();
  return report;
}

std::vector<ComplexMatrix> feasibility_operators(double theta, double c_prime) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double cp = c_prime;
  const double sp = std::sqrt(1.0 - c_prime * c_prime);
  const double a = sp / cp; // s'/c'
  const double b = cp / sp; // c'/s'
  ComplexMatrix r1(2, 2), r2(2, 2), r3(2, 2), r4(2, 2);
  r1 << c * a, -s * b, s * b, c * a;
  r2 << -c * b, s * a, -s * a, -c * b;
  r3 << -c * b, -s * b, -s * a, c * a;
  r4 << c * a, s * a, s * b, -c * b;
  return {r1, r2, r3, r4};
}

FeasibilityReport qubit_resource_feasibility(double theta, double c_prime) {
  if (!(theta > 0.0 && theta <= std::numbers::pi / 4 + 1e-15)) {
    throw std::domain_error("qubit_resource_feasibility: theta must lie in (0, pi/4]");
  }
  if (!(c_prime > 0.0 && c_prime < 1.0)) {
    throw std::domain_error("qubit_resource_feasibility: c' must lie in (0, 1)");
  }
  const auto r = feasibility_operators(theta, c_prime);
  // Stack the real entries of R_i^T R_i and R_i into the columns of a
  // least-squares system a p ~ y (the operators are real).
  Eigen::Matrix<double, 8, 4> a;
  for (int i = 0; i < 4; ++i) {
    const Eigen::Matrix2d m = r[i].real();
    const Eigen::Matrix2d g = m.transpose() * m;
    a.col(i) << g(0, 0), g(0, 1), g(1, 0), g(1, 1), m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  }
  Eigen::Matrix<double, 8, 1> y;
  y << 1, 0, 0, 1, 0, 0, 0, 0;

  // Convex quadratic over the simplex: the minimizer is the equality-constrained
  // least-squares solution on one of the 15 faces. Enumerate them all.
  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector4d best_p = Eigen::Vector4d::Constant(0.25);
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<int> support;
    for (int i = 0; i < 4; ++i) {
      if (mask & (1 << i)) support.push_back(i);
    }
    const int n = static_cast<int>(support.size());
    Eigen::MatrixXd as(8, n);
    for (int i = 0; i < n; ++i) as.col(i) = a.col(support[i]);
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + 1, n + 1);
    kkt.topLeftCorner(n, n) = 2.0 * as.transpose() * as;
    kkt.topRightCorner(n, 1).setOnes();
    kkt.bottomLeftCorner(1, n).setOnes();
    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = 2.0 * as.transpose() * y;
    rhs(n) = 1.0;
    const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    Eigen::Vector4d p = Eigen::Vector4d::Zero();
    bool feasible = true;
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(sol(i)) || sol(i) < -1e-12) feasible = false;
      p(support[i]) = std::max(sol(i), 0.0);
    }
    if (!feasible || std::abs(p.sum() - 1.0) > 1e-9) continue;
    p /= p.sum();
    const double value = (a * p - y).squaredNorm();
    if (value < best) {
      best = value;
      best_p = p;
    }
  }
  return FeasibilityReport{c_prime, std::sqrt(1.0 - c_prime * c_prime), best,
                           {best_p(0), best_p(1), best_p(2), best_p(3)}};
}

std::vector<double> feasibility_grid(int points) {
  if (points < 2) throw std::invalid_argument("feasibility_grid: need at least two points");
  const double lo = 0.05;
  const double hi = 0.995;
  const double balanced = 1.0 / std::numbers::sqrt2;
  std::vector<double> grid(points);
  std::size_t nearest = 0;
  for (int i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * i / (points - 1);
    if (std::abs(grid[i] - balanced) < std::abs(grid[nearest] - balanced)) nearest = i;
  }
  grid[nearest] = balanced;
  return grid;
}

} // namespace coherence
