#include "coherence/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "coherence/optimize.hpp"

namespace coherence {

namespace {

constexpr double kRankCutoff = 1e-12;
constexpr double kTinyWeight = 1e-300;

// Ensemble objective for a fixed eigen-factor B (n x r): the ensemble is the
// set of rows of Psi = Q B^T for an m x r isometry Q.
class RoofProblem {
 public:
  RoofProblem(ComplexMatrix factor, int ensemble_size)
      : b_(std::move(factor)), m_(ensemble_size), r_(static_cast<int>(b_.cols())) {}

  int ensemble_size() const { return m_; }
  int rank() const { return r_; }

  double value(const ComplexMatrix& q) const {
    const ComplexMatrix psi = q * b_.transpose();
    double total = 0.0;
    for (Eigen::Index j = 0; j < psi.rows(); ++j) {
      double weight = 0.0, row = 0.0;
      for (Eigen::Index k = 0; k < psi.cols(); ++k) {
        const double p = std::norm(psi(j, k));
        weight += p;
        if (p > kTinyWeight) row -= p * std::log2(p);
      }
      if (weight > kTinyWeight) row += weight * std::log2(weight);
      total += row;
    }
    return total;
  }

  // Wirtinger gradient dE/d(conj Q), so that dE = 2 Re tr(G^dagger dQ).
  ComplexMatrix gradient(const ComplexMatrix& q) const {
    const ComplexMatrix psi = q * b_.transpose();
    ComplexMatrix g_psi = ComplexMatrix::Zero(psi.rows(), psi.cols());
    for (Eigen::Index j = 0; j < psi.rows(); ++j) {
      const double weight = psi.row(j).squaredNorm();
      if (weight <= kTinyWeight) continue;
      for (Eigen::Index k = 0; k < psi.cols(); ++k) {
        const double p = std::norm(psi(j, k));
        if (p > kTinyWeight) g_psi(j, k) = std::log2(weight / p) * psi(j, k);
      }
    }
    return g_psi * b_.conjugate();
  }

  std::vector<EnsembleMember> ensemble(const ComplexMatrix& q) const {
    const ComplexMatrix psi = q * b_.transpose();
    std::vector<EnsembleMember> out;
    for (Eigen::Index j = 0; j < psi.rows(); ++j) {
      const ComplexVector v = psi.row(j).transpose();
      const double weight = v.squaredNorm();
      if (weight <= kRankCutoff * kRankCutoff) continue;
      out.push_back({weight, PureState::normalized(v)});
    }
    // Renormalize away the dropped negligible weights.
    double total = 0.0;
    for (const auto& e : out) total += e.probability;
    for (auto& e : out) e.probability /= total;
    return out;
  }

 private:
  ComplexMatrix b_;
  int m_;
  int r_;
};

// Q = A (A^dagger A)^{-1/2}; returns false for (near) rank-deficient A.
bool polar_isometry(const ComplexMatrix& a, ComplexMatrix& q) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.adjoint() * a);
  const RealVector& w = solver.eigenvalues();
  if (w.minCoeff() <= 1e-14 * std::max(1.0, w.maxCoeff())) return false;
  const ComplexMatrix& v = solver.eigenvectors();
  q = a * (v * w.cwiseSqrt().cwiseInverse().asDiagonal() * v.adjoint());
  return true;
}

ComplexMatrix unpack(std::span<const double> x, int rows, int cols) {
  ComplexMatrix a(rows, cols);
  const std::size_t half = static_cast<std::size_t>(rows) * cols;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * cols + j;
      a(i, j) = Complex(x[idx], x[half + idx]);
    }
  }
  return a;
}

// Thin QR retraction with positive-real diagonal of R.
ComplexMatrix qr_retract(const ComplexMatrix& y) {
  Eigen::HouseholderQR<ComplexMatrix> qr(y);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(y.rows(), y.cols());
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

struct RoofRun {
  ComplexMatrix q;
  double value;
  double residual;
};

RoofRun simplex_run(const RoofProblem& problem, const std::vector<double>& x0,
                    const ConvexRoofConfig& cfg) {
  const int m = problem.ensemble_size();
  const int r = problem.rank();
  const Objective objective = [&](std::span<const double> x) {
    ComplexMatrix q;
    if (!polar_isometry(unpack(x, m, r), q)) return std::numeric_limits<double>::max();
    return problem.value(q);
  };
  LocalSearchOptions local;
  // Simplex searches need far more iterations than gradient steps once the
  // ensemble has a few dozen real parameters.
  const int dim = static_cast<int>(x0.size());
  local.max_iterations = std::max(cfg.max_iterations, 200 * dim);
  local.rebuilds = 6;
  local.stall_window = std::max(cfg.stall_window, 2 * dim);
  local.stall_tolerance = cfg.stall_tolerance;
  const LocalSearchResult res = nelder_mead(objective, x0, local);
  ComplexMatrix q;
  if (!polar_isometry(unpack(res.x, m, r), q)) {
    throw std::runtime_error("coherence_of_formation: optimizer ended at a singular point");
  }
  return {q, problem.value(q), res.residual};
}

RoofRun gradient_run(const RoofProblem& problem, ComplexMatrix q, const ConvexRoofConfig& cfg) {
  double f = problem.value(q);
  double step = 0.5;
  double grad_norm = std::numeric_limits<double>::infinity();
  std::vector<double> history{f};
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const ComplexMatrix g = problem.gradient(q);
    const ComplexMatrix qg = q.adjoint() * g;
    const ComplexMatrix xi = g - q * hermitian_part(qg);
    grad_norm = xi.norm();
    if (grad_norm < 1e-12) break;

    // Armijo backtracking along the retracted steepest-descent curve.
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      const ComplexMatrix candidate = qr_retract(q - step * xi);
      const double fc = problem.value(candidate);
      if (fc <= f - 1e-4 * step * 2.0 * grad_norm * grad_norm) {
        q = candidate;
        f = fc;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    step = std::min(step * 2.0, 10.0);

    history.push_back(f);
    const auto n = static_cast<int>(history.size());
    if (n > cfg.stall_window &&
        history[n - 1 - cfg.stall_window] - f < cfg.stall_tolerance) {
      break;
    }
  }
  return {q, f, grad_norm};
}

std::vector<EnsembleMember> incoherent_ensemble(const DensityMatrix& rho) {
  std::vector<EnsembleMember> out;
  for (int i = 0; i < rho.dim(); ++i) {
    const double p = rho.matrix()(i, i).real();
    if (p > kRankCutoff) out.push_back({p, PureState::basis(rho.dim(), i)});
  }
  return out;
}

// Two pure states sharing rho's off-diagonal element, one above and one
// below rho on the Bloch axis through it.
std::vector<EnsembleMember> qubit_optimal_ensemble(const DensityMatrix& rho) {
  const Complex off = rho.matrix()(0, 1);
  const double rz = rho.matrix()(0, 0).real() - rho.matrix()(1, 1).real();
  const double z0 = std::sqrt(std::max(0.0, 1.0 - 4.0 * std::norm(off)));
  std::vector<EnsembleMember> out;
  for (double sign : {1.0, -1.0}) {
    const double p = 0.5 * (1.0 + sign * rz / z0);
    if (p <= kRankCutoff) continue;
    const double a0 = std::sqrt(0.5 * (1.0 + sign * z0));
    ComplexVector v(2);
    v(0) = a0;
    v(1) = std::conj(off) / a0;
    out.push_back({p, PureState::normalized(v)});
  }
  return out;
}

} // namespace

double entropy_of_coherence(const PureState& phi) {
  std::vector<double> probs(phi.dim());
  for (int i = 0; i < phi.dim(); ++i) probs[i] = std::norm(phi[i]);
  return shannon_entropy(probs);
}

double relative_entropy_of_coherence(const DensityMatrix& rho) {
  const RealVector diag = rho.matrix().diagonal().real();
  std::vector<double> probs(diag.data(), diag.data() + diag.size());
  const double value = shannon_entropy(probs) - von_neumann_entropy(rho.matrix());
  return std::max(0.0, value);
}

double qubit_coherence_of_formation(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("qubit_coherence_of_formation: state is not a qubit");
  const double c = std::abs(rho.matrix()(0, 1));
  const double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * c * c));
  return binary_entropy(std::clamp(0.5 * (1.0 + root), 0.0, 1.0));
}

double ensemble_coherence(const std::vector<EnsembleMember>& ensemble) {
  double total = 0.0;
  for (const auto& e : ensemble) total += e.probability * entropy_of_coherence(e.state);
  return total;
}

ComplexMatrix ensemble_average(const std::vector<EnsembleMember>& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("ensemble_average: empty ensemble");
  const int d = ensemble.front().state.dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& e : ensemble) out += e.probability * e.state.projector();
  return out;
}

ConvexRoofResult coherence_of_formation(const DensityMatrix& rho, const ConvexRoofConfig& cfg) {
  if (rho.dim() > cfg.max_dim) {
    throw std::invalid_argument("coherence_of_formation: dimension " + std::to_string(rho.dim()) +
                                " exceeds the optimizer limit " + std::to_string(cfg.max_dim));
  }
  if (cfg.restarts < 1) throw std::invalid_argument("coherence_of_formation: restarts must be >= 1");
  ConvexRoofResult result;

  if (max_off_diagonal(rho.matrix()) <= kRankCutoff) {
    result.ensemble = incoherent_ensemble(rho);
    result.value = 0.0;
    result.analytic = true;
    return result;
  }

  const EigenDecomposition eig = hermitian_eig(rho.matrix());
  std::vector<int> support;
  for (int i = rho.dim() - 1; i >= 0; --i) {
    if (eig.eigenvalues(i) > kRankCutoff) support.push_back(i);
  }
  const int rank = static_cast<int>(support.size());

  if (rank == 1) {
    const PureState phi = PureState::normalized(eig.eigenvectors.col(support.front()));
    result.value = entropy_of_coherence(phi);
    result.ensemble.push_back({1.0, phi});
    result.analytic = true;
    return result;
  }

  if (rho.dim() == 2 && cfg.qubit_closed_form) {
    result.value = qubit_coherence_of_formation(rho);
    result.ensemble = qubit_optimal_ensemble(rho);
    result.analytic = true;
    return result;
  }

  ComplexMatrix factor(rho.dim(), rank);
  for (int c = 0; c < rank; ++c) {
    factor.col(c) = eig.eigenvectors.col(support[c]) * std::sqrt(eig.eigenvalues(support[c]));
  }
  const int m = cfg.ensemble_size > 0 ? std::max(cfg.ensemble_size, rank) : rank * rank;
  const RoofProblem problem(factor, m);

  const int parameters = 2 * m * rank;
  const bool use_gradient = cfg.method == RoofMethod::Gradient ||
                            (cfg.method == RoofMethod::Auto && parameters > cfg.max_simplex_parameters);

  std::vector<RoofRun> runs;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(r));
    if (use_gradient) {
      runs.push_back(gradient_run(problem, haar_isometry(m, rank, rng), cfg));
    } else {
      std::vector<double> x0(parameters);
      for (double& v : x0) v = rng.normal();
      runs.push_back(simplex_run(problem, x0, cfg));
    }
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].value < runs[best].value) best = r;
  }
  double second = runs[best].value;
  bool have_second = false;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (r == best) continue;
    if (!have_second || runs[r].value < second) {
      second = runs[r].value;
      have_second = true;
    }
  }

  result.ensemble = problem.ensemble(runs[best].q);
  result.value = ensemble_coherence(result.ensemble);
  result.residual = runs[best].residual;
  result.restart_gap = second - runs[best].value;
  result.restarts_used = cfg.restarts;
  return result;
}

int coherence_rank(const PureState& phi, double tol) {
  int count = 0;
  for (int i = 0; i < phi.dim(); ++i) {
    if (std::abs(phi[i]) > tol) ++count;
  }
  return count;
}

} // namespace coherence
