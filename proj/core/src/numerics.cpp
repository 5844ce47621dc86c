#include "coherence/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coherence {

namespace {

int product(std::span<const int> dims) {
  int p = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("tensor factor dimensions must be positive");
    p *= d;
  }
  return p;
}

// Decomposes a flat index into per-factor digits (first factor most significant).
void unflatten(int index, std::span<const int> dims, std::vector<int>& digits) {
  for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
    digits[f] = index % dims[f];
    index /= dims[f];
  }
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

} // namespace

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs_diff(a, b) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix partial_trace_keep(const ComplexMatrix& m, std::span<const int> dims,
                                 std::span<const int> kept) {
  const int total = product(dims);
  if (m.rows() != m.cols() || m.rows() != total) {
    throw std::invalid_argument("partial_trace: matrix side " + std::to_string(m.rows()) +
                                " does not match product of dims " + std::to_string(total));
  }
  const int n = static_cast<int>(dims.size());
  std::vector<bool> is_kept(n, false);
  int prev = -1;
  for (int k : kept) {
    if (k < 0 || k >= n || k <= prev) {
      throw std::invalid_argument("partial_trace: kept factor indices must be ascending and in range");
    }
    is_kept[k] = true;
    prev = k;
  }

  int kept_dim = 1;
  for (int f = 0; f < n; ++f) {
    if (is_kept[f]) kept_dim *= dims[f];
  }

  // Map each flat index to (kept composite index, traced composite index).
  std::vector<int> kept_of(total), traced_of(total), digits(n);
  for (int idx = 0; idx < total; ++idx) {
    unflatten(idx, dims, digits);
    int ki = 0, ti = 0;
    for (int f = 0; f < n; ++f) {
      if (is_kept[f]) {
        ki = ki * dims[f] + digits[f];
      } else {
        ti = ti * dims[f] + digits[f];
      }
    }
    kept_of[idx] = ki;
    traced_of[idx] = ti;
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (int r = 0; r < total; ++r) {
    for (int c = 0; c < total; ++c) {
      if (traced_of[r] == traced_of[c]) out(kept_of[r], kept_of[c]) += m(r, c);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims, int traced_index) {
  const int n = static_cast<int>(dims.size());
  if (traced_index < 0 || traced_index >= n) {
    throw std::invalid_argument("partial_trace: traced index out of range");
  }
  std::vector<int> kept;
  for (int f = 0; f < n; ++f) {
    if (f != traced_index) kept.push_back(f);
  }
  return partial_trace_keep(m, dims, kept);
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return (a + a.adjoint()) * 0.5;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eig: matrix is not square");
  if (a.size() > 0 && max_abs_diff(a, a.adjoint()) > kHermitianTolerance) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigen solver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eig: matrix is not square");
  if (a.size() > 0 && max_abs_diff(a, a.adjoint()) > kHermitianTolerance) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigen solver did not converge");
  }
  return solver.eigenvalues();
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > kEntropyCutoff) s -= p * std::log2(p);
  }
  return s;
}

double spectrum_entropy(const RealVector& eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -kNegativeClip) {
      throw std::domain_error("spectrum_entropy: eigenvalue " + std::to_string(lambda) +
                              " is too negative for a density matrix");
    }
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > kEntropyCutoff) s -= lambda * std::log2(lambda);
  }
  return s;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  return spectrum_entropy(hermitian_eigenvalues(rho));
}

double trace_norm_hermitian(const ComplexMatrix& a) {
  return hermitian_eigenvalues(a).cwiseAbs().sum();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  return trace_norm_hermitian(a - b);
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("binary_entropy: argument outside [0, 1]");
  }
  return 0.0 - (xlog2x(x) + xlog2x(1.0 - x));
}

double continuity_g(double x) {
  if (!(x >= 0.0)) throw std::domain_error("continuity_g: argument must be non-negative");
  return xlog2x(1.0 + x) - xlog2x(x);
}

BinaryEntropyAndG binary_entropy_and_g(double x) {
  return {binary_entropy(x), continuity_g(x)};
}

double isometry_defect(const ComplexMatrix& a) {
  const ComplexMatrix gram = a.adjoint() * a;
  return max_abs_diff(gram, ComplexMatrix::Identity(gram.rows(), gram.cols()));
}

} // namespace coherence
