#include "coherence/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "coherence/random.hpp"

namespace coherence {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kTraceTolerance = 1e-9;

void require_positive(int d, const char* what) {
  if (d <= 0) throw std::invalid_argument(std::string(what) + ": dimension must be positive");
}

} // namespace

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw std::invalid_argument("PureState: empty amplitude vector");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("PureState: vector norm " + std::to_string(norm) + " is not 1");
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("PureState: cannot normalize a zero vector");
  return PureState(amplitudes / norm);
}

PureState PureState::basis(int dim, int index) {
  require_positive(dim, "PureState::basis");
  if (index < 0 || index >= dim) throw std::invalid_argument("PureState::basis: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

ComplexMatrix PureState::projector() const {
  return amplitudes_ * amplitudes_.adjoint();
}

DensityMatrix PureState::density() const {
  return DensityMatrix(projector(), DensityMatrix::Unchecked{});
}

bool is_density_matrix(const ComplexMatrix& mat) {
  if (mat.rows() == 0 || mat.rows() != mat.cols()) return false;
  if (max_abs_diff(mat, mat.adjoint()) > kHermitianTolerance) return false;
  if (std::abs(mat.trace() - Complex(1.0)) > kTraceTolerance) return false;
  return hermitian_eigenvalues(mat).minCoeff() >= -kNegativeClip;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& mat) {
  if (mat.rows() == 0 || mat.rows() != mat.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
  }
  if (max_abs_diff(mat, mat.adjoint()) > kHermitianTolerance) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  const Complex tr = mat.trace();
  if (std::abs(tr - Complex(1.0)) > kTraceTolerance) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  const double min_eig = hermitian_eigenvalues(mat).minCoeff();
  if (min_eig < -kNegativeClip) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }
  mat_ = hermitian_part(mat);
}

PureState maximally_coherent(int d) {
  require_positive(d, "maximally_coherent");
  return PureState(ComplexVector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)))));
}

DensityMatrix dephase(const DensityMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  out.diagonal() = rho.matrix().diagonal();
  return DensityMatrix(std::move(out), DensityMatrix::Unchecked{});
}

DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return DensityMatrix(kron(rho.matrix(), sigma.matrix()), DensityMatrix::Unchecked{});
}

ComplexMatrix fourier_matrix(int d) {
  require_positive(d, "fourier_matrix");
  ComplexMatrix f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      // Reduce the exponent first so large j*k keeps full phase accuracy.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
      f(j, k) = std::polar(scale, angle);
    }
  }
  return f;
}

DensityMatrix flower_state(int d) {
  require_positive(d, "flower_state");
  const ComplexMatrix f = fourier_matrix(d);
  ComplexMatrix m(2 * d, 2 * d);
  m.topLeftCorner(d, d).setIdentity();
  m.bottomRightCorner(d, d).setIdentity();
  m.topRightCorner(d, d) = f;
  m.bottomLeftCorner(d, d) = f.adjoint();
  return DensityMatrix(m / (2.0 * d));
}

double max_off_diagonal(const ComplexMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

bool is_incoherent_state(const DensityMatrix& rho, double tol) {
  return max_off_diagonal(rho.matrix()) <= tol;
}

PureState random_pure_state(int dim, std::uint64_t seed) {
  require_positive(dim, "random_pure_state");
  Rng rng(seed);
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return PureState::normalized(std::move(v));
}

DensityMatrix random_state(int dim, StateKind kind, std::uint64_t seed) {
  require_positive(dim, "random_state");
  if (kind == StateKind::Pure) return random_pure_state(dim, seed).density();
  Rng rng(seed);
  const ComplexMatrix g = rng.ginibre(dim, dim);
  const ComplexMatrix gg = g * g.adjoint();
  return DensityMatrix(gg / gg.trace().real());
}

} // namespace coherence
