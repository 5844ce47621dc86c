#pragma once

// Quantum states relative to a fixed incoherent (computational) basis.
// Composite systems use the tensor-product basis, so a product of basis
// vectors is again incoherent.

#include <cstdint>

#include "coherence/numerics.hpp"

namespace coherence {

class DensityMatrix;

/// Normalized state vector.
class PureState {
 public:
  /// Validates unit norm within 1e-10; throws std::invalid_argument otherwise.
  explicit PureState(ComplexVector amplitudes);

  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(ComplexVector amplitudes);

  /// |index> in dimension dim.
  static PureState basis(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }

  ComplexMatrix projector() const;
  DensityMatrix density() const;

 private:
  ComplexVector amplitudes_;
};

/// Trace-one positive semidefinite Hermitian operator.
class DensityMatrix {
 public:
  /// Validates the invariants (Hermitian within 1e-8, eigenvalues >= -1e-9,
  /// trace within 1e-9 of 1) and stores the Hermitian part.
  /// Throws std::invalid_argument on violation.
  explicit DensityMatrix(const ComplexMatrix& mat);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& matrix() const { return mat_; }

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix mat, Unchecked) : mat_(std::move(mat)) {}
  friend DensityMatrix dephase(const DensityMatrix&);
  friend DensityMatrix tensor(const DensityMatrix&, const DensityMatrix&);
  friend class PureState;

  ComplexMatrix mat_;
};

/// Checks the density-matrix invariants without throwing.
bool is_density_matrix(const ComplexMatrix& mat);

/// Uniform superposition (1/sqrt d) sum_i |i>.
PureState maximally_coherent(int d);

/// Zeroes every off-diagonal entry.
DensityMatrix dephase(const DensityMatrix& rho);

/// rho (x) sigma.
DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Unitary discrete Fourier matrix F_{jk} = omega^{jk} / sqrt d.
ComplexMatrix fourier_matrix(int d);

/// The 2d-dimensional block state (1/2d) [[I, F], [F^dagger, I]] with F the
/// d-dimensional Fourier matrix.
DensityMatrix flower_state(int d);

/// True iff every off-diagonal entry has magnitude <= tol.
bool is_incoherent_state(const DensityMatrix& rho, double tol = 1e-8);

/// Largest off-diagonal magnitude of a square matrix.
double max_off_diagonal(const ComplexMatrix& m);

enum class StateKind { Pure, Mixed };

/// Random state, deterministic in `seed`. Pure: normalized vector of
/// independent complex Gaussians (Haar). Mixed: G G^dagger / tr(G G^dagger)
/// for a square complex Gaussian G.
DensityMatrix random_state(int dim, StateKind kind, std::uint64_t seed);

/// Haar-random pure state.
PureState random_pure_state(int dim, std::uint64_t seed);

} // namespace coherence
