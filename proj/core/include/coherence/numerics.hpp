#pragma once

// Dense complex linear algebra and entropy primitives.
//
// Every logarithm in this library is base 2, so entropies and coherence
// quantities come out in bits (a maximally coherent qubit carries one bit).

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace coherence {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Absolute tolerance used by comparisons unless a caller passes its own.
inline constexpr double kDefaultTolerance = 1e-10;

/// Tolerance on Hermiticity accepted by the eigen solver and state checks.
inline constexpr double kHermitianTolerance = 1e-8;

/// Eigenvalues in [-kNegativeClip, 0) are treated as numerical drift and
/// clipped to zero; anything more negative is rejected.
inline constexpr double kNegativeClip = 1e-9;

/// Eigenvalues at or below this contribute nothing to an entropy.
inline constexpr double kEntropyCutoff = 1e-12;

/// Largest entrywise absolute difference.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entrywise comparison with an explicit absolute tolerance. Shapes must match.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kDefaultTolerance);

/// Kronecker product with index convention (i*rows_b + k, j*cols_b + l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product of a list of factors, left to right.
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

/// Partial trace of a square operator on the tensor product described by
/// `dims`, tracing out factor `traced_index`.
///
/// Throws std::invalid_argument if m is not square with side prod(dims) or
/// if the index is out of range.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            int traced_index);

/// Traces out every factor whose index is not in `kept` (kept order must be
/// ascending). Returns an operator on the kept factors in their original order.
ComplexMatrix partial_trace_keep(const ComplexMatrix& m, std::span<const int> dims,
                                 std::span<const int> kept);

struct EigenDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (A + A^dagger)/2 before solving.
///
/// Throws std::invalid_argument for non-square input or when A deviates from
/// Hermitian by more than kHermitianTolerance.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

/// Eigenvalues only, ascending; same preconditions as hermitian_eig.
RealVector hermitian_eigenvalues(const ComplexMatrix& a);

/// Shannon entropy (bits) of a probability vector; entries <= kEntropyCutoff
/// contribute 0.
double shannon_entropy(std::span<const double> probabilities);

/// Entropy (bits) of a density-matrix spectrum after clipping to [0, 1].
/// Throws std::domain_error for eigenvalues below -kNegativeClip.
double spectrum_entropy(const RealVector& eigenvalues);

/// Von Neumann entropy S(rho) in bits of a Hermitian, trace-one matrix.
double von_neumann_entropy(const ComplexMatrix& rho);

/// Trace norm ||a||_1 of a Hermitian matrix (sum of absolute eigenvalues).
double trace_norm_hermitian(const ComplexMatrix& a);

/// ||a - b||_1 for Hermitian a, b of equal shape. Note: not halved, so two
/// orthogonal pure states are at distance 2.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Binary entropy h2(x) = -x log x - (1-x) log(1-x), x in [0, 1].
double binary_entropy(double x);

/// g(x) = (1+x) log(1+x) - x log x for x >= 0, the correction term of the
/// Alicki-Fannes-Winter continuity bounds.
double continuity_g(double x);

struct BinaryEntropyAndG {
  double h2;
  double g;
};

/// Both functions at once; x must lie in [0, 1].
BinaryEntropyAndG binary_entropy_and_g(double x);

/// Returns (A + A^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Largest entrywise deviation of a^dagger a from the identity.
double isometry_defect(const ComplexMatrix& a);

} // namespace coherence
