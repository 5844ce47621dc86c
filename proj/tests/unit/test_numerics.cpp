#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "coherence/numerics.hpp"
#include "coherence/random.hpp"
#include "coherence/states.hpp"

using namespace coherence;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
  RealVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

ComplexMatrix random_hermitian(int d, Rng& rng) {
  const ComplexMatrix g = rng.ginibre(d, d);
  return hermitian_part(g);
}

} // namespace

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_TRUE(approx_equal(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
                           ComplexMatrix::Identity(4, 4), 0.0));
}

TEST(Kron, DiagonalArithmetic) {
  EXPECT_TRUE(approx_equal(kron(diag({1, 2}), diag({3, 4})), diag({3, 4, 6, 8}), 0.0));
}

TEST(Kron, FlipBothQubits) {
  ComplexVector ket00 = ComplexVector::Zero(4);
  ket00(0) = 1.0;
  const ComplexVector out = kron(pauli_x(), pauli_x()) * ket00;
  ComplexVector ket11 = ComplexVector::Zero(4);
  ket11(3) = 1.0;
  EXPECT_TRUE(approx_equal(out, ket11, 0.0));
}

TEST(Kron, IndexConvention) {
  Rng rng(3);
  const ComplexMatrix a = rng.ginibre(2, 3);
  const ComplexMatrix b = rng.ginibre(3, 2);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 2; ++c) EXPECT_EQ(k(i * 3 + r, j * 2 + c), a(i, j) * b(r, c));
}

TEST(Kron, AssociativeAndBilinear) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const ComplexMatrix a = rng.ginibre(2, 2);
    const ComplexMatrix b = rng.ginibre(2, 1);
    const ComplexMatrix b2 = rng.ginibre(2, 1);
    const ComplexMatrix c = rng.ginibre(1, 2);
    const Complex s = rng.complex_normal();
    EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
    EXPECT_LE(max_abs_diff(kron(a, s * b + b2), s * kron(a, b) + kron(a, b2)), 1e-12);
    EXPECT_LE(max_abs_diff(kron(s * a, b), s * kron(a, b)), 1e-12);
  }
}

TEST(Kron, KronAllMatchesFold) {
  Rng rng(5);
  const std::vector<ComplexMatrix> f = {rng.ginibre(2, 2), rng.ginibre(3, 1), rng.ginibre(1, 2)};
  EXPECT_LE(max_abs_diff(kron_all(f), kron(kron(f[0], f[1]), f[2])), 1e-12);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const int dims[] = {2, 2};
  EXPECT_LE(max_abs_diff(partial_trace(phi * phi.adjoint(), dims, 1), 0.5 * ComplexMatrix::Identity(2, 2)),
            1e-15);
}

TEST(PartialTrace, MaximallyMixedFirstFactor) {
  const int dims[] = {2, 2};
  EXPECT_LE(max_abs_diff(partial_trace(0.25 * ComplexMatrix::Identity(4, 4), dims, 0),
                         0.5 * ComplexMatrix::Identity(2, 2)),
            1e-15);
}

TEST(PartialTrace, ProductRecoversFactor) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const ComplexMatrix a = rng.ginibre(3, 3);
    const ComplexMatrix b = rng.ginibre(2, 2);
    const int dims[] = {3, 2};
    EXPECT_LE(max_abs_diff(partial_trace(kron(a, b), dims, 1), a * b.trace()), 1e-12);
    EXPECT_LE(max_abs_diff(partial_trace(kron(a, b), dims, 0), b * a.trace()), 1e-12);
  }
}

TEST(PartialTrace, KeepSubsetOfThree) {
  Rng rng(9);
  const ComplexMatrix a = rng.ginibre(2, 2);
  const ComplexMatrix b = rng.ginibre(3, 3);
  const ComplexMatrix c = rng.ginibre(2, 2);
  const int dims[] = {2, 3, 2};
  const int kept[] = {0, 2};
  EXPECT_LE(max_abs_diff(partial_trace_keep(kron(kron(a, b), c), dims, kept), kron(a, c) * b.trace()), 1e-12);
}

TEST(PartialTrace, RejectsBadInput) {
  const int dims[] = {2, 2};
  EXPECT_THROW(partial_trace(ComplexMatrix::Identity(3, 3), dims, 0), std::invalid_argument);
  EXPECT_THROW(partial_trace(ComplexMatrix::Identity(4, 4), dims, 2), std::invalid_argument);
}

TEST(HermitianEig, KnownSpectra) {
  EXPECT_LE((hermitian_eigenvalues(diag({1, 0})) - RealVector::LinSpaced(2, 0, 1)).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_LE((hermitian_eigenvalues(pauli_x()) - RealVector::LinSpaced(2, -1, 1)).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_LE((hermitian_eigenvalues(maximally_coherent(2).projector()) - RealVector::LinSpaced(2, 0, 1))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
}

TEST(HermitianEig, ReconstructsInput) {
  Rng rng(2);
  const ComplexMatrix h = random_hermitian(5, rng);
  const EigenDecomposition e = hermitian_eig(h);
  const ComplexMatrix back = e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
  EXPECT_LE(max_abs_diff(back, h), 1e-12);
  EXPECT_LE(isometry_defect(e.eigenvectors), 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_THROW(hermitian_eig(m), std::invalid_argument);
  EXPECT_THROW(hermitian_eig(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST(Entropy, KnownValues) {
  EXPECT_NEAR(von_neumann_entropy(maximally_coherent(3).projector()), 0.0, 1e-12);
  for (int d = 2; d <= 5; ++d) {
    EXPECT_NEAR(von_neumann_entropy(ComplexMatrix::Identity(d, d) / d), std::log2(d), 1e-12);
  }
  EXPECT_NEAR(von_neumann_entropy(diag({0.75, 0.25})), 0.811278124459, 1e-11);
}

TEST(Entropy, UnitaryInvariance) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const ComplexMatrix rho = random_state(4, StateKind::Mixed, seed).matrix();
    const ComplexMatrix u = haar_unitary(4, rng);
    EXPECT_NEAR(von_neumann_entropy(u * rho * u.adjoint()), von_neumann_entropy(rho), 1e-9);
  }
}

TEST(Entropy, RejectsNegativeSpectrum) {
  EXPECT_THROW(spectrum_entropy(RealVector::Constant(2, -0.1)), std::domain_error);
}

TEST(TraceDistance, KnownValues) {
  const ComplexMatrix rho = random_state(3, StateKind::Mixed, 1).matrix();
  EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-12);
  EXPECT_NEAR(trace_distance(diag({1, 0}), diag({0, 1})), 2.0, 1e-15);
  EXPECT_NEAR(trace_distance(diag({0.5, 0.5}), diag({1, 0})), 1.0, 1e-15);
}

TEST(TraceDistance, TriangleInequality) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const ComplexMatrix a = random_hermitian(3, rng);
    const ComplexMatrix b = random_hermitian(3, rng);
    const ComplexMatrix c = random_hermitian(3, rng);
    EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-10);
    EXPECT_NEAR(trace_distance(a, b), trace_distance(b, a), 1e-12);
  }
}

TEST(BinaryEntropy, EndpointsAndMidpoint) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_FALSE(std::signbit(binary_entropy(1.0)));
  EXPECT_EQ(continuity_g(0.0), 0.0);
  EXPECT_DOUBLE_EQ(continuity_g(1.0), 2.0);
  const auto both = binary_entropy_and_g(0.25);
  EXPECT_NEAR(both.h2, 0.811278124459, 1e-11);
  EXPECT_NEAR(both.g, 1.25 * std::log2(1.25) - 0.25 * std::log2(0.25), 1e-14);
}

TEST(BinaryEntropy, DomainErrors) {
  EXPECT_THROW(binary_entropy(-0.1), std::domain_error);
  EXPECT_THROW(binary_entropy(1.1), std::domain_error);
  EXPECT_THROW(continuity_g(-1.0), std::domain_error);
}
