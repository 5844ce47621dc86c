#pragma once

// CPTP maps as Kraus families, their Choi matrices, and incoherence tests.

#include <cstdint>
#include <vector>

#include "coherence/states.hpp"

namespace coherence {

/// Completeness tolerance used when validating Kraus families.
inline constexpr double kCompletenessTolerance = 1e-9;

/// Tolerance for structural zero tests in the classifiers.
inline constexpr double kStructuralTolerance = 1e-8;

/// CPTP map A -> B given by a non-empty Kraus family (each dim_out x dim_in).
class KrausChannel {
 public:
  /// Validates shapes and sum_a K_a^dagger K_a = I within `tol`; throws
  /// std::invalid_argument otherwise.
  KrausChannel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus,
               double tol = kCompletenessTolerance);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  std::size_t size() const { return kraus_.size(); }

 private:
  int dim_in_;
  int dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// Largest entrywise deviation of sum K^dagger K from the identity.
double completeness_residual(int dim_in, const std::vector<ComplexMatrix>& kraus);

/// Unnormalized Choi matrix J = sum_ij |i><j| (x) T(|i><j|), input factor first.
struct ChoiMatrix {
  int dim_in;
  int dim_out;
  ComplexMatrix mat;
};

struct KrausFlags {
  bool incoherent;
  bool strictly_incoherent;
};

/// Per-operator flags relative to the given decomposition. The channel flags
/// are conjunctions: a false flag does not rule out another decomposition
/// with the property.
struct KrausClassification {
  std::vector<KrausFlags> per_operator;
  bool channel_is_io_witnessed = true;
  bool channel_is_sio_witnessed = true;
};

/// Diamond-norm bracket derived from the Choi trace norm:
/// ||J(a)-J(b)||_1 / dim_in <= ||a - b||_diamond <= ||J(a)-J(b)||_1.
struct DiamondBracket {
  double lower;
  double upper;
};

KrausChannel identity_channel(int d);
KrausChannel dephasing_channel(int d);
/// Single-Kraus channel rho -> V rho V^dagger for an isometry V.
KrausChannel isometry_channel(const ComplexMatrix& v);

/// Random channel with `num_kraus` operators obtained by slicing a Haar
/// isometry C^{dim_in} -> C^{dim_out} (x) C^{num_kraus}.
KrausChannel random_channel(int dim_in, int dim_out, int num_kraus, std::uint64_t seed);

/// Linear action sum_a K_a X K_a^dagger on an arbitrary operator.
ComplexMatrix apply_map(const KrausChannel& t, const ComplexMatrix& x);

/// T(rho). Throws std::invalid_argument on dimension mismatch.
DensityMatrix apply_channel(const KrausChannel& t, const DensityMatrix& rho);

ChoiMatrix choi_matrix(const KrausChannel& t);

DiamondBracket channel_distance_choi(const KrausChannel& a, const KrausChannel& b);

/// True iff every column has at most one entry of magnitude > tol.
bool is_incoherent_operator(const ComplexMatrix& k, double tol = kStructuralTolerance);

/// Incoherent and every row has at most one entry of magnitude > tol.
bool is_strictly_incoherent_operator(const ComplexMatrix& k, double tol = kStructuralTolerance);

KrausClassification classify_kraus(const KrausChannel& t, double tol = kStructuralTolerance);

/// Maximally incoherent: every basis projector is mapped to a state whose
/// off-diagonal entries are all <= tol. Basis states suffice by linearity.
bool is_mio(const KrausChannel& t, double tol = kStructuralTolerance);

/// Kraus family {A_i (x) B_j}.
KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b);

/// Kraus family {K_a (x) I_k}.
KrausChannel extend_with_identity(const KrausChannel& t, int k);

} // namespace coherence
