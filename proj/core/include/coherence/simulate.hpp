#pragma once

// Exact channel simulations that consume a maximally coherent resource under
// incoherent operations, plus the qubit-resource feasibility analysis for
// qubit rotations.

#include <string>
#include <vector>

#include "coherence/channels.hpp"

namespace coherence {

/// Tensor-factor bookkeeping of a protocol. The protocol Kraus operators act
/// on (system factors) (x) (resource factors) and output onto `output_dims`;
/// the simulated output is the reduction onto `kept_outputs`.
struct RegisterLayout {
  std::vector<int> input_dims;
  int system_factors = 1;
  std::vector<int> output_dims;
  std::vector<int> kept_outputs;
};

struct SimulationBundle {
  std::string protocol;
  KrausChannel target;
  PureState resource;
  KrausChannel protocol_kraus;
  RegisterLayout registers;
  /// Every protocol Kraus operator passed the strict (row and column) test.
  bool strict = false;
};

struct GeneralizedPaulis {
  ComplexMatrix z; // diag(1, w, ..., w^{d-1}), w = exp(2 pi i / d)
  ComplexMatrix x; // X|m> = |m+1 mod d>
};

GeneralizedPaulis generalized_paulis(int d);

/// (I (x) Z^j X^k)|Phi_d> with |Phi_d> = d^{-1/2} sum_m |m m>.
PureState bell_state(int j, int k, int d);

/// Correction applied on the receiving register after Bell outcome (j, k):
/// (Z^j X^k)^T, which undoes the conjugated Pauli left by the projection.
ComplexMatrix teleport_correction(int j, int k, int d);

/// Unitary U on C^d from one copy of Psi_d with
/// K_a = sum_ij U_ij |i><j| (x) |a><i+a mod d|; registers (system, ancilla).
/// Throws std::invalid_argument if U is not unitary within 1e-9.
SimulationBundle build_unitary_sim(const ComplexMatrix& u);

/// Any channel A -> B by teleporting its output through a d = |B| resource
/// prepared as d^{-1/2} sum_m |m>_{B'} |m>_{B''}.
/// Kraus: L_{jka} = [<Phi^{(jk)}| (K_a (x) I)]^{A B'} (x) U_{jk}^{B''}.
SimulationBundle build_teleport_sim(const KrausChannel& t);

/// Channel with at most |A| Kraus operators: Stinespring isometry
/// |phi>|0> -> sum_a K_a|phi> (x) |a>, completed to a unitary on C^{|A||B|}
/// by Gram-Schmidt over canonical basis vectors, then simulated with
/// build_unitary_sim consuming Psi_{|A||B|}.
/// Throws std::invalid_argument for too many Kraus operators and
/// std::runtime_error if the completion fails.
SimulationBundle build_sio_dilation_sim(const KrausChannel& t);

/// Map rho -> reduction onto kept outputs of protocol(rho (x) resource),
/// returned as a Kraus family.
KrausChannel induced_channel(const SimulationBundle& bundle);

/// Probability of each protocol Kraus outcome for input rho.
std::vector<double> outcome_probabilities(const SimulationBundle& bundle, const DensityMatrix& rho);

struct VerifyTolerances {
  double completeness = 1e-9;
  double choi = 1e-8;
  double structural = kStructuralTolerance;
};

struct SimulationReport {
  double completeness_residual = 0.0;
  DiamondBracket choi_distance{0.0, 0.0};
  KrausClassification classification;
  bool incoherent = false;
  bool strict = false;
  bool pass = false;
  /// Human-readable reasons for a failed verification.
  std::vector<std::string> failures;
};

/// Completeness, induced-channel Choi distance and per-Kraus classification.
/// Passing requires the first two within tolerance and every protocol Kraus
/// operator incoherent; strictness is reported, not required.
SimulationReport verify_simulation(const SimulationBundle& bundle, const VerifyTolerances& tol = {});

struct FeasibilityReport {
  double c_prime = 0.0;
  double s_prime = 0.0;
  double residual = 0.0;
  std::vector<double> probabilities; // |lambda_i|^2 for i = 1..4
};

/// The four operators R_1..R_4 that complete an incoherent Kraus operator
/// implementing U(theta) from the resource c'|0> + s'|1>.
std::vector<ComplexMatrix> feasibility_operators(double theta, double c_prime);

/// Minimizes ||sum p_i R_i^dagger R_i - I||_F^2 + ||sum p_i R_i||_F^2 over the
/// probability simplex. A zero residual means the resource admits the
/// implementation. Requires 0 < theta <= pi/4 and 0 < c' < 1.
FeasibilityReport qubit_resource_feasibility(double theta, double c_prime);

/// `points` values of c' spanning [0.05, 0.995] evenly, with the node nearest
/// 1/sqrt(2) moved onto 1/sqrt(2) so the balanced resource is sampled exactly.
std::vector<double> feasibility_grid(int points = 200);

} // namespace coherence
