#pragma once

// Coherence power of channels, the single-letter capacity formula for
// isometries, and diamond-norm based continuity checks.

#include <cstdint>
#include <optional>

#include "coherence/channels.hpp"
#include "coherence/measures.hpp"
#include "coherence/optimize.hpp"

namespace coherence {

enum class PowerMeasure { RelativeEntropy, Formation };

struct PowerConfig {
  int restarts = 32;
  std::uint64_t seed = 42;
  LocalSearchOptions local;
  /// Convex-roof settings used whenever the formation measure is evaluated
  /// inside the outer search. Kept light: it runs once per objective call.
  ConvexRoofConfig roof{.restarts = 4, .max_iterations = 400};
  /// Largest total input (and output) dimension accepted for the formation
  /// measure.
  int max_formation_dim = 8;
};

struct OptResult {
  /// Best objective value found; a lower bound on the supremum.
  double value = 0.0;
  DensityMatrix argmax_state;
  /// Set when the search ran over pure inputs.
  std::optional<PureState> argmax_pure;
  int restarts_used = 0;
  /// Simplex spread of the winning restart.
  double best_residual = 0.0;
  /// Best minus second-best restart value; small means the restarts agree.
  double restart_gap = 0.0;
  std::uint64_t seed = 0;
};

/// max over inputs rho on A (x) C^k of C((T (x) id_k)(rho)) - C(rho).
/// Inputs are parametrized as unit vectors (pure_only) or Gram factors
/// G G^dagger / tr(G G^dagger). The first restarts start from the basis states
/// and the uniform superposition; the rest are random.
///
/// Throws std::invalid_argument for ancilla_k < 1, and for the formation
/// measure when the input or output dimension exceeds cfg.max_formation_dim.
OptResult coherence_power(const KrausChannel& t, PowerMeasure measure, bool pure_only,
                          int ancilla_k = 1, const PowerConfig& cfg = {});

/// The objective of coherence_power at a given input state.
double coherence_gain(const KrausChannel& t, PowerMeasure measure, const DensityMatrix& rho,
                      int ancilla_k = 1, const ConvexRoofConfig& roof = {});

/// max over pure phi on A of C_r(V phi) - C_r(phi), which is the coherence
/// generating capacity of the isometry V. Throws std::invalid_argument when
/// V^dagger V deviates from the identity by more than 1e-9.
OptResult cgen_isometry(const ComplexMatrix& v, const PowerConfig& cfg = {});

/// Real rotation [[cos t, -sin t], [sin t, cos t]].
ComplexMatrix rotation(double theta);

struct QubitCgen {
  double value;
  /// Smallest maximizer, reduced into [0, pi/2) (the objective has period pi/2).
  double alpha_star;
};

/// max over alpha of h2(cos^2(alpha + theta)) - h2(cos^2 alpha) for
/// 0 <= theta <= pi/4: a 2000-point grid on [0, pi], golden-section
/// refinement, then bisection on the stationarity condition.
/// Throws std::domain_error outside the range.
QubitCgen qubit_cgen(double theta);

/// sin(2a + 2t) ln tan^2(a + t) - sin(2a) ln tan^2(a), each term taken as 0
/// where sin vanishes. Zero exactly at stationary points of the qubit curve.
double critical_point_residual(double theta, double alpha);

struct CapacityBounds {
  double lower_pure = 0.0;
  double upper_mixed_r = 0.0;
  double upper_mixed_f = 0.0;
  double sim_upper = 0.0;
  int ancilla_k = 1;
  /// Simplex spreads of the three searches, in the order above.
  double residual_pure = 0.0;
  double residual_mixed_r = 0.0;
  double residual_mixed_f = 0.0;
};

/// Pure and mixed coherence powers and log|B|. The mixed values are optimizer
/// estimates of suprema, so they are heuristic upper bounds only.
CapacityBounds cgen_bounds(const KrausChannel& t, int ancilla_k = 1, const PowerConfig& cfg = {});

/// max over pure phi on A (x) A of ||((a - b) (x) id)(phi)||_1, a lower bound
/// on the diamond distance. The maximally entangled input is always among the
/// starts, so the result is at least the Choi lower bracket.
double diamond_lower(const KrausChannel& a, const KrausChannel& b, const PowerConfig& cfg = {});

struct ContinuityReport {
  double epsilon = 0.0;
  double power_r_a = 0.0;
  double power_r_b = 0.0;
  double bound_r = 0.0;
  double power_f_a = 0.0;
  double power_f_b = 0.0;
  double bound_f = 0.0;
  bool holds_r = false;
  bool holds_f = false;
};

/// Compares |P(a (x) id_k) - P(b (x) id_k)| with the continuity bounds
/// 4 eps log|B| + 2 g(eps) (relative entropy) and eps (log|B| + log k) + g(eps)
/// (formation), where eps = ||J(a) - J(b)||_1 / 2 bounds half the diamond
/// distance. Each power is the better of its own search and the value at the
/// other channel's maximizer, so both sides see the same candidate inputs.
ContinuityReport continuity_check(const KrausChannel& a, const KrausChannel& b, int k = 1,
                                  const PowerConfig& cfg = {});

/// Qubit-to-ququart measure-and-prepare channel that reads out in the
/// {Psi_2, Psi_2 orthogonal} basis and prepares the two-qubit flower state or
/// its complement I/2 - flower. It maps incoherent states to incoherent
/// states, keeps C_r of Psi_2 at one bit, and raises its C_f by half a bit.
KrausChannel bound_coherence_example();

} // namespace coherence
