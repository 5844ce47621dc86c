#pragma once

// Coherence measures on states, all in bits.

#include <cstdint>
#include <vector>

#include "coherence/states.hpp"

namespace coherence {

/// S(Delta(phi)): Shannon entropy of the squared amplitudes.
double entropy_of_coherence(const PureState& phi);

/// C_r(rho) = S(Delta(rho)) - S(rho), clamped at zero.
double relative_entropy_of_coherence(const DensityMatrix& rho);

enum class RoofMethod {
  Auto,        // simplex search for small ensembles, Stiefel gradient otherwise
  NelderMead,  // derivative-free simplex over unconstrained isometry factors
  Gradient,    // Riemannian steepest descent on the Stiefel manifold
};

struct ConvexRoofConfig {
  int restarts = 64;
  int max_iterations = 2000;
  int stall_window = 50;
  double stall_tolerance = 1e-10;
  std::uint64_t seed = 42;
  /// Number of pure states in the ensemble; 0 selects rank(rho)^2.
  int ensemble_size = 0;
  /// Closed form for qubits. Off forces the optimizer.
  bool qubit_closed_form = true;
  RoofMethod method = RoofMethod::Auto;
  /// Auto switches to the gradient method above this many real parameters.
  int max_simplex_parameters = 64;
  int max_dim = 16;
};

struct EnsembleMember {
  double probability;
  PureState state;
};

struct ConvexRoofResult {
  /// Average entropy of coherence of `ensemble`; an upper bound on C_f that
  /// tightens with more restarts (exact for the analytic cases).
  double value = 0.0;
  std::vector<EnsembleMember> ensemble;
  /// Convergence diagnostic of the winning restart (simplex spread or
  /// Riemannian gradient norm); 0 for the analytic cases.
  double residual = 0.0;
  /// Gap between the best and second-best restart.
  double restart_gap = 0.0;
  int restarts_used = 0;
  bool analytic = false;
};

/// Coherence of formation by convex-roof minimization. Ensembles are
/// parametrized as V B^T with B the square-root-weighted eigenvectors of rho
/// and V an m x rank isometry, which reaches every decomposition of size m.
///
/// Throws std::invalid_argument when rho.dim() exceeds cfg.max_dim.
ConvexRoofResult coherence_of_formation(const DensityMatrix& rho,
                                        const ConvexRoofConfig& cfg = {});

/// Closed-form qubit value h2((1 + sqrt(1 - 4|rho_01|^2)) / 2).
double qubit_coherence_of_formation(const DensityMatrix& rho);

/// Average entropy of coherence of an ensemble, sum_i p_i C(psi_i).
double ensemble_coherence(const std::vector<EnsembleMember>& ensemble);

/// sum_i p_i |psi_i><psi_i|.
ComplexMatrix ensemble_average(const std::vector<EnsembleMember>& ensemble);

/// Number of amplitudes with magnitude above tol.
int coherence_rank(const PureState& phi, double tol = 1e-10);

} // namespace coherence
