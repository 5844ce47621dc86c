#pragma once

// Derivative-free local search and a seed-deterministic multi-start driver.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "coherence/random.hpp"

namespace coherence {

using Objective = std::function<double(std::span<const double>)>;

struct LocalSearchOptions {
  int max_iterations = 2000;
  /// Converged once the best value improved by less than stall_tolerance over
  /// the last stall_window iterations.
  int stall_window = 50;
  double stall_tolerance = 1e-10;
  /// Edge length of the initial simplex.
  double initial_step = 0.5;
  /// After convergence the simplex is rebuilt around the best vertex this many
  /// times (with a shrinking step) to escape premature collapse.
  int rebuilds = 2;
};

struct LocalSearchResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Spread f_max - f_min of the final simplex.
  double residual = 0.0;
};

/// Minimizes f from x0 with the adaptive Nelder-Mead simplex method
/// (dimension-dependent coefficients).
LocalSearchResult nelder_mead(const Objective& f, std::vector<double> x0,
                              const LocalSearchOptions& options = {});

struct MultiStartOptions {
  int restarts = 32;
  std::uint64_t seed = 42;
  LocalSearchOptions local;
};

struct MultiStartResult {
  std::vector<double> x;
  double value = 0.0;
  /// Best value among the other restarts (equals value when only one ran).
  double second_value = 0.0;
  int restarts_used = 0;
  /// Simplex spread of the winning restart.
  double residual = 0.0;
  int converged_restarts = 0;
};

/// Produces the starting point of restart `index`. The generator receives a
/// stream seeded from (seed, index), so results do not depend on the order in
/// which restarts are evaluated.
using StartGenerator = std::function<std::vector<double>(Rng&, int index)>;

/// Runs `options.restarts` independent local searches and keeps the minimum.
/// Ties are broken by restart index.
MultiStartResult multi_start_minimize(const Objective& f, const StartGenerator& start,
                                      const MultiStartOptions& options);

struct ScalarOptimum {
  double x;
  double value;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double x_tolerance = 1e-12,
                                      int max_iterations = 200);

/// Bisection for a root of f on [lo, hi]; requires a sign change.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double x_tolerance = 1e-15, int max_iterations = 200);

} // namespace coherence
