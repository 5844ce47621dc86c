#pragma once

#include <cstdint>
#include <random>

#include "coherence/numerics.hpp"

namespace coherence {

/// Seeded source of complex Gaussian samples. Every random object in the
/// library is drawn through one of these, so a fixed seed gives a fixed result.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Child generator for the i-th independent stream derived from `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }

  /// rows x cols matrix of independent standard complex Gaussians.
  ComplexMatrix ginibre(int rows, int cols);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Haar-random d x d unitary (QR of a Ginibre matrix with the phase fix).
ComplexMatrix haar_unitary(int d, Rng& rng);

/// Haar-random isometry with `rows` >= `cols` (first columns of a Haar unitary).
ComplexMatrix haar_isometry(int rows, int cols, Rng& rng);

} // namespace coherence
