#include "coherence/random.hpp"

#include <stdexcept>

namespace coherence {

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x9e3779b9u};
  Rng rng(0);
  rng.engine_.seed(seq);
  return rng;
}

ComplexMatrix Rng::ginibre(int rows, int cols) {
  ComplexMatrix g(rows, cols);
  // Fill in row-major order so the draw sequence does not depend on storage.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = complex_normal();
  }
  return g;
}

ComplexMatrix haar_unitary(int d, Rng& rng) {
  if (d <= 0) throw std::invalid_argument("haar_unitary: dimension must be positive");
  const ComplexMatrix g = rng.ginibre(d, d);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix haar_isometry(int rows, int cols, Rng& rng) {
  if (cols > rows) throw std::invalid_argument("haar_isometry: cols must not exceed rows");
  return haar_unitary(rows, rng).leftCols(cols);
}

} // namespace coherence
