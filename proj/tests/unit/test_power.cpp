#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "coherence/power.hpp"
#include "coherence/random.hpp"

using namespace coherence;

namespace {

constexpr double kPi = std::numbers::pi;

double h2_cos2(double x) { return binary_entropy(std::cos(x) * std::cos(x)); }

// Independent oracle: a plain 10^6-point scan of one period.
double brute_force_qubit_cgen(double theta) {
  double best = -1.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double a = kPi / 2 * i / n;
    best = std::max(best, h2_cos2(a + theta) - h2_cos2(a));
  }
  return best;
}

PowerConfig quick(int restarts = 8) {
  PowerConfig cfg;
  cfg.restarts = restarts;
  return cfg;
}

} // namespace

TEST(QubitCgen, Endpoints) {
  const QubitCgen zero = qubit_cgen(0.0);
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_EQ(zero.alpha_star, 0.0);
  const QubitCgen quarter = qubit_cgen(kPi / 4);
  EXPECT_NEAR(quarter.value, 1.0, 1e-12);
  EXPECT_LE(quarter.alpha_star, 1e-6);
}

TEST(QubitCgen, EighthTurn) {
  const QubitCgen q = qubit_cgen(kPi / 8);
  EXPECT_NEAR(h2_cos2(kPi / 8), 0.60088, 1e-5);
  EXPECT_GT(q.value, h2_cos2(kPi / 8) + 1e-3);
  EXPECT_GT(q.alpha_star, 1e-3);
  EXPECT_NEAR(q.value, brute_force_qubit_cgen(kPi / 8), 1e-9);
}

TEST(QubitCgen, MatchesBruteForce) {
  for (double theta : {0.01, 0.2, 0.5, 0.7}) EXPECT_NEAR(qubit_cgen(theta).value, brute_force_qubit_cgen(theta), 1e-9);
}

TEST(QubitCgen, DominatesIncoherentInput) {
  for (int i = 0; i <= 200; ++i) {
    const double theta = kPi / 4 * i / 200;
    EXPECT_GE(qubit_cgen(theta).value, h2_cos2(theta) - 1e-9) << theta;
  }
}

TEST(QubitCgen, MaximizerIsStationary) {
  for (int i = 1; i < 50; ++i) {
    const double theta = kPi / 4 * i / 49;
    const QubitCgen q = qubit_cgen(theta);
    EXPECT_LE(std::abs(critical_point_residual(theta, q.alpha_star)), 1e-6) << theta;
    EXPECT_GE(q.alpha_star, 0.0);
    EXPECT_LT(q.alpha_star, kPi / 2);
  }
}

TEST(QubitCgen, DomainErrors) {
  EXPECT_THROW(qubit_cgen(-0.1), std::domain_error);
  EXPECT_THROW(qubit_cgen(1.0), std::domain_error);
}

TEST(CoherencePower, DephasingHasNone) {
  const OptResult r = coherence_power(dephasing_channel(2), PowerMeasure::RelativeEntropy, false, 1, quick());
  EXPECT_NEAR(r.value, 0.0, 1e-6);
}

TEST(CoherencePower, RotationBeatsIncoherentInput) {
  for (double theta : {0.1, kPi / 8, 0.6}) {
    const OptResult r =
        coherence_power(isometry_channel(rotation(theta)), PowerMeasure::RelativeEntropy, true, 1, quick());
    EXPECT_GE(r.value, h2_cos2(theta) - 1e-6);
    ASSERT_TRUE(r.argmax_pure.has_value());
  }
}

TEST(CoherencePower, ValueMatchesArgmax) {
  const KrausChannel t = random_channel(2, 2, 2, 3);
  for (bool pure : {true, false}) {
    const OptResult r = coherence_power(t, PowerMeasure::RelativeEntropy, pure, 1, quick());
    EXPECT_NEAR(r.value, coherence_gain(t, PowerMeasure::RelativeEntropy, r.argmax_state), 1e-8);
    EXPECT_GE(r.restart_gap, 0.0);
    EXPECT_EQ(r.restarts_used, 8);
    EXPECT_EQ(r.seed, 42u);
  }
}

TEST(CoherencePower, IsometryNeedsNoAncilla) {
  const KrausChannel u = isometry_channel(rotation(kPi / 8));
  const double k1 = coherence_power(u, PowerMeasure::RelativeEntropy, true, 1, quick(32)).value;
  const double k2 = coherence_power(u, PowerMeasure::RelativeEntropy, true, 2, quick(32)).value;
  EXPECT_NEAR(k1, k2, 1e-4);
}

TEST(CoherencePower, Preconditions) {
  EXPECT_THROW(coherence_power(identity_channel(2), PowerMeasure::RelativeEntropy, true, 0), std::invalid_argument);
  EXPECT_THROW(coherence_power(identity_channel(3), PowerMeasure::Formation, false, 3), std::invalid_argument);
}

TEST(CgenIsometry, Identity) { EXPECT_NEAR(cgen_isometry(ComplexMatrix::Identity(3, 3), quick()).value, 0.0, 1e-9); }

TEST(CgenIsometry, FourierReachesLogD) {
  for (int d = 2; d <= 3; ++d) {
    const OptResult r = cgen_isometry(fourier_matrix(d), quick(16));
    EXPECT_NEAR(r.value, std::log2(d), 1e-6);
  }
}

TEST(CgenIsometry, MatchesQubitCurve) {
  for (double theta : {0.1, kPi / 8, 0.7}) {
    EXPECT_NEAR(cgen_isometry(rotation(theta), quick(16)).value, qubit_cgen(theta).value, 1e-5);
  }
}

TEST(CgenIsometry, RejectsNonIsometry) {
  EXPECT_THROW(cgen_isometry(2.0 * ComplexMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST(CgenIsometry, AdditiveOnRotations) {
  const double t1 = kPi / 8, t2 = kPi / 8;
  const double joint = cgen_isometry(kron(rotation(t1), rotation(t2)), quick(32)).value;
  EXPECT_NEAR(joint, qubit_cgen(t1).value + qubit_cgen(t2).value, 1e-3);
}

TEST(CgenBounds, IdentityAndDephasing) {
  const CapacityBounds id = cgen_bounds(identity_channel(2), 1, quick());
  EXPECT_NEAR(id.lower_pure, 0.0, 1e-9);
  EXPECT_NEAR(id.upper_mixed_r, 0.0, 1e-9);
  EXPECT_NEAR(id.upper_mixed_f, 0.0, 1e-9);
  EXPECT_EQ(id.sim_upper, 1.0);
  const CapacityBounds deph = cgen_bounds(dephasing_channel(2), 1, quick());
  EXPECT_NEAR(deph.lower_pure, 0.0, 1e-9);
  EXPECT_NEAR(deph.upper_mixed_r, 0.0, 1e-9);
  EXPECT_EQ(deph.sim_upper, 1.0);
}

TEST(CgenBounds, OrderingOnRandomChannels) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const CapacityBounds b = cgen_bounds(random_channel(2, 2, 2, seed), 1, quick());
    EXPECT_LE(b.lower_pure, b.upper_mixed_r + 1e-6);
    EXPECT_GE(b.lower_pure, -1e-9);
    EXPECT_GE(b.upper_mixed_f, -1e-9);
  }
}

TEST(BoundCoherence, MaximallyIncoherentExample) {
  const KrausChannel t = bound_coherence_example();
  EXPECT_TRUE(is_mio(t));
  const DensityMatrix psi = maximally_coherent(2).density();
  EXPECT_LE(max_abs_diff(apply_channel(t, psi).matrix(), flower_state(2).matrix()), 1e-12);
  EXPECT_NEAR(coherence_gain(t, PowerMeasure::RelativeEntropy, psi), 0.0, 1e-9);
  ConvexRoofConfig roof;
  roof.restarts = 16;
  EXPECT_NEAR(coherence_gain(t, PowerMeasure::Formation, psi, 1, roof), 0.5, 1e-3);
}

TEST(BoundCoherence, RelativeEntropyPowerVanishes) {
  const OptResult r = coherence_power(bound_coherence_example(), PowerMeasure::RelativeEntropy, true, 1, quick());
  EXPECT_LE(r.value, 1e-4);
}

TEST(DiamondLower, Examples) {
  const KrausChannel t = random_channel(2, 2, 2, 1);
  EXPECT_NEAR(diamond_lower(t, t, quick(4)), 0.0, 1e-12);
  const double d = diamond_lower(identity_channel(2), dephasing_channel(2), quick(8));
  EXPECT_GE(d, 1.0 - 1e-9);
  EXPECT_LE(d, 2.0 + 1e-6);
}

TEST(DiamondLower, UnitaryPairsMatchSpectralFormula) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const ComplexMatrix u = haar_unitary(2, rng);
    const ComplexMatrix v = haar_unitary(2, rng);
    // 2 sqrt(1 - m^2) with m the distance from 0 to the chord between the two
    // eigenvalues of U^dagger V on the unit circle.
    const Eigen::ComplexEigenSolver<ComplexMatrix> es(u.adjoint() * v);
    double gap = std::abs(std::arg(es.eigenvalues()(0) / es.eigenvalues()(1)));
    const double m = std::cos(gap / 2);
    const double spectral = 2.0 * std::sqrt(std::max(0.0, 1.0 - m * m));

    const KrausChannel a = isometry_channel(u), b = isometry_channel(v);
    const double lower = diamond_lower(a, b, quick(16));
    const DiamondBracket bracket = channel_distance_choi(a, b);
    EXPECT_NEAR(lower, spectral, 1e-6) << seed;
    EXPECT_GE(lower, bracket.lower - 1e-6);
    EXPECT_LE(lower, bracket.upper + 1e-6);

    // Floor from random entangled inputs.
    Rng probe(100 + seed);
    double floor = 0.0;
    for (int i = 0; i < 10000; ++i) {
      ComplexVector phi = probe.ginibre(4, 1);
      phi.normalize();
      const ComplexMatrix p = phi * phi.adjoint();
      const KrausChannel ea = extend_with_identity(a, 2), eb = extend_with_identity(b, 2);
      floor = std::max(floor, trace_norm_hermitian(hermitian_part(apply_map(ea, p) - apply_map(eb, p))));
    }
    EXPECT_GE(lower, floor - 1e-9);
  }
}

TEST(Continuity, IdenticalChannels) {
  const KrausChannel t = random_channel(2, 2, 2, 5);
  const ContinuityReport r = continuity_check(t, t, 1, quick(4));
  EXPECT_EQ(r.epsilon, 0.0);
  EXPECT_TRUE(r.holds_r);
  EXPECT_TRUE(r.holds_f);
}

TEST(Continuity, NearbyRotations) {
  const ContinuityReport r =
      continuity_check(isometry_channel(rotation(0.3)), isometry_channel(rotation(0.31)), 1, quick(8));
  EXPECT_GT(r.epsilon, 0.0);
  EXPECT_TRUE(r.holds_r);
  EXPECT_TRUE(r.holds_f);
  EXPECT_LT(std::abs(r.power_r_a - r.power_r_b), r.bound_r);
}
