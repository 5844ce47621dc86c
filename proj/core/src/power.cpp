#include "coherence/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace coherence {

namespace {

constexpr double kInvalid = 1e6; // objective value for degenerate parameters

ComplexVector vector_from(std::span<const double> x) {
  ComplexVector v(static_cast<Eigen::Index>(x.size() / 2));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(x[2 * i], x[2 * i + 1]);
  return v;
}

std::vector<double> params_from(const ComplexVector& v) {
  std::vector<double> x;
  x.reserve(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    x.push_back(v(i).real());
    x.push_back(v(i).imag());
  }
  return x;
}

// Gram-factor parameters: G is D x D, row-major real/imag pairs.
ComplexMatrix gram_from(std::span<const double> x, int d) {
  ComplexMatrix g(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) g(r, c) = Complex(x[2 * (r * d + c)], x[2 * (r * d + c) + 1]);
  }
  return g;
}

std::vector<double> gram_params_for(const ComplexVector& phi) {
  const int d = static_cast<int>(phi.size());
  std::vector<double> x(2 * d * d, 0.0);
  for (int r = 0; r < d; ++r) {
    x[2 * (r * d)] = phi(r).real();
    x[2 * (r * d) + 1] = phi(r).imag();
  }
  return x;
}

std::optional<ComplexMatrix> state_from_gram(std::span<const double> x, int d) {
  const ComplexMatrix g = gram_from(x, d);
  const ComplexMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  if (!(tr > 1e-300)) return std::nullopt;
  return hermitian_part(rho / tr);
}

double measure_of(PowerMeasure measure, const DensityMatrix& rho, const ConvexRoofConfig& roof) {
  if (measure == PowerMeasure::RelativeEntropy) return relative_entropy_of_coherence(rho);
  return coherence_of_formation(rho, roof).value;
}

// Deterministic starting vectors: the basis states, then the uniform superposition.
std::vector<ComplexVector> anchor_states(int d) {
  std::vector<ComplexVector> out;
  for (int i = 0; i < d; ++i) out.push_back(PureState::basis(d, i).amplitudes());
  out.push_back(maximally_coherent(d).amplitudes());
  return out;
}

double h2_cos2(double x) {
  const double c = std::cos(x);
  return binary_entropy(std::clamp(c * c, 0.0, 1.0));
}

double log_tan_term(double x) {
  const double s = std::sin(2.0 * x);
  if (std::abs(s) < 1e-15) return 0.0;
  const double t = std::tan(x);
  return s * std::log(t * t);
}

} // namespace

double coherence_gain(const KrausChannel& t, PowerMeasure measure, const DensityMatrix& rho,
                      int ancilla_k, const ConvexRoofConfig& roof) {
  const KrausChannel ext = extend_with_identity(t, ancilla_k);
  const DensityMatrix out = apply_channel(ext, rho);
  return measure_of(measure, out, roof) - measure_of(measure, rho, roof);
}

OptResult coherence_power(const KrausChannel& t, PowerMeasure measure, bool pure_only, int ancilla_k,
                          const PowerConfig& cfg) {
  if (ancilla_k < 1) throw std::invalid_argument("coherence_power: ancilla_k must be >= 1");
  if (cfg.restarts < 1) throw std::invalid_argument("coherence_power: restarts must be >= 1");
  const int d = t.dim_in() * ancilla_k;
  const int dout = t.dim_out() * ancilla_k;
  if (measure == PowerMeasure::Formation && std::max(d, dout) > cfg.max_formation_dim) {
    throw std::invalid_argument("coherence_power: formation measure limited to dimension " +
                                std::to_string(cfg.max_formation_dim) + ", got " +
                                std::to_string(std::max(d, dout)));
  }
  const KrausChannel ext = extend_with_identity(t, ancilla_k);

  // Negated gain of a candidate input; kInvalid for degenerate parameters.
  auto gain_of = [&](const ComplexMatrix& rho_mat, const std::optional<ComplexVector>& phi) {
    const DensityMatrix rho(rho_mat);
    const DensityMatrix out = apply_channel(ext, rho);
    const double before = phi ? entropy_of_coherence(PureState(*phi)) : measure_of(measure, rho, cfg.roof);
    return measure_of(measure, out, cfg.roof) - before;
  };

  Objective objective;
  StartGenerator start;
  const auto anchors = anchor_states(d);
  if (pure_only) {
    objective = [&](std::span<const double> x) {
      const ComplexVector v = vector_from(x);
      const double norm = v.norm();
      if (!(norm > 1e-150)) return kInvalid;
      const ComplexVector phi = v / norm;
      return -gain_of(phi * phi.adjoint(), phi);
    };
    start = [&](Rng& rng, int index) {
      if (index < static_cast<int>(anchors.size())) return params_from(anchors[index]);
      std::vector<double> x(2 * d);
      for (double& v : x) v = rng.normal();
      return x;
    };
  } else {
    objective = [&](std::span<const double> x) {
      const auto rho = state_from_gram(x, d);
      if (!rho) return kInvalid;
      return -gain_of(*rho, std::nullopt);
    };
    start = [&](Rng& rng, int index) {
      if (index < static_cast<int>(anchors.size())) return gram_params_for(anchors[index]);
      std::vector<double> x(2 * d * d);
      for (double& v : x) v = rng.normal();
      return x;
    };
  }

  const MultiStartResult best = multi_start_minimize(objective, start, {cfg.restarts, cfg.seed, cfg.local});

  std::optional<PureState> pure;
  ComplexMatrix rho_mat;
  if (pure_only) {
    pure = PureState::normalized(vector_from(best.x));
    rho_mat = pure->projector();
  } else {
    rho_mat = *state_from_gram(best.x, d);
  }
  DensityMatrix rho(rho_mat);
  const double value = gain_of(rho_mat, pure ? std::optional<ComplexVector>(pure->amplitudes()) : std::nullopt);
  return OptResult{value,
                   std::move(rho),
                   std::move(pure),
                   best.restarts_used,
                   best.residual,
                   best.second_value - best.value,
                   cfg.seed};
}

OptResult cgen_isometry(const ComplexMatrix& v, const PowerConfig& cfg) {
  if (v.rows() < v.cols()) throw std::invalid_argument("cgen_isometry: matrix has more columns than rows");
  const double defect = isometry_defect(v);
  if (defect > 1e-9) {
    throw std::invalid_argument("cgen_isometry: not an isometry (defect " + std::to_string(defect) + ")");
  }
  return coherence_power(isometry_channel(v), PowerMeasure::RelativeEntropy, true, 1, cfg);
}

ComplexMatrix rotation(double theta) {
  ComplexMatrix u(2, 2);
  u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return u;
}

double critical_point_residual(double theta, double alpha) {
  return log_tan_term(alpha + theta) - log_tan_term(alpha);
}

QubitCgen qubit_cgen(double theta) {
  constexpr double kQuarter = std::numbers::pi / 4;
  if (!(theta >= 0.0 && theta <= kQuarter + 1e-12)) {
    throw std::domain_error("qubit_cgen: theta must lie in [0, pi/4], got " + std::to_string(theta));
  }
  if (theta == 0.0) return {0.0, 0.0};

  auto f = [theta](double a) { return h2_cos2(a + theta) - h2_cos2(a); };
  constexpr int kGrid = 2000;
  const double step = std::numbers::pi / kGrid;
  int best_i = 0;
  double best_f = f(0.0);
  for (int i = 1; i < kGrid; ++i) {
    const double v = f(i * step);
    if (v > best_f) {
      best_f = v;
      best_i = i;
    }
  }
  double alpha = best_i * step;
  const ScalarOptimum golden = golden_section_maximize(f, alpha - step, alpha + step);
  if (golden.value > best_f) {
    alpha = golden.x;
    best_f = golden.value;
  }

  // The stationarity condition is proportional to f', negative to the left of
  // a maximum and positive to the right; polish the maximizer by bisection.
  auto residual = [theta](double a) { return critical_point_residual(theta, a); };
  if (std::abs(residual(alpha)) > 1e-12) {
    const double lo = alpha - step;
    const double hi = alpha + step;
    if (residual(lo) < 0.0 && residual(hi) > 0.0) {
      const double root = bisect_root(residual, lo, hi);
      if (f(root) >= best_f - 1e-14) {
        alpha = root;
        best_f = std::max(best_f, f(root));
      }
    }
  }

  constexpr double kPeriod = std::numbers::pi / 2;
  alpha = std::fmod(alpha, kPeriod);
  if (alpha < 0.0) alpha += kPeriod;
  if (kPeriod - alpha < 1e-12) alpha = 0.0;
  return {best_f, alpha};
}

CapacityBounds cgen_bounds(const KrausChannel& t, int ancilla_k, const PowerConfig& cfg) {
  const OptResult pure = coherence_power(t, PowerMeasure::RelativeEntropy, true, ancilla_k, cfg);
  OptResult mixed_r = coherence_power(t, PowerMeasure::RelativeEntropy, false, ancilla_k, cfg);
  // The pure maximizer is an admissible mixed input.
  double upper_r = std::max(mixed_r.value, pure.value);
  const OptResult mixed_f = coherence_power(t, PowerMeasure::Formation, false, ancilla_k, cfg);
  return CapacityBounds{pure.value,
                        upper_r,
                        mixed_f.value,
                        std::log2(static_cast<double>(t.dim_out())),
                        ancilla_k,
                        pure.best_residual,
                        mixed_r.best_residual,
                        mixed_f.best_residual};
}

double diamond_lower(const KrausChannel& a, const KrausChannel& b, const PowerConfig& cfg) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw std::invalid_argument("diamond_lower: dimension mismatch");
  }
  const int d = a.dim_in();
  const KrausChannel ea = extend_with_identity(a, d);
  const KrausChannel eb = extend_with_identity(b, d);
  auto distance = [&](const ComplexVector& phi) {
    const ComplexMatrix p = phi * phi.adjoint();
    return trace_norm_hermitian(hermitian_part(apply_map(ea, p) - apply_map(eb, p)));
  };
  const Objective objective = [&](std::span<const double> x) {
    const ComplexVector v = vector_from(x);
    const double norm = v.norm();
    if (!(norm > 1e-150)) return kInvalid;
    return -distance(v / norm);
  };
  ComplexVector entangled = ComplexVector::Zero(d * d);
  for (int i = 0; i < d; ++i) entangled(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  const StartGenerator start = [&](Rng& rng, int index) {
    if (index == 0) return params_from(entangled);
    std::vector<double> x(2 * d * d);
    for (double& v : x) v = rng.normal();
    return x;
  };
  const MultiStartResult best = multi_start_minimize(objective, start, {cfg.restarts, cfg.seed, cfg.local});
  return std::max(-best.value, distance(entangled));
}

ContinuityReport continuity_check(const KrausChannel& a, const KrausChannel& b, int k,
                                  const PowerConfig& cfg) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw std::invalid_argument("continuity_check: dimension mismatch");
  }
  ContinuityReport report;
  report.epsilon = 0.5 * channel_distance_choi(a, b).upper;
  const double log_b = std::log2(static_cast<double>(a.dim_out()));
  const double g = continuity_g(report.epsilon);

  auto powers = [&](PowerMeasure m) {
    const OptResult pa = coherence_power(a, m, false, k, cfg);
    const OptResult pb = coherence_power(b, m, false, k, cfg);
    const double va = std::max(pa.value, coherence_gain(a, m, pb.argmax_state, k, cfg.roof));
    const double vb = std::max(pb.value, coherence_gain(b, m, pa.argmax_state, k, cfg.roof));
    return std::pair{va, vb};
  };
  std::tie(report.power_r_a, report.power_r_b) = powers(PowerMeasure::RelativeEntropy);
  std::tie(report.power_f_a, report.power_f_b) = powers(PowerMeasure::Formation);
  report.bound_r = 4.0 * report.epsilon * log_b + 2.0 * g;
  report.bound_f = report.epsilon * (log_b + std::log2(static_cast<double>(k))) + g;
  report.holds_r = std::abs(report.power_r_a - report.power_r_b) <= report.bound_r;
  report.holds_f = std::abs(report.power_f_a - report.power_f_b) <= report.bound_f;
  return report;
}

KrausChannel bound_coherence_example() {
  const DensityMatrix flower = flower_state(2);
  const ComplexMatrix complement = 0.5 * ComplexMatrix::Identity(4, 4) - flower.matrix();
  const double r = 1.0 / std::numbers::sqrt2;
  ComplexVector plus(2), minus(2);
  plus << r, r;
  minus << r, -r;
  std::vector<ComplexMatrix> kraus;
  for (const auto& [readout, prepared] : {std::pair{plus, flower.matrix()}, std::pair{minus, complement}}) {
    const EigenDecomposition eig = hermitian_eig(prepared);
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
      const double mu = eig.eigenvalues(i);
      if (mu <= 1e-12) continue;
      kraus.push_back(std::sqrt(mu) * eig.eigenvectors.col(i) * readout.adjoint());
    }
  }
  return KrausChannel(2, 4, std::move(kraus));
}

} // namespace coherence
