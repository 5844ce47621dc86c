#include "coherence/channels.hpp"

#include <stdexcept>
#include <string>

#include "coherence/random.hpp"

namespace coherence {

double completeness_residual(int dim_in, const std::vector<ComplexMatrix>& kraus) {
  ComplexMatrix sum = ComplexMatrix::Zero(dim_in, dim_in);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return max_abs_diff(sum, ComplexMatrix::Identity(dim_in, dim_in));
}

KrausChannel::KrausChannel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus, double tol)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in_ <= 0 || dim_out_ <= 0) {
    throw std::invalid_argument("KrausChannel: dimensions must be positive");
  }
  if (kraus_.empty()) throw std::invalid_argument("KrausChannel: empty Kraus list");
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw std::invalid_argument("KrausChannel: Kraus operator has shape " +
                                  std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                                  ", expected " + std::to_string(dim_out_) + "x" +
                                  std::to_string(dim_in_));
    }
  }
  const double residual = completeness_residual(dim_in_, kraus_);
  if (residual > tol) {
    throw std::invalid_argument("KrausChannel: completeness violated by " + std::to_string(residual));
  }
}

KrausChannel identity_channel(int d) {
  return KrausChannel(d, d, {ComplexMatrix::Identity(d, d)});
}

KrausChannel dephasing_channel(int d) {
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < d; ++i) {
    ComplexMatrix k = ComplexMatrix::Zero(d, d);
    k(i, i) = 1.0;
    kraus.push_back(std::move(k));
  }
  return KrausChannel(d, d, std::move(kraus));
}

KrausChannel isometry_channel(const ComplexMatrix& v) {
  return KrausChannel(static_cast<int>(v.cols()), static_cast<int>(v.rows()), {v});
}

KrausChannel random_channel(int dim_in, int dim_out, int num_kraus, std::uint64_t seed) {
  if (num_kraus <= 0) throw std::invalid_argument("random_channel: need at least one Kraus operator");
  if (dim_out * num_kraus < dim_in) {
    throw std::invalid_argument("random_channel: dim_out * num_kraus must be >= dim_in");
  }
  Rng rng(seed);
  const ComplexMatrix v = haar_isometry(dim_out * num_kraus, dim_in, rng);
  std::vector<ComplexMatrix> kraus;
  for (int a = 0; a < num_kraus; ++a) kraus.push_back(v.middleRows(a * dim_out, dim_out));
  return KrausChannel(dim_in, dim_out, std::move(kraus));
}

ComplexMatrix apply_map(const KrausChannel& t, const ComplexMatrix& x) {
  if (x.rows() != t.dim_in() || x.cols() != t.dim_in()) {
    throw std::invalid_argument("apply_channel: input dimension " + std::to_string(x.rows()) +
                                " does not match channel input " + std::to_string(t.dim_in()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(t.dim_out(), t.dim_out());
  for (const auto& k : t.kraus()) out += k * x * k.adjoint();
  return out;
}

DensityMatrix apply_channel(const KrausChannel& t, const DensityMatrix& rho) {
  return DensityMatrix(apply_map(t, rho.matrix()));
}

ChoiMatrix choi_matrix(const KrausChannel& t) {
  const int din = t.dim_in();
  const int dout = t.dim_out();
  ComplexMatrix j = ComplexMatrix::Zero(din * dout, din * dout);
  // J = sum_a vec(K_a) vec(K_a)^dagger with vec(K)_{(i, o)} = K(o, i).
  for (const auto& k : t.kraus()) {
    ComplexVector v(din * dout);
    for (int i = 0; i < din; ++i) {
      for (int o = 0; o < dout; ++o) v(i * dout + o) = k(o, i);
    }
    j += v * v.adjoint();
  }
  return {din, dout, j};
}

DiamondBracket channel_distance_choi(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw std::invalid_argument("channel_distance_choi: dimension mismatch");
  }
  const double norm = trace_norm_hermitian(choi_matrix(a).mat - choi_matrix(b).mat);
  return {norm / a.dim_in(), norm};
}

bool is_incoherent_operator(const ComplexMatrix& k, double tol) {
  for (Eigen::Index c = 0; c < k.cols(); ++c) {
    int nonzero = 0;
    for (Eigen::Index r = 0; r < k.rows(); ++r) {
      if (std::abs(k(r, c)) > tol && ++nonzero > 1) return false;
    }
  }
  return true;
}

bool is_strictly_incoherent_operator(const ComplexMatrix& k, double tol) {
  if (!is_incoherent_operator(k, tol)) return false;
  for (Eigen::Index r = 0; r < k.rows(); ++r) {
    int nonzero = 0;
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      if (std::abs(k(r, c)) > tol && ++nonzero > 1) return false;
    }
  }
  return true;
}

KrausClassification classify_kraus(const KrausChannel& t, double tol) {
  KrausClassification out;
  for (const auto& k : t.kraus()) {
    const KrausFlags flags{is_incoherent_operator(k, tol), is_strictly_incoherent_operator(k, tol)};
    out.channel_is_io_witnessed = out.channel_is_io_witnessed && flags.incoherent;
    out.channel_is_sio_witnessed = out.channel_is_sio_witnessed && flags.strictly_incoherent;
    out.per_operator.push_back(flags);
  }
  return out;
}

bool is_mio(const KrausChannel& t, double tol) {
  for (int i = 0; i < t.dim_in(); ++i) {
    ComplexMatrix basis = ComplexMatrix::Zero(t.dim_in(), t.dim_in());
    basis(i, i) = 1.0;
    if (max_off_diagonal(apply_map(t, basis)) > tol) return false;
  }
  return true;
}

KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.size() * b.size());
  for (const auto& ka : a.kraus()) {
    for (const auto& kb : b.kraus()) kraus.push_back(kron(ka, kb));
  }
  return KrausChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), std::move(kraus));
}

KrausChannel extend_with_identity(const KrausChannel& t, int k) {
  if (k == 1) return t;
  return tensor_channels(t, identity_channel(k));
}

} // namespace coherence
