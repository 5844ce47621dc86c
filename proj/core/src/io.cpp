#include "coherence/io.hpp"

#include <fstream>
#include <string>

namespace coherence {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("field \"") + key + "\": " + e.what());
  }
}

void require_positive(int value, const char* key) {
  if (value <= 0) throw FormatError(std::string("field \"") + key + "\" must be positive");
}

} // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int rows = field<int>(j, "rows");
  const int cols = field<int>(j, "cols");
  require_positive(rows, "rows");
  require_positive(cols, "cols");
  const auto re = field<std::vector<double>>(j, "re");
  const auto im = field<std::vector<double>>(j, "im");
  const auto expected = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (re.size() != expected || im.size() != expected) {
    throw FormatError("matrix of shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " needs " + std::to_string(expected) + " entries in \"re\" and \"im\"");
  }
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(re[r * cols + c], im[r * cols + c]);
  }
  return m;
}

Json state_to_json(const DensityMatrix& rho) {
  Json j = matrix_to_json(rho.matrix());
  j["dim"] = rho.dim();
  return j;
}

Json state_to_json(const PureState& phi) {
  Json j = matrix_to_json(phi.amplitudes());
  j["dim"] = phi.dim();
  return j;
}

StateInput state_from_json(const Json& j) {
  const int dim = field<int>(j, "dim");
  require_positive(dim, "dim");
  const ComplexMatrix m = matrix_from_json(j);
  if (m.rows() != dim) throw FormatError("\"rows\" does not match \"dim\"");
  if (m.cols() == 1) {
    PureState phi(m.col(0));
    return StateInput{phi, phi.density()};
  }
  if (m.cols() != dim) throw FormatError("state matrix must be dim x dim or dim x 1");
  return StateInput{std::nullopt, DensityMatrix(m)};
}

Json channel_to_json(const KrausChannel& t) {
  Json kraus = Json::array();
  for (const auto& k : t.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"dim_in", t.dim_in()}, {"dim_out", t.dim_out()}, {"kraus", kraus}};
}

KrausChannel channel_from_json(const Json& j) {
  const int din = field<int>(j, "dim_in");
  const int dout = field<int>(j, "dim_out");
  require_positive(din, "dim_in");
  require_positive(dout, "dim_out");
  if (!j.contains("kraus") || !j.at("kraus").is_array()) throw FormatError("missing array \"kraus\"");
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
  return KrausChannel(din, dout, std::move(kraus));
}

Json bundle_to_json(const SimulationBundle& bundle) {
  Json j = channel_to_json(bundle.protocol_kraus);
  j["protocol"] = bundle.protocol;
  j["target"] = channel_to_json(bundle.target);
  j["resource"] = state_to_json(bundle.resource);
  const auto& reg = bundle.registers;
  j["registers"] = Json{{"input_dims", reg.input_dims},
                        {"system_factors", reg.system_factors},
                        {"output_dims", reg.output_dims},
                        {"kept_outputs", reg.kept_outputs}};
  j["strict"] = bundle.strict;
  return j;
}

SimulationBundle bundle_from_json(const Json& j) {
  const StateInput resource = state_from_json(j.contains("resource") ? j.at("resource") : Json());
  if (!resource.pure) throw FormatError("bundle resource must be a pure state vector");
  const Json reg = j.contains("registers") ? j.at("registers") : Json();
  RegisterLayout layout{field<std::vector<int>>(reg, "input_dims"), field<int>(reg, "system_factors"),
                        field<std::vector<int>>(reg, "output_dims"),
                        field<std::vector<int>>(reg, "kept_outputs")};
  KrausChannel protocol = channel_from_json(j);
  const bool strict = classify_kraus(protocol).channel_is_sio_witnessed;
  return SimulationBundle{field<std::string>(j, "protocol"),
                          channel_from_json(j.contains("target") ? j.at("target") : Json()),
                          *resource.pure,
                          std::move(protocol),
                          std::move(layout),
                          strict};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw FormatError("write failed for " + path.string());
}

} // namespace coherence
