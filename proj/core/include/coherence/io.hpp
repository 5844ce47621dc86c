#pragma once

// JSON encodings shared by the library and the command-line tool.
//
// Matrix: {"rows", "cols", "re", "im"} with row-major real and imaginary parts.
// State: a matrix object plus "dim"; a dim x 1 matrix is a pure state vector.
// Channel: {"dim_in", "dim_out", "kraus": [matrix, ...]}.
// Simulation bundle: the protocol in channel form plus "protocol", "target",
// "resource", "registers" and "strict".

#include <filesystem>
#include <optional>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "coherence/simulate.hpp"

namespace coherence {

using Json = nlohmann::json;

/// Malformed or inconsistent input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json state_to_json(const DensityMatrix& rho);
Json state_to_json(const PureState& phi);

/// A parsed state file. `pure` is set for vector input; `density` always is.
struct StateInput {
  std::optional<PureState> pure;
  DensityMatrix density;
};

/// Throws FormatError for malformed documents and std::invalid_argument when
/// the matrix violates the state invariants.
StateInput state_from_json(const Json& j);

Json channel_to_json(const KrausChannel& t);
KrausChannel channel_from_json(const Json& j);

Json bundle_to_json(const SimulationBundle& bundle);
SimulationBundle bundle_from_json(const Json& j);

/// Throws FormatError when the file cannot be read or parsed.
Json read_json_file(const std::filesystem::path& path);
/// Writes with two-space indentation. Throws FormatError on I/O failure.
void write_json_file(const std::filesystem::path& path, const Json& j);

} // namespace coherence
