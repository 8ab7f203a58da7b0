#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "nfold/errors.hpp"
#include "nfold/flows.hpp"
#include "nfold/lattice.hpp"
#include "nfold/objective.hpp"
#include "nfold/program.hpp"

namespace nfold::io {

using json = nlohmann::json;

inline constexpr std::string_view kFormatVersion = "1";

/// Malformed instance data. The message starts with the path of the
/// offending field, e.g. "payload.capacities[3]: ...".
class ParseError : public InvalidInstance {
 public:
  using InvalidInstance::InvalidInstance;
};

/// An n-fold program together with its objective.
struct NFoldProgramInstance {
  NFoldProgram program;
  SeparableConvexObjective objective;
  friend bool operator==(const NFoldProgramInstance&, const NFoldProgramInstance&) = default;
};

using InstanceData = std::variant<IntMatrix, Bimatrix, NFoldProgramInstance, GeneralizedNFoldProgram,
                                  TransshipmentInstance, TransportationInstance, Digraph>;

/// Envelope {format_version, kind, payload}.
struct InstanceFile {
  std::string format_version{kFormatVersion};
  InstanceData data;

  /// "matrix", "bimatrix", "nfold_program", "generalized_program",
  /// "transshipment", "transportation" or "digraph".
  std::string_view kind() const;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

/// Throws ParseError.
InstanceFile parse_instance(const json& document);
InstanceFile read_instance(std::istream& in);
/// Throws std::invalid_argument for objectives with oracle terms.
json serialize_instance(const InstanceFile& file);

json to_json(const Integer& v);
json to_json(const IntVector& v);
/// Rows as arrays of decimal strings.
json to_json(const IntMatrix& m);
json to_json(const Term& t);
json to_json(const SeparableConvexObjective& f);

Integer integer_from_json(const json& v, const std::string& path);
IntVector vector_from_json(const json& v, const std::string& path);

}  // namespace nfold::io
