#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ppd/criteria.hpp"
#include "ppd/extremal.hpp"
#include "ppd/radial.hpp"

namespace ppd {

/// Malformed function descriptor.
class DescriptorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds a function from a descriptor such as
///
///   {"kind": "scale", "lambda": 2, "inner": {"kind": "phi"}}
///
/// Leaves take an optional "dim"; a node without one inherits default_dim
/// (combinators pass theirs down). Unknown keys are rejected.
RadialFunction parse_descriptor(const nlohmann::json& j, int default_dim = 1);
RadialFunction parse_descriptor(const std::string& text, int default_dim = 1);

nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const ZeroReport& r);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const Rect& r);

}  // namespace ppd
