#pragma once

// JSON body and profile specifications.
//
//   {"type":"ball","dim":4,"capacity":1}
//   {"type":"ellipsoid","a":[1,2]}      {"type":"polydisc","a":[1,2]}
//   {"type":"box","half_widths":[1,1]}
//   {"type":"pproduct","p":1.5 | "inf","factors":[...]}
//   {"type":"toric","profile":{"type":"simplex"|"box","a":[...]}}
//   {"type":"toric","profile":{"type":"lp_orthant","power":s,"radii":[...]}}
//
// Unknown keys and bad values raise InvalidSpec carrying a JSON pointer.

#include <cstdint>
#include <optional>
#include <string>

#include "caplab/bodies.hpp"
#include "caplab/toric.hpp"

namespace caplab {

struct LoadedSpec {
  BodyOracle body;
  /// Moment-map profile when the body is toric: toric specs, balls,
  /// ellipsoids, polydiscs and p-products of such factors.
  std::optional<ToricProfile> profile;
};

LoadedSpec parse_body_spec(const std::string& json_text);
ToricProfile parse_profile_spec(const std::string& json_text);

/// Inline JSON when `source` starts with '{', otherwise a file path (IoError
/// if unreadable). Samples the body invariants and throws
/// InvariantViolation on the first failure.
LoadedSpec load_body_spec(const std::string& source, std::size_t invariant_samples = 100,
                          std::uint64_t seed = 0);

}  // namespace caplab
