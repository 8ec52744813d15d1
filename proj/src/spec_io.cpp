#include "caplab/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "caplab/errors.hpp"
#include "caplab/numeric.hpp"

namespace caplab {

namespace {

using Json = nlohmann::json;

void require_object(const Json& j, const std::string& at) {
  if (!j.is_object()) throw InvalidSpec("expected an object", at.empty() ? "/" : at);
}

void allow_keys(const Json& j, const std::string& at, std::initializer_list<const char*> keys) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) throw InvalidSpec("unknown key '" + item.key() + "'", at + "/" + item.key());
  }
}

const Json& member(const Json& j, const std::string& at, const char* key) {
  if (!j.contains(key)) throw InvalidSpec(std::string("missing key '") + key + "'", at + "/" + key);
  return j.at(key);
}

double positive_number(const Json& j, const std::string& at) {
  if (!j.is_number()) throw InvalidSpec("expected a number", at);
  const double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidSpec("parameter must be positive", at);
  return v;
}

std::vector<double> positive_list(const Json& j, const std::string& at) {
  if (!j.is_array() || j.empty()) throw InvalidSpec("expected a nonempty array", at);
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(positive_number(j[i], at + "/" + std::to_string(i)));
  return out;
}

std::string type_of(const Json& j, const std::string& at) {
  const auto& t = member(j, at, "type");
  if (!t.is_string()) throw InvalidSpec("type must be a string", at + "/type");
  return t.get<std::string>();
}

ToricProfile profile_from(const Json& j, const std::string& at) {
  require_object(j, at);
  const auto type = type_of(j, at);
  if (type == "simplex" || type == "box") {
    allow_keys(j, at, {"type", "a"});
    auto a = positive_list(member(j, at, "a"), at + "/a");
    return type == "simplex" ? make_simplex_profile(std::move(a)) : make_box_profile(std::move(a));
  }
  if (type == "lp_orthant") {
    allow_keys(j, at, {"type", "power", "radii"});
    const double s = positive_number(member(j, at, "power"), at + "/power");
    return make_lp_profile(s, positive_list(member(j, at, "radii"), at + "/radii"));
  }
  throw InvalidSpec("unknown profile type '" + type + "'", at + "/type");
}

LoadedSpec body_from(const Json& j, const std::string& at) {
  require_object(j, at);
  const auto type = type_of(j, at);
  if (type == "ball") {
    allow_keys(j, at, {"type", "dim", "capacity"});
    const auto& dim = member(j, at, "dim");
    if (!dim.is_number_integer() || dim.get<long long>() <= 0 || dim.get<long long>() % 2 != 0) {
      throw InvalidSpec("dim must be a positive even integer", at + "/dim");
    }
    const std::size_t n = static_cast<std::size_t>(dim.get<long long>()) / 2;
    const double r = positive_number(member(j, at, "capacity"), at + "/capacity");
    return {make_ball(n, r), make_simplex_profile(std::vector<double>(n, r))};
  }
  if (type == "ellipsoid" || type == "polydisc") {
    allow_keys(j, at, {"type", "a"});
    auto a = positive_list(member(j, at, "a"), at + "/a");
    if (type == "ellipsoid") return {make_ellipsoid(a), make_simplex_profile(a)};
    return {make_polydisc(a), make_box_profile(a)};
  }
  if (type == "box") {
    allow_keys(j, at, {"type", "half_widths"});
    return {make_box(positive_list(member(j, at, "half_widths"), at + "/half_widths")), std::nullopt};
  }
  if (type == "toric") {
    allow_keys(j, at, {"type", "profile"});
    auto profile = profile_from(member(j, at, "profile"), at + "/profile");
    return {toric_body(profile), profile};
  }
  if (type == "pproduct") {
    allow_keys(j, at, {"type", "p", "factors"});
    const auto& pj = member(j, at, "p");
    double p;
    if (pj.is_string() && pj.get<std::string>() == "inf") {
      p = kInf;
    } else if (pj.is_number()) {
      p = pj.get<double>();
      if (!(p >= 1.0)) throw InvalidSpec("p must be >= 1", at + "/p");
    } else {
      throw InvalidSpec("p must be a number or \"inf\"", at + "/p");
    }
    const auto& fj = member(j, at, "factors");
    if (!fj.is_array() || fj.empty()) throw InvalidSpec("factors must be a nonempty array", at + "/factors");
    PProductSpec spec;
    spec.p = p;
    std::optional<ToricProfile> profile;
    bool toric = true;
    for (std::size_t i = 0; i < fj.size(); ++i) {
      auto factor = body_from(fj[i], at + "/factors/" + std::to_string(i));
      spec.factors.push_back(factor.body);
      if (!factor.profile) toric = false;
      if (toric) profile = profile ? profile_p_product(*profile, *factor.profile, p) : *factor.profile;
    }
    if (!toric) profile.reset();
    return {make_p_product(std::move(spec)), profile};
  }
  throw InvalidSpec("unknown body type '" + type + "'", at + "/type");
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidSpec(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

LoadedSpec parse_body_spec(const std::string& json_text) { return body_from(parse_text(json_text), ""); }

ToricProfile parse_profile_spec(const std::string& json_text) {
  return profile_from(parse_text(json_text), "");
}

LoadedSpec load_body_spec(const std::string& source, std::size_t invariant_samples,
                          std::uint64_t seed) {
  std::string text;
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) throw IoError("cannot read spec file '" + source + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  auto spec = parse_body_spec(text);
  if (auto violation = find_invariant_violation(spec.body, invariant_samples, seed)) {
    throw InvariantViolation(spec.body.label() + ": " + *violation);
  }
  return spec;
}

}  // namespace caplab
