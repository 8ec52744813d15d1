#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "caplab/errors.hpp"
#include "caplab/spec_io.hpp"
#include "caplab/toric.hpp"

using namespace caplab;

TEST_CASE("standard bodies parse") {
  const auto ball = parse_body_spec(R"({"type":"ball","dim":4,"capacity":2})");
  CHECK(ball.body.dim() == 4);
  CHECK(*ball.body.capacity_hint() == 2.0);
  REQUIRE(ball.profile.has_value());
  CHECK(ball.profile->shape() == ProfileShape::kSimplex);

  const auto e = parse_body_spec(R"({"type":"ellipsoid","a":[1,2]})");
  CHECK(e.body.dim() == 4);
  const auto p = parse_body_spec(R"({"type":"polydisc","a":[1,2]})");
  CHECK(p.profile->shape() == ProfileShape::kBox);
  const auto b = parse_body_spec(R"({"type":"box","half_widths":[1,2]})");
  CHECK_FALSE(b.profile.has_value());
}

TEST_CASE("p-products and toric specs parse") {
  const auto prod = parse_body_spec(
      R"({"type":"pproduct","p":1.5,"factors":[{"type":"ellipsoid","a":[1]},{"type":"ellipsoid","a":[2]}]})");
  CHECK(prod.body.smooth());
  REQUIRE(prod.body.p_product() != nullptr);
  CHECK(prod.body.p_product()->p == 1.5);
  REQUIRE(prod.profile.has_value());
  CHECK(prod.profile->is_concave());

  const auto inf = parse_body_spec(
      R"({"type":"pproduct","p":"inf","factors":[{"type":"ball","dim":2,"capacity":1},{"type":"polydisc","a":[2]}]})");
  CHECK(std::isinf(inf.body.p_product()->p));

  const auto toric = parse_body_spec(R"({"type":"toric","profile":{"type":"lp_orthant","power":0.5,"radii":[1,2]}})");
  REQUIRE(toric.profile.has_value());
  CHECK(toric.profile->is_concave());
  const auto profile = parse_profile_spec(R"({"type":"simplex","a":[1,2,3]})");
  CHECK(profile.n() == 3);
}

TEST_CASE("spec errors point at the offending field") {
  try {
    parse_body_spec(R"({"type":"ellipsoid","a":[1,-2]})");
    FAIL("expected InvalidSpec");
  } catch (const InvalidSpec& e) {
    CHECK(e.pointer() == "/a/1");
  }
  try {
    parse_body_spec(R"({"type":"pproduct","p":2,"factors":[{"type":"ball","dim":2,"capacity":1},{"type":"cube"}]})");
    FAIL("expected InvalidSpec");
  } catch (const InvalidSpec& e) {
    CHECK(e.pointer() == "/factors/1/type");
  }
  CHECK_THROWS_AS(parse_body_spec(R"({"type":"ball","dim":3,"capacity":1})"), InvalidSpec);
  CHECK_THROWS_AS(parse_body_spec(R"({"type":"ball","dim":2,"capacity":1,"colour":"red"})"), InvalidSpec);
  CHECK_THROWS_AS(parse_body_spec(R"({"type":"pproduct","p":0.5,"factors":[]})"), InvalidSpec);
  CHECK_THROWS_AS(parse_body_spec("{not json"), InvalidSpec);
  CHECK_THROWS_AS(parse_body_spec(R"({"a":[1]})"), InvalidSpec);
}

TEST_CASE("loading from inline text and from files") {
  const auto inline_spec = load_body_spec(R"({"type":"ellipsoid","a":[1,2]})");
  CHECK(inline_spec.body.dim() == 4);

  const auto path = std::filesystem::temp_directory_path() / "caplab_spec_io_test.json";
  {
    std::ofstream out(path);
    out << R"({"type":"polydisc","a":[1,3]})";
  }
  const auto from_file = load_body_spec(path.string());
  CHECK(*from_file.body.capacity_hint() == 1.0);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_body_spec("/nonexistent/dir/spec.json"), IoError);
}
