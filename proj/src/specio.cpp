#include "quermass/specio.hpp"

#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "quermass/body.hpp"
#include "quermass/fields.hpp"
#include "quermass/report.hpp"
#include "quermass/types.hpp"

namespace quermass {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("body spec: " + what);
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) fail(std::string("missing number '") + key + "'");
  return j[key].get<double>();
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(std::string("missing integer '") + key + "'");
  return j[key].get<int>();
}

Vec parse_vector(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) fail(std::string("missing array '") + key + "'");
  const auto& a = j[key];
  Vec v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) fail(std::string("array '") + key + "' must hold numbers");
    v(static_cast<int>(i)) = a[i].get<double>();
  }
  return v;
}

SphereField parse_field(const json& j, int n) {
  if (!j.is_object()) fail("field spec must be an object");
  const int max_degree = require_int(j, "max_degree");
  const Vec c = parse_vector(j, "coefficients");
  std::vector<double> coefs(c.data(), c.data() + c.size());
  const std::string name = j.value("name", std::string("field"));
  return harmonic_combination(n, max_degree, coefs, name);
}

SphereField parse_body(const json& j, int expect_n) {
  if (!j.is_object()) fail("body spec must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) fail("missing string 'kind'");
  const std::string kind = j["kind"].get<std::string>();

  auto check_dim = [&](int n) {
    if (n < 2) fail("dimension must be at least 2");
    if (expect_n > 0 && n != expect_n) fail("dimension does not match --n");
    return n;
  };

  if (kind == "ball") {
    const int n = check_dim(require_int(j, "n"));
    const double r = require_number(j, "radius");
    if (!(r > 0.0)) fail("ball radius must be positive");
    return ball(n, r);
  }
  if (kind == "ellipsoid") {
    const int n = check_dim(require_int(j, "n"));
    if (j.contains("semiaxes")) {
      const Vec a = parse_vector(j, "semiaxes");
      if (a.size() != n) fail("semiaxes length must equal n");
      return ellipsoid(a);
    }
    if (j.contains("matrix")) {
      const auto& rows = j["matrix"];
      if (!rows.is_array() || static_cast<int>(rows.size()) != n) fail("matrix must be n x n");
      Mat q(n, n);
      for (int r = 0; r < n; ++r) {
        if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n)
          fail("matrix must be n x n");
        for (int c = 0; c < n; ++c) q(r, c) = rows[r][c].get<double>();
      }
      return ellipsoid(SymMatrix::from(q));
    }
    fail("ellipsoid needs 'semiaxes' or 'matrix'");
  }
  if (kind == "translate") {
    if (!j.contains("child")) fail("translate needs 'child'");
    SphereField child = parse_body(j["child"], expect_n);
    const Vec y0 = parse_vector(j, "offset");
    if (y0.size() != child.dim()) fail("offset length must equal the child dimension");
    return translate(child, y0);
  }
  if (kind == "minkowski") {
    const double t = require_number(j, "t");
    if (!j.contains("children") || !j["children"].is_array() || j["children"].size() != 2)
      fail("minkowski needs exactly two 'children'");
    SphereField a = parse_body(j["children"][0], expect_n);
    SphereField b = parse_body(j["children"][1], expect_n);
    if (a.dim() != b.dim()) fail("minkowski children must share a dimension");
    return minkowski_combination(t, a, b);
  }
  if (kind == "perturbed_ball") {
    const int n = check_dim(require_int(j, "n"));
    const double eps = require_number(j, "eps");
    if (!j.contains("field")) fail("perturbed_ball needs 'field'");
    return perturbed_ball(n, eps, parse_field(j["field"], n));
  }
  fail("unknown kind '" + kind + "'");
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("not valid JSON");
  return j;
}

}  // namespace

SphereField body_from_spec(const std::string& text, int expect_n) {
  return parse_body(parse_json(text), expect_n);
}

SphereField body_from_file(const std::string& path, int expect_n) {
  return body_from_spec(read_text_file(path), expect_n);
}

SphereField field_from_spec(const std::string& text, int n) {
  return parse_field(parse_json(text), n);
}

}  // namespace quermass
