#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "quermass/rng.hpp"
#include "quermass/sphere.hpp"
#include "quermass/symmfunc.hpp"

using namespace quermass;
namespace on = quermass::oracle;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("circle rule: equispaced nodes and uniform weights") {
  auto rule = build_rule(2, 4);
  REQUIRE(rule.count() == 4);
  CHECK(rule.weights[0] == doctest::Approx(kPi / 2).epsilon(1e-15));
  Mat expected(4, 2);
  expected << 1, 0, 0, 1, -1, 0, 0, -1;
  CHECK((rule.nodes - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(!rule.monte_carlo);
}

TEST_CASE("weights sum to the sphere area") {
  for (int n = 2; n <= 5; ++n) {
    auto rule = build_rule(n, 16, 7);
    CHECK(std::abs(rule.weights.sum() - on::sphere_area(n)) < 1e-10 * on::sphere_area(n));
  }
}

TEST_CASE("rule invariants: unit nodes, positive weights, orthonormal frames") {
  for (int n : {2, 3, 4}) {
    auto rule = build_rule(n, 8, 11);
    for (int i = 0; i < rule.count(); ++i) {
      Vec u = rule.node(i);
      CHECK(std::abs(u.norm() - 1.0) < 1e-14);
      CHECK(rule.weights[i] > 0.0);
      const Mat& e = rule.frames[i];
      REQUIRE(e.rows() == n);
      REQUIRE(e.cols() == n - 1);
      CHECK((e.transpose() * e - Mat::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((e.transpose() * u).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("second moment of a coordinate on S^2 is 4*pi/3") {
  auto rule = build_rule(3, 32);
  Vec e = Vec::Zero(3);
  e[2] = 1.0;
  double val = integrate(rule, [&](int i) {
    double c = e.dot(rule.node(i));
    return c * c;
  });
  CHECK(std::abs(val - 4.0 * kPi / 3.0) < 1e-12);
}

TEST_CASE("monomial exactness on the circle up to degree resolution-1") {
  const int res = 12;
  auto rule = build_rule(2, res);
  for (int a = 0; a + 0 <= res - 1; ++a) {
    for (int b = 0; a + b <= res - 1; ++b) {
      double val = integrate(rule, [&](int i) {
        Vec u = rule.node(i);
        return std::pow(u[0], a) * std::pow(u[1], b);
      });
      double want = on::sphere_monomial_integral({a, b});
      CHECK(std::abs(val - want) < 1e-12);
    }
  }
}

TEST_CASE("monomial exactness on S^2 up to degree 2*resolution-1") {
  const int res = 6;
  auto rule = build_rule(3, res);
  for (int a = 0; a <= 2 * res - 1; ++a)
    for (int b = 0; a + b <= 2 * res - 1; ++b)
      for (int c = 0; a + b + c <= 2 * res - 1; ++c) {
        double val = integrate(rule, [&](int i) {
          Vec u = rule.node(i);
          return std::pow(u[0], a) * std::pow(u[1], b) * std::pow(u[2], c);
        });
        double want = on::sphere_monomial_integral({a, b, c});
        CHECK(std::abs(val - want) < 1e-11);
      }
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  Vec x, w;
  gauss_legendre(8, x, w);
  REQUIRE(x.size() == 8);
  CHECK(std::abs(w.sum() - 2.0) < 1e-14);
  for (int d = 0; d <= 15; ++d) {
    double val = 0.0;
    for (int i = 0; i < 8; ++i) val += w[i] * std::pow(x[i], d);
    double want = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
    CHECK(std::abs(val - want) < 1e-13);
  }
}

TEST_CASE("monte carlo rule for n >= 4 is flagged and seed-deterministic") {
  auto r1 = build_rule(4, 16, 42);
  auto r2 = build_rule(4, 16, 42);
  auto r3 = build_rule(4, 16, 43);
  CHECK(r1.monte_carlo);
  CHECK(r1.count() == 2 * 16 * 16);
  CHECK((r1.nodes - r2.nodes).cwiseAbs().maxCoeff() == 0.0);
  CHECK((r1.nodes - r3.nodes).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("build_rule rejects bad arguments") {
  CHECK_THROWS_AS(build_rule(1, 16), std::domain_error);
  CHECK_THROWS_AS(build_rule(3, 3), std::domain_error);
}

TEST_CASE("tangent hessian of the 1-homogeneous extension: closed forms") {
  for (int n : {2, 3, 4}) {
    auto rule = build_rule(n, 8, 3);
    Rng rng(17);
    SphereField one = constant_field(n, 1.0);
    Vec y0 = rng.normal_vector(n);
    SphereField lin(n, "lin", [y0](const Vec& x) { return y0.dot(x.normalized()); });
    for (int i : {0, rule.count() / 3, rule.count() - 1}) {
      // f = 1 extends to |x|: restricted Hessian is the identity.
      SymMatrix a = tangent_hessian_1hom(one, rule, i);
      CHECK((a.mat() - Mat::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() < 1e-9);
      // f = <y0, u> extends linearly: Hessian vanishes.
      SymMatrix b = tangent_hessian_1hom(lin, rule, i);
      CHECK(b.mat().cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("spherical gradient of a linear field") {
  auto rule = build_rule(3, 8);
  Vec e = Vec::Zero(3);
  e[0] = 1.0;
  SphereField f(3, "x0", [e](const Vec& x) { return e.dot(x) / x.norm(); });
  for (int i = 0; i < rule.count(); i += 37) {
    Vec u = rule.node(i);
    Vec g_frame = spherical_gradient(f, rule, i);
    Vec g_ambient = rule.frames[i] * g_frame;
    Vec want = e - e.dot(u) * u;
    CHECK((g_ambient - want).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("degree-1 eigenfunction identity on S^2: |grad f|^2 integrates to 2 f^2") {
  auto rule = build_rule(3, 24);
  Vec y0(3);
  y0 << 0.3, -1.1, 0.7;
  SphereField f(3, "lin", [y0](const Vec& x) { return y0.dot(x) / x.norm(); });
  double lhs = integrate(rule, [&](int i) { return spherical_gradient(f, rule, i).squaredNorm(); });
  double rhs = 2.0 * integrate(rule, [&](int i) { return std::pow(f.value(rule.node(i)), 2); });
  CHECK(std::abs(lhs - rhs) < 1e-6 * std::abs(rhs));
}

TEST_CASE("covariant hessian trace is the laplace-beltrami operator") {
  auto rule = build_rule(3, 12);
  Vec e = Vec::Zero(3);
  e[1] = 1.0;
  SphereField f(3, "x1", [e](const Vec& x) { return e.dot(x) / x.norm(); });
  for (int i = 0; i < rule.count(); i += 53) {
    double lap = covariant_hessian(f, rule, i).mat().trace();
    CHECK(std::abs(lap - (-2.0 * f.value(rule.node(i)))) < 1e-6);
  }
}

TEST_CASE("covariant hessian equals tangent hessian minus f on the diagonal") {
  auto rule = build_rule(3, 8, 5);
  SphereField f(3, "bump", [](const Vec& x) {
    Vec u = x / x.norm();
    return u[0] * u[0] - 0.5 * u[1] * u[2];
  });
  for (int i = 0; i < rule.count(); i += 41) {
    Mat a = tangent_hessian_1hom(f, rule, i).mat();
    Mat b = covariant_hessian(f, rule, i).mat();
    Mat want = a - f.value(rule.node(i)) * Mat::Identity(2, 2);
    CHECK((b - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("elementary symmetric functions of the tangent hessian are frame-independent") {
  Rng rng(29);
  for (int n : {2, 3, 4}) {
    SphereField f(n, "poly", [](const Vec& x) {
      Vec u = x / x.norm();
      double s = 1.0;
      for (int j = 0; j < u.size(); ++j) s += 0.3 * (j + 1) * u[j] * u[j];
      return s;
    });
    for (int trial = 0; trial < 5; ++trial) {
      Vec u = rng.unit_vector(n);
      Mat e = frame_at(u);
      // Rotate the frame by a random orthogonal matrix of the tangent space.
      Mat g(n - 1, n - 1);
      for (int i = 0; i < n - 1; ++i) g.col(i) = rng.normal_vector(n - 1);
      Mat q = Eigen::HouseholderQR<Mat>(g).householderQ();
      Mat e2 = e * q;
      SymMatrix a1 = tangent_hessian_1hom(f, u, e);
      SymMatrix a2 = tangent_hessian_1hom(f, u, e2);
      for (int k = 0; k <= n - 1; ++k)
        CHECK(std::abs(elem_sym(a1, k) - elem_sym(a2, k)) < 1e-9 * std::max(1.0, std::abs(elem_sym(a1, k))));
    }
  }
}

TEST_CASE("field algebra keeps values and analytic derivatives consistent") {
  Vec y0(3);
  y0 << 1.0, 2.0, -0.5;
  SphereField c = constant_field(3, 2.0);
  SphereField f(3, "fd", [y0](const Vec& x) { return std::pow(y0.dot(x) / x.norm(), 2); });
  SphereField sum = 3.0 * c + f - 1.0;
  Vec u(3);
  u << 0.6, 0.0, 0.8;
  CHECK(sum.value(u) == doctest::Approx(6.0 + std::pow(y0.dot(u), 2) - 1.0).epsilon(1e-12));
  CHECK(!sum.analytic());
  SphereField both = 2.0 * c + constant_field(3, 1.0);
  CHECK(both.analytic());
  CHECK(both.value(u) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK((both.ext_gradient(u) - 5.0 * u).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("finite-difference extension derivatives match analytic ones") {
  // Same constant field through the analytic and the FD paths.
  SphereField exact = constant_field(3, 1.5);
  SphereField fd(3, "c", [](const Vec&) { return 1.5; });
  Rng rng(31);
  for (int t = 0; t < 4; ++t) {
    Vec u = rng.unit_vector(3);
    CHECK((exact.ext_gradient(u) - fd.ext_gradient(u)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((exact.ext_hessian(u) - fd.ext_hessian(u)).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("default resolution and tolerance scaling") {
  CHECK(default_resolution(2) == 512);
  CHECK(default_resolution(3) == 64);
  auto fine = build_rule(2, 512);
  auto coarse = build_rule(2, 128);
  CHECK(default_tolerance(fine) == doctest::Approx(1e-7));
  CHECK(default_tolerance(coarse) == doctest::Approx(1e-7 * 16.0));
  auto mc = build_rule(5, 16, 9);
  CHECK(default_tolerance(mc) == doctest::Approx(10.0 / std::sqrt(static_cast<double>(mc.count()))));
}
