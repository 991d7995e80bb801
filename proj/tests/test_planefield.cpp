#include "support.hpp"

#include "asymptotica/planefield.hpp"

#include <cmath>
#include <numbers>

using namespace asym;

TEST_SUITE("planefield") {
  TEST_CASE("normal curvature") {
    const AmbientField flat = builtin_ambient_field("flat");
    CHECK(normal_curvature(flat, {0.3, -0.2, 0.5}, {1, 0, 0}) == 0.0);

    const AmbientField contact = builtin_ambient_field("contact");
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(normal_curvature(contact, {0, 0, 0}, {s, s, 0}) == doctest::Approx(0.5));
    // Scale of dr does not matter.
    CHECK(normal_curvature(contact, {0, 0, 0}, {3, 3, 0}) == doctest::Approx(0.5));

    const AmbientField circle = circle_example_field();
    CHECK(std::abs(normal_curvature(circle, {1, 0, 0}, {0, 1, 0})) < 1e-14);
  }

  TEST_CASE("normal curvature preconditions") {
    const AmbientField contact = builtin_ambient_field("contact");
    CHECK_THROWS_AS(normal_curvature(contact, {0, 0, 0}, {0, 0, 0}), ZeroDirection);
    CHECK_THROWS_AS(normal_curvature(contact, {0, 0, 0}, {0, 0, 1}), NotInPlane);
    NormalCurvatureOptions o;
    o.project = true;
    // (1,1,1) projects to (1,1,0) at the origin, where xi = (0,0,1).
    CHECK(normal_curvature(contact, {0, 0, 0}, {1, 1, 1}, o) == doctest::Approx(0.5));
    CHECK_THROWS_AS(AmbientField::parse({"x", "y", "z"})({0, 0, 0}), ZeroField);
  }

  TEST_CASE("integrability defect") {
    const AmbientField flat = builtin_ambient_field("flat");
    const AmbientField contact = builtin_ambient_field("contact");
    for (Vec3d p : {Vec3d{0, 0, 0}, Vec3d{0.5, -1, 2}, Vec3d{-3, 1, 0.1}}) {
      CHECK(integrability_defect(flat, p) == 0.0);
      CHECK(integrability_defect(contact, p) == doctest::Approx(1.0));
    }
    CHECK(integrability_defect(circle_example_field(), {1, 0, 0}) == doctest::Approx(-2.0));
    // A gradient field times a nonvanishing function stays integrable.
    const AmbientField grad = AmbientField::parse({"2*x*(2 + sin(y))", "2*y*(2 + sin(y))", "2*z*(2 + sin(y))"});
    CHECK(std::abs(integrability_defect(grad, {0.3, 0.4, 0.5})) < 1e-13);
  }

  TEST_CASE("the circle example field") {
    const AmbientField xi = circle_example_field();
    const Vec3d a = xi({1, 0, 0}), b = xi({0, 1, 0});
    CHECK(a[0] == doctest::Approx(0.0));
    CHECK(a[1] == doctest::Approx(0.0));
    CHECK(a[2] == doctest::Approx(-1.0));
    CHECK(b[0] == doctest::Approx(0.0));
    CHECK(b[1] == doctest::Approx(0.0));
    CHECK(b[2] == doctest::Approx(-1.0));
    // The circle is an asymptotic line: tangent in the plane, zero normal curvature.
    for (int i = 0; i < 64; ++i) {
      const double t = 2 * std::numbers::pi * i / 64;
      const Vec3d p{std::cos(t), std::sin(t), 0}, dr{-std::sin(t), std::cos(t), 0};
      CHECK(std::abs(dot(xi(p), dr)) < 1e-14);
      CHECK(std::abs(normal_curvature(xi, p, dr)) < 1e-10);
    }
  }

  TEST_CASE("gauge scaling") {
    const AmbientField contact = builtin_ambient_field("contact");
    const AmbientField scaled = gauge_scale(contact, parse("2"));
    const Vec3d v = scaled({0, 0.5, 0});
    CHECK(v[0] == doctest::Approx(-1.0));
    CHECK(v[1] == 0.0);
    CHECK(v[2] == doctest::Approx(2.0));
    CHECK_THROWS_AS(gauge_scale(contact, parse("x")), Vanishing);
    CHECK_THROWS_AS(probe_nonvanishing(parse("x - 0.5"), Box{}, 3), Vanishing);
    CHECK_NOTHROW(probe_nonvanishing(parse("2 + sin(x*y*z)"), Box{}));
  }

  TEST_CASE("jacobian columns") {
    const AmbientField f = AmbientField::parse({"x*y", "z^2", "sin(x)"});
    const auto J = f.jacobian({1, 2, 3});
    CHECK(J[0][0] == doctest::Approx(2.0));   // d(xy)/dx
    CHECK(J[1][0] == doctest::Approx(1.0));   // d(xy)/dy
    CHECK(J[2][1] == doctest::Approx(6.0));   // d(z^2)/dz
    CHECK(J[0][2] == doctest::Approx(std::cos(1.0)));
  }
}

TEST_SUITE("property") {
  TEST_CASE("normal curvature is invariant under rescaling dr and quadratic in xi scaling") {
    SEED_INFO();
    auto g = testing::rng(41);
    const AmbientField xi = circle_example_field();
    for (int k = 0; k < 50; ++k) {
      const Vec3d p{testing::uniform(g, -1, 1), testing::uniform(g, -1, 1), testing::uniform(g, -1, 1)};
      Vec3d n;
      try {
        n = xi(p);
      } catch (const ZeroField&) {
        continue;
      }
      // Any vector orthogonal to xi(p).
      Vec3d w{testing::uniform(g, -1, 1), testing::uniform(g, -1, 1), testing::uniform(g, -1, 1)};
      const Vec3d dr = cross(n, w);
      if (norm(dr) < 1e-3) continue;
      const double s = testing::uniform(g, 0.1, 10.0);
      const double k1 = normal_curvature(xi, p, dr), k2 = normal_curvature(xi, p, dr * s);
      CHECK(k2 == doctest::Approx(k1).epsilon(1e-10).scale(1.0));
      // phi = 3: k_n scales by 3 (dphi = 0).
      const double k3 = normal_curvature(gauge_scale(xi, parse("3")), p, dr);
      CHECK(k3 == doctest::Approx(3 * k1).epsilon(1e-10).scale(1.0));
    }
  }

  TEST_CASE("the integrability defect scales by phi^2") {
    SEED_INFO();
    auto g = testing::rng(42);
    const AmbientField xi = builtin_ambient_field("contact");
    const Expr phi = parse("2 + sin(x + y*z)");
    const AmbientField scaled = gauge_scale(xi, phi);
    for (int k = 0; k < 50; ++k) {
      const Vec3d p{testing::uniform(g, -1, 1), testing::uniform(g, -1, 1), testing::uniform(g, -1, 1)};
      Bindings<double> b(0.0);
      b.bind(Var::x, p[0]).bind(Var::y, p[1]).bind(Var::z, p[2]);
      const double f = eval(phi, b);
      CHECK(integrability_defect(scaled, p) == doctest::Approx(f * f * integrability_defect(xi, p)).epsilon(1e-12));
    }
  }
}
