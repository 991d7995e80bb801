#include "support.hpp"

#include "asymptotica/surfaces.hpp"

#include <cmath>

using namespace asym;

TEST_SUITE("surfaces") {
  TEST_CASE("second fundamental form of standard surfaces") {
    const SecondFundamental plane = second_fundamental(ParamSurface::parse({"u", "v", "0"}), 0.3, -0.2);
    CHECK(plane.e == 0.0);
    CHECK(plane.f == 0.0);
    CHECK(plane.g == 0.0);

    const SecondFundamental saddle = second_fundamental(ParamSurface::parse({"u", "v", "u*v"}), 0, 0);
    CHECK(saddle.e == doctest::Approx(0.0));
    CHECK(saddle.f == doctest::Approx(1.0));
    CHECK(saddle.g == doctest::Approx(0.0));

    const SecondFundamental sphere = second_fundamental(ParamSurface::parse({"u", "v", "sqrt(1 - u^2 - v^2)"}), 0, 0);
    CHECK(std::abs(sphere.e) == doctest::Approx(1.0));
    CHECK(sphere.g == doctest::Approx(sphere.e));
    CHECK(sphere.f == doctest::Approx(0.0));

    CHECK_THROWS_AS(second_fundamental(ParamSurface::parse({"u", "u", "0"}), 0, 0), DegenerateFrame);
    CHECK_THROWS_AS(ParamSurface::parse({"x", "v", "0"}), std::invalid_argument);
  }

  TEST_CASE("k1 of the rotating construction") {
    CHECK(arnold_k1(2, 3, 0.0) == 0.0);
    CHECK(arnold_k1(2, 3, 1.0) == doctest::Approx(9.0 / 14.0));
    CHECK(arnold_k1(2, 4, 1.0) == doctest::Approx(22.0 / 21.0));
    CHECK(eval_at(substitute(parse(arnold_k1_expr(2, 4)), Var::u, parse("x")), Var::x, 0.7) ==
          doctest::Approx(arnold_k1(2, 4, 0.7)));
    CHECK_THROWS_AS(arnold_k1(3, 3, 0.0), std::invalid_argument);
  }

  TEST_CASE("f along the curve") {
    CHECK(f_on_curve(2, 3, 0.0) == doctest::Approx(3.0));
    CHECK(f_on_curve(2, 4, 0.0) == 0.0);
    CHECK(f_on_curve(2, 3, 1.0) == doctest::Approx(75.0));
  }

  TEST_CASE("rotating-type surfaces") {
    for (int m = 2; m <= 5; ++m) {
      INFO("m = " << m);
      const ArnoldSurface a = arnold_surface(m, m + 1);
      CHECK(a.report.f00 == doctest::Approx((m + 1.0) / (m - 1.0)).epsilon(1e-9));
      REQUIRE(a.report.u.size() == 64);
      for (std::size_t i = 0; i < a.report.u.size(); ++i) {
        const double u = a.report.u[i];
        CHECK(std::abs(a.report.e[i]) <= 1e-9);
        const double fc = f_on_curve(m, m + 1, u);
        CHECK(a.report.f_br[i] == doctest::Approx(fc).epsilon(1e-9));
        // beta(u, 0) = gamma(u) = (u, u^m, u^n)
        const Vec3d p = a.surface(u, 0.0);
        CHECK(p[0] == doctest::Approx(u));
        CHECK(p[1] == doctest::Approx(std::pow(u, m)));
        CHECK(p[2] == doctest::Approx(std::pow(u, m + 1)));
      }
    }
  }

  TEST_CASE("non-rotating surfaces lose f(0,0)") {
    CHECK(std::abs(arnold_surface(2, 4).report.f00) <= 1e-9);
    CHECK(std::abs(arnold_surface(3, 5).report.f00) <= 1e-9);
  }
}

TEST_SUITE("property") {
  TEST_CASE("bracket f matches the closed form at random u") {
    SEED_INFO();
    auto g = testing::rng(91);
    for (int k = 0; k < 40; ++k) {
      const int m = 2 + static_cast<int>(g() % 4), n = m + 1 + static_cast<int>(g() % 2);
      const double u = testing::uniform(g, -0.5, 0.5);
      const ArnoldSurface a = arnold_surface(m, n, 2);
      const SecondFundamental sf = second_fundamental(a.surface, u, 0.0);
      INFO("m = " << m << ", n = " << n << ", u = " << u);
      CHECK(sf.f_br == doctest::Approx(f_on_curve(m, n, u)).epsilon(1e-9).scale(1.0));
      CHECK(std::abs(sf.e) <= 1e-9);
    }
  }

  TEST_CASE("unit-normal and bracket forms differ by the normal length") {
    SEED_INFO();
    auto g = testing::rng(92);
    const ParamSurface s = ParamSurface::parse({"u + v^2", "v - u*v", "sin(u)*cos(v)"});
    for (int k = 0; k < 20; ++k) {
      const SecondFundamental sf = second_fundamental(s, testing::uniform(g, -0.5, 0.5), testing::uniform(g, -0.5, 0.5));
      CHECK(sf.e * sf.normal_length == doctest::Approx(sf.e_br));
      CHECK(sf.f * sf.normal_length == doctest::Approx(sf.f_br));
      CHECK(sf.g * sf.normal_length == doctest::Approx(sf.g_br));
    }
  }
}
