#include "support.hpp"

#include "asymptotica/construct.hpp"
#include "asymptotica/flow.hpp"
#include "asymptotica/ode.hpp"
#include "asymptotica/surfaces.hpp"

#include <cmath>
#include <numbers>

using namespace asym;

namespace {

const double kTwoPi = 2 * std::numbers::pi;

// Constant binary equation.
struct ConstantSystem final : BinarySystem {
  BinaryCoeffs c;
  explicit ConstantSystem(BinaryCoeffs c) : c(c) {}
  BinaryCoeffs at(double, double, double) const override { return c; }
};

// e = -y^2... a saddle family: p^2 = 1 + y^2 has slopes +-sqrt(1 + y^2).
struct SaddleSystem final : BinarySystem {
  BinaryCoeffs at(double, double y, double) const override { return {-(1 + y * y), 0, 1, 0, 0}; }
};

}  // namespace

TEST_SUITE("ode") {
  TEST_CASE("exponential growth") {
    auto rhs = [](double, const std::array<double, 1>& y, std::array<double, 1>& d) {
      d[0] = y[0];
      return 0;
    };
    const auto out = dopri5<1>(rhs, 0.0, {1.0}, 2.0, OdeOptions{});
    CHECK(out.code == 0);
    CHECK(out.y[0] == doctest::Approx(std::exp(2.0)).epsilon(1e-9));
    CHECK(out.stats.accepted > 0);
  }

  TEST_CASE("harmonic oscillator conserves energy") {
    auto rhs = [](double, const std::array<double, 2>& y, std::array<double, 2>& d) {
      d = {y[1], -y[0]};
      return 0;
    };
    const auto out = dopri5<2>(rhs, 0.0, {1.0, 0.0}, kTwoPi, OdeOptions{});
    CHECK(out.y[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(out.y[1]) < 1e-8);
  }

  TEST_CASE("stop and retry codes") {
    auto stop = [](double x, const std::array<double, 1>&, std::array<double, 1>& d) {
      d[0] = 1;
      return x > 0.5 ? 7 : 0;
    };
    const auto a = dopri5<1>(stop, 0.0, {0.0}, 1.0, OdeOptions{});
    CHECK(a.code == 7);
    CHECK(a.x <= 0.5 + 1e-12);
    auto never = [](double x, const std::array<double, 1>&, std::array<double, 1>& d) {
      d[0] = 1;
      return x > 0.25 ? -5 : 0;
    };
    const auto b = dopri5<1>(never, 0.0, {0.0}, 1.0, OdeOptions{});
    CHECK(b.code == -5);
    CHECK(b.x == doctest::Approx(0.25).epsilon(1e-9));
  }

  TEST_CASE("observer can stop") {
    auto rhs = [](double, const std::array<double, 1>&, std::array<double, 1>& d) {
      d[0] = 1;
      return 0;
    };
    auto obs = [](double x, const std::array<double, 1>&) { return x > 0.3 ? 9 : 0; };
    const auto out = dopri5<1>(rhs, 0.0, {0.0}, 1.0, OdeOptions{}, obs);
    CHECK(out.code == 9);
    CHECK(out.x > 0.3);
  }
}

TEST_SUITE("flow") {
  TEST_CASE("branch slopes") {
    BranchSlopes b = branch_slopes(-1, 0, 1);
    REQUIRE(b.roots.size() == 2);
    CHECK(b.roots[0] == doctest::Approx(-1));
    CHECK(b.roots[1] == doctest::Approx(1));
    CHECK(b.status == SlopeStatus::Ok);

    b = branch_slopes(0, 1, 0);
    REQUIRE(b.roots.size() == 1);
    CHECK(b.roots[0] == 0.0);
    CHECK(b.vertical_root);
    CHECK(b.status == SlopeStatus::Ok);

    CHECK(branch_slopes(1, 0, 1).status == SlopeStatus::Elliptic);
    CHECK(branch_slopes(1, 1, 1).status == SlopeStatus::Coalescing);
    CHECK(branch_slopes(0, 0, 1).status == SlopeStatus::Coalescing);
    CHECK(branch_slopes(1, 0, 0).status == SlopeStatus::Vertical);
    CHECK_THROWS_AS(branch_slopes(0, 0, 0), std::invalid_argument);

    // Nearest root to the previous slope.
    CHECK(*branch_slopes(-1, 0, 1, 0.8).selected == doctest::Approx(1));
    CHECK(*branch_slopes(-1, 0, 1, -0.8).selected == doctest::Approx(-1));
  }

  TEST_CASE("stable roots when g is tiny") {
    const BranchSlopes b = branch_slopes(-2, 1, 1e-12);
    // 1e-12 p^2 + 2 p - 2 = 0: small root p ~ 1
    CHECK(*b.selected == doctest::Approx(1.0));
  }

  TEST_CASE("the closed line is an orbit") {
    const TubularField f(build_t1());
    const ChartBinarySystem sys(f);
    const FlowResult r = integrate_asymptotic(sys, 0, 0, 0, kTwoPi);
    REQUIRE(r.status == FlowStatus::Completed);
    for (const PathSample& s : r.path.samples) {
      CHECK(std::abs(s.y) <= 1e-10);
      CHECK(std::abs(s.z) <= 1e-10);
    }
    CHECK(r.path.samples.back().x == doctest::Approx(kTwoPi));
  }

  TEST_CASE("a nearby start returns to the section away from the origin") {
    const TubularField f(build_t1());
    const ChartBinarySystem sys(f);
    const FlowResult r = integrate_asymptotic(sys, 0, 1e-5, 0, kTwoPi);
    REQUIRE(r.status == FlowStatus::Completed);
    const PathSample& e = r.path.samples.back();
    CHECK(std::hypot(e.y, e.z) > 1e-3);
    CHECK(r.path.max_residual < 1e-10);
  }

  TEST_CASE("stops") {
    const ConstantSystem elliptic({1, 0, 1, 0, 0});
    FlowResult r = integrate_asymptotic(elliptic, 0, 0, 0, 1);
    CHECK(r.status == FlowStatus::EllipticStop);
    CHECK(r.path.samples.empty());

    const ConstantSystem vertical({1, 0, 0, 0, 0});
    CHECK(integrate_asymptotic(vertical, 0, 0, 0, 1).status == FlowStatus::VerticalDirection);

    const ConstantSystem steep({-1, 0, 1, 0, 0});
    r = integrate_asymptotic(steep, 0, 0, 0, 1, 1.0);  // slope 1 leaves |y| <= 0.1
    CHECK(r.status == FlowStatus::TubeExit);
    CHECK(r.path.samples.back().y > 0.1);  // stops at the first accepted step outside

    CHECK(integrate_asymptotic(steep, 0, 0.5, 0, 1).status == FlowStatus::TubeExit);
    CHECK_THROWS_AS(integrate_asymptotic(steep, 1, 0, 0, 0), std::invalid_argument);
  }

  TEST_CASE("branch hint selects the branch") {
    const SaddleSystem s;
    FlowOptions o;
    o.radius = 10;
    const FlowResult up = integrate_asymptotic(s, 0, 0, 0, 1, 1.0, o);
    const FlowResult down = integrate_asymptotic(s, 0, 0, 0, 1, -1.0, o);
    REQUIRE(up.status == FlowStatus::Completed);
    REQUIRE(down.status == FlowStatus::Completed);
    // y' = sqrt(1 + y^2) => y = sinh(x)
    CHECK(up.path.samples.back().y == doctest::Approx(std::sinh(1.0)).epsilon(1e-8));
    CHECK(down.path.samples.back().y == doctest::Approx(-std::sinh(1.0)).epsilon(1e-8));
  }

  TEST_CASE("z follows dz = A dx + B dy") {
    const ConstantSystem c({-1, 0, 1, 0.5, 2.0});
    FlowOptions o;
    o.radius = 10;
    const FlowResult r = integrate_asymptotic(c, 0, 0, 0, 1, 1.0, o);
    CHECK(r.path.samples.back().z == doctest::Approx(0.5 + 2.0).epsilon(1e-10));
  }

  TEST_CASE("surface lines on v = 0 stay there") {
    for (int m = 2; m <= 4; ++m) {
      const ArnoldSurface a = arnold_surface(m, m + 1, 2);
      const SurfaceBinarySystem sys(a.surface);
      const FlowResult r = integrate_asymptotic(sys, -0.5, 0, 0, 0.5, 0.0);
      REQUIRE(r.status == FlowStatus::Completed);
      for (const PathSample& s : r.path.samples) CHECK(std::abs(s.y) <= 1e-9);
    }
  }
}

TEST_SUITE("property") {
  TEST_CASE("flow residuals stay at rounding level") {
    SEED_INFO();
    auto g = testing::rng(71);
    const TubularField f(build_t1());
    const ChartBinarySystem sys(f);
    for (int k = 0; k < 6; ++k) {
      const double x0 = testing::uniform(g, 0, kTwoPi);
      const double y0 = testing::uniform(g, -0.005, 0.005), z0 = testing::uniform(g, -0.005, 0.005);
      INFO("start " << x0 << ", " << y0 << ", " << z0);
      const FlowResult r = integrate_asymptotic(sys, x0, y0, z0, x0 + 1.0);
      CHECK(r.path.samples.size() >= 2);
      CHECK(r.path.max_residual <= 1e-8);
      // Independent residual check at recorded samples.
      for (const PathSample& s : r.path.samples) {
        const Reduced d = reduce(f, s.x, s.y, s.z);
        const double scale = std::max({std::abs(d.e), std::abs(d.f), std::abs(d.g), 1.0});
        CHECK(std::abs(d.g * s.p * s.p + 2 * d.f * s.p + d.e) / scale <= 1e-8);
      }
    }
  }

  TEST_CASE("scalar linear ODEs integrate exactly") {
    SEED_INFO();
    auto g = testing::rng(72);
    for (int k = 0; k < 20; ++k) {
      const double a = testing::uniform(g, -2, 2), y0 = testing::uniform(g, -1, 1), T = testing::uniform(g, 0.1, 3);
      auto rhs = [a](double, const std::array<double, 1>& y, std::array<double, 1>& d) {
        d[0] = a * y[0];
        return 0;
      };
      const auto out = dopri5<1>(rhs, 0.0, {y0}, T, OdeOptions{});
      CHECK(out.y[0] == doctest::Approx(y0 * std::exp(a * T)).epsilon(1e-8).scale(1.0));
    }
  }
}
