#include "support.hpp"

#include "asymptotica/construct.hpp"
#include "asymptotica/monodromy.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

using namespace asym;

namespace {

const double kTwoPi = 2 * std::numbers::pi;

MonodromyOptions no_quadrature() {
  MonodromyOptions o;
  o.quadrature = false;
  return o;
}

}  // namespace

TEST_SUITE("monodromy") {
  TEST_CASE("closed-form eigenvalues") {
    auto ev = eigenvalues({{{2, 0}, {0, 3}}});
    CHECK(ev[0].real() == doctest::Approx(3));
    CHECK(ev[1].real() == doctest::Approx(2));
    ev = eigenvalues({{{0, -1}, {1, 0}}});
    CHECK(ev[0].imag() == doctest::Approx(1));
    CHECK(ev[1].imag() == doctest::Approx(-1));
    // Widely separated eigenvalues keep full relative accuracy.
    ev = eigenvalues({{{1e8, 0}, {5, 1e-8}}});
    CHECK(ev[1].real() == doctest::Approx(1e-8).epsilon(1e-12));
  }

  TEST_CASE("M = 0 gives the identity") {
    const MonodromyResult r = monodromy([](double) { return Mat2{}; }, kTwoPi);
    CHECK(r.Q[0][0] == 1.0);
    CHECK(r.Q[1][1] == 1.0);
    CHECK(r.Q[0][1] == 0.0);
    CHECK_FALSE(r.hyperbolic);
    CHECK(std::abs(r.eigenvalues[0]) == doctest::Approx(1.0));
  }

  TEST_CASE("constant diagonal M") {
    const double a = 0.3, b = -0.2, l = 2.0;
    const MonodromyResult r = monodromy([&](double) { return Mat2{{{a, 0}, {0, b}}}; }, l);
    CHECK(std::abs(r.eigenvalues[0]) == doctest::Approx(std::exp(a * l)).epsilon(1e-9));
    CHECK(std::abs(r.eigenvalues[1]) == doctest::Approx(std::exp(b * l)).epsilon(1e-9));
    CHECK(r.hyperbolic);
    CHECK(r.diagonal_quadrature[0] == doctest::Approx(a * l));
    CHECK(r.diagonal_ode[1] == doctest::Approx(b * l));
  }

  TEST_CASE("rotation generator is elliptic") {
    const MonodromyResult r = monodromy([](double) { return Mat2{{{0, -1}, {1, 0}}}; }, 1.0, no_quadrature());
    CHECK(std::abs(r.eigenvalues[0]) == doctest::Approx(1.0));
    CHECK_FALSE(r.hyperbolic);
  }

  TEST_CASE("closed example variational matrix") {
    const TubularField f(build_t1());
    for (int i = 0; i < 32; ++i) {
      const double x = kTwoPi * i / 32;
      const Mat2 M = variational_matrix(f, x);
      CHECK(M[0][0] == doctest::Approx(1.0));
      CHECK(std::abs(M[0][1]) < 1e-10);
    }
    // A_z(0) from the jet pipeline; see the difference check in the tubular suite.
    CHECK(variational_matrix(f, 0.0)[1][1] == doctest::Approx(curve_data(f, 0.0).A_z));
  }

  TEST_CASE("closed example return map") {
    const TubularField f(build_t1());
    const MonodromyResult r = monodromy(f, kTwoPi);
    CHECK(r.Q[0][0] == doctest::Approx(std::exp(kTwoPi)).epsilon(1e-6));
    CHECK(std::abs(r.Q[0][1]) < 1e-8);
    CHECK(r.diagonal_quadrature[0] == doctest::Approx(kTwoPi).epsilon(1e-10));
    CHECK(r.diagonal_ode[0] == doctest::Approx(kTwoPi).epsilon(1e-9));
    CHECK(r.liouville_rel_error < 1e-8);
    CHECK(r.max_liouville_checkpoint_error < 1e-8);
    // Triangular M: eigenvalues are the exponentials of the diagonal integrals.
    CHECK(std::abs(r.eigenvalues[0]) == doctest::Approx(std::exp(r.diagonal_quadrature[0])).epsilon(1e-6));
    CHECK(std::abs(r.eigenvalues[1]) == doctest::Approx(std::exp(r.diagonal_quadrature[1])).epsilon(1e-6));
  }

  TEST_CASE("synthetic field with zero variational matrix") {
    const AmbientChartField f(builtin_ambient_field("zero-monodromy"), TubularChart(Curve::builtin("line")));
    const Mat2 M = variational_matrix(f, 1.0);
    for (auto& row : M)
      for (double v : row) CHECK(std::abs(v) < 1e-14);
    const ChartBinarySystem sys(f);
    const Mat2 fd = fd_poincare_derivative(sys, 0.0, kTwoPi, 1e-5);
    CHECK(fd[0][0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(fd[1][1] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(fd[0][1]) < 1e-8);
    CHECK(std::abs(fd[1][0]) < 1e-8);
  }

  TEST_CASE("parabolic core is rejected") {
    const AmbientChartField f(builtin_ambient_field("flat"), TubularChart(Curve::builtin("line")));
    CHECK_THROWS_AS(variational_matrix(f, 0.0), ParabolicOnCurve);
  }

  TEST_CASE("finite-difference step bounds") {
    const TubularField f(build_t1());
    const ChartBinarySystem sys(f);
    CHECK_THROWS_AS(fd_poincare_derivative(sys, 0, kTwoPi, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(fd_poincare_derivative(sys, 0, kTwoPi, 0.5), std::invalid_argument);
  }

  TEST_CASE("finite differences converge to the variational solution") {
    // The return map is strongly nonlinear at the 1e-5 scale (multiplier ~ e^(2 pi)),
    // so this oracle uses a smaller step and tighter integration.
    const TubularField f(build_t1());
    const ChartBinarySystem sys(f);
    MonodromyOptions mo = no_quadrature();
    mo.ode.atol = mo.ode.rtol = 1e-12;
    const MonodromyResult r = monodromy(f, kTwoPi, mo);
    FlowOptions fo;
    fo.ode.atol = fo.ode.rtol = 1e-13;
    const Mat2 fd = fd_poincare_derivative(sys, 0.0, kTwoPi, 3e-7, fo);
    CHECK(fd[0][0] == doctest::Approx(r.Q[0][0]).epsilon(1e-3));
    CHECK(fd[1][0] == doctest::Approx(r.Q[1][0]).epsilon(1e-3));
    CHECK(fd[1][1] == doctest::Approx(r.Q[1][1]).epsilon(2e-2));
    CHECK(std::abs(fd[0][1]) < 1e-2);
  }

  TEST_CASE("quadrature") {
    CHECK(integrate([](double x) { return std::sin(x) * std::sin(x); }, 0, kTwoPi) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-12));
  }
}

TEST_SUITE("property") {
  TEST_CASE("Liouville: det Q = exp(int tr M)") {
    SEED_INFO();
    auto g = testing::rng(81);
    for (int k = 0; k < 10; ++k) {
      std::array<double, 8> c;
      for (double& v : c) v = testing::uniform(g, -1, 1);
      const auto M = [&](double x) {
        const double s = std::sin(x), q = std::cos(2 * x);
        return Mat2{{{c[0] + c[4] * s, c[1] + c[5] * q}, {c[2] + c[6] * q, c[3] + c[7] * s}}};
      };
      const MonodromyResult r = monodromy(M, kTwoPi);
      CHECK(r.liouville_rel_error <= 1e-7);
      CHECK(r.trace_integral == doctest::Approx((c[0] + c[3]) * kTwoPi).epsilon(1e-8).scale(1.0));
      CHECK(r.diagonal_ode[0] == doctest::Approx(r.diagonal_quadrature[0]).epsilon(1e-8).scale(1.0));
    }
  }

  TEST_CASE("constant M matches the matrix exponential") {
    SEED_INFO();
    auto g = testing::rng(82);
    for (int k = 0; k < 10; ++k) {
      Eigen::Matrix2d A;
      A << testing::uniform(g, -1, 1), testing::uniform(g, -1, 1), testing::uniform(g, -1, 1), testing::uniform(g, -1, 1);
      const double l = testing::uniform(g, 0.5, 2.0);
      // exp(A l) by eigen-decomposition-free scaling and squaring of a Taylor sum.
      Eigen::Matrix2d B = A * l / 1024.0, E = Eigen::Matrix2d::Identity(), term = Eigen::Matrix2d::Identity();
      for (int i = 1; i < 20; ++i) {
        term = term * B / i;
        E += term;
      }
      for (int i = 0; i < 10; ++i) E = E * E;
      const MonodromyResult r = monodromy([&](double) { return Mat2{{{A(0, 0), A(0, 1)}, {A(1, 0), A(1, 1)}}}; }, l,
                                          no_quadrature());
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          CHECK(r.Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                doctest::Approx(E(i, j)).epsilon(1e-8).scale(1.0));
      // Eigenvalues against Eigen's solver.
      Eigen::Matrix2d Q;
      Q << r.Q[0][0], r.Q[0][1], r.Q[1][0], r.Q[1][1];
      const auto ev = Q.eigenvalues();
      double a = std::abs(ev(0)), b = std::abs(ev(1));
      if (a < b) std::swap(a, b);
      double p = std::abs(r.eigenvalues[0]), q = std::abs(r.eigenvalues[1]);
      if (p < q) std::swap(p, q);
      CHECK(p == doctest::Approx(a).epsilon(1e-10));
      CHECK(q == doctest::Approx(b).epsilon(1e-10));
    }
  }
}
