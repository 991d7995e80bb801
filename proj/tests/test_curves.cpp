#include "support.hpp"

#include "asymptotica/curves.hpp"

#include <cmath>
#include <numbers>

using namespace asym;

namespace {

Curve::Polynomial monomial(int k, Rational a = 1) {
  Curve::Polynomial p(static_cast<std::size_t>(k + 1), Rational(0));
  p.back() = a;
  return p;
}

Curve model(int m, int n) { return Curve::polynomial({monomial(1), monomial(m), monomial(n)}, n + 8); }

void check_vec(const Vec3d& a, const Vec3d& b, double tol = 1e-12) {
  for (std::size_t i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(tol).scale(1.0));
}

}  // namespace

TEST_SUITE("curves") {
  TEST_CASE("jets of the closed example") {
    const auto j = jet(Curve::builtin("t1"), 0.0, 2);
    REQUIRE(j.size() == 3);
    check_vec(j[0], {0, 1, 0});
    check_vec(j[1], {1, 0, 0});
    check_vec(j[2], {0, -1, 0});
  }

  TEST_CASE("jets of monomial models") {
    const auto j = jet(model(2, 3), 0.0, 3);
    check_vec(j[1], {1, 0, 0});
    check_vec(j[2], {0, 2, 0});
    check_vec(j[3], {0, 0, 6});
    const auto l = jet(Curve::builtin("line"), 0.7, 5);
    for (int k = 2; k <= 5; ++k) check_vec(l[static_cast<std::size_t>(k)], {0, 0, 0});
    CHECK_THROWS_AS(jet(Curve::builtin("t1"), 0.0, Curve::kExprMaxOrder + 1), std::out_of_range);
  }

  TEST_CASE("expression and polynomial forms agree") {
    const Curve p = model(2, 3);
    const Curve e = Curve::from_exprs(p.expressions(), -1.0, 1.0);
    for (double x : {-0.7, 0.1, 0.9}) {
      const auto a = jet(p, x, 4), b = jet(e, x, 4);
      for (std::size_t k = 0; k <= 4; ++k) check_vec(a[k], b[k], 1e-12);
    }
  }

  TEST_CASE("closed curves must be periodic") {
    CHECK_THROWS_AS(Curve::from_exprs({parse("x"), parse("0"), parse("0")}, 0.0, 1.0, true), std::invalid_argument);
    CHECK(Curve::builtin("t1").closed());
    CHECK(Curve::builtin("t1").period() == doctest::Approx(2 * std::numbers::pi));
    CHECK_THROWS_AS(Curve::builtin("nope"), std::invalid_argument);
  }

  TEST_CASE("planar-normal frame") {
    const Frame f = frame(Curve::builtin("t1"), 0.0);
    check_vec(f.X, {1, 0, 0});
    check_vec(f.Y, {0, -1, 0});
    check_vec(f.Z, {0, 0, -1});
    const Frame g = frame(model(2, 3), 0.0);
    check_vec(g.X, {1, 0, 0});
    check_vec(g.Y, {0, -1, 0});
    check_vec(g.Z, {0, 0, -1});
    CHECK_THROWS_AS(frame(Curve::from_exprs({parse("0"), parse("0"), parse("x")}, -1, 1), 0.0), DegenerateFrame);
  }

  TEST_CASE("frame derivatives match differences of the frame") {
    const Curve c = Curve::builtin("t1");
    const double x = 0.8, h = 1e-6;
    const Frame f = frame(c, x), fp = frame(c, x + h), fm = frame(c, x - h);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(f.dX[i] == doctest::Approx((fp.X[i] - fm.X[i]) / (2 * h)).epsilon(1e-7));
      CHECK(f.dY[i] == doctest::Approx((fp.Y[i] - fm.Y[i]) / (2 * h)).epsilon(1e-7));
      CHECK(f.dZ[i] == doctest::Approx((fp.Z[i] - fm.Z[i]) / (2 * h)).epsilon(1e-7));
    }
  }

  TEST_CASE("finite-type symbols") {
    TypeSymbol s = finite_type_symbol(model(2, 3), 0.0, 8);
    CHECK(s.m == 2);
    CHECK(s.n == 3);
    CHECK(s.rotating);
    s = finite_type_symbol(model(2, 4), 0.0, 8);
    CHECK(s.m == 2);
    CHECK(s.n == 4);
    CHECK_FALSE(s.rotating);
    s = finite_type_symbol(Curve::builtin("t1"), 0.0, 8);
    CHECK(s.m == 2);
    CHECK(s.n == 3);
    CHECK(s.rotating);
    CHECK_THROWS_AS(finite_type_symbol(model(2, 9), 0.0, 6), NotFiniteType);
  }

  TEST_CASE("starlike polygons") {
    const auto square = starlike_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(square.starlike);
    REQUIRE(square.star_point);
    CHECK((*square.star_point)[0] == doctest::Approx(0.5));

    // A plus sign is starlike from its center.
    const auto plus = starlike_polygon(
        {{1, 0}, {2, 0}, {2, 1}, {3, 1}, {3, 2}, {2, 2}, {2, 3}, {1, 3}, {1, 2}, {0, 2}, {0, 1}, {1, 1}});
    CHECK(plus.starlike);

    // A tall U: no point sees both arm tips.
    const auto u = starlike_polygon({{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}});
    CHECK_FALSE(u.starlike);
    CHECK_FALSE(u.star_point);

    // Clockwise input is accepted.
    CHECK(starlike_polygon({{0, 1}, {1, 1}, {1, 0}, {0, 0}}).starlike);
    CHECK_THROWS_AS(starlike_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), NotSimple);
  }

  TEST_CASE("starlike projections") {
    const auto c = is_starlike_projection(Curve::builtin("circle"));
    CHECK(c.starlike);
    REQUIRE(c.star_point);
    CHECK(std::abs((*c.star_point)[0]) < 1e-12);
    CHECK(std::abs((*c.star_point)[1]) < 1e-12);
    CHECK(is_starlike_projection(Curve::builtin("t1")).starlike);
    // Lemniscate-like figure eight self-intersects.
    const Curve eight = Curve::from_exprs({parse("sin(x)"), parse("sin(x)*cos(x)"), parse("0")}, 0, 2 * std::numbers::pi, true);
    CHECK_THROWS_AS(is_starlike_projection(eight), NotSimple);
  }
}

TEST_SUITE("property") {
  TEST_CASE("symbols are invariant under rescaling the parameter") {
    SEED_INFO();
    auto g = testing::rng(31);
    for (int k = 0; k < 20; ++k) {
      const int num = 1 + static_cast<int>(g() % 9), den = 1 + static_cast<int>(g() % 9);
      const Rational c = Rational(num, den) * (g() % 2 ? 1 : -1);
      for (auto [m, n] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 5}}) {
        Rational cm = 1, cn = 1;
        for (int i = 0; i < m; ++i) cm *= c;
        for (int i = 0; i < n; ++i) cn *= c;
        const Curve scaled = Curve::polynomial({monomial(1, c), monomial(m, cm), monomial(n, cn)}, n + 8);
        const TypeSymbol s = finite_type_symbol(scaled, 0.0, 8);
        CHECK(s.m == m);
        CHECK(s.n == n);
      }
    }
  }

  TEST_CASE("random convex polygons are starlike with an interior star point") {
    SEED_INFO();
    auto g = testing::rng(32);
    for (int k = 0; k < 30; ++k) {
      const int n = 3 + static_cast<int>(g() % 10);
      std::vector<double> ang;
      for (int i = 0; i < n; ++i) ang.push_back(testing::uniform(g, 0.0, 2 * std::numbers::pi));
      std::sort(ang.begin(), ang.end());
      ang.erase(std::unique(ang.begin(), ang.end(), [](double a, double b) { return b - a < 1e-3; }), ang.end());
      if (ang.size() < 3) continue;
      std::vector<std::array<double, 2>> poly;
      for (double a : ang) poly.push_back({std::cos(a), std::sin(a)});
      const auto r = starlike_polygon(poly);
      CHECK(r.starlike);
    }
  }
}
