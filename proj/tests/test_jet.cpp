#include "support.hpp"

#include "asymptotica/expr.hpp"
#include "asymptotica/jet.hpp"
#include "asymptotica/series.hpp"
#include "asymptotica/verify.hpp"

#include <cmath>

using namespace asym;

TEST_SUITE("jets") {
  TEST_CASE("products and mixed partials") {
    const JetShape s{3, 2};
    const Jet x = Jet::variable(Slot::x, 0.5, s), y = Jet::variable(Slot::y, -1.0, s), z = Jet::variable(Slot::z, 2.0, s);
    const Jet f = x * x * y + y * z;  // f_xy = 2x, f_yz = 1, f_xxy = 2
    CHECK(f.value() == doctest::Approx(0.25 * -1.0 + -2.0));
    CHECK(f.partial(1, 1, 0) == doctest::Approx(1.0));
    CHECK(f.partial(0, 1, 1) == doctest::Approx(1.0));
    CHECK(f.partial(2, 1, 0) == doctest::Approx(2.0));
    CHECK(f.partial(0, 0, 2) == doctest::Approx(0.0));
    CHECK(f.partial(3, 0, 0) == doctest::Approx(0.0));
  }

  TEST_CASE("elementary functions match their derivatives") {
    const JetShape s{4, 0};
    const double a = 0.3;
    const Jet x = Jet::variable(Slot::x, a, s);
    const Jet e = exp(x), sn = sin(x), cs = cos(x), r = reciprocal(x), q = sqrt(x);
    for (int k = 0; k <= 4; ++k) CHECK(e.partial(k, 0, 0) == doctest::Approx(std::exp(a)));
    CHECK(sn.partial(1, 0, 0) == doctest::Approx(std::cos(a)));
    CHECK(sn.partial(3, 0, 0) == doctest::Approx(-std::cos(a)));
    CHECK(cs.partial(2, 0, 0) == doctest::Approx(-std::cos(a)));
    CHECK(r.partial(2, 0, 0) == doctest::Approx(2.0 / (a * a * a)));
    CHECK(q.partial(1, 0, 0) == doctest::Approx(0.5 / std::sqrt(a)));
    CHECK(pow(x, 3).partial(3, 0, 0) == doctest::Approx(6.0));
    CHECK_THROWS_AS(reciprocal(Jet::variable(Slot::x, 0.0, s)), DomainError);
  }

  TEST_CASE("anisotropic truncation keeps the lower set") {
    const JetShape s{2, 1};
    const Jet y = Jet::variable(Slot::y, 0.0, s);
    const Jet yy = y * y;  // y^2 lies outside j + k <= 1
    CHECK(yy.coeff(0, 2, 0) == 0.0);
    CHECK(yy.value() == 0.0);
    const Jet x = Jet::variable(Slot::x, 1.0, s);
    CHECK((x * y).coeff(1, 1, 0) == doctest::Approx(1.0));
  }

  TEST_CASE("mixed shapes combine at the common shape") {
    const Jet s = Jet::variable(Slot::x, 0.5, {1, 2}) + Jet::variable(Slot::y, 0.0, {2, 1});
    CHECK(s.shape() == JetShape{1, 1});
    CHECK(s.value() == 0.5);
    CHECK(s.coeff(1, 0, 0) == 1.0);
    CHECK(s.coeff(0, 1, 0) == 1.0);
  }
}

TEST_SUITE("series") {
  TEST_CASE("exact arithmetic") {
    const PowerSeriesQ t = PowerSeriesQ::variable(6);
    const PowerSeriesQ one(Rational(1), 6);
    const PowerSeriesQ inv = one / (one - t);  // geometric series
    for (int k = 0; k <= 6; ++k) CHECK(inv[k] == 1);
    const PowerSeriesQ s = sin(t), c = cos(t);
    const PowerSeriesQ id = s * s + c * c;
    CHECK(id[0] == 1);
    for (int k = 1; k <= 6; ++k) CHECK(id[k] == 0);
    CHECK(exp(t)[4] == Rational(1, 24));
    CHECK(pow(one + t, 3)[2] == 3);
  }

  TEST_CASE("factoring powers of t") {
    const PowerSeriesQ t = PowerSeriesQ::variable(8);
    const PowerSeriesQ p = pow(t, 3) * (PowerSeriesQ(Rational(2), 8) + t);
    CHECK(p.valuation() == 3);
    const PowerSeriesQ q = p.factor_out(3);
    CHECK(q[0] == 2);
    CHECK(q[1] == 1);
    CHECK(q.order() == 5);
    CHECK_THROWS_AS(p.factor_out(4), NotExact);
  }

  TEST_CASE("derivative and evaluation") {
    const PowerSeriesQ t = PowerSeriesQ::variable(5);
    const PowerSeriesQ p = pow(t, 2) * PowerSeriesQ(Rational(3), 5) + t;
    CHECK(p.derivative()[0] == 1);
    CHECK(p.derivative()[1] == 6);
    CHECK(p.evaluate(0.5) == doctest::Approx(0.75 + 0.5));
  }
}

TEST_SUITE("property") {
  TEST_CASE("jet derivatives agree with finite differences") {
    SEED_INFO();
    auto g = testing::rng(21);
    for (int k = 0; k < 100; ++k) {
      const Expr e = verify::random_expr(g, 3, true);
      const double x = testing::uniform(g, -1.0, 1.0), h = 1e-5;
      INFO(to_string(e) << " at x = " << x);
      const Jet j = jet_at(e, Var::x, x, 1);
      const double fd = (eval_at(e, Var::x, x + h) - eval_at(e, Var::x, x - h)) / (2 * h);
      CHECK(std::abs(j.partial(1, 0, 0) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
      CHECK(j.value() == eval_at(e, Var::x, x));
    }
  }

  TEST_CASE("jet arithmetic is a commutative ring up to rounding") {
    SEED_INFO();
    auto g = testing::rng(22);
    const JetShape s{2, 2};
    auto random_jet = [&] {
      Jet j(0.0, s);
      for (int i = 0; i <= 2; ++i)
        for (int a = 0; a <= 2; ++a)
          for (int b = 0; a + b <= 2; ++b) j.set_coeff(i, a, b, testing::uniform(g, -1.0, 1.0));
      return j;
    };
    for (int k = 0; k < 50; ++k) {
      const Jet a = random_jet(), b = random_jet(), c = random_jet();
      const Jet l = (a * b) * c, r = a * (b * c), d1 = a * (b + c), d2 = a * b + a * c;
      for (int i = 0; i <= 2; ++i)
        for (int p = 0; p <= 2; ++p)
          for (int q = 0; p + q <= 2; ++q) {
            CHECK(l.coeff(i, p, q) == doctest::Approx(r.coeff(i, p, q)).epsilon(1e-12));
            CHECK(d1.coeff(i, p, q) == doctest::Approx(d2.coeff(i, p, q)).epsilon(1e-12));
            CHECK((a * b).coeff(i, p, q) == doctest::Approx((b * a).coeff(i, p, q)).epsilon(1e-14));
          }
    }
  }

  TEST_CASE("series products match jet products at the same truncation") {
    SEED_INFO();
    auto g = testing::rng(23);
    for (int k = 0; k < 30; ++k) {
      std::vector<Rational> pa, pb;
      for (int i = 0; i <= 5; ++i) {
        pa.emplace_back(static_cast<int>(g() % 7) - 3, 1 + static_cast<int>(g() % 4));
        pb.emplace_back(static_cast<int>(g() % 7) - 3, 1 + static_cast<int>(g() % 4));
      }
      const PowerSeriesQ a(pa, 5), b(pb, 5);
      Jet ja(0.0, {5, 0}), jb(0.0, {5, 0});
      for (int i = 0; i <= 5; ++i) {
        ja.set_coeff(i, 0, 0, pa[static_cast<std::size_t>(i)].convert_to<double>());
        jb.set_coeff(i, 0, 0, pb[static_cast<std::size_t>(i)].convert_to<double>());
      }
      const PowerSeriesQ p = a * b;
      const Jet jp = ja * jb;
      for (int i = 0; i <= 5; ++i) CHECK(jp.coeff(i, 0, 0) == doctest::Approx(p[i].convert_to<double>()));
    }
  }
}
