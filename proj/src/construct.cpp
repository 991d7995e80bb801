#include "asymptotica/construct.hpp"

#include <algorithm>
#include <cmath>

namespace asym {

namespace {

class ZeroCoefficient final : public Coefficient {
 public:
  Jet jet(double, int order) const override { return Jet(0.0, {order, 0}); }
  std::string describe() const override { return "0"; }
};

class ConstantCoefficient final : public Coefficient {
 public:
  explicit ConstantCoefficient(double c) : c_(c) {}
  Jet jet(double, int order) const override { return Jet(c_, {order, 0}); }
  std::string describe() const override { return std::to_string(c_); }

 private:
  double c_;
};

class ExprCoefficient final : public Coefficient {
 public:
  explicit ExprCoefficient(Expr e) : e_(std::move(e)) {
    for (Var v : e_.free_variables())
      if (v != Var::x) throw std::invalid_argument("coefficient functions may only use the variable x");
  }
  Jet jet(double x, int order) const override { return jet_at(e_, Var::x, x, order); }
  std::string describe() const override { return to_string(e_); }

 private:
  Expr e_;
};

class FrozenCoefficient final : public Coefficient {
 public:
  FrozenCoefficient(double x, Jet j) : x_(x), j_(std::move(j)) {}
  Jet jet(double x, int order) const override {
    if (x != x_ || order > j_.shape().x_order) throw std::logic_error("frozen coefficient queried off its base jet");
    return j_.truncate({order, 0});
  }
  std::string describe() const override { return "frozen"; }

 private:
  double x_;
  Jet j_;
};

const CoefficientPtr& zero_singleton() {
  static const CoefficientPtr z = std::make_shared<ZeroCoefficient>();
  return z;
}

// Components of a jet vector.
const Jet& X1(const Vec3<Jet>& v) { return v[0]; }
const Jet& X2(const Vec3<Jet>& v) { return v[1]; }
const Jet& X3(const Vec3<Jet>& v) { return v[2]; }

Jet lack1_jet(const Curve& curve, double x, int order, const Jet& l1, const Jet& H) {
  const Vec3<Jet> g = curve.jet3(x, order + 3);
  std::array<Vec3<Jet>, 4> d{g, g, g, g};
  for (std::size_t k = 1; k < 4; ++k) d[k] = map(d[k - 1], [](const Jet& j) { return j.derivative(Slot::x); });
  auto t = [order](const Vec3<Jet>& v) { return map(v, [order](const Jet& j) { return j.truncate({order, 0}); }); };
  const Vec3<Jet> d1 = t(d[1]), d2 = t(d[2]), d3 = t(d[3]);
  const Jet k0 = X1(d1) * X2(d2) - X2(d1) * X1(d2);
  if (k0.value() == 0.0)
    throw InflectionOfProjection("g1' g2'' - g2' g1'' vanishes at x = " + std::to_string(x));
  const Jet P = X1(d1) * X1(d1) + X2(d1) * X2(d1);
  const Jet W = (X1(d1) * X1(d2) + X2(d1) * X2(d2)) * X3(d1) - P * X3(d2);
  const Jet T = dot(d1, cross(d2, d3));
  const Jet S = dot(d1, d1);
  return (2.0 * k0 * H + l1 * W + P * P * T) / (S * k0);
}

class Lack1Coefficient final : public Coefficient {
 public:
  Lack1Coefficient(Curve curve, CoefficientPtr l1, CoefficientPtr H)
      : curve_(std::move(curve)), l1_(std::move(l1)), H_(std::move(H)) {}
  Jet jet(double x, int order) const override {
    return lack1_jet(curve_, x, order, l1_->jet(x, order), H_->jet(x, order));
  }
  std::string describe() const override { return "auto:H=" + H_->describe(); }

 private:
  Curve curve_;
  CoefficientPtr l1_, H_;
};

class SolvedCoefficient final : public Coefficient {
 public:
  SolvedCoefficient(TubularFieldSpec base, std::string slot, Residual residual)
      : base_(std::move(base)), slot_(std::move(slot)), residual_(residual) {}

  Jet jet(double x, int order) const override {
    // Other coefficients are frozen once so the three trials share them.
    TubularFieldSpec s = base_;
    for (auto& [name, c] : s.coef)
      if (name != slot_ && c != zero_singleton()) c = frozen_coefficient(x, c->jet(x, order + 1));

    auto residual = [&](CoefficientPtr trial) {
      s.set(slot_, std::move(trial));
      const TubularField field(s);
      const ReducedJets r = reduced_jets(field, x, 0.0, 0.0, {order, 1});
      const JetShape on{order, 0};
      if (residual_ == Residual::e_z) return r.e.derivative(Slot::z).truncate(on);
      return r.e.derivative(Slot::y).truncate(on) + 2.0 * r.f.truncate(on);
    };
    const Jet r0 = residual(zero_singleton());
    const Jet r1 = residual(constant_coefficient(1.0));
    const Jet probe = Jet::variable(Slot::x, x, {order + 1, 0}) + (2.0 - x);
    const Jet r2 = residual(frozen_coefficient(x, probe));

    const Jet slope = r1 - r0;
    double scale = 1.0;
    for (int i = 0; i <= order; ++i)
      scale = std::max({scale, std::abs(r0.coeff(i, 0, 0)), std::abs(r1.coeff(i, 0, 0)), std::abs(r2.coeff(i, 0, 0))});
    if (std::abs(slope.value()) <= 1e-12 * scale)
      throw AffineSolveError("residual does not depend on " + slot_ + " at x = " + std::to_string(x));
    const Jet predicted = r0 + slope * probe.truncate({order, 0});
    for (int i = 0; i <= order; ++i)
      if (std::abs(r2.coeff(i, 0, 0) - predicted.coeff(i, 0, 0)) > 1e-10 * scale)
        throw AffineSolveError("residual is not affine in " + slot_ + " at x = " + std::to_string(x));
    return -r0 / slope;
  }
  std::string describe() const override {
    return residual_ == Residual::e_z ? "solve e_z(x,0,0) = 0" : "solve e_y(x,0,0) + 2 f(x,0,0) = 0";
  }

 private:
  TubularFieldSpec base_;
  std::string slot_;
  Residual residual_;
};

}  // namespace

CoefficientPtr zero_coefficient() { return zero_singleton(); }
CoefficientPtr constant_coefficient(double c) {
  return c == 0.0 ? zero_singleton() : std::make_shared<ConstantCoefficient>(c);
}
CoefficientPtr expr_coefficient(Expr e) { return std::make_shared<ExprCoefficient>(std::move(e)); }
CoefficientPtr frozen_coefficient(double x, Jet j) { return std::make_shared<FrozenCoefficient>(x, std::move(j)); }

CoefficientPtr lack1_coefficient(Curve curve, CoefficientPtr l1, CoefficientPtr H) {
  return std::make_shared<Lack1Coefficient>(std::move(curve), std::move(l1), std::move(H));
}

CoefficientPtr solved_coefficient(TubularFieldSpec base, std::string slot, Residual residual) {
  return std::make_shared<SolvedCoefficient>(std::move(base), std::move(slot), residual);
}

const std::vector<std::string>& TubularFieldSpec::slot_names() {
  static const std::vector<std::string> names{"k1",  "k2",  "k3",  "l1",  "l2",  "l3",  "tk1", "tk2",
                                              "tk3", "tj1", "tj2", "tj3", "tl1", "tl2", "tl3"};
  return names;
}

TubularFieldSpec::TubularFieldSpec(Curve core) : curve(std::move(core)) {
  for (const auto& n : slot_names()) coef[n] = zero_singleton();
}

const CoefficientPtr& TubularFieldSpec::get(const std::string& slot) const {
  const auto it = coef.find(slot);
  if (it == coef.end()) throw std::invalid_argument("unknown coefficient '" + slot + "'");
  return it->second;
}

TubularFieldSpec& TubularFieldSpec::set(const std::string& slot, CoefficientPtr c) {
  if (!coef.count(slot)) throw std::invalid_argument("unknown coefficient '" + slot + "'");
  coef[slot] = std::move(c);
  return *this;
}

K0L0 k0_l0(const Curve& curve, double x) {
  const auto d = jet(curve, x, 2);
  const Vec3d& a = d[1];
  const Vec3d& b = d[2];
  return {a[0] * b[1] - a[1] * b[0], (a[2] * b[0] - a[0] * b[2]) * a[0] + (a[2] * b[1] - a[1] * b[2]) * a[1]};
}

double k1_of_H(const Curve& curve, const Expr& l1, const Expr& H, double x) {
  return lack1_jet(curve, x, 0, jet_at(l1, Var::x, x, 0), jet_at(H, Var::x, x, 0)).value();
}

TubularField::TubularField(TubularFieldSpec spec, double radius)
    : spec_(std::move(spec)), chart_(spec_.curve, radius) {
  for (const auto& r : spec_.remainder) {
    if (!r) continue;
    for (int i = 0; i < 16; ++i) {
      const double x = spec_.curve.x0() + spec_.curve.period() * i / 16.0;
      Bindings<double> b(0.0);
      b.bind(Var::x, x).bind(Var::y, 0.0).bind(Var::z, 0.0);
      if (std::abs(eval(*r, b)) > 1e-12)
        throw std::invalid_argument("remainder terms must vanish on the core curve (y = z = 0)");
    }
  }
}

Vec3<Jet> TubularField::xi(double x, double y, double z, JetShape s) const {
  const auto g = chart_.curve_jets(x, s, 2);
  const Vec3<Jet>& X = g[1];
  const Vec3<Jet>& D = g[2];
  const Vec3<Jet> Y{X[1], -X[0], Jet(0.0, s)};
  const Vec3<Jet> Z = cross(X, Y);
  const Jet k0 = X[0] * D[1] - X[1] * D[0];
  const Jet l0 = (X[2] * D[0] - X[0] * D[2]) * X[0] + (X[2] * D[1] - X[1] * D[2]) * X[1];

  const Jet yv = Jet::variable(Slot::y, y, s);
  const Jet zv = Jet::variable(Slot::z, z, s);
  const std::array<Jet, 5> mono{yv, zv, yv * yv * 0.5, yv * zv, zv * zv * 0.5};

  std::optional<Bindings<Jet>> rb;
  auto component = [&](int i) {
    static const std::array<std::array<const char*, 5>, 3> names{{{"k1", "l1", "tk1", "tj1", "tl1"},
                                                                   {"k2", "l2", "tk2", "tj2", "tl2"},
                                                                   {"k3", "l3", "tk3", "tj3", "tl3"}}};
    Jet acc(0.0, s);
    for (std::size_t k = 0; k < 5; ++k) {
      const CoefficientPtr& c = spec_.get(names[static_cast<std::size_t>(i)][k]);
      if (c == zero_singleton()) continue;
      acc += c->jet(x, s.x_order).lift_yz(s.yz_order) * mono[k];
    }
    if (const auto& r = spec_.remainder[static_cast<std::size_t>(i)]) {
      if (!rb) {
        rb.emplace(Jet(0.0, s));
        rb->bind(Var::x, Jet::variable(Slot::x, x, s)).bind(Var::y, yv).bind(Var::z, zv);
      }
      acc += eval(*r, *rb);
    }
    return acc;
  };
  return Y * l0 + Z * k0 + X * component(0) + Y * component(1) + Z * component(2);
}

T5Realization realize_t5(const Curve& model, std::optional<int> truncation) {
  if (!model.is_polynomial()) throw std::invalid_argument("realize_t5 needs a polynomial local model");
  const auto& p = model.polynomials();
  for (std::size_t k = 0; k < p[0].size(); ++k)
    if (p[0][k] != (k == 1 ? 1 : 0)) throw std::invalid_argument("local model must have first component x");

  auto valuation = [](const Curve::Polynomial& q) {
    for (std::size_t k = 0; k < q.size(); ++k)
      if (q[k] != 0) return static_cast<int>(k);
    return -1;
  };
  T5Certificate cert;
  cert.m = valuation(p[1]);
  cert.n = valuation(p[2]);
  if (cert.m < 2 || cert.n <= cert.m)
    throw std::invalid_argument("local model must be (x, a_m x^m + ..., b_n x^n + ...) with 1 < m < n");
  cert.a_m = p[1][static_cast<std::size_t>(cert.m)];
  cert.b_n = p[2][static_cast<std::size_t>(cert.n)];

  const int order = truncation.value_or(cert.m + cert.n + 4);
  std::array<PowerSeriesQ, 3> g;
  for (std::size_t i = 0; i < 3; ++i) g[i] = PowerSeriesQ(p[i], order);
  std::array<PowerSeriesQ, 3> d1, d2;
  for (std::size_t i = 0; i < 3; ++i) {
    d1[i] = g[i].derivative();
    d2[i] = d1[i].derivative();
  }
  const PowerSeriesQ P = d1[0] * d1[0] + d1[1] * d1[1];
  const PowerSeriesQ S = P + d1[2] * d1[2];
  const PowerSeriesQ k0 = d1[0] * d2[1] - d1[1] * d2[0];
  cert.b_series = P * ((d1[0] * d2[0] + d1[1] * d2[1]) * d1[2] - P * d2[2]);
  cert.c_series = P * S * k0;
  cert.B_series = cert.b_series.factor_out(cert.m - 2);
  cert.C_series = cert.c_series.factor_out(cert.m - 2);
  cert.C0 = cert.C_series[0];
  cert.expected_C0 = cert.a_m * cert.m * (cert.m - 1);
  cert.B0_vanishes = cert.B_series[0] == 0;

  TubularFieldSpec spec(model);
  spec.set("k1", lack1_coefficient(model, zero_coefficient(), constant_coefficient(1.0)));
  return {std::move(spec), std::move(cert)};
}

TubularFieldSpec build_t1(const T1Options& opt) {
  const Curve curve = Curve::builtin("t1");
  TubularFieldSpec spec(curve);
  const CoefficientPtr l1 = expr_coefficient(opt.l1);
  spec.set("l1", l1);
  spec.set("k1", lack1_coefficient(curve, l1, expr_coefficient(opt.H)));
  spec.set("k3", zero_coefficient());
  spec.set("l2", solved_coefficient(spec, "l2", Residual::e_z));
  spec.set("k2", solved_coefficient(spec, "k2", Residual::e_y_plus_2f));
  return spec;
}

}  // namespace asym
