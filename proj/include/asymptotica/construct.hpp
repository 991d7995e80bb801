#pragma once

// Plane fields in tubular-coefficient form:
//   xi = l0 Y + k0 Z
//      + (y k1 + z l1 + y^2/2 tk1 + y z tj1 + z^2/2 tl1 + A) X
//      + (y k2 + z l2 + y^2/2 tk2 + y z tj2 + z^2/2 tl2 + B) Y
//      + (y k3 + z l3 + y^2/2 tk3 + y z tj3 + z^2/2 tl3 + C) Z
// with k0 = g1' g2'' - g2' g1'' and l0 chosen so the core curve is an
// asymptotic line.  Coefficients are functions of x served as x-jets.

#include "asymptotica/tubular.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace asym {

class Coefficient {
 public:
  virtual ~Coefficient() = default;
  /// Univariate Taylor jet in x (shape {order, 0}) at `x`.
  virtual Jet jet(double x, int order) const = 0;
  virtual std::string describe() const = 0;
  double operator()(double x) const { return jet(x, 0).value(); }
};
using CoefficientPtr = std::shared_ptr<const Coefficient>;

CoefficientPtr zero_coefficient();
CoefficientPtr constant_coefficient(double c);
CoefficientPtr expr_coefficient(Expr e);  // expression in x
/// A coefficient frozen to a fixed jet at one base point (internal solver use).
CoefficientPtr frozen_coefficient(double x, Jet j);

struct TubularFieldSpec {
  static const std::vector<std::string>& slot_names();

  explicit TubularFieldSpec(Curve core);

  Curve curve;
  std::map<std::string, CoefficientPtr> coef;  // k1..k3, l1..l3, tk1..tk3, tj1..tj3, tl1..tl3
  std::array<std::optional<Expr>, 3> remainder; // A, B, C in chart variables (x, y, z)

  const CoefficientPtr& get(const std::string& slot) const;
  TubularFieldSpec& set(const std::string& slot, CoefficientPtr c);
};

struct K0L0 {
  double k0, l0;
};
K0L0 k0_l0(const Curve& curve, double x);

/// k1 making e(x,0,0) = 0 and f(x,0,0) = H(x):
///   k1 = (2 k0 H + l1 W + P^2 T) / (|g'|^2 k0),
///   P = g1'^2 + g2'^2,  W = (g1' g1'' + g2' g2'') g3' - P g3'',  T = det(g', g'', g''').
/// Throws InflectionOfProjection where k0 = 0.
double k1_of_H(const Curve& curve, const Expr& l1, const Expr& H, double x);
CoefficientPtr lack1_coefficient(Curve curve, CoefficientPtr l1, CoefficientPtr H);

/// The field of a spec in chart coordinates.
class TubularField final : public ChartField {
 public:
  explicit TubularField(TubularFieldSpec spec, double radius = 0.1);
  const TubularChart& chart() const override { return chart_; }
  Vec3<Jet> xi(double x, double y, double z, JetShape s) const override;
  const TubularFieldSpec& spec() const { return spec_; }

 private:
  TubularFieldSpec spec_;
  TubularChart chart_;
};

/// Coefficient of `slot` solving residual(x) = 0 where the residual along the
/// core curve is affine in the coefficient.  Solved by exact two-point
/// interpolation on x-jets, with a third (non-constant) probe asserting
/// affinity and independence of the coefficient's derivatives.
enum class Residual { e_z, e_y_plus_2f };
CoefficientPtr solved_coefficient(TubularFieldSpec base, std::string slot, Residual residual);

/// Exact series certificate of the finite-type realization.
struct T5Certificate {
  int m = 0, n = 0;
  Rational a_m, b_n;
  PowerSeriesQ b_series, c_series;     // b(x,0,0), c(x,0,0)
  PowerSeriesQ B_series, C_series;     // after dividing by x^(m-2)
  Rational C0;                          // C(0,0,0)
  Rational expected_C0;                 // a_m m (m - 1)
  bool B0_vanishes = false;
};

struct T5Realization {
  TubularFieldSpec spec;
  T5Certificate certificate;
};

/// Local model (x, a_m x^m + ..., b_n x^n + ...) with exact coefficients.
/// Throws NotExact if the factoring finds a nonzero low-order coefficient.
T5Realization realize_t5(const Curve& local_model, std::optional<int> truncation = std::nullopt);

struct T1Options {
  Expr l1 = parse("cos(x)");
  Expr H = parse("1");
};

/// The closed example (sin x, cos x, sin^3 x) with k1 from H, l1, k3 = 0,
/// l2 solving e_z(x,0,0) = 0 and k2 solving e_y + 2f = 0.
TubularFieldSpec build_t1(const T1Options& opt = {});

}  // namespace asym
