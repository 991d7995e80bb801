#pragma once

// Space curves with jet evaluation, the planar-normal frame used by the
// tubular chart, finite-type symbols and the starlike projection test.

#include "asymptotica/errors.hpp"
#include "asymptotica/expr.hpp"
#include "asymptotica/series.hpp"
#include "asymptotica/vec3.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace asym {

class Curve {
 public:
  using Polynomial = std::vector<Rational>;  // power-basis coefficients

  /// Highest derivative order served for expression curves (jet capacity bound).
  static constexpr int kExprMaxOrder = 24;

  /// Curve from three expressions in x.  A closed curve is checked for
  /// periodicity at 32 probe shifts; throws std::invalid_argument otherwise.
  static Curve from_exprs(std::array<Expr, 3> gamma, double x0, double x1, bool closed = false);

  /// Polynomial local model with exact coefficients; jets are exact up to `truncation`.
  static Curve polynomial(std::array<Polynomial, 3> coefficients, int truncation, double x0 = -1.0,
                          double x1 = 1.0);

  /// Built-in curves on [0, 2 pi]: "t1" = (sin x, cos x, sin^3 x) and
  /// "circle" = (cos x, sin x, 0), both closed; "line" = (x, 0, 0), open.
  static Curve builtin(const std::string& name);

  bool is_polynomial() const { return polynomial_.has_value(); }
  const std::array<Polynomial, 3>& polynomials() const;
  /// Expression form (for polynomial curves, the polynomial written out).
  const std::array<Expr, 3>& expressions() const { return exprs_; }

  double x0() const { return x0_; }
  double x1() const { return x1_; }
  bool closed() const { return closed_; }
  double period() const { return x1_ - x0_; }
  int max_order() const { return max_order_; }

  Vec3d operator()(double x) const;
  /// Components evaluated at an arbitrary jet in x.
  Vec3<Jet> operator()(const Jet& x) const;

  /// Univariate Taylor jets of the three components at x, truncated at `order`.
  Vec3<Jet> jet3(double x, int order) const;

 private:
  Curve() = default;

  std::array<Expr, 3> exprs_;
  std::optional<std::array<Polynomial, 3>> polynomial_;
  double x0_ = 0.0, x1_ = 1.0;
  bool closed_ = false;
  int max_order_ = kExprMaxOrder;
};

/// gamma^(0) .. gamma^(k) at x.  Throws std::out_of_range past max_order().
std::vector<Vec3d> jet(const Curve& curve, double x, int k);

struct Frame {
  Vec3d X, Y, Z;
  Vec3d dX, dY, dZ;
};

/// X = gamma', Y = (gamma2', -gamma1', 0), Z = X ^ Y and their x-derivatives.
Frame frame(const Curve& curve, double x);

struct TypeSymbol {
  int m = 0;
  int n = 0;
  bool rotating = false;
};

/// Symbol {1, m, n}: m (n) is the lowest order at which gamma', ..., gamma^(k)
/// span a plane (all of R^3).  Exact for polynomial curves evaluated at a
/// dyadic x; singular-value threshold 1e-9 after row normalization otherwise.
TypeSymbol finite_type_symbol(const Curve& curve, double x, int max_order);

struct StarlikeResult {
  bool starlike = false;
  std::optional<std::array<double, 2>> star_point;
  std::vector<std::array<double, 2>> kernel;  // kernel polygon, counter-clockwise
};

/// Kernel of a simple polygon.  Throws NotSimple for self-intersections.
StarlikeResult starlike_polygon(const std::vector<std::array<double, 2>>& polygon);

/// Projection of a closed curve onto z = 0, sampled at `samples` points.
StarlikeResult is_starlike_projection(const Curve& curve, int samples = 256);

}  // namespace asym
