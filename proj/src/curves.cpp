#include "asymptotica/curves.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace asym {

namespace {

double horner(const Curve::Polynomial& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->convert_to<double>();
  return acc;
}

Jet horner(const Curve::Polynomial& p, const Jet& x) {
  Jet acc(0.0, x.shape());
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->convert_to<double>();
  return acc;
}

Expr polynomial_expr(const Curve::Polynomial& p) {
  std::optional<Expr> sum;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    Expr term = Expr::literal(p[k]);
    if (k == 1) term = term * Expr::variable(Var::x);
    if (k > 1) term = term * Expr::power(Expr::variable(Var::x), static_cast<long>(k));
    sum = sum ? *sum + term : term;
  }
  return sum ? *sum : Expr();
}

// Falling factorial d (d-1) ... (d-k+1).
Rational falling(int d, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= d - i;
  return r;
}

}  // namespace

Curve Curve::from_exprs(std::array<Expr, 3> gamma, double x0, double x1, bool closed) {
  if (!(x1 > x0)) throw std::invalid_argument("curve interval must satisfy x0 < x1");
  for (const auto& g : gamma)
    for (Var v : g.free_variables())
      if (v != Var::x) throw std::invalid_argument("curve components may only use the variable x");
  Curve c;
  c.exprs_ = std::move(gamma);
  c.x0_ = x0;
  c.x1_ = x1;
  c.closed_ = closed;
  if (closed) {
    const double l = x1 - x0;
    for (int i = 0; i < 32; ++i) {
      const double s = x0 + l * i / 32.0;
      const Vec3d a = c(s), b = c(s + l);
      for (std::size_t k = 0; k < 3; ++k)
        if (std::abs(a[k] - b[k]) > 1e-12)
          throw std::invalid_argument("curve declared closed but gamma(x) != gamma(x + l) at x = " +
                                      std::to_string(s));
    }
  }
  return c;
}

Curve Curve::polynomial(std::array<Polynomial, 3> coefficients, int truncation, double x0, double x1) {
  if (truncation < 1) throw std::invalid_argument("polynomial curve truncation must be at least 1");
  Curve c;
  for (std::size_t i = 0; i < 3; ++i) {
    auto& p = coefficients[i];
    if (static_cast<int>(p.size()) > truncation + 1)
      for (std::size_t k = static_cast<std::size_t>(truncation) + 1; k < p.size(); ++k)
        if (p[k] != 0) throw std::invalid_argument("polynomial degree exceeds the truncation order");
    p.resize(static_cast<std::size_t>(truncation) + 1, Rational(0));
    c.exprs_[i] = polynomial_expr(p);
  }
  c.polynomial_ = std::move(coefficients);
  c.x0_ = x0;
  c.x1_ = x1;
  c.max_order_ = truncation;
  return c;
}

Curve Curve::builtin(const std::string& name) {
  if (name == "t1")
    return from_exprs({parse("sin(x)"), parse("cos(x)"), parse("sin(x)^3")}, 0.0, 2.0 * std::numbers::pi, true);
  if (name == "circle") return from_exprs({parse("cos(x)"), parse("sin(x)"), parse("0")}, 0.0, 2.0 * std::numbers::pi, true);
  if (name == "line") return from_exprs({parse("x"), parse("0"), parse("0")}, 0.0, 2.0 * std::numbers::pi, false);
  throw std::invalid_argument("unknown built-in curve '" + name + "'");
}

const std::array<Curve::Polynomial, 3>& Curve::polynomials() const {
  if (!polynomial_) throw std::logic_error("curve is not a polynomial local model");
  return *polynomial_;
}

Vec3d Curve::operator()(double x) const {
  if (polynomial_) return {horner((*polynomial_)[0], x), horner((*polynomial_)[1], x), horner((*polynomial_)[2], x)};
  return {eval_at(exprs_[0], Var::x, x), eval_at(exprs_[1], Var::x, x), eval_at(exprs_[2], Var::x, x)};
}

Vec3<Jet> Curve::operator()(const Jet& x) const {
  if (polynomial_) return {horner((*polynomial_)[0], x), horner((*polynomial_)[1], x), horner((*polynomial_)[2], x)};
  Bindings<Jet> b(Jet(0.0, x.shape()));
  b.bind(Var::x, x);
  return {eval(exprs_[0], b), eval(exprs_[1], b), eval(exprs_[2], b)};
}

Vec3<Jet> Curve::jet3(double x, int order) const {
  if (order < 0 || order > max_order_)
    throw std::out_of_range("curve jet order " + std::to_string(order) + " exceeds the supported order " +
                            std::to_string(max_order_));
  return (*this)(Jet::variable(Slot::x, x, {order, 0}));
}

std::vector<Vec3d> jet(const Curve& curve, double x, int k) {
  const Vec3<Jet> j = curve.jet3(x, k);
  std::vector<Vec3d> out;
  out.reserve(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) out.push_back({j[0].partial(i, 0, 0), j[1].partial(i, 0, 0), j[2].partial(i, 0, 0)});
  return out;
}

Frame frame(const Curve& curve, double x) {
  const auto d = jet(curve, x, 2);
  const Vec3d& g1 = d[1];
  const Vec3d& g2 = d[2];
  if (std::hypot(g1[0], g1[1]) <= 1e-12 * (1.0 + norm(g1)))
    throw DegenerateFrame("horizontal projection of gamma' vanishes at x = " + std::to_string(x));
  Frame f;
  f.X = g1;
  f.Y = {g1[1], -g1[0], 0.0};
  f.Z = cross(f.X, f.Y);
  f.dX = g2;
  f.dY = {g2[1], -g2[0], 0.0};
  f.dZ = cross(f.dX, f.Y) + cross(f.X, f.dY);
  return f;
}

namespace {

// Incremental exact row reduction: returns the rank after adding `row`.
int add_row_exact(std::vector<std::array<Rational, 3>>& basis, std::array<Rational, 3> row) {
  for (const auto& b : basis) {
    std::size_t pivot = 0;
    while (b[pivot] == 0) ++pivot;
    if (row[pivot] != 0) {
      const Rational factor = row[pivot] / b[pivot];
      for (std::size_t k = 0; k < 3; ++k) row[k] -= factor * b[k];
    }
  }
  if (row[0] != 0 || row[1] != 0 || row[2] != 0) basis.push_back(row);
  return static_cast<int>(basis.size());
}

int numeric_rank(const std::vector<Vec3d>& rows) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), 3);
  Eigen::Index r = 0;
  for (const auto& v : rows) {
    const double n = norm(v);
    for (Eigen::Index k = 0; k < 3; ++k) a(r, k) = n > 0.0 ? v[static_cast<std::size_t>(k)] / n : 0.0;
    ++r;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-9 * s(0)) ++rank;
  return rank;
}

TypeSymbol symbol_from_ranks(const std::vector<int>& rank_at, int max_order) {
  // rank_at[k] is the rank of {gamma', ..., gamma^(k)}, k >= 1.
  if (rank_at[1] == 0) throw std::invalid_argument("curve is not regular at the requested point");
  TypeSymbol s;
  for (int k = 1; k <= max_order; ++k) {
    if (s.m == 0 && rank_at[static_cast<std::size_t>(k)] >= 2) s.m = k;
    if (rank_at[static_cast<std::size_t>(k)] == 3) {
      s.n = k;
      break;
    }
  }
  if (s.n == 0) throw NotFiniteType("gamma', ..., gamma^(" + std::to_string(max_order) + ") do not span R^3");
  s.rotating = s.n == s.m + 1;
  return s;
}

}  // namespace

TypeSymbol finite_type_symbol(const Curve& curve, double x, int max_order) {
  if (max_order < 3) throw std::invalid_argument("max_order must be at least 3");
  if (max_order > curve.max_order())
    throw std::out_of_range("max_order exceeds the curve's jet order " + std::to_string(curve.max_order()));
  std::vector<int> rank_at(static_cast<std::size_t>(max_order) + 1, 0);
  if (curve.is_polynomial()) {
    const Rational xq(x);  // every double is a dyadic rational
    const auto& p = curve.polynomials();
    std::vector<std::array<Rational, 3>> basis;
    for (int k = 1; k <= max_order; ++k) {
      std::array<Rational, 3> row;
      for (std::size_t i = 0; i < 3; ++i) {
        Rational acc(0);
        Rational xp(1);
        for (int d = k; d < static_cast<int>(p[i].size()); ++d) {
          acc += p[i][static_cast<std::size_t>(d)] * falling(d, k) * xp;
          xp *= xq;
        }
        row[i] = acc;
      }
      rank_at[static_cast<std::size_t>(k)] = add_row_exact(basis, row);
    }
  } else {
    const auto d = jet(curve, x, max_order);
    std::vector<Vec3d> rows;
    for (int k = 1; k <= max_order; ++k) {
      rows.push_back(d[static_cast<std::size_t>(k)]);
      rank_at[static_cast<std::size_t>(k)] = numeric_rank(rows);
    }
  }
  return symbol_from_ranks(rank_at, max_order);
}

namespace {

using P2 = std::array<double, 2>;

double orient(const P2& a, const P2& b, const P2& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

bool on_segment(const P2& a, const P2& b, const P2& p) {
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
         p[1] <= std::max(a[1], b[1]);
}

bool segments_intersect(const P2& a, const P2& b, const P2& c, const P2& d) {
  const double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

// Keeps the part of a convex polygon on the left of the directed line a -> b.
std::vector<P2> clip_left(const std::vector<P2>& poly, const P2& a, const P2& b) {
  std::vector<P2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % n];
    const double sp = orient(a, b, p), sq = orient(a, b, q);
    if (sp >= 0) out.push_back(p);
    if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
      const double t = sp / (sp - sq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

double signed_area(const std::vector<P2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % poly.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return a / 2.0;
}

}  // namespace

StarlikeResult starlike_polygon(const std::vector<P2>& input) {
  if (input.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  const std::size_t n = input.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // adjacent edges share a vertex
      if (segments_intersect(input[i], input[(i + 1) % n], input[j], input[(j + 1) % n]))
        throw NotSimple("polygon edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }

  std::vector<P2> poly = input;
  if (signed_area(poly) < 0) std::reverse(poly.begin(), poly.end());

  double extent = 1.0;
  for (const auto& p : poly) extent = std::max({extent, std::abs(p[0]), std::abs(p[1])});
  extent *= 4.0;
  std::vector<P2> kernel{{-extent, -extent}, {extent, -extent}, {extent, extent}, {-extent, extent}};
  for (std::size_t i = 0; i < n && !kernel.empty(); ++i) kernel = clip_left(kernel, poly[i], poly[(i + 1) % n]);

  StarlikeResult r;
  const double area = kernel.size() >= 3 ? signed_area(kernel) : 0.0;
  if (area <= 1e-14 * extent * extent) return r;
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const P2& p = kernel[i];
    const P2& q = kernel[(i + 1) % kernel.size()];
    const double w = p[0] * q[1] - q[0] * p[1];
    cx += (p[0] + q[0]) * w;
    cy += (p[1] + q[1]) * w;
  }
  r.starlike = true;
  r.star_point = P2{cx / (6.0 * area), cy / (6.0 * area)};
  r.kernel = std::move(kernel);
  return r;
}

StarlikeResult is_starlike_projection(const Curve& curve, int samples) {
  if (!curve.closed()) throw std::invalid_argument("starlike test needs a closed curve");
  if (samples < 3) throw std::invalid_argument("starlike test needs at least 3 samples");
  std::vector<P2> poly;
  poly.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const Vec3d p = curve(curve.x0() + curve.period() * i / samples);
    poly.push_back({p[0], p[1]});
  }
  return starlike_polygon(poly);
}

}  // namespace asym
