#include "asymptotica/tubular.hpp"

#include <algorithm>
#include <cmath>

namespace asym {

TubularChart::TubularChart(Curve core, double radius) : core_(std::move(core)), radius_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("tube radius must be positive");
}

std::vector<Vec3<Jet>> TubularChart::curve_jets(double x, JetShape s, int derivs) const {
  const Vec3<Jet> g = core_.jet3(x, s.x_order + derivs);
  std::vector<Vec3<Jet>> out;
  out.reserve(static_cast<std::size_t>(derivs) + 1);
  Vec3<Jet> d = g;
  for (int k = 0; k <= derivs; ++k) {
    if (k > 0) d = map(d, [](const Jet& j) { return j.derivative(Slot::x); });
    out.push_back(map(d, [&](const Jet& j) { return j.truncate({s.x_order, 0}).lift_yz(s.yz_order); }));
  }
  return out;
}

namespace {

Vec3<Jet> planar_normal(const Vec3<Jet>& X) { return {X[1], -X[0], Jet(0.0, X[0].shape())}; }

}  // namespace

Vec3<Jet> TubularChart::alpha(double x, double y, double z, JetShape s) const {
  const auto g = curve_jets(x, s, 1);
  const Vec3<Jet>& X = g[1];
  const Vec3<Jet> Y = planar_normal(X);
  const Vec3<Jet> Z = cross(X, Y);
  const Jet yv = Jet::variable(Slot::y, y, s);
  const Jet zv = Jet::variable(Slot::z, z, s);
  return g[0] + Y * yv + Z * zv;
}

Vec3d TubularChart::alpha(double x, double y, double z) const {
  return map(alpha(x, y, z, {0, 0}), [](const Jet& j) { return j.value(); });
}

Vec3<Jet> AmbientChartField::xi(double x, double y, double z, JetShape s) const {
  return field_(chart_.alpha(x, y, z, s));
}

Vec3<Jet> ScaledChartField::xi(double x, double y, double z, JetShape s) const {
  const Vec3<Jet> p = chart().alpha(x, y, z, s);
  Bindings<Jet> b(Jet(0.0, s));
  b.bind(Var::x, p[0]).bind(Var::y, p[1]).bind(Var::z, p[2]);
  const Jet phi = eval(phi_, b);
  return base_->xi(x, y, z, s) * phi;
}

PipelineJets pipeline_jets(const ChartField& field, double x, double y, double z, JetShape out) {
  const JetShape w{out.x_order + 1, out.yz_order + 1};
  const Vec3<Jet> xi = field.xi(x, y, z, w);
  const Vec3<Jet> al = field.chart().alpha(x, y, z, w);
  auto d = [](const Vec3<Jet>& v, Slot s) { return map(v, [s](const Jet& j) { return j.derivative(s); }); };
  const Vec3<Jet> ax = d(al, Slot::x), ay = d(al, Slot::y), az = d(al, Slot::z);
  const Vec3<Jet> xx = d(xi, Slot::x), xy = d(xi, Slot::y), xz = d(xi, Slot::z);
  auto t = [out](const Jet& j) { return j.truncate(out); };
  PipelineJets p;
  p.a = t(dot(xi, ax));
  p.b = t(dot(xi, ay));
  p.c = t(dot(xi, az));
  p.L[0] = t(dot(xx, ax));
  p.L[1] = t(dot(xx, ay) + dot(xy, ax));
  p.L[2] = t(dot(xy, ay));
  p.L[3] = t(dot(xx, az) + dot(xz, ax));
  p.L[4] = t(dot(xy, az) + dot(xz, ay));
  p.L[5] = t(dot(xz, az));
  const Vec3d xi0 = map(xi, [](const Jet& j) { return j.value(); });
  const Vec3d az0 = map(az, [](const Jet& j) { return j.value(); });
  if (std::abs(p.c.value()) <= 1e-12 * norm(xi0) * norm(az0)) p.c = Jet(0.0, out);
  return p;
}

ReducedJets reduced_jets(const ChartField& field, double x, double y, double z, JetShape out) {
  ReducedJets r;
  r.raw = pipeline_jets(field, x, y, z, out);
  const auto& [a, b, c, L] = r.raw;
  if (c.value() == 0.0)
    throw ReductionSingular("c = <xi, alpha_z> vanishes at chart point (" + std::to_string(x) + ", " +
                            std::to_string(y) + ", " + std::to_string(z) + ")");
  const Jet ic = reciprocal(c);
  r.A = -a * ic;
  r.B = -b * ic;
  // Substituting dz = A dx + B dy into the quadratic form.
  r.e = L[0] + L[3] * r.A + L[5] * r.A * r.A;
  r.f = (L[1] + L[3] * r.B + L[4] * r.A + 2.0 * L[5] * r.A * r.B) * 0.5;
  r.g = L[2] + L[4] * r.B + L[5] * r.B * r.B;
  return r;
}

LinearCoeffs linear_coeffs(const ChartField& field, double x, double y, double z) {
  const auto p = pipeline_jets(field, x, y, z, {0, 0});
  return {p.a.value(), p.b.value(), p.c.value()};
}

std::array<double, 6> quadratic_coeffs(const ChartField& field, double x, double y, double z) {
  const auto p = pipeline_jets(field, x, y, z, {0, 0});
  std::array<double, 6> L;
  for (std::size_t i = 0; i < 6; ++i) L[i] = p.L[i].value();
  return L;
}

Reduced reduce(const ChartField& field, double x, double y, double z) {
  const auto r = reduced_jets(field, x, y, z, {0, 0});
  return {r.e.value(), r.f.value(), r.g.value(), r.A.value(), r.B.value()};
}

double gaussian_curvature(const ChartField& field, double x, double y, double z) {
  const Reduced r = reduce(field, x, y, z);
  return r.e * r.g - r.f * r.f;
}

std::string_view name(PointClass c) {
  switch (c) {
    case PointClass::Hyperbolic: return "Hyperbolic";
    case PointClass::Elliptic: return "Elliptic";
    case PointClass::Parabolic: return "Parabolic";
    case PointClass::FullyDegenerate: return "FullyDegenerate";
  }
  return "?";
}

PointClass classify(double e, double f, double g, double tol) {
  const double scale = std::max({std::abs(e), std::abs(f), std::abs(g), 1.0});
  if (std::max({std::abs(e), std::abs(f), std::abs(g)}) <= kDegenerateTol) return PointClass::FullyDegenerate;
  const double k = (e * g - f * f) / (scale * scale);
  if (std::abs(k) <= tol) return PointClass::Parabolic;
  return k < 0 ? PointClass::Hyperbolic : PointClass::Elliptic;
}

PointClass classify(const ChartField& field, double x, double y, double z, double tol) {
  const Reduced r = reduce(field, x, y, z);
  return classify(r.e, r.f, r.g, tol);
}

CurveData curve_data(const ChartField& field, double x) {
  const auto r = reduced_jets(field, x, 0.0, 0.0, {0, 1});
  CurveData d;
  d.a = r.raw.a.value();
  d.b = r.raw.b.value();
  d.c = r.raw.c.value();
  d.e = r.e.value();
  d.f = r.f.value();
  d.g = r.g.value();
  d.A = r.A.value();
  d.B = r.B.value();
  d.e_y = r.e.partial(0, 1, 0);
  d.e_z = r.e.partial(0, 0, 1);
  d.f_y = r.f.partial(0, 1, 0);
  d.f_z = r.f.partial(0, 0, 1);
  d.g_y = r.g.partial(0, 1, 0);
  d.g_z = r.g.partial(0, 0, 1);
  d.A_y = r.A.partial(0, 1, 0);
  d.A_z = r.A.partial(0, 0, 1);
  d.B_y = r.B.partial(0, 1, 0);
  d.B_z = r.B.partial(0, 0, 1);
  return d;
}

}  // namespace asym
