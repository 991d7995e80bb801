#include "asymptotica/surfaces.hpp"

#include <cmath>

namespace asym {

ParamSurface::ParamSurface(std::array<Expr, 3> map) : map_(std::move(map)) {
  for (const auto& c : map_)
    for (Var v : c.free_variables())
      if (v != Var::u && v != Var::v) throw std::invalid_argument("surface components may only use u and v");
}

ParamSurface ParamSurface::parse(const std::array<std::string, 3>& map) {
  return ParamSurface({asym::parse(map[0]), asym::parse(map[1]), asym::parse(map[2])});
}

Vec3d ParamSurface::operator()(double u, double v) const {
  Bindings<double> b(0.0);
  b.bind(Var::u, u).bind(Var::v, v);
  return {eval(map_[0], b), eval(map_[1], b), eval(map_[2], b)};
}

Vec3<Jet> ParamSurface::jet(double u, double v, JetShape s) const {
  Bindings<Jet> b(Jet(0.0, s));
  b.bind(Var::u, Jet::variable(Slot::x, u, s)).bind(Var::v, Jet::variable(Slot::y, v, s));
  return {eval(map_[0], b), eval(map_[1], b), eval(map_[2], b)};
}

SecondFundamental second_fundamental(const ParamSurface& s, double u, double v) {
  const Vec3<Jet> j = s.jet(u, v, {2, 2});
  auto part = [&](int i, int k) { return Vec3d{j[0].partial(i, k, 0), j[1].partial(i, k, 0), j[2].partial(i, k, 0)}; };
  const Vec3d bu = part(1, 0), bv = part(0, 1), buu = part(2, 0), buv = part(1, 1), bvv = part(0, 2);
  const Vec3d n = cross(bu, bv);
  const double len = norm(n);
  if (len <= 1e-14 * (1.0 + norm(bu) * norm(bv)))
    throw DegenerateFrame("surface is not regular at (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  SecondFundamental r;
  r.e_br = dot(buu, n);
  r.f_br = dot(buv, n);
  r.g_br = dot(bvv, n);
  r.e = r.e_br / len;
  r.f = r.f_br / len;
  r.g = r.g_br / len;
  r.normal_length = len;
  return r;
}

namespace {

void check_mn(int m, int n) {
  if (!(1 < m && m < n)) throw std::invalid_argument("need 1 < m < n");
}

std::string pw(const std::string& base, int e) {
  if (e == 0) return "1";
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

}  // namespace

double arnold_k1(int m, int n, double u) {
  check_mn(m, n);
  const double a = m * m * std::pow(u, 2 * (m - 1));
  const double num = ((n - m) * a + n - 1) * n * std::pow(u, n - m);
  const double den = (1.0 + a + n * n * std::pow(u, 2 * (n - 1))) * (m - 1) * m;
  return num / den;
}

std::string arnold_k1_expr(int m, int n) {
  check_mn(m, n);
  const std::string M = std::to_string(m), N = std::to_string(n);
  return "((" + std::to_string(n - m) + "*" + M + "^2*" + pw("u", 2 * (m - 1)) + " + " + std::to_string(n - 1) +
         ")*" + N + "*" + pw("u", n - m) + ")/((1 + " + M + "^2*" + pw("u", 2 * (m - 1)) + " + " + N + "^2*" +
         pw("u", 2 * (n - 1)) + ")*" + std::to_string((m - 1) * m) + ")";
}

double f_on_curve(int m, int n, double u) {
  check_mn(m, n);
  const double a = 1.0 + m * m * std::pow(u, 2 * (m - 1));
  return (n - m) * (n - 1) * n * a * a * std::pow(u, n - m - 1) / ((m - 1) * m);
}

ArnoldSurface arnold_surface(int m, int n, int samples, double u_max) {
  check_mn(m, n);
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  const std::string K = "(" + arnold_k1_expr(m, n) + ")";
  const std::string M = std::to_string(m), N = std::to_string(n);
  // gamma' ^ N = (n u^(n-1), m n u^(m+n-2), -1 - m^2 u^(2(m-1)))
  const std::string b1 = "u + v*" + M + "*" + pw("u", m - 1) + " + " + K + "*v*" + N + "*" + pw("u", n - 1);
  const std::string b2 = pw("u", m) + " - v + " + K + "*v*" + std::to_string(m * n) + "*" + pw("u", m + n - 2);
  const std::string b3 = pw("u", n) + " - " + K + "*v*(1 + " + M + "^2*" + pw("u", 2 * (m - 1)) + ")";
  ArnoldSurface a{ParamSurface::parse({b1, b2, b3}), {}};
  a.report.m = m;
  a.report.n = n;
  for (int i = 0; i < samples; ++i) {
    const double u = -u_max + 2.0 * u_max * i / (samples - 1);
    const SecondFundamental sf = second_fundamental(a.surface, u, 0.0);
    a.report.u.push_back(u);
    a.report.e.push_back(sf.e);
    a.report.f.push_back(sf.f);
    a.report.f_br.push_back(sf.f_br);
  }
  a.report.f00 = second_fundamental(a.surface, 0.0, 0.0).f_br;
  return a;
}

}  // namespace asym
