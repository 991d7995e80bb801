#include "asymptotica/monodromy.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace asym {

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

Mat2 inverse(const Mat2& a) {
  const double d = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (d == 0.0) throw std::domain_error("singular 2x2 matrix");
  return {{{a[1][1] / d, -a[0][1] / d}, {-a[1][0] / d, a[0][0] / d}}};
}

Mat2 variational_matrix(const ChartField& field, double x) {
  const CurveData d = curve_data(field, x);
  if (d.f == 0.0) throw ParabolicOnCurve("f(x,0,0) = 0 at x = " + std::to_string(x));
  const double m11 = -d.e_y / (2.0 * d.f);
  const double m12 = -d.e_z / (2.0 * d.f);
  return {{{m11, m12}, {d.A_y + d.B * m11, d.A_z + d.B * m12}}};
}

std::array<std::complex<double>, 2> eigenvalues(const Mat2& m) {
  const double tr = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  // Discriminant from the entries directly: tr^2/4 - det = ((m11 - m22)/2)^2 + m12 m21.
  const double half = (m[0][0] - m[1][1]) / 2.0;
  const double disc = half * half + m[0][1] * m[1][0];
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    const double l1 = tr / 2.0 + std::copysign(s, tr);
    const double l2 = l1 != 0.0 ? det / l1 : tr / 2.0 - std::copysign(s, tr);
    return {std::complex<double>(std::max(l1, l2)), std::complex<double>(std::min(l1, l2))};
  }
  const double s = std::sqrt(-disc);
  return {std::complex<double>(tr / 2.0, s), std::complex<double>(tr / 2.0, -s)};
}

void classify_monodromy(MonodromyResult& r, double tol) {
  r.eigenvalues = eigenvalues(r.Q);
  r.hyperbolic_tol = tol;
  for (std::size_t i = 0; i < 2; ++i) r.modulus_gap[i] = std::abs(std::abs(r.eigenvalues[i]) - 1.0);
  r.hyperbolic = r.modulus_gap[0] > tol && r.modulus_gap[1] > tol;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, tol);
}

MonodromyResult monodromy(const std::function<Mat2(double)>& M, double period, const MonodromyOptions& opt) {
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
  MonodromyResult r;
  r.period = period;
  // State: Q (row-major), int tr M, int m11, int m22.
  std::array<double, 7> s{1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
  auto rhs = [&](double x, const std::array<double, 7>& y, std::array<double, 7>& dy) -> int {
    const Mat2 m = M(x);
    dy[0] = m[0][0] * y[0] + m[0][1] * y[2];
    dy[1] = m[0][0] * y[1] + m[0][1] * y[3];
    dy[2] = m[1][0] * y[0] + m[1][1] * y[2];
    dy[3] = m[1][0] * y[1] + m[1][1] * y[3];
    dy[4] = m[0][0] + m[1][1];
    dy[5] = m[0][0];
    dy[6] = m[1][1];
    return 0;
  };
  constexpr int kCheckpoints = 16;
  for (int k = 0; k < kCheckpoints; ++k) {
    const double a = period * k / kCheckpoints;
    const double b = period * (k + 1) / kCheckpoints;
    const auto out = dopri5<7>(rhs, a, s, b, opt.ode);
    if (out.code != 0) throw IntegrationFailure("variational equation: step size underflow");
    s = out.y;
    r.stats.accepted += out.stats.accepted;
    r.stats.rejected += out.stats.rejected;
    r.stats.min_step = std::min(r.stats.min_step, out.stats.min_step);
    r.stats.max_step = std::max(r.stats.max_step, out.stats.max_step);
    const double det = s[0] * s[3] - s[1] * s[2];
    const double expected = std::exp(s[4]);
    r.max_liouville_checkpoint_error = std::max(r.max_liouville_checkpoint_error, std::abs(det - expected) / expected);
  }
  r.Q = {{{s[0], s[1]}, {s[2], s[3]}}};
  r.trace_integral = s[4];
  r.diagonal_ode = {s[5], s[6]};
  const double det = s[0] * s[3] - s[1] * s[2];
  r.liouville_rel_error = std::abs(det - std::exp(s[4])) / std::exp(s[4]);
  if (opt.quadrature) {
    r.diagonal_quadrature = {integrate([&](double x) { return M(x)[0][0]; }, 0.0, period, opt.quadrature_tol),
                             integrate([&](double x) { return M(x)[1][1]; }, 0.0, period, opt.quadrature_tol)};
    r.quadrature_done = true;
  }
  classify_monodromy(r, opt.hyperbolic_tol);
  return r;
}

MonodromyResult monodromy(const ChartField& field, double period, const MonodromyOptions& opt) {
  const double x0 = field.chart().core().x0();
  return monodromy([&](double x) { return variational_matrix(field, x0 + x); }, period, opt);
}

Mat2 fd_poincare_derivative(const BinarySystem& system, double x0, double period, double h, const FlowOptions& opt) {
  if (!(h > 1e-8 && h < opt.radius)) throw std::invalid_argument("finite-difference step must lie in (1e-8, radius)");
  FlowOptions o = opt;
  o.record = false;
  auto ret = [&](double y0, double z0) {
    const FlowResult r = integrate_asymptotic(system, x0, y0, z0, x0 + period, 0.0, o);
    if (r.status != FlowStatus::Completed)
      throw IntegrationFailure("return-map flow stopped: " + std::string(name(r.status)) + ": " + r.message);
    const PathSample& end = r.path.samples.back();
    return std::array<double, 2>{end.y, end.z};
  };
  const auto yp = ret(h, 0.0), ym = ret(-h, 0.0), zp = ret(0.0, h), zm = ret(0.0, -h);
  return {{{(yp[0] - ym[0]) / (2 * h), (zp[0] - zm[0]) / (2 * h)},
           {(yp[1] - ym[1]) / (2 * h), (zp[1] - zm[1]) / (2 * h)}}};
}

}  // namespace asym
