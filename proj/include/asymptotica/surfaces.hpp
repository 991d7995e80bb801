#pragma once

// Parametrized surfaces (u, v) -> R^3 and the rotating-type surface
//   beta(u, v) = gamma(u) + v N(u) + k1(u) v (gamma' ^ N)(u),  N = (g2', -g1', 0)
// built on the local model gamma = (u, u^m, u^n).

#include "asymptotica/errors.hpp"
#include "asymptotica/expr.hpp"
#include "asymptotica/flow.hpp"
#include "asymptotica/vec3.hpp"

#include <array>
#include <string>
#include <vector>

namespace asym {

class ParamSurface {
 public:
  /// Components are expressions in u and v.
  explicit ParamSurface(std::array<Expr, 3> map);
  static ParamSurface parse(const std::array<std::string, 3>& map);

  const std::array<Expr, 3>& components() const { return map_; }
  Vec3d operator()(double u, double v) const;
  /// Jets with u in the x slot and v in the y slot.
  Vec3<Jet> jet(double u, double v, JetShape s) const;

 private:
  std::array<Expr, 3> map_;
};

struct SecondFundamental {
  double e, f, g;               // <beta_uu, N>, <beta_uv, N>, <beta_vv, N> with unit N
  double e_br, f_br, g_br;      // same with N replaced by beta_u ^ beta_v (triple products)
  double normal_length;         // |beta_u ^ beta_v|
};

/// Throws DegenerateFrame where beta_u ^ beta_v vanishes.
SecondFundamental second_fundamental(const ParamSurface& s, double u, double v);

/// [(n-m) m^2 u^(2(m-1)) + n - 1] n u^(n-m) / ([1 + m^2 u^(2(m-1)) + n^2 u^(2(n-1))] (m-1) m)
double arnold_k1(int m, int n, double u);
std::string arnold_k1_expr(int m, int n);

/// (n-m)(n-1) n (1 + m^2 u^(2(m-1)))^2 u^(n-m-1) / ((m-1) m)
double f_on_curve(int m, int n, double u);

struct ArnoldReport {
  int m = 0, n = 0;
  std::vector<double> u;
  std::vector<double> e;       // e(u, 0), unit normal
  std::vector<double> f;       // f(u, 0), unit normal
  std::vector<double> f_br;    // f(u, 0) as the triple product [beta_u, beta_v, beta_uv]
  double f00 = 0.0;            // [beta_u, beta_v, beta_uv](0, 0)
};

struct ArnoldSurface {
  ParamSurface surface;
  ArnoldReport report;
};

/// Surface and on-curve report sampled at `samples` points of |u| <= u_max.
ArnoldSurface arnold_surface(int m, int n, int samples = 64, double u_max = 0.5);

/// Asymptotic-line equation of a surface: e du^2 + 2f du dv + g dv^2 = 0 with
/// u as the flow variable and v as the transverse one (A = B = 0).
class SurfaceBinarySystem final : public BinarySystem {
 public:
  explicit SurfaceBinarySystem(const ParamSurface& s) : s_(s) {}
  BinaryCoeffs at(double u, double v, double) const override {
    const SecondFundamental sf = second_fundamental(s_, u, v);
    return {sf.e, sf.f, sf.g, 0.0, 0.0};
  }

 private:
  const ParamSurface& s_;
};

}  // namespace asym
