#pragma once

// Ambient plane fields: a plane at each point of R^3 encoded by its normal
// vector field xi(x, y, z).

#include "asymptotica/errors.hpp"
#include "asymptotica/expr.hpp"
#include "asymptotica/vec3.hpp"

#include <array>
#include <string>

namespace asym {

struct Box {
  Vec3d lo{-1.0, -1.0, -1.0};
  Vec3d hi{1.0, 1.0, 1.0};
};

class AmbientField {
 public:
  explicit AmbientField(std::array<Expr, 3> xi);
  static AmbientField parse(const std::array<std::string, 3>& xi);

  const std::array<Expr, 3>& components() const { return xi_; }

  /// Throws ZeroField where all three components vanish.
  Vec3d operator()(const Vec3d& p) const;
  Vec3<Jet> operator()(const Vec3<Jet>& p) const;

  /// Columns d xi / dx, d xi / dy, d xi / dz at p, from order-1 jets.
  std::array<Vec3d, 3> jacobian(const Vec3d& p) const;

 private:
  std::array<Expr, 3> xi_;
};

struct NormalCurvatureOptions {
  bool project = false;       // project dr onto the plane first
  double plane_tol = 1e-9;    // relative tolerance of the in-plane check
};

/// k_n = -<d xi(p) dr, dr> / <dr, dr>.
double normal_curvature(const AmbientField& field, const Vec3d& p, Vec3d dr, NormalCurvatureOptions opt = {});

/// <xi, curl xi>(p); vanishes identically exactly for completely integrable fields.
double integrability_defect(const AmbientField& field, const Vec3d& p);

/// Throws Vanishing if |phi| <= tol, or phi changes sign, on a lattice^3 grid over `box`.
void probe_nonvanishing(const Expr& phi, const Box& box, int lattice = 10, double tol = 1e-12);

/// phi * xi, after probing phi for zeros over `box`.
AmbientField gauge_scale(const AmbientField& field, const Expr& phi, const Box& box = {});

/// The polynomial field realizing the unit circle in {z = 0} as an
/// asymptotic line without parabolic points.
AmbientField circle_example_field();

/// Built-in ambient fields by name: "circle-example", "flat" = (0, 0, 1),
/// "zero-monodromy" = (0, x, 1), "contact" = (-y, 0, 1).
AmbientField builtin_ambient_field(const std::string& name);

}  // namespace asym
