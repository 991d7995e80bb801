#pragma once

// The tubular chart alpha(x, y, z) = gamma(x) + y Y(x) + z Z(x) around a core
// curve, plane fields expressed in chart coordinates, and the coefficient
// pipeline
//   a dx + b dy + c dz = 0,   L1 dx^2 + L2 dx dy + L3 dy^2 + L4 dx dz + L5 dy dz + L6 dz^2 = 0
// reduced (by eliminating dz = A dx + B dy) to  e dx^2 + 2 f dx dy + g dy^2 = 0.
// Every partial derivative is taken on jets, never by differencing.

#include "asymptotica/curves.hpp"
#include "asymptotica/planefield.hpp"

#include <array>
#include <memory>
#include <string_view>
#include <vector>

namespace asym {

class TubularChart {
 public:
  explicit TubularChart(Curve core, double radius = 0.1);

  const Curve& core() const { return core_; }
  double radius() const { return radius_; }

  /// gamma^(0) .. gamma^(derivs) as jets of shape `s` in the chart variables
  /// around (x, *, *); they do not depend on y, z.
  std::vector<Vec3<Jet>> curve_jets(double x, JetShape s, int derivs) const;

  /// alpha as a jet of shape `s` around (x, y, z).
  Vec3<Jet> alpha(double x, double y, double z, JetShape s) const;
  Vec3d alpha(double x, double y, double z) const;

 private:
  Curve core_;
  double radius_;
};

/// A plane field seen through a tubular chart: xi(alpha(x, y, z)) as jets.
class ChartField {
 public:
  virtual ~ChartField() = default;
  virtual const TubularChart& chart() const = 0;
  virtual Vec3<Jet> xi(double x, double y, double z, JetShape s) const = 0;
};

/// An ambient field composed with the chart map.
class AmbientChartField final : public ChartField {
 public:
  AmbientChartField(AmbientField field, TubularChart chart) : field_(std::move(field)), chart_(std::move(chart)) {}
  const TubularChart& chart() const override { return chart_; }
  Vec3<Jet> xi(double x, double y, double z, JetShape s) const override;
  const AmbientField& field() const { return field_; }

 private:
  AmbientField field_;
  TubularChart chart_;
};

/// phi * xi with phi a function of the ambient coordinates.
class ScaledChartField final : public ChartField {
 public:
  ScaledChartField(std::shared_ptr<const ChartField> base, Expr phi) : base_(std::move(base)), phi_(std::move(phi)) {}
  const TubularChart& chart() const override { return base_->chart(); }
  Vec3<Jet> xi(double x, double y, double z, JetShape s) const override;

 private:
  std::shared_ptr<const ChartField> base_;
  Expr phi_;
};

struct LinearCoeffs {
  double a, b, c;
};

struct Reduced {
  double e, f, g;
  double A, B;  // dz = A dx + B dy
};

/// All pipeline quantities as jets of shape `out` around the chart point.
struct PipelineJets {
  Jet a, b, c;
  std::array<Jet, 6> L;
};
struct ReducedJets {
  PipelineJets raw;
  Jet e, f, g, A, B;
};

PipelineJets pipeline_jets(const ChartField& field, double x, double y, double z, JetShape out);
/// Throws ReductionSingular when c vanishes (relative to |xi| |alpha_z|).
ReducedJets reduced_jets(const ChartField& field, double x, double y, double z, JetShape out);

LinearCoeffs linear_coeffs(const ChartField& field, double x, double y, double z);
std::array<double, 6> quadratic_coeffs(const ChartField& field, double x, double y, double z);
Reduced reduce(const ChartField& field, double x, double y, double z);
double gaussian_curvature(const ChartField& field, double x, double y, double z);

enum class PointClass { Hyperbolic, Elliptic, Parabolic, FullyDegenerate };
std::string_view name(PointClass c);

inline constexpr double kParabolicTol = 1e-8;
inline constexpr double kDegenerateTol = 1e-12;

/// Sign of eg - f^2, normalized by max(|e|, |f|, |g|, 1)^2, with a parabolic band.
PointClass classify(double e, double f, double g, double tol = kParabolicTol);
PointClass classify(const ChartField& field, double x, double y, double z, double tol = kParabolicTol);

/// Reduced data and first transverse partials along the core curve (x, 0, 0).
struct CurveData {
  double a, b, c;
  double e, f, g, A, B;
  double e_y, e_z, f_y, f_z, g_y, g_z;
  double A_y, A_z, B_y, B_z;
};
CurveData curve_data(const ChartField& field, double x);

}  // namespace asym
