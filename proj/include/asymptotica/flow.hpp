#pragma once

// Asymptotic lines as solutions of
//   e + 2 f p + g p^2 = 0,   y' = p,   z' = A + B p
// with x as the independent variable and root-continuity branch tracking.

#include "asymptotica/ode.hpp"
#include "asymptotica/tubular.hpp"

#include <optional>
#include <string>
#include <vector>

namespace asym {

struct BinaryCoeffs {
  double e, f, g, A, B;
};

/// Anything that yields the reduced binary equation at (x, y, z).
class BinarySystem {
 public:
  virtual ~BinarySystem() = default;
  virtual BinaryCoeffs at(double x, double y, double z) const = 0;
};

class ChartBinarySystem final : public BinarySystem {
 public:
  explicit ChartBinarySystem(const ChartField& field) : field_(field) {}
  BinaryCoeffs at(double x, double y, double z) const override {
    const Reduced r = reduce(field_, x, y, z);
    return {r.e, r.f, r.g, r.A, r.B};
  }

 private:
  const ChartField& field_;
};

enum class SlopeStatus { Ok, Elliptic, Vertical, Coalescing };

struct BranchSlopes {
  SlopeStatus status = SlopeStatus::Ok;
  std::vector<double> roots;       // finite real roots, ascending
  bool vertical_root = false;      // dx = 0 is also a solution direction (g = 0)
  std::optional<double> selected;  // nearest root to the previous slope
};

inline constexpr double kLinearTol = 1e-14;
inline constexpr double kCoalesceTol = 1e-6;

/// Real roots of g p^2 + 2 f p + e = 0, computed stably; linear when
/// |g| <= kLinearTol * max(|e|, |f|, |g|).  Coalescing when the two roots are
/// closer than kCoalesceTol (1 + |p|).
BranchSlopes branch_slopes(double e, double f, double g, std::optional<double> prev = std::nullopt);

enum class FlowStatus {
  Completed,
  EllipticStop,
  ParabolicStop,
  ReductionSingular,
  TubeExit,
  VerticalDirection,
  StepUnderflow,
};
std::string_view name(FlowStatus s);

struct PathSample {
  double x, y, z, p;
};

struct Path {
  std::vector<PathSample> samples;
  OdeStats stats;
  double max_residual = 0.0;  // |g p^2 + 2 f p + e| / max(|e|, |f|, |g|, 1) over accepted points
};

struct FlowOptions {
  OdeOptions ode;
  double radius = 0.1;   // tube radius; |y| or |z| beyond it stops the flow
  bool record = true;    // keep every accepted sample
};

struct FlowResult {
  FlowStatus status = FlowStatus::Completed;
  std::string message;
  Path path;
};

FlowResult integrate_asymptotic(const BinarySystem& system, double x0, double y0, double z0, double x1,
                                std::optional<double> branch_hint = 0.0, const FlowOptions& opt = {});

}  // namespace asym
