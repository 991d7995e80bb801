#include "asymptotica/flow.hpp"

#include <algorithm>
#include <cmath>

namespace asym {

BranchSlopes branch_slopes(double e, double f, double g, std::optional<double> prev) {
  const double scale = std::max({std::abs(e), std::abs(f), std::abs(g)});
  if (scale == 0.0) throw std::invalid_argument("branch_slopes: e = f = g = 0, every direction is asymptotic");
  BranchSlopes r;
  if (std::abs(g) <= kLinearTol * scale) {
    r.vertical_root = true;
    if (std::abs(f) <= kLinearTol * scale) {
      r.status = SlopeStatus::Vertical;
      return r;
    }
    r.roots = {-e / (2.0 * f)};
  } else {
    double disc = f * f - e * g;
    if (disc < 0.0) {
      if (disc < -1e-14 * scale * scale) {
        r.status = SlopeStatus::Elliptic;
        return r;
      }
      disc = 0.0;
    }
    const double q = -(f + std::copysign(std::sqrt(disc), f));
    const double p1 = q / g;
    const double p2 = q != 0.0 ? e / q : p1;
    r.roots = {std::min(p1, p2), std::max(p1, p2)};
  }
  const double target = prev.value_or(0.0);
  r.selected = *std::min_element(r.roots.begin(), r.roots.end(),
                                 [&](double a, double b) { return std::abs(a - target) < std::abs(b - target); });
  if (r.roots.size() == 2 && r.roots[1] - r.roots[0] < kCoalesceTol * (1.0 + std::abs(*r.selected)))
    r.status = SlopeStatus::Coalescing;
  return r;
}

std::string_view name(FlowStatus s) {
  switch (s) {
    case FlowStatus::Completed: return "Completed";
    case FlowStatus::EllipticStop: return "EllipticStop";
    case FlowStatus::ParabolicStop: return "ParabolicStop";
    case FlowStatus::ReductionSingular: return "ReductionSingular";
    case FlowStatus::TubeExit: return "TubeExit";
    case FlowStatus::VerticalDirection: return "VerticalDirection";
    case FlowStatus::StepUnderflow: return "StepUnderflow";
  }
  return "?";
}

namespace {

constexpr int kRetryElliptic = -1;
constexpr int kRetryParabolic = -2;
constexpr int kStopSingular = 2;
constexpr int kStopVertical = 3;
constexpr int kStopTube = 4;

FlowStatus status_of(int code) {
  switch (code) {
    case 0: return FlowStatus::Completed;
    case kRetryElliptic: return FlowStatus::EllipticStop;
    case kRetryParabolic: return FlowStatus::ParabolicStop;
    case kStopSingular: return FlowStatus::ReductionSingular;
    case kStopVertical: return FlowStatus::VerticalDirection;
    case kStopTube: return FlowStatus::TubeExit;
    default: return FlowStatus::StepUnderflow;
  }
}

}  // namespace

FlowResult integrate_asymptotic(const BinarySystem& system, double x0, double y0, double z0, double x1,
                                std::optional<double> branch_hint, const FlowOptions& opt) {
  FlowResult result;
  if (!(x1 > x0)) throw std::invalid_argument("integration needs x1 > x0");
  if (std::abs(y0) > opt.radius || std::abs(z0) > opt.radius) {
    result.status = FlowStatus::TubeExit;
    result.message = "start point lies outside the tube";
    return result;
  }

  std::optional<double> prev = branch_hint;
  double last_p = 0.0, last_residual = 0.0;
  std::string message;

  auto rhs = [&](double x, const std::array<double, 2>& s, std::array<double, 2>& ds) -> int {
    BinaryCoeffs c;
    try {
      c = system.at(x, s[0], s[1]);
    } catch (const ReductionSingular& ex) {
      message = ex.what();
      return kStopSingular;
    } catch (const DomainError& ex) {
      message = ex.what();
      return kStopSingular;
    }
    const double scale = std::max({std::abs(c.e), std::abs(c.f), std::abs(c.g), 1.0});
    if (std::max({std::abs(c.e), std::abs(c.f), std::abs(c.g)}) == 0.0) {
      message = "fully degenerate point: every direction is asymptotic";
      return kRetryParabolic;
    }
    const BranchSlopes b = branch_slopes(c.e, c.f, c.g, prev);
    switch (b.status) {
      case SlopeStatus::Elliptic:
        message = "no real asymptotic direction (elliptic point) at x = " + std::to_string(x);
        return kRetryElliptic;
      case SlopeStatus::Coalescing:
        message = "asymptotic directions coalesce (parabolic point) near x = " + std::to_string(x);
        return kRetryParabolic;
      case SlopeStatus::Vertical:
        message = "only the dx = 0 direction is asymptotic at x = " + std::to_string(x);
        return kStopVertical;
      case SlopeStatus::Ok: break;
    }
    const double p = *b.selected;
    last_p = p;
    last_residual = std::abs(c.g * p * p + 2.0 * c.f * p + c.e) / scale;
    ds = {p, c.A + c.B * p};
    return 0;
  };

  // Evaluate the start point once so the first sample carries its slope.
  std::array<double, 2> probe{};
  const int start = rhs(x0, {y0, z0}, probe);
  if (start != 0) {
    result.status = status_of(start);
    result.message = message;
    return result;
  }
  prev = last_p;
  result.path.samples.push_back({x0, y0, z0, last_p});
  result.path.max_residual = last_residual;

  auto observer = [&](double x, const std::array<double, 2>& s) -> int {
    prev = last_p;
    result.path.max_residual = std::max(result.path.max_residual, last_residual);
    if (opt.record || x >= x1) result.path.samples.push_back({x, s[0], s[1], last_p});
    if (std::abs(s[0]) > opt.radius || std::abs(s[1]) > opt.radius) {
      message = "path left the tube of radius " + std::to_string(opt.radius);
      return kStopTube;
    }
    return 0;
  };

  const auto out = dopri5<2>(rhs, x0, {y0, z0}, x1, opt.ode, observer);
  result.path.stats = out.stats;
  if (!opt.record && (result.path.samples.empty() || result.path.samples.back().x != out.x))
    result.path.samples.push_back({out.x, out.y[0], out.y[1], last_p});
  result.status = status_of(out.code);
  if (result.status != FlowStatus::Completed) result.message = message.empty() ? "step size underflow" : message;
  return result;
}

}  // namespace asym
