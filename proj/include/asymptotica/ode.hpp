#pragma once

// Dormand-Prince 5(4) with error control, over fixed-size states.
//
// The right-hand side returns a status: 0 accepts the evaluation, a negative
// code asks for a smaller step (the step is retried at half size and the code
// is reported if the step underflows), a positive code stops integration.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace asym {

struct OdeOptions {
  double atol = 1e-10;
  double rtol = 1e-10;
  double h0 = 1e-2;
  double hmin = 1e-12;
  double hmax = std::numeric_limits<double>::infinity();
  long max_steps = 1'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  double min_step = std::numeric_limits<double>::infinity();
  double max_step = 0.0;
};

template <std::size_t N>
struct OdeOutcome {
  double x = 0.0;
  std::array<double, N> y{};
  OdeStats stats;
  int code = 0;  // 0: reached x1; otherwise the stop or underflow code
};

inline constexpr int kStepUnderflow = -1000;
inline constexpr int kMaxSteps = 1000;

/// Integrates from x0 to x1 (x1 > x0).  `observer(x, y)` runs after every
/// accepted step and returns a stop code (0 to continue).
template <std::size_t N, class Rhs, class Observer>
OdeOutcome<N> dopri5(Rhs&& rhs, double x0, std::array<double, N> y0, double x1, const OdeOptions& opt,
                     Observer&& observer) {
  using S = std::array<double, N>;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeOutcome<N> out;
  out.x = x0;
  out.y = y0;
  double h = std::min({opt.h0, opt.hmax, x1 - x0});
  S k1, k2, k3, k4, k5, k6, k7, tmp, ynew;
  auto combo = [&](double hh, std::initializer_list<std::pair<double, const S*>> terms) {
    for (std::size_t i = 0; i < N; ++i) {
      double acc = out.y[i];
      for (const auto& [c, k] : terms) acc += hh * c * (*k)[i];
      tmp[i] = acc;
    }
    return tmp;
  };

  int code = rhs(out.x, out.y, k1);
  if (code > 0) {
    out.code = code;
    return out;
  }
  bool have_k1 = code == 0;
  while (out.x < x1) {
    if (out.stats.accepted + out.stats.rejected >= opt.max_steps) {
      out.code = kMaxSteps;
      return out;
    }
    if (h < opt.hmin) {
      out.code = code < 0 ? code : kStepUnderflow;
      return out;
    }
    const bool last = out.x + h >= x1;
    if (last) h = x1 - out.x;
    if (!have_k1) {
      code = rhs(out.x, out.y, k1);
      if (code > 0) {
        out.code = code;
        return out;
      }
      if (code < 0) {
        out.code = code;  // the current point itself is inadmissible
        return out;
      }
      have_k1 = true;
    }
    code = 0;
    auto stage = [&](double c, const S& y, S& k) {
      if (code != 0) return;
      code = rhs(out.x + c * h, y, k);
    };
    stage(c2, combo(h, {{a21, &k1}}), k2);
    stage(c3, combo(h, {{a31, &k1}, {a32, &k2}}), k3);
    stage(c4, combo(h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), k4);
    stage(c5, combo(h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), k5);
    stage(1.0, combo(h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), k6);
    if (code == 0) ynew = combo(h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    stage(1.0, ynew, k7);
    if (code > 0) {
      out.code = code;
      return out;
    }
    if (code < 0) {
      ++out.stats.rejected;
      h *= 0.5;
      continue;
    }
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.atol + opt.rtol * std::max(std::abs(out.y[i]), std::abs(ynew[i]));
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]) / sc;
      err += ei * ei;
    }
    err = std::sqrt(err / static_cast<double>(N));
    if (err <= 1.0) {
      out.x = last ? x1 : out.x + h;
      out.y = ynew;
      k1 = k7;  // first-same-as-last
      ++out.stats.accepted;
      out.stats.min_step = std::min(out.stats.min_step, h);
      out.stats.max_step = std::max(out.stats.max_step, h);
      if (const int stop = observer(out.x, out.y); stop != 0) {
        out.code = stop;
        return out;
      }
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * fac, opt.hmax);
    } else {
      ++out.stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  return out;
}

template <std::size_t N, class Rhs>
OdeOutcome<N> dopri5(Rhs&& rhs, double x0, std::array<double, N> y0, double x1, const OdeOptions& opt) {
  return dopri5<N>(std::forward<Rhs>(rhs), x0, y0, x1, opt, [](double, const std::array<double, N>&) { return 0; });
}

}  // namespace asym
