#pragma once

// Linearized first-return map along a closed asymptotic line y = z = 0:
//   Q' = M(x) Q,  Q(0) = I,  dP(0,0) = Q(l).

#include "asymptotica/flow.hpp"
#include "asymptotica/tubular.hpp"

#include <array>
#include <complex>
#include <functional>

namespace asym {

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 inverse(const Mat2& a);

/// Entries from the jet pipeline at (x, 0, 0):
///   row 1: -e_y / 2f, -e_z / 2f
///   row 2: A_y + B m11, A_z + B m12
/// The B terms carry the coupling dz' = ... + B dy'; they vanish when b(x,0,0) = 0.
/// Throws ParabolicOnCurve where f(x,0,0) = 0.
Mat2 variational_matrix(const ChartField& field, double x);

/// Closed-form eigenvalues of a real 2x2 matrix.
std::array<std::complex<double>, 2> eigenvalues(const Mat2& m);

inline constexpr double kHyperbolicTol = 1e-6;

struct MonodromyOptions {
  OdeOptions ode;
  double hyperbolic_tol = kHyperbolicTol;
  bool quadrature = true;      // also integrate the diagonal by Gauss-Kronrod
  double quadrature_tol = 1e-10;
};

struct MonodromyResult {
  Mat2 Q{};
  std::array<std::complex<double>, 2> eigenvalues{};
  std::array<double, 2> modulus_gap{};  // | |lambda_i| - 1 |
  double hyperbolic_tol = kHyperbolicTol;
  bool hyperbolic = false;
  double period = 0.0;
  double trace_integral = 0.0;                 // from the ODE route
  std::array<double, 2> diagonal_ode{};        // int m11, int m22 (ODE route)
  std::array<double, 2> diagonal_quadrature{}; // same integrals by adaptive quadrature
  bool quadrature_done = false;
  double liouville_rel_error = 0.0;            // |det Q - exp(int tr M)| / exp(int tr M)
  double max_liouville_checkpoint_error = 0.0; // same at 16 interior checkpoints
  OdeStats stats;
};

/// Classification of a given return-map derivative.
void classify_monodromy(MonodromyResult& r, double tol);

MonodromyResult monodromy(const std::function<Mat2(double)>& M, double period, const MonodromyOptions& opt = {});
MonodromyResult monodromy(const ChartField& field, double period, const MonodromyOptions& opt = {});

/// Adaptive Gauss-Kronrod (15-point) quadrature.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

/// Central-difference Jacobian of the return map at (0, 0) from four flow
/// integrations starting at (+-h, 0) and (0, +-h).
Mat2 fd_poincare_derivative(const BinarySystem& system, double x0, double period, double h,
                            const FlowOptions& opt = {});

}  // namespace asym
