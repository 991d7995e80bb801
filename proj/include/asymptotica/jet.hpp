#pragma once

// Truncated multivariate Taylor jets in three slots (x, y, z).
//
// A jet stores the Taylor coefficients c[i][j][k] of a function around a base
// point, multiplying dx^i dy^j dz^k.  The kept monomials are
//   i <= x_order  and  j + k <= yz_order,
// which is a lower set, so truncated multiplication is an exact ring operation
// in the quotient by the complementary monomial ideal.  The anisotropic shape
// matters: the tubular pipeline needs several x-derivatives of the frame but
// only first or second order in the transverse chart coordinates.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace asym {

struct JetShape {
  int x_order = 0;
  int yz_order = 0;

  friend bool operator==(const JetShape&, const JetShape&) = default;
};

enum class Slot { x = 0, y = 1, z = 2 };

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Jet {
 public:
  static constexpr std::size_t kCapacity = 120;

  Jet() : Jet(0.0, JetShape{}) {}
  explicit Jet(double value, JetShape shape = {});

  /// The independent variable `slot` at `base`, i.e. base + d(slot).
  static Jet variable(Slot slot, double base, JetShape shape);

  JetShape shape() const { return shape_; }
  double value() const { return c_[0]; }

  /// Coefficient of dx^i dy^j dz^k (zero outside the shape).
  double coeff(int i, int j, int k) const;
  void set_coeff(int i, int j, int k, double v);

  /// Partial derivative d^(i+j+k) / dx^i dy^j dz^k at the base point.
  double partial(int i, int j, int k) const;

  /// Derivative with respect to one slot; the corresponding order drops by one.
  Jet derivative(Slot slot) const;

  /// Same function viewed in a larger transverse order (valid only for
  /// functions that do not depend on y, z).
  Jet lift_yz(int yz_order) const;

  /// Drop monomials outside `shape` (shape must not exceed the current one).
  Jet truncate(JetShape shape) const;

  /// Restriction to dy = dz = 0.
  Jet restrict_x() const { return truncate({shape_.x_order, 0}); }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);
  Jet& operator/=(double s);

  friend Jet operator-(const Jet& a);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return -a + s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a /= s; }
  friend Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }

  friend Jet reciprocal(const Jet& a);
  friend Jet sqrt(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);
  friend Jet pow(const Jet& a, long n);

  std::size_t size() const { return size_of(shape_); }

 private:
  static std::size_t tri_size(int yz_order) {
    return static_cast<std::size_t>((yz_order + 1) * (yz_order + 2) / 2);
  }
  static std::size_t size_of(JetShape s) {
    return static_cast<std::size_t>(s.x_order + 1) * tri_size(s.yz_order);
  }
  static std::size_t tri_index(int j, int k) {
    const int d = j + k;
    return static_cast<std::size_t>(d * (d + 1) / 2 + k);
  }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) * tri_size(shape_.yz_order) + tri_index(j, k);
  }
  bool in_shape(int i, int j, int k) const {
    return i >= 0 && j >= 0 && k >= 0 && i <= shape_.x_order && j + k <= shape_.yz_order;
  }

  // f(c0 + h) = sum_k taylor[k] h^k, with h the non-constant part of *this.
  template <class Coefficients>
  Jet compose(const Coefficients& taylor) const;
  int nilpotency() const { return shape_.x_order + shape_.yz_order; }

  JetShape shape_;
  std::array<double, kCapacity> c_{};
};

Jet reciprocal(const Jet& a);
Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet pow(const Jet& a, long n);

JetShape common_shape(JetShape a, JetShape b);

// Scalar-only fallbacks so generic code can call value() on doubles too.
inline double value_of(double v) { return v; }
inline double value_of(const Jet& j) { return j.value(); }

}  // namespace asym
