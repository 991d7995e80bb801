#include "asymptotica/jet.hpp"

#include <algorithm>
#include <vector>

namespace asym {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

JetShape common_shape(JetShape a, JetShape b) {
  return {std::min(a.x_order, b.x_order), std::min(a.yz_order, b.yz_order)};
}

Jet::Jet(double value, JetShape shape) : shape_(shape) {
  if (shape.x_order < 0 || shape.yz_order < 0) throw std::invalid_argument("Jet: negative order");
  if (size_of(shape) > kCapacity) throw std::length_error("Jet: shape exceeds capacity");
  c_[0] = value;
}

Jet Jet::variable(Slot slot, double base, JetShape shape) {
  Jet j(base, shape);
  switch (slot) {
    case Slot::x:
      if (shape.x_order >= 1) j.set_coeff(1, 0, 0, 1.0);
      break;
    case Slot::y:
      if (shape.yz_order >= 1) j.set_coeff(0, 1, 0, 1.0);
      break;
    case Slot::z:
      if (shape.yz_order >= 1) j.set_coeff(0, 0, 1, 1.0);
      break;
  }
  return j;
}

double Jet::coeff(int i, int j, int k) const {
  return in_shape(i, j, k) ? c_[index(i, j, k)] : 0.0;
}

void Jet::set_coeff(int i, int j, int k, double v) {
  if (!in_shape(i, j, k)) throw std::out_of_range("Jet::set_coeff outside shape");
  c_[index(i, j, k)] = v;
}

double Jet::partial(int i, int j, int k) const {
  if (!in_shape(i, j, k)) throw std::out_of_range("Jet::partial: order not carried by this jet");
  return c_[index(i, j, k)] * factorial(i) * factorial(j) * factorial(k);
}

Jet Jet::derivative(Slot slot) const {
  JetShape s = shape_;
  if (slot == Slot::x) {
    if (s.x_order == 0) throw std::out_of_range("Jet::derivative: no x order left");
    --s.x_order;
  } else {
    if (s.yz_order == 0) throw std::out_of_range("Jet::derivative: no y/z order left");
    --s.yz_order;
  }
  Jet r(0.0, s);
  for (int i = 0; i <= s.x_order; ++i)
    for (int d = 0; d <= s.yz_order; ++d)
      for (int k = 0; k <= d; ++k) {
        const int j = d - k;
        double v = 0.0;
        switch (slot) {
          case Slot::x: v = (i + 1) * coeff(i + 1, j, k); break;
          case Slot::y: v = (j + 1) * coeff(i, j + 1, k); break;
          case Slot::z: v = (k + 1) * coeff(i, j, k + 1); break;
        }
        r.c_[r.index(i, j, k)] = v;
      }
  return r;
}

Jet Jet::lift_yz(int yz_order) const {
  Jet r(0.0, {shape_.x_order, yz_order});
  for (int i = 0; i <= shape_.x_order; ++i) r.c_[r.index(i, 0, 0)] = coeff(i, 0, 0);
  // Transverse coefficients of the source are carried along when present.
  for (int i = 0; i <= shape_.x_order; ++i)
    for (int d = 1; d <= std::min(yz_order, shape_.yz_order); ++d)
      for (int k = 0; k <= d; ++k) r.c_[r.index(i, d - k, k)] = coeff(i, d - k, k);
  return r;
}

Jet Jet::truncate(JetShape s) const {
  Jet r(0.0, common_shape(s, shape_));
  for (int i = 0; i <= r.shape_.x_order; ++i)
    for (int d = 0; d <= r.shape_.yz_order; ++d)
      for (int k = 0; k <= d; ++k) r.c_[r.index(i, d - k, k)] = coeff(i, d - k, k);
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.shape_ != shape_) *this = truncate(o.shape_);
  for (int i = 0; i <= shape_.x_order; ++i)
    for (int d = 0; d <= shape_.yz_order; ++d)
      for (int k = 0; k <= d; ++k) c_[index(i, d - k, k)] += o.coeff(i, d - k, k);
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.shape_ != shape_) *this = truncate(o.shape_);
  for (int i = 0; i <= shape_.x_order; ++i)
    for (int d = 0; d <= shape_.yz_order; ++d)
      for (int k = 0; k <= d; ++k) c_[index(i, d - k, k)] -= o.coeff(i, d - k, k);
  return *this;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}
Jet& Jet::operator-=(double s) {
  c_[0] -= s;
  return *this;
}
Jet& Jet::operator*=(double s) {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) c_[i] *= s;
  return *this;
}
Jet& Jet::operator/=(double s) {
  if (s == 0.0) throw DomainError("division by zero");
  return *this *= 1.0 / s;
}

Jet operator-(const Jet& a) {
  Jet r = a;
  r *= -1.0;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  const JetShape s = common_shape(a.shape_, b.shape_);
  Jet r(0.0, s);
  const int nx = s.x_order;
  const int nyz = s.yz_order;
  for (int i1 = 0; i1 <= nx; ++i1)
    for (int d1 = 0; d1 <= nyz; ++d1)
      for (int k1 = 0; k1 <= d1; ++k1) {
        const double av = a.coeff(i1, d1 - k1, k1);
        if (av == 0.0) continue;
        for (int i2 = 0; i2 <= nx - i1; ++i2)
          for (int d2 = 0; d2 <= nyz - d1; ++d2)
            for (int k2 = 0; k2 <= d2; ++k2) {
              const double bv = b.coeff(i2, d2 - k2, k2);
              if (bv == 0.0) continue;
              r.c_[r.index(i1 + i2, d1 + d2 - k1 - k2, k1 + k2)] += av * bv;
            }
      }
  return r;
}

template <class Coefficients>
Jet Jet::compose(const Coefficients& taylor) const {
  Jet h = *this;
  h.c_[0] = 0.0;
  Jet result(taylor[0], shape_);
  Jet power(1.0, shape_);
  const int n = nilpotency();
  for (int k = 1; k <= n; ++k) {
    power = power * h;
    Jet term = power;
    term *= taylor[static_cast<std::size_t>(k)];
    result += term;
  }
  return result;
}

Jet reciprocal(const Jet& a) {
  const double c0 = a.value();
  if (c0 == 0.0) throw DomainError("division by zero");
  const int n = a.nilpotency();
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  double p = 1.0 / c0;
  for (int k = 0; k <= n; ++k) {
    t[static_cast<std::size_t>(k)] = p;
    p *= -1.0 / c0;
  }
  return a.compose(t);
}

Jet sqrt(const Jet& a) {
  const double c0 = a.value();
  if (c0 < 0.0) throw DomainError("sqrt of a negative value");
  if (c0 == 0.0) {
    if (a.nilpotency() == 0) return Jet(0.0, a.shape());
    throw DomainError("sqrt is not differentiable at zero");
  }
  const int n = a.nilpotency();
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  // binom(1/2, k) c0^(1/2 - k)
  double binom = 1.0;
  const double root = std::sqrt(c0);
  double scale = root;
  for (int k = 0; k <= n; ++k) {
    t[static_cast<std::size_t>(k)] = binom * scale;
    binom *= (0.5 - k) / (k + 1);
    scale /= c0;
  }
  return a.compose(t);
}

Jet exp(const Jet& a) {
  const int n = a.nilpotency();
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  const double e0 = std::exp(a.value());
  for (int k = 0; k <= n; ++k) t[static_cast<std::size_t>(k)] = e0 / factorial(k);
  return a.compose(t);
}

Jet sin(const Jet& a) {
  const int n = a.nilpotency();
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const std::array<double, 4> cycle{s, c, -s, -c};
  for (int k = 0; k <= n; ++k) t[static_cast<std::size_t>(k)] = cycle[static_cast<std::size_t>(k % 4)] / factorial(k);
  return a.compose(t);
}

Jet cos(const Jet& a) {
  const int n = a.nilpotency();
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const std::array<double, 4> cycle{c, -s, -c, s};
  for (int k = 0; k <= n; ++k) t[static_cast<std::size_t>(k)] = cycle[static_cast<std::size_t>(k % 4)] / factorial(k);
  return a.compose(t);
}

Jet pow(const Jet& a, long n) {
  if (n < 0) return reciprocal(pow(a, -n));
  Jet result(1.0, a.shape());
  Jet base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace asym
