#include "asymptotica/series.hpp"

#include <algorithm>

namespace asym {

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

PowerSeriesQ::PowerSeriesQ(Rational constant, int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("PowerSeriesQ: negative order");
  c_.assign(static_cast<std::size_t>(order) + 1, Rational(0));
  c_[0] = std::move(constant);
}

PowerSeriesQ::PowerSeriesQ(std::vector<Rational> coefficients, int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("PowerSeriesQ: negative order");
  coefficients.resize(static_cast<std::size_t>(order) + 1, Rational(0));
  c_ = std::move(coefficients);
}

PowerSeriesQ PowerSeriesQ::variable(int order) {
  PowerSeriesQ s(Rational(0), order);
  if (order >= 1) s.c_[1] = 1;
  return s;
}

int PowerSeriesQ::valuation() const {
  for (int k = 0; k <= order_; ++k)
    if (c_[static_cast<std::size_t>(k)] != 0) return k;
  return order_ + 1;
}

PowerSeriesQ PowerSeriesQ::factor_out(int k) const {
  if (k < 0 || k > order_) throw std::invalid_argument("factor_out: power out of range");
  for (int i = 0; i < k; ++i)
    if (c_[static_cast<std::size_t>(i)] != 0)
      throw NotExact("factor_out: coefficient of t^" + std::to_string(i) + " is " +
                     to_string(c_[static_cast<std::size_t>(i)]) + ", not zero");
  std::vector<Rational> r(c_.begin() + k, c_.end());
  return PowerSeriesQ(std::move(r), order_ - k);
}

PowerSeriesQ PowerSeriesQ::derivative() const {
  if (order_ == 0) return PowerSeriesQ(Rational(0), 0);
  std::vector<Rational> r(static_cast<std::size_t>(order_));
  for (int k = 1; k <= order_; ++k) r[static_cast<std::size_t>(k - 1)] = c_[static_cast<std::size_t>(k)] * k;
  return PowerSeriesQ(std::move(r), order_ - 1);
}

double PowerSeriesQ::evaluate(double t) const {
  double acc = 0.0;
  for (int k = order_; k >= 0; --k) acc = acc * t + c_[static_cast<std::size_t>(k)].convert_to<double>();
  return acc;
}

PowerSeriesQ operator+(const PowerSeriesQ& a, const PowerSeriesQ& b) {
  const int n = std::min(a.order_, b.order_);
  std::vector<Rational> r(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.c_[k] + b.c_[k];
  return PowerSeriesQ(std::move(r), n);
}

PowerSeriesQ operator-(const PowerSeriesQ& a) {
  PowerSeriesQ r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

PowerSeriesQ operator-(const PowerSeriesQ& a, const PowerSeriesQ& b) { return a + (-b); }

PowerSeriesQ operator*(const PowerSeriesQ& a, const PowerSeriesQ& b) {
  const int n = std::min(a.order_, b.order_);
  std::vector<Rational> r(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int i = 0; i <= n; ++i) {
    if (a.c_[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; i + j <= n; ++j)
      r[static_cast<std::size_t>(i + j)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
  }
  return PowerSeriesQ(std::move(r), n);
}

PowerSeriesQ PowerSeriesQ::reciprocal() const {
  if (c_[0] == 0) throw NotExact("division by a series with zero constant term");
  std::vector<Rational> r(c_.size(), Rational(0));
  r[0] = Rational(1) / c_[0];
  for (int k = 1; k <= order_; ++k) {
    Rational acc(0);
    for (int j = 1; j <= k; ++j) acc += c_[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = -acc / c_[0];
  }
  return PowerSeriesQ(std::move(r), order_);
}

PowerSeriesQ operator/(const PowerSeriesQ& a, const PowerSeriesQ& b) { return a * b.reciprocal(); }

PowerSeriesQ pow(const PowerSeriesQ& a, long n) {
  if (n < 0) return pow(a, -n).reciprocal();
  PowerSeriesQ result(Rational(1), a.order_);
  PowerSeriesQ base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

PowerSeriesQ PowerSeriesQ::compose_nilpotent(const std::vector<Rational>& taylor) const {
  if (c_[0] != 0) throw NotExact("transcendental function of a series with nonzero constant term");
  PowerSeriesQ result(taylor[0], order_);
  PowerSeriesQ power(Rational(1), order_);
  for (int k = 1; k <= order_; ++k) {
    power = power * *this;
    PowerSeriesQ term = power;
    for (auto& c : term.c_) c *= taylor[static_cast<std::size_t>(k)];
    result = result + term;
  }
  return result;
}

namespace {

std::vector<Rational> factorial_table(int n, int phase_mod, const std::vector<int>& cycle) {
  std::vector<Rational> t(static_cast<std::size_t>(n) + 1);
  Rational fact(1);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    t[static_cast<std::size_t>(k)] = Rational(cycle[static_cast<std::size_t>(k % phase_mod)]) / fact;
  }
  return t;
}

}  // namespace

PowerSeriesQ sin(const PowerSeriesQ& a) { return a.compose_nilpotent(factorial_table(a.order_, 4, {0, 1, 0, -1})); }
PowerSeriesQ cos(const PowerSeriesQ& a) { return a.compose_nilpotent(factorial_table(a.order_, 4, {1, 0, -1, 0})); }
PowerSeriesQ exp(const PowerSeriesQ& a) { return a.compose_nilpotent(factorial_table(a.order_, 1, {1})); }

PowerSeriesQ sqrt(const PowerSeriesQ& a) {
  // sqrt(1 + h) has rational coefficients; other constant terms need a rational root.
  if (a.c_[0] != 1) throw NotExact("sqrt of a series is exact only for constant term 1");
  PowerSeriesQ h = a;
  h.c_[0] = 0;
  std::vector<Rational> t(static_cast<std::size_t>(a.order_) + 1);
  Rational binom(1);
  for (int k = 0; k <= a.order_; ++k) {
    t[static_cast<std::size_t>(k)] = binom;
    binom *= (Rational(1, 2) - k) / (k + 1);
  }
  return h.compose_nilpotent(t);
}

}  // namespace asym
