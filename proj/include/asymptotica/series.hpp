#pragma once

// Exact truncated power series in one variable with rational coefficients.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace asym {

using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);

class NotExact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_{k <= order} c_k t^k + O(t^(order+1)).
class PowerSeriesQ {
 public:
  PowerSeriesQ() = default;
  PowerSeriesQ(Rational constant, int order);
  PowerSeriesQ(std::vector<Rational> coefficients, int order);

  /// The variable t itself, truncated at `order`.
  static PowerSeriesQ variable(int order);

  int order() const { return order_; }
  const Rational& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  const std::vector<Rational>& coefficients() const { return c_; }

  /// Index of the first nonzero coefficient, or order()+1 if all vanish.
  int valuation() const;

  /// Divides by t^k; throws NotExact unless the first k coefficients are exactly zero.
  PowerSeriesQ factor_out(int k) const;

  PowerSeriesQ derivative() const;
  double evaluate(double t) const;

  friend PowerSeriesQ operator+(const PowerSeriesQ& a, const PowerSeriesQ& b);
  friend PowerSeriesQ operator-(const PowerSeriesQ& a, const PowerSeriesQ& b);
  friend PowerSeriesQ operator-(const PowerSeriesQ& a);
  friend PowerSeriesQ operator*(const PowerSeriesQ& a, const PowerSeriesQ& b);
  /// Division by a unit (nonzero constant term).
  friend PowerSeriesQ operator/(const PowerSeriesQ& a, const PowerSeriesQ& b);
  friend PowerSeriesQ pow(const PowerSeriesQ& a, long n);

  // Transcendental functions are exact only for a vanishing constant term.
  friend PowerSeriesQ sin(const PowerSeriesQ& a);
  friend PowerSeriesQ cos(const PowerSeriesQ& a);
  friend PowerSeriesQ exp(const PowerSeriesQ& a);
  friend PowerSeriesQ sqrt(const PowerSeriesQ& a);

  friend bool operator==(const PowerSeriesQ& a, const PowerSeriesQ& b) {
    return a.order_ == b.order_ && a.c_ == b.c_;
  }

 private:
  PowerSeriesQ reciprocal() const;
  PowerSeriesQ compose_nilpotent(const std::vector<Rational>& taylor) const;

  std::vector<Rational> c_{Rational(0)};
  int order_ = 0;
};

PowerSeriesQ pow(const PowerSeriesQ& a, long n);
PowerSeriesQ sin(const PowerSeriesQ& a);
PowerSeriesQ cos(const PowerSeriesQ& a);
PowerSeriesQ exp(const PowerSeriesQ& a);
PowerSeriesQ sqrt(const PowerSeriesQ& a);

}  // namespace asym
