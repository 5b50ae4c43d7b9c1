#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <ostream>

#include "error.hpp"

namespace kok {

using Rational = boost::multiprecision::cpp_rational;

/**
 * Element a + b sqrt(d) of the quadratic field Q[sqrt(d)], d a positive non-square.
 * d == 0 marks a plain rational that adopts the radicand of whatever it meets.
 */
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(int v) : a_(v) {}  // NOLINT: literals in templated formulas
  QuadSurd(Rational a) : a_(std::move(a)) {}  // NOLINT
  QuadSurd(Rational a, Rational b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(b_ == 0 ? 0 : d) {
    if (d_ < 0) throw Error(ErrorKind::precondition, "radicand must be positive");
  }

  static QuadSurd sqrt_of(std::int64_t d) { return QuadSurd(Rational(0), Rational(1), d); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t radicand() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }

  double to_double() const {
    return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(static_cast<double>(d_));
  }

  QuadSurd operator-() const { return QuadSurd(-a_, -b_, d_); }

  friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
    return QuadSurd(x.a_ + y.a_, x.b_ + y.b_, join(x, y));
  }
  friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) {
    return QuadSurd(x.a_ - y.a_, x.b_ - y.b_, join(x, y));
  }
  friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
    const std::int64_t d = join(x, y);
    return QuadSurd(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) {
    const std::int64_t d = join(x, y);
    const Rational den = y.a_ * y.a_ - y.b_ * y.b_ * d;
    if (den == 0) throw Error(ErrorKind::pole, "division by zero in Q[sqrt d]");
    const QuadSurd conj(y.a_, -y.b_, d);
    QuadSurd num = x * conj;
    return QuadSurd(num.a_ / den, num.b_ / den, d);
  }
  QuadSurd& operator+=(const QuadSurd& y) { return *this = *this + y; }
  QuadSurd& operator-=(const QuadSurd& y) { return *this = *this - y; }
  QuadSurd& operator*=(const QuadSurd& y) { return *this = *this * y; }

  friend bool operator==(const QuadSurd& x, const QuadSurd& y) { return (x - y).is_zero(); }

  friend std::ostream& operator<<(std::ostream& os, const QuadSurd& x) {
    os << x.a_;
    if (x.b_ != 0) os << " + (" << x.b_ << ")*sqrt(" << x.d_ << ")";
    return os;
  }

 private:
  static std::int64_t join(const QuadSurd& x, const QuadSurd& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
    throw Error(ErrorKind::precondition, "mixing different quadratic fields");
  }

  Rational a_{0}, b_{0};
  std::int64_t d_ = 0;
};

inline double to_double(double x) { return x; }
inline double to_double(const QuadSurd& x) { return x.to_double(); }

}  // namespace kok
