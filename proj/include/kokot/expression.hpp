#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "error.hpp"
#include "projective.hpp"

namespace kok {

/**
 * Evaluates closed-form scalars such as "pi/3", "acos(1/4)", "sqrt(14)/14", "-2*sqrt(14)/7".
 * Grammar: sums and products of numbers, pi, inf, parentheses, ^ and the usual functions.
 */
class ExpressionParser {
 public:
  static double evaluate(const std::string& text) {
    ExpressionParser p(text);
    p.skip();
    const double v = p.sum();
    p.skip();
    if (p.pos_ != p.s_.size()) p.fail("unexpected trailing input");
    return v;
  }

 private:
  explicit ExpressionParser(const std::string& s) : s_(s) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::parse, "cannot parse '" + s_ + "': " + why + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    const double b = primary();
    if (eat('^')) return std::pow(b, unary());
    return b;
  }
  double primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id = s_.substr(b, pos_ - b);
      if (id == "pi") return pi;
      if (id == "inf" || id == "infinity") return std::numeric_limits<double>::infinity();
      if (!eat('(')) fail("expected '(' after " + id);
      const double x = sum();
      if (!eat(')')) fail("missing ')'");
      if (id == "sqrt") return std::sqrt(x);
      if (id == "acos") return std::acos(x);
      if (id == "asin") return std::asin(x);
      if (id == "atan") return std::atan(x);
      if (id == "cos") return std::cos(x);
      if (id == "sin") return std::sin(x);
      if (id == "tan") return std::tan(x);
      if (id == "exp") return std::exp(x);
      if (id == "log") return std::log(x);
      fail("unknown function " + id);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

/// Decimal with 17 significant digits.
inline std::string format_decimal(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string ratio_text(long p, long q) {
  const long g = std::gcd(std::abs(p), q);
  p /= g;
  q /= g;
  return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

inline bool is_squarefree(int n) {
  for (int k = 2; k * k <= n; ++k)
    if (n % (k * k) == 0) return false;
  return true;
}

// p sqrt(n)/q for small integers, n = 1 for plain rationals.
inline std::optional<std::string> surd_text(double x, double tol) {
  if (std::abs(x) < tol) return "0";
  for (int n = 1; n <= 60; ++n) {
    if (!is_squarefree(n)) continue;
    const double r = std::sqrt(static_cast<double>(n));
    for (long q = 1; q <= 64; ++q) {
      const double pv = x * q / r;
      const long p = std::lround(pv);
      if (p == 0 || std::abs(p) > 400 || std::abs(pv - p) > tol * q) continue;
      const long g = std::gcd(std::abs(p), q);
      const long pp = p / g, qq = q / g;
      if (n == 1) return ratio_text(pp, qq);
      std::string s = pp == 1 ? "" : pp == -1 ? "-" : std::to_string(pp) + "*";
      s += "sqrt(" + std::to_string(n) + ")";
      if (qq != 1) s += "/" + std::to_string(qq);
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// A short closed form equal to x within tol, when one of the simple shapes fits.
inline std::optional<std::string> closed_form(double x, double tol = 1e-13) {
  if (std::isinf(x)) return "inf";
  for (long q = 1; q <= 12; ++q) {
    const long p = std::lround(x * q / pi);
    if (std::abs(x - p * pi / q) <= tol && p != 0) {
      std::string s = p == 1 ? "pi" : p == -1 ? "-pi" : std::to_string(p) + "*pi";
      if (q != 1) s += "/" + std::to_string(q);
      return s;
    }
  }
  if (auto s = detail::surd_text(x, tol)) return s;
  if (x > 0 && x < pi)
    if (auto s = detail::surd_text(std::cos(x), tol)) return "acos(" + *s + ")";
  if (std::abs(x) < pi / 2)
    if (auto s = detail::surd_text(std::tan(x), tol)) return "atan(" + *s + ")";
  return std::nullopt;
}

/// Scalar that remembers the text it was written as.
struct Scalar {
  double value = 0;
  std::string text;

  static Scalar parse(const std::string& t) { return {ExpressionParser::evaluate(t), t}; }
  static Scalar of(double v, bool try_closed_form = true) {
    if (try_closed_form)
      if (auto s = closed_form(v)) {
        // keep the closed form only if it evaluates back to the same double
        if (std::abs(ExpressionParser::evaluate(*s) - v) <= 1e-15 * std::max(1.0, std::abs(v))) return {v, *s};
      }
    return {v, format_decimal(v)};
  }
};

}  // namespace kok
