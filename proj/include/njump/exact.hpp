#pragma once

// Exact numbers: GMP rationals and quadratic irrationals a + b*sqrt(d).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace njump {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when a computation leaves the field Q(sqrt(d)) of its operands,
/// e.g. adding values with different radicands or taking the square root
/// of an irrational that is not a perfect square in its field.
class NotQuadratic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
Rational make_rational(long num, long den = 1);

/// n = k^2 * m with m square-free; returns {k, m}. n must be >= 0. Throws
/// NotQuadratic when a large cofactor without small prime factors cannot be
/// certified square-free.
std::pair<Integer, Integer> squarefree_decompose(const Integer& n);

class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(const Rational& r) : a_(r) {}  // NOLINT(google-explicit-constructor)
  ExactReal(long v) : a_(v) {}             // NOLINT(google-explicit-constructor)

  /// a + b*sqrt(d) in canonical form: square factors of d move into b and the
  /// result collapses to a rational when b == 0 or d is a perfect square.
  static ExactReal canonicalize(const Rational& a, const Rational& b, const Integer& d);
  static ExactReal sqrt(const Rational& r);

  bool is_rational() const { return radicand_ == 0; }
  const Rational& rational_part() const { return a_; }
  const Rational& radical_coeff() const { return b_; }
  /// 0 for rationals, otherwise the square-free radicand (>= 2).
  const Integer& radicand() const { return radicand_; }
  /// Throws if the value is irrational.
  const Rational& as_rational() const;

  int sign() const;
  double to_double() const;

  ExactReal operator-() const;
  friend ExactReal operator+(const ExactReal& x, const ExactReal& y);
  friend ExactReal operator-(const ExactReal& x, const ExactReal& y);
  friend ExactReal operator*(const ExactReal& x, const ExactReal& y);
  friend ExactReal operator/(const ExactReal& x, const ExactReal& y);
  ExactReal& operator+=(const ExactReal& o) { return *this = *this + o; }
  ExactReal& operator-=(const ExactReal& o) { return *this = *this - o; }
  ExactReal& operator*=(const ExactReal& o) { return *this = *this * o; }
  ExactReal& operator/=(const ExactReal& o) { return *this = *this / o; }

  /// Canonical forms are unique, so structural equality is value equality.
  friend bool operator==(const ExactReal& x, const ExactReal& y) {
    return x.radicand_ == y.radicand_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const ExactReal& x, const ExactReal& y);

 private:
  // a + b*sqrt(d) with d already square-free (or 0).
  static ExactReal in_field(Rational a, Rational b, const Integer& d);

  Rational a_{0};
  Rational b_{0};
  Integer radicand_{0};
};

enum class Ordering { less, equal, greater };

/// Exact comparison; values with different radicands are resolved by sign
/// analysis with repeated squaring.
Ordering compare(const ExactReal& x, const ExactReal& y);

/// Exact sign of a sum of quadratic irrationals carrying up to three distinct
/// radicands. Throws NotQuadratic beyond that.
int sign_of_sum(std::span<const ExactReal> terms);

/// Square root inside the field of x (denesting sqrt(A + B*sqrt(d)) when it
/// is a perfect square there). nullopt when the root leaves the field.
/// Throws std::domain_error for negative x.
std::optional<ExactReal> try_sqrt(const ExactReal& x);
ExactReal sqrt_exact(const ExactReal& x);

Integer floor(const ExactReal& x);
Integer ceil(const ExactReal& x);

ExactReal min(const ExactReal& x, const ExactReal& y);
ExactReal max(const ExactReal& x, const ExactReal& y);

/// "p/q", "p", or "p/q + r/s*sqrt(d)" (with "-", and the coefficient omitted
/// when it is 1).
std::string to_string(const ExactReal& x);
ExactReal parse_exact(std::string_view text);

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

}  // namespace njump
