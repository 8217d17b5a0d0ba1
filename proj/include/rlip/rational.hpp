#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace rlip {

/// Exact rational scalar. GMP keeps every value canonical (lowest terms,
/// positive denominator) after each arithmetic operation.
using Rational = mpq_class;
using Vec = std::vector<Rational>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepts "p", "p/q" and positional decimals such as "-1.25" (converted
/// exactly). Exponent notation is rejected. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Comma-separated list of rationals, e.g. "-1,1/2,0.25".
Vec parse_vector(std::string_view text);
std::string to_string(const Vec& v);

Rational dot(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec scale(const Rational& s, const Vec& v);
bool is_zero(const Vec& v);

/// Divides by the gcd of numerators after clearing denominators, so the
/// result is a primitive integer vector with the same direction.
Vec primitive(const Vec& v);

/// Rational extended by -inf and +inf. Suprema over empty sets are NegInf,
/// infima over empty sets are PosInf.
class ExtendedValue {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtendedValue() : kind_(Kind::NegInf) {}
  static ExtendedValue neg_inf() { return ExtendedValue(Kind::NegInf, 0); }
  static ExtendedValue pos_inf() { return ExtendedValue(Kind::PosInf, 0); }
  static ExtendedValue finite(Rational q) { return ExtendedValue(Kind::Finite, std::move(q)); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  /// Precondition: is_finite().
  const Rational& value() const;

  /// Multiplication by a positive rational.
  ExtendedValue scaled(const Rational& alpha) const;

  friend bool operator==(const ExtendedValue& a, const ExtendedValue& b);
  friend std::strong_ordering operator<=>(const ExtendedValue& a, const ExtendedValue& b);

 private:
  ExtendedValue(Kind k, Rational q) : kind_(k), value_(std::move(q)) {}
  Kind kind_;
  Rational value_;
};

std::string to_string(const ExtendedValue& v);

}  // namespace rlip
