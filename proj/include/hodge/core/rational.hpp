#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "hodge/core/error.hpp"

namespace hodge {

using Integer = boost::multiprecision::mpz_int;
/// Arbitrary-precision rational; GMP keeps it reduced with a positive
/// denominator.
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer floor_of(const Rational& q) {
  Integer n = numerator_of(q);
  Integer d = denominator_of(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

/// Fractional part in [0, 1).
inline Rational frac_of(const Rational& q) { return q - Rational(floor_of(q)); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

/// Exact string form: "n" for integers, "n/d" otherwise.
inline std::string format_rational(const Rational& q) {
  if (is_integer(q)) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Error detail for a rejected scalar literal; `position` is a 0-based
/// character offset into the literal.
struct ScalarParseError {
  std::size_t position;
  std::string message;
};

namespace detail {

inline bool parse_integer_token(std::string_view s, std::size_t offset, Integer& out,
                                std::optional<ScalarParseError>& err, bool allow_sign) {
  if (s.empty()) {
    err = ScalarParseError{offset, "expected digits"};
    return false;
  }
  std::size_t i = 0;
  if (s[0] == '-' && allow_sign) i = 1;
  if (i == s.size()) {
    err = ScalarParseError{offset + i, "expected digits after sign"};
    return false;
  }
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      err = ScalarParseError{offset + j, std::string("unexpected character '") + s[j] + "'"};
      return false;
    }
  }
  if (s.size() - i > 1 && s[i] == '0') {
    err = ScalarParseError{offset + i, "leading zero"};
    return false;
  }
  out = Integer(std::string(s));
  return true;
}

}  // namespace detail

/// Parses "n" or "n/d". Rejects zero or negative denominators and
/// non-reduced fractions so that every accepted string is canonical.
inline std::optional<Rational> try_parse_rational(std::string_view s,
                                                  std::optional<ScalarParseError>& err,
                                                  std::size_t offset = 0) {
  auto slash = s.find('/');
  Integer num;
  if (slash == std::string_view::npos) {
    if (!detail::parse_integer_token(s, offset, num, err, true)) return std::nullopt;
    if (num == 0 && s.front() == '-') {
      err = ScalarParseError{offset, "negative zero"};
      return std::nullopt;
    }
    return Rational(num);
  }
  Integer den;
  if (!detail::parse_integer_token(s.substr(0, slash), offset, num, err, true)) return std::nullopt;
  std::string_view dtext = s.substr(slash + 1);
  if (!dtext.empty() && dtext.front() == '-') {
    err = ScalarParseError{offset + slash + 1, "negative denominator"};
    return std::nullopt;
  }
  if (!detail::parse_integer_token(dtext, offset + slash + 1, den, err, false)) return std::nullopt;
  if (den == 0) {
    err = ScalarParseError{offset + slash + 1, "denominator is zero"};
    return std::nullopt;
  }
  if (boost::multiprecision::gcd(num, den) != 1) {
    err = ScalarParseError{offset, "fraction is not reduced"};
    return std::nullopt;
  }
  if (num == 0 && den != 1) {
    err = ScalarParseError{offset, "fraction is not reduced"};
    return std::nullopt;
  }
  return Rational(num, den);
}

inline Rational parse_rational(std::string_view s) {
  std::optional<ScalarParseError> err;
  auto q = try_parse_rational(s, err);
  if (!q) {
    fail(ErrorCode::Parse, "bad rational \"" + std::string(s) + "\" at offset " +
                               std::to_string(err->position) + ": " + err->message);
  }
  return *q;
}

/// a + b i with a, b rational; models the complexification of rational
/// Hodge data.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(int re) : re_(re) {}  // NOLINT: implicit, mirrors Rational
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.norm();
    require(n != 0, ErrorCode::InvalidArgument, "division by zero");
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }
inline Rational conj(const Rational& q) { return q; }

/// "a", "b i", "a+b i" or "a-b i" with exact rational parts.
inline std::string format_gaussian(const GaussianRational& z) {
  if (z.imag() == 0) return format_rational(z.real());
  std::string im = format_rational(z.imag() < 0 ? Rational(-z.imag()) : z.imag()) + " i";
  if (z.real() == 0) return (z.imag() < 0 ? "-" : "") + im;
  return format_rational(z.real()) + (z.imag() < 0 ? "-" : "+") + im;
}

inline GaussianRational parse_gaussian(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    return v;
  };
  s = trim(s);
  if (s.empty() || s.back() != 'i') return GaussianRational(parse_rational(s));
  std::string_view body = trim(s.substr(0, s.size() - 1));
  // split at the last sign that is not leading
  std::size_t split = std::string_view::npos;
  for (std::size_t j = body.size(); j-- > 1;) {
    if (body[j] == '+' || body[j] == '-') {
      split = j;
      break;
    }
  }
  if (split == std::string_view::npos) return {Rational(0), parse_rational(body)};
  Rational re = parse_rational(trim(body.substr(0, split)));
  std::string_view imtext = trim(body.substr(split + 1));
  Rational im = parse_rational(imtext);
  require(im >= 0, ErrorCode::Parse, "bad gaussian rational \"" + std::string(s) + "\"");
  if (body[split] == '-') im = -im;
  return {re, im};
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  return os << format_gaussian(z);
}

/// Textual form used by matrices and documents for either field.
inline std::string format_scalar(const Rational& q) { return format_rational(q); }
inline std::string format_scalar(const GaussianRational& z) { return format_gaussian(z); }

}  // namespace hodge
