#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "affine_lab/exact.hpp"

namespace affine_lab {

/// A complex scalar carried on one of two tracks.
///
/// The exact track holds an element of Q(i)(2*pi*i) in lowest terms; it is
/// closed under + - * / and conjugation. The approximate track holds a finite
/// double-precision complex number. Any operation that mixes the two, or that
/// needs a transcendental function (log, abs, sqrt), lands on the approximate
/// track.
class ComplexValue {
 public:
  ComplexValue() : rep_(ExactValue{}) {}
  ComplexValue(ExactValue v) : rep_(std::move(v)) {}
  ComplexValue(GaussRational v) : rep_(ExactValue(std::move(v))) {}
  ComplexValue(long v) : rep_(ExactValue(GaussRational{v})) {}
  ComplexValue(int v) : ComplexValue(static_cast<long>(v)) {}

  static ComplexValue rational(long num, long den = 1, long im_num = 0, long im_den = 1);
  static ComplexValue two_pi_i() { return ComplexValue(ExactValue::two_pi_i()); }
  // pi itself: (2 pi i) / (2 i).
  static ComplexValue pi();
  // Throws DomainError unless both parts are finite.
  static ComplexValue approx(std::complex<double> v);
  static ComplexValue approx(double re, double im = 0.0) { return approx({re, im}); }

  [[nodiscard]] bool is_exact() const { return std::holds_alternative<ExactValue>(rep_); }
  [[nodiscard]] const ExactValue* exact() const { return std::get_if<ExactValue>(&rep_); }
  // Exact and involving 2*pi*i symbolically.
  [[nodiscard]] bool involves_two_pi_i() const;

  [[nodiscard]] std::complex<double> value() const;
  [[nodiscard]] double re() const { return value().real(); }
  [[nodiscard]] double im() const { return value().imag(); }
  [[nodiscard]] double abs() const { return std::abs(value()); }

  [[nodiscard]] ComplexValue conj() const;
  [[nodiscard]] ComplexValue real_part() const;
  [[nodiscard]] ComplexValue imag_part() const;
  [[nodiscard]] ComplexValue to_approx() const { return approx(value()); }

  // Exactly zero on the exact track; == 0.0 on the approximate one.
  [[nodiscard]] bool is_zero() const;
  // Exact rational integer, if any.
  [[nodiscard]] std::optional<mpz_class> exact_integer() const;
  [[nodiscard]] std::optional<mpq_class> exact_rational() const;

  [[nodiscard]] std::string to_string() const;

  friend ComplexValue operator+(const ComplexValue& a, const ComplexValue& b);
  friend ComplexValue operator-(const ComplexValue& a, const ComplexValue& b);
  friend ComplexValue operator-(const ComplexValue& a);
  friend ComplexValue operator*(const ComplexValue& a, const ComplexValue& b);
  // Throws DomainError on (exact or approximate) zero divisor.
  friend ComplexValue operator/(const ComplexValue& a, const ComplexValue& b);

  // Structural identity: same track and same value.
  friend bool operator==(const ComplexValue& a, const ComplexValue& b) { return a.rep_ == b.rep_; }

 private:
  std::variant<ExactValue, std::complex<double>> rep_;
};

ComplexValue operator*(long k, const ComplexValue& a);

}  // namespace affine_lab
