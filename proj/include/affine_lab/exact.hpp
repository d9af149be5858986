#pragma once

// Exact arithmetic in the field Q(i)(T) where T stands for 2*pi*i.
//
// pi is transcendental, so T is transcendental over Q(i) and two elements of
// Q(i)(T) are equal as complex numbers iff they are equal as rational
// functions. That makes every equality and integrality test below decidable
// without a tolerance. Complex conjugation maps T to -T.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace affine_lab {

struct GaussRational {
  mpq_class re{0};
  mpq_class im{0};

  GaussRational() = default;
  GaussRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussRational(long r) : re(r), im(0) {}

  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  [[nodiscard]] GaussRational conj() const { return {re, -im}; }
  [[nodiscard]] mpq_class norm() const { return re * re + im * im; }
  [[nodiscard]] std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  [[nodiscard]] std::string to_string() const;

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  // Throws DomainError on division by zero.
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b);
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// Polynomial in T with Gaussian-rational coefficients, lowest degree first.
// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
class TPolynomial {
 public:
  TPolynomial() = default;
  TPolynomial(GaussRational constant);
  explicit TPolynomial(std::vector<GaussRational> coeffs);

  static TPolynomial t() { return TPolynomial({GaussRational{0}, GaussRational{1}}); }

  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const std::vector<GaussRational>& coeffs() const { return coeffs_; }
  [[nodiscard]] const GaussRational& leading() const { return coeffs_.back(); }

  [[nodiscard]] TPolynomial conj() const;
  [[nodiscard]] std::complex<double> evaluate() const;
  [[nodiscard]] TPolynomial scaled(const GaussRational& c) const;

  friend TPolynomial operator+(const TPolynomial& a, const TPolynomial& b);
  friend TPolynomial operator-(const TPolynomial& a, const TPolynomial& b);
  friend TPolynomial operator-(const TPolynomial& a);
  friend TPolynomial operator*(const TPolynomial& a, const TPolynomial& b);
  friend bool operator==(const TPolynomial& a, const TPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  // Euclidean division; divisor must be nonzero.
  static void divmod(const TPolynomial& a, const TPolynomial& b, TPolynomial& q, TPolynomial& r);
  // Monic gcd (zero iff both inputs are zero).
  static TPolynomial gcd(TPolynomial a, TPolynomial b);

  [[nodiscard]] std::string to_string() const;

 private:
  void trim();
  std::vector<GaussRational> coeffs_;
};

// Element of Q(i)(T) in canonical lowest terms: gcd(num, den) = 1, den monic.
class ExactValue {
 public:
  ExactValue() : num_(), den_(GaussRational{1}) {}
  ExactValue(GaussRational c) : num_(std::move(c)), den_(GaussRational{1}) { canonicalize(); }
  ExactValue(TPolynomial num, TPolynomial den);

  static ExactValue two_pi_i() { return ExactValue(TPolynomial::t(), TPolynomial(GaussRational{1})); }

  [[nodiscard]] const TPolynomial& num() const { return num_; }
  [[nodiscard]] const TPolynomial& den() const { return den_; }

  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  // True when the value does not involve T.
  [[nodiscard]] bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  // Gaussian-rational value, if constant.
  [[nodiscard]] std::optional<GaussRational> constant() const;
  // Rational value, if constant and real.
  [[nodiscard]] std::optional<mpq_class> rational() const;
  // Integer value, if a rational integer.
  [[nodiscard]] std::optional<mpz_class> integer() const;

  [[nodiscard]] ExactValue conj() const;
  [[nodiscard]] ExactValue real_part() const;
  [[nodiscard]] ExactValue imag_part() const;
  [[nodiscard]] std::complex<double> to_complex() const;
  [[nodiscard]] std::string to_string() const;

  friend ExactValue operator+(const ExactValue& a, const ExactValue& b);
  friend ExactValue operator-(const ExactValue& a, const ExactValue& b);
  friend ExactValue operator-(const ExactValue& a);
  friend ExactValue operator*(const ExactValue& a, const ExactValue& b);
  friend ExactValue operator/(const ExactValue& a, const ExactValue& b);
  friend bool operator==(const ExactValue& a, const ExactValue& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void canonicalize();
  TPolynomial num_;
  TPolynomial den_;
};

}  // namespace affine_lab
