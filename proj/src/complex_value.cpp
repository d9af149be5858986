#include "affine_lab/complex_value.hpp"

#include <cmath>
#include <cstdio>

#include "affine_lab/errors.hpp"

namespace affine_lab {

ComplexValue ComplexValue::rational(long num, long den, long im_num, long im_den) {
  if (den == 0 || im_den == 0) throw DomainError("zero denominator");
  mpq_class re(num, den);
  mpq_class im(im_num, im_den);
  re.canonicalize();
  im.canonicalize();
  return ComplexValue(GaussRational{re, im});
}

ComplexValue ComplexValue::pi() {
  return ComplexValue(ExactValue::two_pi_i() / ExactValue(GaussRational{0, 2}));
}

ComplexValue ComplexValue::approx(std::complex<double> v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw DomainError("non-finite complex value");
  ComplexValue out;
  out.rep_ = v;
  return out;
}

bool ComplexValue::involves_two_pi_i() const {
  const auto* e = exact();
  return e != nullptr && !e->is_constant();
}

std::complex<double> ComplexValue::value() const {
  if (const auto* e = exact()) return e->to_complex();
  return std::get<std::complex<double>>(rep_);
}

ComplexValue ComplexValue::conj() const {
  if (const auto* e = exact()) return ComplexValue(e->conj());
  return approx(std::conj(value()));
}

ComplexValue ComplexValue::real_part() const {
  if (const auto* e = exact()) return ComplexValue(e->real_part());
  return approx(value().real(), 0.0);
}

ComplexValue ComplexValue::imag_part() const {
  if (const auto* e = exact()) return ComplexValue(e->imag_part());
  return approx(value().imag(), 0.0);
}

bool ComplexValue::is_zero() const {
  if (const auto* e = exact()) return e->is_zero();
  return value() == std::complex<double>{0.0, 0.0};
}

std::optional<mpz_class> ComplexValue::exact_integer() const {
  if (const auto* e = exact()) return e->integer();
  return std::nullopt;
}

std::optional<mpq_class> ComplexValue::exact_rational() const {
  if (const auto* e = exact()) return e->rational();
  return std::nullopt;
}

std::string ComplexValue::to_string() const {
  if (const auto* e = exact()) return e->to_string();
  const auto v = value();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b) {
  if (a.is_exact() && b.is_exact()) return ComplexValue(*a.exact() + *b.exact());
  return ComplexValue::approx(a.value() + b.value());
}

ComplexValue operator-(const ComplexValue& a, const ComplexValue& b) {
  if (a.is_exact() && b.is_exact()) return ComplexValue(*a.exact() - *b.exact());
  return ComplexValue::approx(a.value() - b.value());
}

ComplexValue operator-(const ComplexValue& a) {
  if (a.is_exact()) return ComplexValue(-*a.exact());
  return ComplexValue::approx(-a.value());
}

ComplexValue operator*(const ComplexValue& a, const ComplexValue& b) {
  if (a.is_exact() && b.is_exact()) return ComplexValue(*a.exact() * *b.exact());
  return ComplexValue::approx(a.value() * b.value());
}

ComplexValue operator/(const ComplexValue& a, const ComplexValue& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (a.is_exact() && b.is_exact()) return ComplexValue(*a.exact() / *b.exact());
  return ComplexValue::approx(a.value() / b.value());
}

ComplexValue operator*(long k, const ComplexValue& a) { return ComplexValue(k) * a; }

}  // namespace affine_lab
