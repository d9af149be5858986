#include "affine_lab/arithmetic.hpp"

#include <cmath>
#include <numbers>

#include "affine_lab/errors.hpp"

namespace affine_lab {

Tolerance::Tolerance(double eps) : eps_(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvariantError("tolerance must be a positive finite number");
}

double round_half_even(double x) {
  const double r = std::round(x);  // ties away from zero
  if (std::abs(x - std::trunc(x)) == 0.5) return 2.0 * std::round(x / 2.0);
  return r;
}

ComplexValue principal_log(const ComplexValue& w) {
  if (w.is_zero()) throw DomainError("logarithm of zero");
  if (const auto c = w.exact() ? w.exact()->constant() : std::nullopt) {
    const ExactValue quarter_turn = ExactValue::two_pi_i() * ExactValue(GaussRational{mpq_class(1, 4)});
    if (*c == GaussRational{1}) return ComplexValue(0);
    if (*c == GaussRational{-1}) return ComplexValue(quarter_turn + quarter_turn);
    if (*c == GaussRational{0, 1}) return ComplexValue(quarter_turn);
    if (*c == GaussRational{0, -1}) return ComplexValue(-quarter_turn);
  }
  const std::complex<double> v = w.value();
  // std::log follows the principal branch, but a negative real with a -0.0
  // imaginary part would give -pi; the branch here is (-pi, pi].
  if (v.imag() == 0.0 && v.real() < 0.0) return ComplexValue::approx(std::log(-v.real()), std::numbers::pi);
  return ComplexValue::approx(std::log(v));
}

bool is_near_integer(const ComplexValue& x, const Tolerance& tol) {
  if (x.is_exact()) return x.exact_integer().has_value();
  const auto v = x.value();
  return std::abs(v.imag()) <= tol.eps() && std::abs(v.real() - round_half_even(v.real())) <= tol.eps();
}

}  // namespace affine_lab
