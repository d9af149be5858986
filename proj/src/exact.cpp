#include "affine_lab/exact.hpp"

#include <numbers>

#include "affine_lab/errors.hpp"

namespace affine_lab {

GaussRational operator/(const GaussRational& a, const GaussRational& b) {
  const mpq_class n = b.norm();
  if (sgn(n) == 0) throw DomainError("division by zero");
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

std::string GaussRational::to_string() const {
  const bool has_re = sgn(re) != 0;
  const bool has_im = sgn(im) != 0;
  if (!has_re && !has_im) return "0";
  std::string out;
  if (has_re) out = re.get_str();
  if (has_im) {
    std::string mag;
    if (abs(im) != 1) mag = mpq_class(abs(im)).get_str();
    if (sgn(im) < 0)
      out += "-";
    else if (has_re)
      out += "+";
    out += mag + "i";
  }
  return out;
}

// ---------------------------------------------------------------------------

TPolynomial::TPolynomial(GaussRational constant) {
  if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
}

TPolynomial::TPolynomial(std::vector<GaussRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void TPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

TPolynomial TPolynomial::conj() const {
  std::vector<GaussRational> out(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out[k] = coeffs_[k].conj();
    if (k % 2 == 1) out[k] = -out[k];
  }
  return TPolynomial(std::move(out));
}

std::complex<double> TPolynomial::evaluate() const {
  const std::complex<double> t{0.0, 2.0 * std::numbers::pi};
  std::complex<double> acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->to_complex();
  return acc;
}

TPolynomial TPolynomial::scaled(const GaussRational& c) const {
  std::vector<GaussRational> out;
  out.reserve(coeffs_.size());
  for (const auto& x : coeffs_) out.push_back(x * c);
  return TPolynomial(std::move(out));
}

TPolynomial operator+(const TPolynomial& a, const TPolynomial& b) {
  std::vector<GaussRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] = out[k] + a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] = out[k] + b.coeffs_[k];
  return TPolynomial(std::move(out));
}

TPolynomial operator-(const TPolynomial& a) { return a.scaled(GaussRational{-1}); }

TPolynomial operator-(const TPolynomial& a, const TPolynomial& b) { return a + (-b); }

TPolynomial operator*(const TPolynomial& a, const TPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
  return TPolynomial(std::move(out));
}

void TPolynomial::divmod(const TPolynomial& a, const TPolynomial& b, TPolynomial& q, TPolynomial& r) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<GaussRational> quot(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0);
  TPolynomial rem = a;
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const int shift = rem.degree() - b.degree();
    const GaussRational c = rem.leading() / b.leading();
    quot[shift] = c;
    std::vector<GaussRational> sub(shift + b.coeffs_.size());
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) sub[shift + k] = b.coeffs_[k] * c;
    rem = rem - TPolynomial(std::move(sub));
  }
  q = TPolynomial(std::move(quot));
  r = std::move(rem);
}

TPolynomial TPolynomial::gcd(TPolynomial a, TPolynomial b) {
  while (!b.is_zero()) {
    TPolynomial q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(GaussRational{1} / a.leading());
}

std::string TPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const auto& c = coeffs_[k];
    if (c.is_zero()) continue;
    std::string term;
    if (k == 0) {
      term = c.to_string();
    } else {
      if (!(c == GaussRational{1})) term = "(" + c.to_string() + ")*";
      for (std::size_t j = 0; j < k; ++j) term += (j ? "*2pi*i" : "2pi*i");
    }
    if (!out.empty() && term.front() != '-') out += "+";
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------

ExactValue::ExactValue(TPolynomial num, TPolynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("division by zero");
  canonicalize();
}

void ExactValue::canonicalize() {
  if (num_.is_zero()) {
    den_ = TPolynomial(GaussRational{1});
    return;
  }
  if (den_.degree() > 0) {
    const TPolynomial g = TPolynomial::gcd(num_, den_);
    if (g.degree() > 0) {
      TPolynomial q, r;
      TPolynomial::divmod(num_, g, q, r);
      num_ = std::move(q);
      TPolynomial::divmod(den_, g, q, r);
      den_ = std::move(q);
    }
  }
  const GaussRational lead = den_.leading();
  if (!(lead == GaussRational{1})) {
    const GaussRational inv = GaussRational{1} / lead;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

std::optional<GaussRational> ExactValue::constant() const {
  if (!is_constant()) return std::nullopt;
  if (num_.is_zero()) return GaussRational{0};
  return num_.coeffs().front();
}

std::optional<mpq_class> ExactValue::rational() const {
  auto c = constant();
  if (!c || sgn(c->im) != 0) return std::nullopt;
  return c->re;
}

std::optional<mpz_class> ExactValue::integer() const {
  auto q = rational();
  if (!q || q->get_den() != 1) return std::nullopt;
  return mpz_class(q->get_num());
}

ExactValue ExactValue::conj() const { return ExactValue(num_.conj(), den_.conj()); }

ExactValue ExactValue::real_part() const {
  return (*this + conj()) * ExactValue(GaussRational{mpq_class(1, 2)});
}

ExactValue ExactValue::imag_part() const {
  // (z - conj z) / (2i)
  return (*this - conj()) * ExactValue(GaussRational{0, mpq_class(-1, 2)});
}

std::complex<double> ExactValue::to_complex() const { return num_.evaluate() / den_.evaluate(); }

std::string ExactValue::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

ExactValue operator+(const ExactValue& a, const ExactValue& b) {
  if (a.den_ == b.den_) return ExactValue(a.num_ + b.num_, a.den_);
  return ExactValue(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ExactValue operator-(const ExactValue& a) {
  ExactValue out = a;
  out.num_ = -a.num_;
  return out;
}

ExactValue operator-(const ExactValue& a, const ExactValue& b) { return a + (-b); }

ExactValue operator*(const ExactValue& a, const ExactValue& b) {
  return ExactValue(a.num_ * b.num_, a.den_ * b.den_);
}

ExactValue operator/(const ExactValue& a, const ExactValue& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return ExactValue(a.num_ * b.den_, a.den_ * b.num_);
}

}  // namespace affine_lab
