#include "affine_lab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "affine_lab/errors.hpp"

namespace affine_lab {

namespace {

using cd = std::complex<double>;

// Im(conj(a) b) in doubles.
double cross(cd a, cd b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(cd a, cd b) { return a.real() * b.real() + a.imag() * b.imag(); }

constexpr double kMaxExactInt = 9.0e15;

std::optional<std::int64_t> to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(z.get_si());
}

}  // namespace

Lattice::Lattice(ComplexValue mu, ComplexValue nu, const Tolerance& tol) : mu_(std::move(mu)), nu_(std::move(nu)) {
  const ComplexValue area = signed_covolume(mu_, nu_);
  if (area.is_exact() ? area.is_zero() : std::abs(area.re()) <= tol.eps())
    throw InvariantError("lattice generators are R-linearly dependent");
}

ComplexValue Lattice::point(std::int64_t a, std::int64_t b) const {
  return ComplexValue(static_cast<long>(a)) * mu_ + ComplexValue(static_cast<long>(b)) * nu_;
}

ComplexValue signed_covolume(const ComplexValue& mu, const ComplexValue& nu) {
  return (mu.conj() * nu).imag_part();
}

ReducedBasis gauss_reduce(const Lattice& lattice) {
  ComplexValue b1 = lattice.mu();
  ComplexValue b2 = lattice.nu();
  IntMatrix2 u{{{1, 0}, {0, 1}}};
  auto swap_rows = [&] {
    std::swap(b1, b2);
    std::swap(u[0], u[1]);
  };
  for (int iter = 0; iter < 10000; ++iter) {
    cd v1 = b1.value();
    cd v2 = b2.value();
    if (std::norm(v1) > std::norm(v2)) {
      swap_rows();
      std::swap(v1, v2);
    }
    const double m = round_half_even(dot(v1, v2) / std::norm(v1));
    if (m == 0.0) break;
    if (std::abs(m) > kMaxExactInt) throw InvariantError("lattice reduction diverged");
    const auto k = static_cast<std::int64_t>(m);
    b2 = b2 - ComplexValue(static_cast<long>(k)) * b1;
    u[1][0] -= k * u[0][0];
    u[1][1] -= k * u[0][1];
  }
  if (std::norm(b1.value()) > std::norm(b2.value())) swap_rows();
  return {Lattice(b1, b2, Tolerance{std::numeric_limits<double>::min()}), u};
}

Lattice reduce_basis(const Lattice& lattice) { return gauss_reduce(lattice).lattice; }

ComplexValue covolume(const Lattice& lattice) {
  ComplexValue area = signed_covolume(lattice.mu(), lattice.nu());
  if (area.re() < 0.0) area = -area;
  return area;
}

std::optional<LatticeCoords> lattice_member(const ComplexValue& z, const Lattice& lattice, const Tolerance& tol) {
  if (z.is_exact() && lattice.is_exact()) {
    const ComplexValue d = signed_covolume(lattice.mu(), lattice.nu());
    const auto a = ((z.conj() * lattice.nu()).imag_part() / d).exact_integer();
    const auto b = ((lattice.mu().conj() * z).imag_part() / d).exact_integer();
    if (!a || !b) return std::nullopt;
    const auto a64 = to_int64(*a);
    const auto b64 = to_int64(*b);
    if (!a64 || !b64) return std::nullopt;
    return LatticeCoords{*a64, *b64};
  }

  const ReducedBasis rb = gauss_reduce(lattice);
  const cd b1 = rb.lattice.mu().value();
  const cd b2 = rb.lattice.nu().value();
  const cd w = z.value();
  const double d = cross(b1, b2);
  const double c1 = round_half_even(cross(w, b2) / d);
  const double c2 = round_half_even(cross(b1, w) / d);
  if (std::abs(c1) > kMaxExactInt || std::abs(c2) > kMaxExactInt) return std::nullopt;
  const auto k1 = static_cast<std::int64_t>(c1);
  const auto k2 = static_cast<std::int64_t>(c2);
  const LatticeCoords coords{k1 * rb.transform[0][0] + k2 * rb.transform[1][0],
                             k1 * rb.transform[0][1] + k2 * rb.transform[1][1]};
  const cd residual = w - (static_cast<double>(coords.a) * lattice.mu().value() +
                           static_cast<double>(coords.b) * lattice.nu().value());
  if (std::abs(residual) > tol.eps()) return std::nullopt;
  return coords;
}

std::vector<ComplexValue> enumerate_norm_shell(const Lattice& lattice, double r, const Tolerance& tol) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("shell radius must be positive");
  const double slack = tol.eps() * std::max(1.0, r);
  const double outer = r + slack;

  const ReducedBasis rb = gauss_reduce(lattice);
  const cd b1 = rb.lattice.mu().value();
  const cd b2 = rb.lattice.nu().value();
  const double len1 = std::abs(b1);
  const double height = std::abs(cross(b1, b2)) / len1;  // distance between rows parallel to b1
  const double shear = dot(b1, b2) / (len1 * len1);

  struct Hit {
    cd value;
    std::int64_t a;
    std::int64_t b;
  };
  std::vector<Hit> hits;
  const auto row_bound = static_cast<std::int64_t>(std::floor(outer / height)) + 1;
  for (std::int64_t j = -row_bound; j <= row_bound; ++j) {
    const double rest = outer * outer - (static_cast<double>(j) * height) * (static_cast<double>(j) * height);
    if (rest < 0.0) continue;
    const double half = std::sqrt(rest) / len1;
    const double centre = -static_cast<double>(j) * shear;
    const auto lo = static_cast<std::int64_t>(std::floor(centre - half)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil(centre + half)) + 1;
    for (std::int64_t i = lo; i <= hi; ++i) {
      const cd p = static_cast<double>(i) * b1 + static_cast<double>(j) * b2;
      if (std::abs(std::abs(p) - r) > slack) continue;
      hits.push_back({p, i * rb.transform[0][0] + j * rb.transform[1][0], i * rb.transform[0][1] + j * rb.transform[1][1]});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  std::vector<ComplexValue> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(lattice.point(h.a, h.b));
  return out;
}

}  // namespace affine_lab
