#include "affine_lab/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <tuple>

#include "affine_lab/errors.hpp"

namespace affine_lab {

std::string_view to_string(ConjugacyMode mode) {
  return mode == ConjugacyMode::Holomorphic ? "holomorphic" : "topological";
}

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Conjugate: return "conjugate";
    case VerdictStatus::NotConjugate: return "not_conjugate";
    case VerdictStatus::Unknown: return "unknown";
  }
  return "?";
}

std::string_view to_string(NotConjugateReason reason) {
  switch (reason) {
    case NotConjugateReason::None: return "";
    case NotConjugateReason::UnderlyingSpacesNotHomeomorphic: return "underlying-spaces-not-homeomorphic";
    case NotConjugateReason::PurelyImaginaryPeriodMismatch: return "purely-imaginary-period-mismatch";
    case NotConjugateReason::NoScalingPreservesMarking: return "no-scaling-preserves-marking";
    case NotConjugateReason::MarkingOrdersDiffer: return "marking-orders-differ";
    case NotConjugateReason::SearchBoundExhausted: return "search-bound-exhausted";
  }
  return "?";
}

std::string_view witness_type(const Witness& w) {
  struct {
    std::string_view operator()(const IdentityWitness&) const { return "identity"; }
    std::string_view operator()(const CylinderScalar&) const { return "cylinder_scalar"; }
    std::string_view operator()(const CylinderRealLinear&) const { return "cylinder_real_linear"; }
    std::string_view operator()(const TorusScalar&) const { return "torus_scalar"; }
    std::string_view operator()(const TorusRealLinear&) const { return "torus_real_linear"; }
  } visitor;
  return std::visit(visitor, w);
}

Witness inverse_witness(const Witness& w) {
  if (const auto* c = std::get_if<CylinderScalar>(&w)) return CylinderScalar{c->sign, ComplexValue(1) / c->ratio};
  if (const auto* c = std::get_if<CylinderRealLinear>(&w)) return CylinderRealLinear{c->mu2, c->mu1};
  if (const auto* t = std::get_if<TorusScalar>(&w)) return TorusScalar{ComplexValue(1) / t->alpha};
  if (const auto* t = std::get_if<TorusRealLinear>(&w)) return TorusRealLinear{inverse_unimodular(t->m)};
  return w;
}

// ---------------------------------------------------------------------------
// Integer matrices

std::int64_t determinant(const IntMatrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

IntMatrix2 multiply(const IntMatrix2& a, const IntMatrix2& b) {
  IntMatrix2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

IntMatrix2 inverse_unimodular(const IntMatrix2& m) {
  const std::int64_t det = determinant(m);
  if (det != 1 && det != -1) throw DomainError("matrix is not in GL(2,Z)");
  return {{{det * m[1][1], -det * m[0][1]}, {-det * m[1][0], det * m[0][0]}}};
}

namespace {

const IntMatrix2 kIdentity{{{1, 0}, {0, 1}}};

ComplexValue two_pi_i() { return ComplexValue::two_pi_i(); }

bool nonzero_real_part(const ComplexValue& mu, const Tolerance& tol) {
  if (mu.is_exact()) return !mu.real_part().is_zero();
  return std::abs(mu.re()) > tol.eps();
}

ConjugacyVerdict conjugate(ConjugacyMode mode, Witness w, bool exact) {
  ConjugacyVerdict v;
  v.mode = mode;
  v.status = VerdictStatus::Conjugate;
  v.witness = std::move(w);
  v.exact = exact;
  return v;
}

ConjugacyVerdict not_conjugate(ConjugacyMode mode, NotConjugateReason reason, bool exact) {
  ConjugacyVerdict v;
  v.mode = mode;
  v.status = VerdictStatus::NotConjugate;
  v.reason = reason;
  v.exact = exact;
  return v;
}

double frac_distance(double v) { return std::abs(v - std::nearbyint(v)); }

// Row (a, b) with a = a0, b = b0 mod n and gcd(a, b) = 1, completed to a unimodular matrix.
IntMatrix2 complete_primitive_row(std::int64_t a0, std::int64_t b0, std::int64_t n) {
  for (std::int64_t j = 0; j < n + 1; ++j) {
    for (std::int64_t k = 0; k < n; ++k) {
      const std::int64_t a = a0 + k * n;
      const std::int64_t b = b0 + j * n;
      if (std::gcd(a, b) != 1) continue;
      // Extended Euclid: s a + t b = 1.
      std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
        std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
        std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
      }
      if (old_r < 0) {
        old_s = -old_s;
        old_t = -old_t;
      }
      return {{{a, b}, {-old_t, old_s}}};
    }
  }
  throw InvariantError("no primitive lift of a rational torus point");
}

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw DomainError("integer does not fit in 64 bits");
  return z.get_si();
}

}  // namespace

// ---------------------------------------------------------------------------
// Cylinders

ConjugacyVerdict decide_cylinder(const ComplexValue& mu1, const ComplexValue& mu2, ConjugacyMode mode,
                                 const Tolerance& tol) {
  if (mu1.is_zero() || mu2.is_zero()) throw DomainError("cylinder period must be nonzero");
  const bool exact = mu1.is_exact() && mu2.is_exact();
  const ComplexValue t = two_pi_i();
  for (const int sign : {1, -1}) {
    const ComplexValue d = t / mu2 - ComplexValue(sign) * (t / mu1);
    if (is_near_integer(d, tol)) return conjugate(mode, CylinderScalar{sign, ComplexValue(sign) * mu2 / mu1}, exact);
  }
  if (mode == ConjugacyMode::Holomorphic) return not_conjugate(mode, NotConjugateReason::NoScalingPreservesMarking, exact);
  if (nonzero_real_part(mu1, tol) && nonzero_real_part(mu2, tol))
    return conjugate(mode, CylinderRealLinear{mu1, mu2}, exact);
  return not_conjugate(mode, NotConjugateReason::PurelyImaginaryPeriodMismatch, exact);
}

// ---------------------------------------------------------------------------
// Tori

MarkedTorus make_marked_torus(const Lattice& lattice, const Tolerance&) {
  // Pair x mu + y nu = T with conj(mu) and conj(nu) and keep imaginary parts.
  const ComplexValue t = two_pi_i();
  const ComplexValue d = signed_covolume(lattice.mu(), lattice.nu());
  ComplexValue y = (lattice.mu().conj() * t).imag_part() / d;
  ComplexValue x = -((lattice.nu().conj() * t).imag_part() / d);
  return {lattice, std::move(x), std::move(y)};
}

std::vector<ComplexValue> torus_scalar_witnesses(const Lattice& l1, const Lattice& l2, const Tolerance& tol) {
  const ComplexValue cov1 = covolume(l1);
  const ComplexValue cov2 = covolume(l2);
  const double radius = std::sqrt(cov2.re() / cov1.re()) * l1.mu().abs();
  const bool exact = l1.is_exact() && l2.is_exact();
  const ComplexValue t = two_pi_i();

  struct Candidate {
    ComplexValue alpha;
    double dist;
    double re;
    double im;
  };
  std::vector<Candidate> candidates;
  for (const ComplexValue& lambda : enumerate_norm_shell(l2, radius, tol)) {
    ComplexValue alpha = lambda / l1.mu();
    const auto v = alpha.value();
    candidates.push_back({alpha, std::abs(v - 1.0), v.real(), v.imag()});
  }
  constexpr double kTie = 1e-12;
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (std::abs(a.dist - b.dist) > kTie) return a.dist < b.dist;
    if (std::abs(a.re - b.re) > kTie) return a.re < b.re;
    return a.im < b.im;
  });

  std::vector<ComplexValue> out;
  for (const Candidate& c : candidates) {
    const ComplexValue& alpha = c.alpha;
    if (!lattice_member(alpha * l1.nu(), l2, tol)) continue;
    if (!lattice_member(alpha * t - t, l2, tol)) continue;
    // Membership of alpha mu1, alpha nu1 plus equal covolume gives alpha Gamma1 = Gamma2.
    const ComplexValue scaled = alpha * alpha.conj() * cov1;
    if (exact) {
      if (!(scaled - cov2).is_zero()) continue;
    } else if (std::abs(scaled.re() - cov2.re()) > tol.eps() * std::max(1.0, cov2.re())) {
      continue;
    }
    out.push_back(alpha);
  }
  return out;
}

ConjugacyVerdict decide_torus_holomorphic(const Lattice& l1, const Lattice& l2, const Tolerance& tol) {
  const bool exact = l1.is_exact() && l2.is_exact();
  const auto witnesses = torus_scalar_witnesses(l1, l2, tol);
  if (witnesses.empty()) return not_conjugate(ConjugacyMode::Holomorphic, NotConjugateReason::NoScalingPreservesMarking, exact);
  return conjugate(ConjugacyMode::Holomorphic, TorusScalar{witnesses.front()}, exact);
}

mpz_class rational_point_order(const mpq_class& x, const mpq_class& y) {
  mpz_class n;
  mpz_lcm(n.get_mpz_t(), x.get_den_mpz_t(), y.get_den_mpz_t());
  return n;
}

std::optional<IntMatrix2> rational_orbit_witness(const mpq_class& x, const mpq_class& y, const mpq_class& p,
                                                 const mpq_class& q) {
  const mpz_class n = rational_point_order(x, y);
  if (n != rational_point_order(p, q)) return std::nullopt;
  if (n == 1) return kIdentity;
  auto numerator_mod_n = [&](const mpq_class& v) {
    mpz_class k = v.get_num() * (n / v.get_den());
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), k.get_mpz_t(), n.get_mpz_t());
    return to_int64(r);
  };
  const std::int64_t nn = to_int64(n);
  // (1/n, 0) U = (a/n, b/n) for the completed row (a, b); compose the two sides.
  const IntMatrix2 u1 = complete_primitive_row(numerator_mod_n(x), numerator_mod_n(y), nn);
  const IntMatrix2 u2 = complete_primitive_row(numerator_mod_n(p), numerator_mod_n(q), nn);
  const IntMatrix2 m = multiply(inverse_unimodular(u1), u2);

  const mpq_class dx = x * m[0][0] + y * m[1][0] - p;
  const mpq_class dy = x * m[0][1] + y * m[1][1] - q;
  if (dx.get_den() != 1 || dy.get_den() != 1) throw InvariantError("rational orbit witness failed its own check");
  return m;
}

std::optional<IntMatrix2> search_gl2z(double x, double y, double p, double q, int bound, const Tolerance& tol,
                                      Execution exec) {
  if (bound < 1) throw UsageError("search bound must be positive");
  const double eps = tol.eps();
  const std::int64_t b = bound;

  if (exec == Execution::Serial) {
    for (std::int64_t m = 1; m <= b; ++m)
      for (std::int64_t a1 = -m; a1 <= m; ++a1)
        for (std::int64_t b1 = -m; b1 <= m; ++b1)
          for (std::int64_t c1 = -m; c1 <= m; ++c1)
            for (std::int64_t d1 = -m; d1 <= m; ++d1) {
              if (std::max({std::abs(a1), std::abs(b1), std::abs(c1), std::abs(d1)}) != m) continue;
              const std::int64_t det = a1 * d1 - b1 * c1;
              if (det != 1 && det != -1) continue;
              if (frac_distance(x * a1 + y * c1 - p) > eps) continue;
              if (frac_distance(x * b1 + y * d1 - q) > eps) continue;
              return IntMatrix2{{{a1, b1}, {c1, d1}}};
            }
    return std::nullopt;
  }

  // Admissible first columns (a, c) and second columns (b, d), then pair them.
  using Column = std::array<std::int64_t, 2>;
  auto admissible = [&](double target) {
    const std::int64_t width = 2 * b + 1;
    std::vector<std::vector<Column>> rows(static_cast<std::size_t>(width));
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < width; ++i) {
      const std::int64_t top = i - b;
      for (std::int64_t bottom = -b; bottom <= b; ++bottom)
        if (frac_distance(x * top + y * bottom - target) <= eps) rows[i].push_back({top, bottom});
    }
    std::vector<Column> cols;
    for (auto& r : rows) cols.insert(cols.end(), r.begin(), r.end());
    return cols;
  };
  const std::vector<Column> first = admissible(p);
  const std::vector<Column> second = admissible(q);

  using Key = std::array<std::int64_t, 5>;  // (max |entry|, a, b, c, d)
  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();
  Key best{kNone, 0, 0, 0, 0};
  const auto n_first = static_cast<std::int64_t>(first.size());
#pragma omp parallel
  {
    Key local{kNone, 0, 0, 0, 0};
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n_first; ++i) {
      const auto [a1, c1] = first[i];
      for (const auto& [b1, d1] : second) {
        const std::int64_t det = a1 * d1 - b1 * c1;
        if (det != 1 && det != -1) continue;
        const Key k{std::max({std::abs(a1), std::abs(b1), std::abs(c1), std::abs(d1)}), a1, b1, c1, d1};
        if (k < local) local = k;
      }
    }
#pragma omp critical
    if (local < best) best = local;
  }
  if (best[0] == kNone) return std::nullopt;
  return IntMatrix2{{{best[1], best[2]}, {best[3], best[4]}}};
}

ConjugacyVerdict decide_torus_topological(const Lattice& l1, const Lattice& l2, const Tolerance& tol, int bound,
                                          Execution exec) {
  constexpr auto mode = ConjugacyMode::Topological;
  if (bound < 1) throw UsageError("search bound must be positive");
  const MarkedTorus m1 = make_marked_torus(l1, tol);
  const MarkedTorus m2 = make_marked_torus(l2, tol);
  const bool exact = l1.is_exact() && l2.is_exact();

  if (m1.is_rational() && m2.is_rational()) {
    const mpq_class x = *m1.x.exact_rational(), y = *m1.y.exact_rational();
    const mpq_class p = *m2.x.exact_rational(), q = *m2.y.exact_rational();
    if (const auto m = rational_orbit_witness(x, y, p, q)) return conjugate(mode, TorusRealLinear{*m}, true);
    return not_conjugate(mode, NotConjugateReason::MarkingOrdersDiffer, true);
  }
  // An exact coordinate outside Q involves pi, hence is irrational: the point
  // has infinite order and cannot match a point of finite order.
  if (exact && m1.is_rational() != m2.is_rational())
    return not_conjugate(mode, NotConjugateReason::MarkingOrdersDiffer, true);

  ConjugacyVerdict v;
  v.mode = mode;
  v.search_bound = bound;
  v.exact = false;
  if (const auto m = search_gl2z(m1.x.re(), m1.y.re(), m2.x.re(), m2.y.re(), bound, tol, exec)) {
    v.status = VerdictStatus::Conjugate;
    v.witness = TorusRealLinear{*m};
  } else {
    v.status = VerdictStatus::Unknown;
    v.reason = NotConjugateReason::SearchBoundExhausted;
  }
  return v;
}

ConjugacyVerdict decide(const AffineSurface& s1, const AffineSurface& s2, ConjugacyMode mode, const Tolerance& tol,
                        int bound, Execution exec) {
  if (s1.kind() != s2.kind()) return not_conjugate(mode, NotConjugateReason::UnderlyingSpacesNotHomeomorphic, true);
  const auto& g1 = s1.group().generators();
  const auto& g2 = s2.group().generators();
  switch (s1.kind()) {
    case SurfaceKind::Plane: return conjugate(mode, IdentityWitness{}, true);
    case SurfaceKind::Cylinder:
      return decide_cylinder(std::get<DiscreteGroup::Rank1>(g1).mu, std::get<DiscreteGroup::Rank1>(g2).mu, mode, tol);
    case SurfaceKind::Torus: {
      const Lattice& l1 = std::get<DiscreteGroup::Rank2>(g1).lattice;
      const Lattice& l2 = std::get<DiscreteGroup::Rank2>(g2).lattice;
      if (mode == ConjugacyMode::Holomorphic) return decide_torus_holomorphic(l1, l2, tol);
      ConjugacyVerdict v = decide_torus_topological(l1, l2, tol, bound, exec);
      if (v.conjugate()) return v;
      // A biholomorphism of marked tori is in particular real-affine.
      ConjugacyVerdict h = decide_torus_holomorphic(l1, l2, tol);
      if (!h.conjugate()) return v;
      h.mode = mode;
      h.search_bound = v.search_bound;
      return h;
    }
  }
  throw InvariantError("unreachable surface kind");
}

}  // namespace affine_lab
