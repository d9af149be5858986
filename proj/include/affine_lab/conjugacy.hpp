#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "affine_lab/execution.hpp"
#include "affine_lab/surfaces.hpp"

namespace affine_lab {

enum class ConjugacyMode { Holomorphic, Topological };

std::string_view to_string(ConjugacyMode mode);

/// A torus together with the coordinates of 2 pi i in its lattice basis:
/// x mu + y nu = 2 pi i.
struct MarkedTorus {
  Lattice lattice;
  ComplexValue x;  // real; exact when the lattice is
  ComplexValue y;

  [[nodiscard]] bool is_rational() const { return x.exact_rational() && y.exact_rational(); }
};

MarkedTorus make_marked_torus(const Lattice& lattice, const Tolerance& tol = Tolerance{});

// ---------------------------------------------------------------------------
// Witnesses

struct IdentityWitness {};

// z -> ratio z with ratio = sign * mu2 / mu1; valid when
// 2 pi i / mu2 - sign * 2 pi i / mu1 is an integer.
struct CylinderScalar {
  int sign = 1;
  ComplexValue ratio;
};

// The R-linear map sending mu1 -> mu2 and 2 pi i -> 2 pi i.
struct CylinderRealLinear {
  ComplexValue mu1;
  ComplexValue mu2;
};

// z -> alpha z with alpha Gamma1 = Gamma2 and (alpha - 1) 2 pi i in Gamma2.
struct TorusScalar {
  ComplexValue alpha;
};

// The R-linear map x mu1 + y nu1 -> (xa + yc) mu2 + (xb + yd) nu2, M = [[a, b], [c, d]].
struct TorusRealLinear {
  IntMatrix2 m;
};

using Witness = std::variant<IdentityWitness, CylinderScalar, CylinderRealLinear, TorusScalar, TorusRealLinear>;

std::string_view witness_type(const Witness& w);

/// Witness for the reversed pair (s2, s1).
Witness inverse_witness(const Witness& w);

// ---------------------------------------------------------------------------
// Verdicts

enum class VerdictStatus { Conjugate, NotConjugate, Unknown };

enum class NotConjugateReason {
  None,
  UnderlyingSpacesNotHomeomorphic,
  PurelyImaginaryPeriodMismatch,
  NoScalingPreservesMarking,
  MarkingOrdersDiffer,
  SearchBoundExhausted,  // only for Unknown
};

std::string_view to_string(VerdictStatus status);
std::string_view to_string(NotConjugateReason reason);

struct ConjugacyVerdict {
  ConjugacyMode mode = ConjugacyMode::Holomorphic;
  VerdictStatus status = VerdictStatus::Unknown;
  std::optional<Witness> witness;
  bool exact = false;           // decided without any tolerance comparison
  NotConjugateReason reason = NotConjugateReason::None;
  std::optional<int> search_bound;  // set when a GL(2,Z) search ran

  [[nodiscard]] bool conjugate() const { return status == VerdictStatus::Conjugate; }
  [[nodiscard]] bool used_tolerance() const { return !exact; }
};

inline constexpr int kDefaultSearchBound = 50;

// Throws DomainError for a zero period.
ConjugacyVerdict decide_cylinder(const ComplexValue& mu1, const ComplexValue& mu2, ConjugacyMode mode,
                                 const Tolerance& tol = Tolerance{});

ConjugacyVerdict decide_torus_holomorphic(const Lattice& l1, const Lattice& l2, const Tolerance& tol = Tolerance{});

/// Every alpha = lambda / mu1 (lambda on the L2 shell of radius sqrt(covol2/covol1) |mu1|)
/// satisfying the scalar-witness conditions, in the order the decision tries them:
/// closest to 1 first, then by (re, im).
std::vector<ComplexValue> torus_scalar_witnesses(const Lattice& l1, const Lattice& l2,
                                                 const Tolerance& tol = Tolerance{});

ConjugacyVerdict decide_torus_topological(const Lattice& l1, const Lattice& l2, const Tolerance& tol = Tolerance{},
                                          int bound = kDefaultSearchBound, Execution exec = Execution::Parallel);

/// Reduces flow conjugacy of E/Gamma1 and E/Gamma2 to the marking automorphisms.
ConjugacyVerdict decide(const AffineSurface& s1, const AffineSurface& s2, ConjugacyMode mode,
                        const Tolerance& tol = Tolerance{}, int bound = kDefaultSearchBound,
                        Execution exec = Execution::Parallel);

// ---------------------------------------------------------------------------
// GL(2,Z) orbit tools

/// M in GL(2,Z) with max |entry| <= bound and (x, y) M = (p, q) mod Z^2 within eps,
/// minimal in the order (max |entry|, a, b, c, d). Serial is a plain brute force
/// over that order; Parallel filters the admissible columns first.
std::optional<IntMatrix2> search_gl2z(double x, double y, double p, double q, int bound, const Tolerance& tol,
                                      Execution exec = Execution::Parallel);

/// Order of (x, y) in R^2 / Z^2 for rational coordinates.
mpz_class rational_point_order(const mpq_class& x, const mpq_class& y);

/// M in GL(2,Z) with (x, y) M = (p, q) mod Z^2, for rational points of equal order.
/// Empty when the orders differ.
std::optional<IntMatrix2> rational_orbit_witness(const mpq_class& x, const mpq_class& y, const mpq_class& p,
                                                 const mpq_class& q);

std::int64_t determinant(const IntMatrix2& m);
IntMatrix2 multiply(const IntMatrix2& a, const IntMatrix2& b);
// Throws DomainError unless det = +-1.
IntMatrix2 inverse_unimodular(const IntMatrix2& m);

}  // namespace affine_lab
