#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "affine_lab/automorphisms.hpp"
#include "affine_lab/conjugacy.hpp"
#include "affine_lab/execution.hpp"
#include "affine_lab/flow.hpp"

namespace affine_lab {

/// z -> a z + b conj(z) + c on E. Holomorphic iff b = 0.
class RealAffineMap {
 public:
  RealAffineMap(ComplexValue a, ComplexValue b, ComplexValue c);

  static RealAffineMap identity() { return {ComplexValue(1), ComplexValue(0), ComplexValue(0)}; }
  static RealAffineMap scalar(ComplexValue lambda, ComplexValue c = ComplexValue(0)) {
    return {std::move(lambda), ComplexValue(0), std::move(c)};
  }
  /// The R-linear map with e1 -> f1 and e2 -> f2; e1, e2 must be R-independent
  /// (DomainError otherwise). Exact when all four inputs are.
  static RealAffineMap from_basis_map(const ComplexValue& e1, const ComplexValue& e2, const ComplexValue& f1,
                                      const ComplexValue& f2);

  [[nodiscard]] const ComplexValue& a() const { return a_; }
  [[nodiscard]] const ComplexValue& b() const { return b_; }
  [[nodiscard]] const ComplexValue& c() const { return c_; }
  [[nodiscard]] bool is_holomorphic() const { return b_.is_zero(); }

  [[nodiscard]] ComplexValue operator()(const ComplexValue& z) const;
  [[nodiscard]] std::complex<double> operator()(std::complex<double> z) const {
    return na_ * z + nb_ * std::conj(z) + nc_;
  }
  // The linear part applied to w (no translation).
  [[nodiscard]] ComplexValue linear(const ComplexValue& w) const;

  [[nodiscard]] RealAffineMap negated() const { return {-a_, -b_, -c_}; }

 private:
  ComplexValue a_, b_, c_;
  std::complex<double> na_, nb_, nc_;
};

/// The map of base surfaces phi: S1 -> S2 built from a witness.
class BaseMap {
 public:
  /// Skips every check. Meant for deliberately broken maps in negative controls.
  BaseMap(RealAffineMap map, AffineSurface source, AffineSurface target, std::optional<Witness> witness = {},
          bool normalized = false);

  [[nodiscard]] const RealAffineMap& map() const { return map_; }
  [[nodiscard]] const AffineSurface& source() const { return source_; }
  [[nodiscard]] const AffineSurface& target() const { return target_; }
  [[nodiscard]] const std::optional<Witness>& witness() const { return witness_; }
  // True when the raw witness map was post-composed with z -> -z.
  [[nodiscard]] bool normalized() const { return normalized_; }

  [[nodiscard]] SurfacePoint operator()(const SurfacePoint& p) const;

 private:
  RealAffineMap map_;
  AffineSurface source_;
  AffineSurface target_;
  std::optional<Witness> witness_;
  bool normalized_;
};

/// Concrete map for a witness. Checks that phi(Gamma1) lies in Gamma2 and that
/// phi o h1 = h2 o phi; if instead phi o h1 = h2^{-1} o phi the map is composed
/// with z -> -z. Throws UsageError when the witness does not fit the surfaces.
BaseMap build_base(const Witness& w, const AffineSurface& s1, const AffineSurface& s2,
                   const Tolerance& tol = Tolerance{});

/// Psi(z, u) = (phi(z + Log u) - Log u, u) on the punctured tangent bundles.
class LiftedConjugacy {
 public:
  explicit LiftedConjugacy(BaseMap base) : base_(std::move(base)) {}

  [[nodiscard]] const BaseMap& base() const { return base_; }

  [[nodiscard]] TangentVector operator()(const TangentVector& v) const { return apply(v, 0); }
  // Uses the branch Log u + 2 pi i k.
  [[nodiscard]] TangentVector apply(const TangentVector& v, int k) const;

 private:
  BaseMap base_;
};

LiftedConjugacy lift(BaseMap base);

struct VerificationReport {
  int samples = 0;
  std::vector<double> t_grid;
  double max_deviation = 0.0;
  long evaluations = 0;         // samples x |t_grid|
  long domain_agreements = 0;   // t in I_v iff t in I_{Psi v}
  bool branch_checks_passed = true;
  bool boundary_checks_passed = true;
  std::uint64_t seed = 0;

  [[nodiscard]] bool passed(double threshold) const {
    return max_deviation <= threshold && domain_agreements == evaluations && branch_checks_passed &&
           boundary_checks_passed;
  }
};

inline const std::vector<double> kStandardTimeGrid{-5.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0};
inline constexpr int kStandardSamples = 1000;
// Largest max_deviation a verified conjugacy may show.
inline constexpr double kVerificationThreshold = 1e-8;

/// Tangent vectors on s for verification, cycling through three strata:
/// Im u > 0, Im u < 0 and |Im u| = 1e-3 (close to the bifurcation locus).
std::vector<TangentVector> sample_tangent_vectors(const AffineSurface& s, int n, std::uint64_t seed);

/// Checks Psi o F^t = F^t o Psi over the sample plan. The deviation of a pair of
/// tangent vectors is the larger of |u - u'| and the distance from z - z' to Gamma2.
VerificationReport verify_flow_conjugacy(const LiftedConjugacy& psi, int n_samples,
                                         const std::vector<double>& t_grid = kStandardTimeGrid,
                                         const Tolerance& tol = Tolerance{}, std::uint64_t seed = 0,
                                         Execution exec = Execution::Parallel);

/// On the sheets tau in {1/2, 1, 2} and {-1/2, -1, -2}: Psi keeps u; Psi commutes
/// with the boundary maps F^{t,+-} and with Dh; and F^{t,-} o Dh = F^{t,+} on both
/// surfaces.
VerificationReport verify_boundary_relations(const LiftedConjugacy& psi, const Tolerance& tol = Tolerance{},
                                             std::uint64_t seed = 0);

/// Largest distance between Psi computed with Log u + 2 pi i k, k in {-2, -1, 1, 2},
/// and the principal Psi over the sample plan.
double branch_deviation(const LiftedConjugacy& psi, int n_samples, std::uint64_t seed = 0);

/// branch_deviation within eps.
bool branch_independence(const LiftedConjugacy& psi, int n_samples, const Tolerance& tol = Tolerance{},
                         std::uint64_t seed = 0);

/// Flow, boundary and branch checks combined in one report; max_deviation covers all three.
VerificationReport verify_all(const LiftedConjugacy& psi, int n_samples = kStandardSamples,
                              const std::vector<double>& t_grid = kStandardTimeGrid,
                              const Tolerance& tol = Tolerance{}, std::uint64_t seed = 0,
                              Execution exec = Execution::Parallel);

}  // namespace affine_lab
