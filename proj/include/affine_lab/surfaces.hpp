#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "affine_lab/lattice.hpp"

namespace affine_lab {

enum class SurfaceKind { Plane, Cylinder, Torus };

std::string_view to_string(SurfaceKind kind);

/// Discrete subgroup of translations of C: trivial, rank 1 or rank 2.
class DiscreteGroup {
 public:
  struct Trivial {};
  struct Rank1 {
    ComplexValue mu;
  };
  struct Rank2 {
    Lattice lattice;
  };

  static DiscreteGroup trivial();
  // Throws InvariantError for mu = 0.
  static DiscreteGroup rank1(ComplexValue mu);
  static DiscreteGroup rank2(Lattice lattice);

  [[nodiscard]] SurfaceKind kind() const;
  [[nodiscard]] const std::variant<Trivial, Rank1, Rank2>& generators() const { return gens_; }
  [[nodiscard]] bool is_exact() const;

  /// Element of the group nearest to z (ties: candidate z - gamma smallest in (re, im)).
  [[nodiscard]] ComplexValue nearest_element(const ComplexValue& z) const;
  /// Whether z lies in the group: exactly when z and the generators are exact,
  /// within eps otherwise.
  [[nodiscard]] bool contains(const ComplexValue& z, const Tolerance& tol) const;

 private:
  explicit DiscreteGroup(std::variant<Trivial, Rank1, Rank2> gens);

  std::variant<Trivial, Rank1, Rank2> gens_;
  // Reduced basis (rank 2) and numeric copies of the generators for fast rounding.
  std::shared_ptr<const ReducedBasis> reduced_;
  std::complex<double> g1_{};
  std::complex<double> g2_{};
};

// The two groups coincide as subsets of C.
bool same_group(const DiscreteGroup& a, const DiscreteGroup& b, const Tolerance& tol = Tolerance{});

/// The quotient E / group. Cheap to copy.
class AffineSurface {
 public:
  explicit AffineSurface(DiscreteGroup group);

  static AffineSurface plane() { return AffineSurface(DiscreteGroup::trivial()); }
  static AffineSurface cylinder(ComplexValue mu) { return AffineSurface(DiscreteGroup::rank1(std::move(mu))); }
  static AffineSurface torus(ComplexValue mu, ComplexValue nu, const Tolerance& tol = Tolerance{}) {
    return AffineSurface(DiscreteGroup::rank2(Lattice(std::move(mu), std::move(nu), tol)));
  }

  [[nodiscard]] const DiscreteGroup& group() const { return *group_; }
  [[nodiscard]] SurfaceKind kind() const { return group_->kind(); }
  [[nodiscard]] std::string describe() const;

  // Same underlying object, or same group.
  [[nodiscard]] bool same_as(const AffineSurface& other, const Tolerance& tol = Tolerance{}) const;

 private:
  std::shared_ptr<const DiscreteGroup> group_;
};

/// `plane`, `cylinder:<complex>` or `torus:<complex>,<complex>`. Throws ParseError.
AffineSurface parse_surface(std::string_view text, const Tolerance& tol = Tolerance{});

/// A point of E / group, stored as any representative in E.
struct SurfacePoint {
  ComplexValue z;
  AffineSurface surface;
};

/// Representative z - gamma closest to 0.
ComplexValue canonical_rep(const SurfacePoint& p);

/// Distance from z to the nearest group element.
double distance_to_group(const ComplexValue& z, const DiscreteGroup& group);

/// Throws UsageError when p and q live on different surfaces.
bool points_equal(const SurfacePoint& p, const SurfacePoint& q, const Tolerance& tol = Tolerance{});

/// A = class of 0, B = class of 2 pi i.
std::pair<SurfacePoint, SurfacePoint> marked_points(const AffineSurface& s);

}  // namespace affine_lab
