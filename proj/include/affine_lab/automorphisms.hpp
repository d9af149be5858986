#pragma once

#include <variant>

#include "affine_lab/flow.hpp"

namespace affine_lab {

/// Automorphism of E / group induced by z -> z + c or z -> -z.
///
/// Both descend to any quotient by a translation group (the group is closed
/// under negation), and both preserve the u-coordinate of the affine structure
/// up to sign: translation leaves u alone, inversion sends u to -u.
class SurfaceAutomorphism {
 public:
  struct Translation {
    ComplexValue c;
  };
  struct Inversion {};

  static SurfaceAutomorphism translation(AffineSurface s, ComplexValue c);
  static SurfaceAutomorphism inversion(AffineSurface s);

  [[nodiscard]] const AffineSurface& surface() const { return surface_; }
  [[nodiscard]] const std::variant<Translation, Inversion>& kind() const { return kind_; }

  // UsageError when p lives on another surface.
  [[nodiscard]] SurfacePoint apply(const SurfacePoint& p) const;
  [[nodiscard]] TangentVector apply_tangent(const TangentVector& v) const;

  [[nodiscard]] SurfaceAutomorphism inverse() const;
  // (this o other)(z) = this(other(z)). Translations compose to translations;
  // anything involving an inversion stays in the group {z -> +-z + c} but only
  // translation and plain inversion are representable, so other mixtures throw
  // UsageError.
  [[nodiscard]] SurfaceAutomorphism compose(const SurfaceAutomorphism& other) const;
  // Translation by a group element.
  [[nodiscard]] bool is_identity(const Tolerance& tol = Tolerance{}) const;

 private:
  SurfaceAutomorphism(AffineSurface s, std::variant<Translation, Inversion> k)
      : surface_(std::move(s)), kind_(std::move(k)) {}

  void require_same(const AffineSurface& other) const;

  AffineSurface surface_;
  std::variant<Translation, Inversion> kind_;
};

/// h_S: translation by 2 pi i, which swaps the roles of the marked points.
SurfaceAutomorphism marking_automorphism(const AffineSurface& s);

/// z -> -z, which conjugates h_S to its inverse.
SurfaceAutomorphism conjugates_h_to_inverse(const AffineSurface& s);

}  // namespace affine_lab
