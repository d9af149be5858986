#include "affine_lab/automorphisms.hpp"

namespace affine_lab {

SurfaceAutomorphism SurfaceAutomorphism::translation(AffineSurface s, ComplexValue c) {
  return SurfaceAutomorphism(std::move(s), Translation{std::move(c)});
}

SurfaceAutomorphism SurfaceAutomorphism::inversion(AffineSurface s) {
  return SurfaceAutomorphism(std::move(s), Inversion{});
}

void SurfaceAutomorphism::require_same(const AffineSurface& other) const {
  if (!surface_.same_as(other)) throw UsageError("automorphism applied to a point of another surface");
}

SurfacePoint SurfaceAutomorphism::apply(const SurfacePoint& p) const {
  require_same(p.surface);
  const ComplexValue z = std::holds_alternative<Inversion>(kind_) ? -p.z : p.z + std::get<Translation>(kind_).c;
  return {canonical_rep({z, surface_}), surface_};
}

TangentVector SurfaceAutomorphism::apply_tangent(const TangentVector& v) const {
  const SurfacePoint image = apply(v.point());
  const ComplexValue u = std::holds_alternative<Inversion>(kind_) ? -v.u() : v.u();
  return TangentVector(surface_, image.z, u);
}

SurfaceAutomorphism SurfaceAutomorphism::inverse() const {
  if (std::holds_alternative<Inversion>(kind_)) return *this;
  return translation(surface_, -std::get<Translation>(kind_).c);
}

SurfaceAutomorphism SurfaceAutomorphism::compose(const SurfaceAutomorphism& other) const {
  require_same(other.surface_);
  const auto* a = std::get_if<Translation>(&kind_);
  const auto* b = std::get_if<Translation>(&other.kind_);
  if (a != nullptr && b != nullptr) return translation(surface_, a->c + b->c);
  if (a == nullptr && b == nullptr) return translation(surface_, ComplexValue(0));
  // sigma o tau_c = tau_{-c} o sigma: representable only when c is in the group.
  const ComplexValue& c = a != nullptr ? a->c : b->c;
  if (surface_.group().contains(c, Tolerance{})) return inversion(surface_);
  throw UsageError("composition of an inversion with a translation is not representable");
}

bool SurfaceAutomorphism::is_identity(const Tolerance& tol) const {
  const auto* t = std::get_if<Translation>(&kind_);
  // -z = z + gamma for every z is impossible, so an inversion is never trivial.
  if (t == nullptr) return false;
  return surface_.group().contains(t->c, tol);
}

SurfaceAutomorphism marking_automorphism(const AffineSurface& s) {
  return SurfaceAutomorphism::translation(s, ComplexValue::two_pi_i());
}

SurfaceAutomorphism conjugates_h_to_inverse(const AffineSurface& s) { return SurfaceAutomorphism::inversion(s); }

}  // namespace affine_lab
