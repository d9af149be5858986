#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affine_lab/errors.hpp"
#include "affine_lab/execution.hpp"
#include "affine_lab/surfaces.hpp"

namespace affine_lab {

/// Nonzero tangent vector (z, u) of E / group at the class of z.
class TangentVector {
 public:
  // Throws InvariantError for u = 0.
  TangentVector(AffineSurface surface, ComplexValue z, ComplexValue u);

  [[nodiscard]] const AffineSurface& surface() const { return surface_; }
  [[nodiscard]] const ComplexValue& z() const { return z_; }
  [[nodiscard]] const ComplexValue& u() const { return u_; }
  [[nodiscard]] SurfacePoint point() const { return {z_, surface_}; }

 private:
  AffineSurface surface_;
  ComplexValue z_;
  ComplexValue u_;
};

/// Open interval of times on which the geodesic through v is defined.
struct MaximalInterval {
  enum class Kind { FullLine, RightOfEndpoint, LeftOfEndpoint };
  Kind kind = Kind::FullLine;
  double endpoint = 0.0;  // -1/u; meaningless for FullLine

  [[nodiscard]] bool contains(double t) const;
  [[nodiscard]] std::optional<double> lower() const;
  [[nodiscard]] std::optional<double> upper() const;
  [[nodiscard]] std::string to_string() const;
};

struct FlowClassification {
  enum class Kind { RegularPlus, RegularMinus, Bifurcation };
  Kind kind = Kind::RegularPlus;
  ComplexValue tau;      // u = -1/tau; only for Bifurcation
  bool snapped = false;  // |Im u| <= eps was treated as real
};

std::string_view to_string(FlowClassification::Kind kind);

class FlowUndefinedError : public Error {
 public:
  FlowUndefinedError(double t, MaximalInterval interval);
  [[nodiscard]] double time() const { return t_; }
  [[nodiscard]] const MaximalInterval& interval() const { return interval_; }

 private:
  double t_;
  MaximalInterval interval_;
};

class EmptyTrajectoryError : public Error {
 public:
  using Error::Error;
};

/// R+ for Im u > 0, R- for Im u < 0, the sheet B^tau for real u = -1/tau.
/// On the approximate track |Im u| <= eps counts as real.
FlowClassification classify(const TangentVector& v, const Tolerance& tol = Tolerance{});

/// Full line off the real axis; (-1/u, inf) for u > 0; (-inf, -1/u) for u < 0.
MaximalInterval maximal_interval(const TangentVector& v, const Tolerance& tol = Tolerance{});

/// F^t(z, u) = (z + Log(1 + t u), u / (1 + t u)), z reduced to its canonical
/// representative. The segment 1 + t u, t in the maximal interval, never
/// meets (-inf, 0], so the principal branch is the continuous one.
/// Throws FlowUndefinedError outside the maximal interval.
TangentVector flow(const TangentVector& v, double t, const Tolerance& tol = Tolerance{});

enum class BoundarySide { Plus, Minus };

/// Limit of F^t from R+ (Plus) or R- (Minus) at v in B^{tau2}, tau2 > 0, with
/// t = tau2 - tau1: (z + log(-tau1/tau2) +- pi i, -1/tau1). Exact when v and
/// tau1 are exact and -tau1/tau2 is 1. Throws UsageError unless v is on a
/// positive sheet and tau1 is real negative.
TangentVector boundary_flow(const TangentVector& v, const ComplexValue& tau1, BoundarySide side,
                            const Tolerance& tol = Tolerance{});

/// Inverse of boundary_flow: from B^{tau1}, tau1 < 0, back to B^{tau2}, tau2 > 0.
TangentVector boundary_flow_inverse(const TangentVector& v, const ComplexValue& tau2, BoundarySide side,
                                    const Tolerance& tol = Tolerance{});

struct TrajectorySample {
  double t;
  TangentVector v;
};

/// n equally spaced samples of [t0, t1] clipped to the maximal interval
/// (an open endpoint is moved inward by eps). Throws EmptyTrajectoryError when
/// nothing remains and UsageError for n < 2 or t0 > t1.
std::vector<TrajectorySample> trajectory(const TangentVector& v, double t0, double t1, int n,
                                         const Tolerance& tol = Tolerance{},
                                         Execution exec = Execution::Parallel);

/// A closed geodesic: a positive real period in the group; the class of
/// log t satisfies delta(e^period t) = delta(t).
struct ClosedGeodesic {
  ComplexValue period;
  double scale;  // e^period
};

bool has_closed_geodesics(const AffineSurface& s, const Tolerance& tol = Tolerance{});

std::optional<ClosedGeodesic> closed_geodesic_witness(const AffineSurface& s, const Tolerance& tol = Tolerance{});

/// The tangent vector of the closed geodesic delta(t) = class of log t at time t > 0.
TangentVector closed_geodesic_tangent(const AffineSurface& s, double t);

}  // namespace affine_lab
