#include "affine_lab/flow.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>

namespace affine_lab {

namespace {

struct Reality {
  bool real = false;
  bool snapped = false;
};

Reality check_real(const ComplexValue& x, const Tolerance& tol) {
  if (x.is_exact()) return {x.imag_part().is_zero(), false};
  const double im = x.im();
  if (im == 0.0) return {true, false};
  return {std::abs(im) <= tol.eps(), std::abs(im) <= tol.eps()};
}

ComplexValue reduced(const ComplexValue& z, const AffineSurface& s) { return canonical_rep({z, s}); }

// pi i, exactly.
ComplexValue half_turn() { return ComplexValue::two_pi_i() / ComplexValue(2); }

TangentVector flow_unchecked(const TangentVector& v, double t) {
  const ComplexValue w = ComplexValue::approx(1.0 + t * v.u().value());
  return TangentVector(v.surface(), reduced(v.z() + principal_log(w), v.surface()), v.u() / w);
}

}  // namespace

TangentVector::TangentVector(AffineSurface surface, ComplexValue z, ComplexValue u)
    : surface_(std::move(surface)), z_(std::move(z)), u_(std::move(u)) {
  if (u_.is_zero() || u_.abs() == 0.0) throw InvariantError("tangent vector direction must be nonzero");
}

bool MaximalInterval::contains(double t) const {
  switch (kind) {
    case Kind::FullLine: return std::isfinite(t);
    case Kind::RightOfEndpoint: return t > endpoint && std::isfinite(t);
    case Kind::LeftOfEndpoint: return t < endpoint && std::isfinite(t);
  }
  return false;
}

std::optional<double> MaximalInterval::lower() const {
  if (kind == Kind::RightOfEndpoint) return endpoint;
  return std::nullopt;
}

std::optional<double> MaximalInterval::upper() const {
  if (kind == Kind::LeftOfEndpoint) return endpoint;
  return std::nullopt;
}

std::string MaximalInterval::to_string() const {
  char buf[96];
  switch (kind) {
    case Kind::FullLine: return "(-inf, inf)";
    case Kind::RightOfEndpoint: std::snprintf(buf, sizeof buf, "(%.17g, inf)", endpoint); return buf;
    case Kind::LeftOfEndpoint: std::snprintf(buf, sizeof buf, "(-inf, %.17g)", endpoint); return buf;
  }
  return "?";
}

std::string_view to_string(FlowClassification::Kind kind) {
  switch (kind) {
    case FlowClassification::Kind::RegularPlus: return "regular_plus";
    case FlowClassification::Kind::RegularMinus: return "regular_minus";
    case FlowClassification::Kind::Bifurcation: return "bifurcation";
  }
  return "?";
}

FlowUndefinedError::FlowUndefinedError(double t, MaximalInterval interval)
    : Error("flow undefined at t = " + std::to_string(t) + ": maximal interval is " + interval.to_string()),
      t_(t),
      interval_(interval) {}

FlowClassification classify(const TangentVector& v, const Tolerance& tol) {
  const Reality r = check_real(v.u(), tol);
  if (r.real) {
    const ComplexValue re_u = v.u().real_part();
    return {FlowClassification::Kind::Bifurcation, -ComplexValue(1) / re_u, r.snapped};
  }
  return {v.u().im() > 0.0 ? FlowClassification::Kind::RegularPlus : FlowClassification::Kind::RegularMinus,
          ComplexValue(0), false};
}

MaximalInterval maximal_interval(const TangentVector& v, const Tolerance& tol) {
  if (!check_real(v.u(), tol).real) return {};
  const double re_u = v.u().re();
  return {re_u > 0.0 ? MaximalInterval::Kind::RightOfEndpoint : MaximalInterval::Kind::LeftOfEndpoint, -1.0 / re_u};
}

TangentVector flow(const TangentVector& v, double t, const Tolerance& tol) {
  if (t == 0.0) return v;
  const MaximalInterval interval = maximal_interval(v, tol);
  if (!interval.contains(t)) throw FlowUndefinedError(t, interval);
  return flow_unchecked(v, t);
}

TangentVector boundary_flow(const TangentVector& v, const ComplexValue& tau1, BoundarySide side,
                            const Tolerance& tol) {
  const FlowClassification c = classify(v, tol);
  if (c.kind != FlowClassification::Kind::Bifurcation || !(c.tau.re() > 0.0))
    throw UsageError("boundary_flow needs a vector on a sheet B^tau with tau > 0");
  if (!check_real(tau1, tol).real || !(tau1.re() < 0.0)) throw UsageError("boundary_flow needs tau1 < 0");
  const ComplexValue tau1_re = tau1.real_part();
  const ComplexValue shift = principal_log(-tau1_re / c.tau) + (side == BoundarySide::Plus ? half_turn() : -half_turn());
  return TangentVector(v.surface(), reduced(v.z() + shift, v.surface()), -ComplexValue(1) / tau1_re);
}

TangentVector boundary_flow_inverse(const TangentVector& v, const ComplexValue& tau2, BoundarySide side,
                                    const Tolerance& tol) {
  const FlowClassification c = classify(v, tol);
  if (c.kind != FlowClassification::Kind::Bifurcation || !(c.tau.re() < 0.0))
    throw UsageError("boundary_flow_inverse needs a vector on a sheet B^tau with tau < 0");
  if (!check_real(tau2, tol).real || !(tau2.re() > 0.0)) throw UsageError("boundary_flow_inverse needs tau2 > 0");
  const ComplexValue tau2_re = tau2.real_part();
  const ComplexValue shift = principal_log(-c.tau / tau2_re) + (side == BoundarySide::Plus ? half_turn() : -half_turn());
  return TangentVector(v.surface(), reduced(v.z() - shift, v.surface()), -ComplexValue(1) / tau2_re);
}

std::vector<TrajectorySample> trajectory(const TangentVector& v, double t0, double t1, int n, const Tolerance& tol,
                                         Execution exec) {
  if (n < 2) throw UsageError("trajectory needs at least two samples");
  if (!(t0 <= t1)) throw UsageError("trajectory needs t0 <= t1");
  const MaximalInterval interval = maximal_interval(v, tol);
  double lo = t0;
  double hi = t1;
  if (const auto l = interval.lower()) lo = std::max(lo, *l + tol.eps());
  if (const auto u = interval.upper()) hi = std::min(hi, *u - tol.eps());
  if (lo > hi) throw EmptyTrajectoryError("time window does not meet the maximal interval " + interval.to_string());

  auto time_at = [&](int k) {
    if (k == n - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  };

  if (exec == Execution::Serial) {
    std::vector<TrajectorySample> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
      const double t = time_at(k);
      out.push_back({t, t == 0.0 ? v : flow_unchecked(v, t)});
    }
    return out;
  }

  std::vector<TrajectorySample> out(n, TrajectorySample{0.0, v});
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    try {
      const double t = time_at(k);
      out[k] = {t, t == 0.0 ? v : flow_unchecked(v, t)};
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Positive generator of the group's real points, if any.
std::optional<ComplexValue> real_period(const AffineSurface& s, const Tolerance& tol) {
  const auto& gens = s.group().generators();
  auto positive = [](ComplexValue x) { return x.re() < 0.0 ? -x : x; };

  if (const auto* r1 = std::get_if<DiscreteGroup::Rank1>(&gens)) {
    if (!check_real(r1->mu, tol).real) return std::nullopt;
    return positive(r1->mu.is_exact() ? r1->mu : r1->mu.real_part());
  }
  const auto* r2 = std::get_if<DiscreteGroup::Rank2>(&gens);
  if (r2 == nullptr) return std::nullopt;

  const Lattice& lat = r2->lattice;
  if (lat.is_exact()) {
    // a Im(mu) + b Im(nu) = 0 has a nonzero integer solution iff the ratio of
    // imaginary parts is rational (or one of them vanishes).
    const ComplexValue im_mu = lat.mu().imag_part();
    const ComplexValue im_nu = lat.nu().imag_part();
    if (im_mu.is_zero()) return positive(lat.mu());
    if (im_nu.is_zero()) return positive(lat.nu());
    const auto ratio = (im_nu / im_mu).exact_rational();
    if (!ratio) return std::nullopt;
    const long b = ratio->get_den().get_si();
    const long a = -ratio->get_num().get_si();
    return positive(lat.point(a, b));
  }

  // Approximate track: continued-fraction convergents of -Im(nu)/Im(mu).
  const double im_mu = lat.mu().im();
  const double im_nu = lat.nu().im();
  auto hit = [&](std::int64_t a, std::int64_t b) {
    return std::abs(static_cast<double>(a) * im_mu + static_cast<double>(b) * im_nu) <= tol.eps();
  };
  if (hit(1, 0)) return positive(lat.mu().real_part());
  if (hit(0, 1)) return positive(lat.nu().real_part());
  if (std::abs(im_mu) <= tol.eps()) return std::nullopt;
  const double x = -im_nu / im_mu;  // want a = b x
  constexpr std::int64_t kMaxDenominator = 10000;
  std::int64_t p_prev = 1, q_prev = 0, p = static_cast<std::int64_t>(std::floor(x)), q = 1;
  double rest = x - std::floor(x);
  while (q <= kMaxDenominator) {
    if (hit(p, q)) {
      const std::int64_t g = std::gcd(p, q);
      return positive(lat.point(p / g, q / g).real_part());
    }
    if (rest < 1e-15) break;
    const double inv = 1.0 / rest;
    const auto step = static_cast<std::int64_t>(std::floor(inv));
    rest = inv - std::floor(inv);
    const std::int64_t p_next = step * p + p_prev;
    const std::int64_t q_next = step * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  return std::nullopt;
}

}  // namespace

bool has_closed_geodesics(const AffineSurface& s, const Tolerance& tol) { return real_period(s, tol).has_value(); }

std::optional<ClosedGeodesic> closed_geodesic_witness(const AffineSurface& s, const Tolerance& tol) {
  auto period = real_period(s, tol);
  if (!period) return std::nullopt;
  const double scale = std::exp(period->re());
  return ClosedGeodesic{std::move(*period), scale};
}

TangentVector closed_geodesic_tangent(const AffineSurface& s, double t) {
  if (!(t > 0.0)) throw DomainError("the closed geodesic is parametrized by t > 0");
  return TangentVector(s, reduced(ComplexValue::approx(std::log(t)), s), ComplexValue::approx(1.0 / t));
}

}  // namespace affine_lab
