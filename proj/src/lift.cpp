#include "affine_lab/lift.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>

#include "affine_lab/errors.hpp"

namespace affine_lab {

RealAffineMap::RealAffineMap(ComplexValue a, ComplexValue b, ComplexValue c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), na_(a_.value()), nb_(b_.value()), nc_(c_.value()) {}

RealAffineMap RealAffineMap::from_basis_map(const ComplexValue& e1, const ComplexValue& e2, const ComplexValue& f1,
                                            const ComplexValue& f2) {
  // Solve a e + b conj(e) = f for e = e1, e2 by Cramer's rule.
  const ComplexValue d = e1 * e2.conj() - e1.conj() * e2;
  if (d.is_zero() || d.abs() == 0.0) throw DomainError("basis vectors are R-linearly dependent");
  return {(f1 * e2.conj() - e1.conj() * f2) / d, (e1 * f2 - e2 * f1) / d, ComplexValue(0)};
}

ComplexValue RealAffineMap::linear(const ComplexValue& w) const {
  if (b_.is_zero()) return a_ * w;
  return a_ * w + b_ * w.conj();
}

ComplexValue RealAffineMap::operator()(const ComplexValue& z) const {
  if (c_.is_zero()) return linear(z);
  return linear(z) + c_;
}

BaseMap::BaseMap(RealAffineMap map, AffineSurface source, AffineSurface target, std::optional<Witness> witness,
                 bool normalized)
    : map_(std::move(map)),
      source_(std::move(source)),
      target_(std::move(target)),
      witness_(std::move(witness)),
      normalized_(normalized) {}

SurfacePoint BaseMap::operator()(const SurfacePoint& p) const {
  if (!p.surface.same_as(source_)) throw UsageError("base map applied to a point of another surface");
  return {canonical_rep({map_(p.z), target_}), target_};
}

namespace {

const ComplexValue& rank1_period(const AffineSurface& s) {
  return std::get<DiscreteGroup::Rank1>(s.group().generators()).mu;
}

const Lattice& rank2_lattice(const AffineSurface& s) {
  return std::get<DiscreteGroup::Rank2>(s.group().generators()).lattice;
}

void require_kinds(const AffineSurface& s1, const AffineSurface& s2, SurfaceKind kind, std::string_view what) {
  if (s1.kind() != kind || s2.kind() != kind)
    throw UsageError(std::string(what) + " witness needs two surfaces of kind " + std::string(to_string(kind)));
}

RealAffineMap witness_map(const Witness& w, const AffineSurface& s1, const AffineSurface& s2, const Tolerance& tol) {
  const ComplexValue t = ComplexValue::two_pi_i();
  if (std::holds_alternative<IdentityWitness>(w)) {
    if (!s1.same_as(s2, tol)) throw UsageError("identity witness needs equal surfaces");
    return RealAffineMap::identity();
  }
  if (const auto* c = std::get_if<CylinderScalar>(&w)) {
    require_kinds(s1, s2, SurfaceKind::Cylinder, "cylinder");
    return RealAffineMap::scalar(c->ratio);
  }
  if (const auto* c = std::get_if<CylinderRealLinear>(&w)) {
    require_kinds(s1, s2, SurfaceKind::Cylinder, "cylinder");
    return RealAffineMap::from_basis_map(c->mu1, t, c->mu2, t);
  }
  if (const auto* a = std::get_if<TorusScalar>(&w)) {
    require_kinds(s1, s2, SurfaceKind::Torus, "torus");
    return RealAffineMap::scalar(a->alpha);
  }
  const auto& m = std::get<TorusRealLinear>(w).m;
  require_kinds(s1, s2, SurfaceKind::Torus, "torus");
  const Lattice& l1 = rank2_lattice(s1);
  const Lattice& l2 = rank2_lattice(s2);
  return RealAffineMap::from_basis_map(l1.mu(), l1.nu(), l2.point(m[0][0], m[0][1]), l2.point(m[1][0], m[1][1]));
}

// phi maps Gamma1 onto Gamma2.
bool maps_group_onto(const RealAffineMap& phi, const AffineSurface& s1, const AffineSurface& s2, const Tolerance& tol) {
  const DiscreteGroup& g2 = s2.group();
  switch (s1.kind()) {
    case SurfaceKind::Plane: return true;
    case SurfaceKind::Cylinder: {
      const ComplexValue image = phi.linear(rank1_period(s1));
      // Both generate rank-1 groups: equal iff image = +-mu2.
      return g2.contains(image, tol) && is_near_integer(rank1_period(s2) / image, tol);
    }
    case SurfaceKind::Torus: {
      const Lattice& l1 = rank2_lattice(s1);
      if (!g2.contains(phi.linear(l1.mu()), tol) || !g2.contains(phi.linear(l1.nu()), tol)) return false;
      // A sublattice of equal covolume is the whole lattice.
      const ComplexValue det = phi.a() * phi.a().conj() - phi.b() * phi.b().conj();
      const ComplexValue lhs = det * covolume(l1);
      const ComplexValue rhs = covolume(rank2_lattice(s2));
      if (lhs.is_exact() && rhs.is_exact()) return (lhs - rhs).is_zero() || (lhs + rhs).is_zero();
      return std::abs(std::abs(lhs.re()) - rhs.re()) <= tol.eps() * std::max(1.0, rhs.re());
    }
  }
  return false;
}

}  // namespace

BaseMap build_base(const Witness& w, const AffineSurface& s1, const AffineSurface& s2, const Tolerance& tol) {
  if (s1.kind() != s2.kind()) throw UsageError("witness joins surfaces of different kinds");
  RealAffineMap phi = witness_map(w, s1, s2, tol);
  if (!maps_group_onto(phi, s1, s2, tol)) throw UsageError("witness does not carry the first group onto the second");

  const ComplexValue t = ComplexValue::two_pi_i();
  const ComplexValue image = phi.linear(t);
  if (s2.group().contains(image - t, tol)) return BaseMap(std::move(phi), s1, s2, w, false);
  // phi conjugates h1 to h2^{-1}; z -> -z conjugates that back to h2.
  if (s2.group().contains(image + t, tol)) return BaseMap(phi.negated(), s1, s2, w, true);
  throw UsageError("witness does not conjugate the marking automorphisms");
}

TangentVector LiftedConjugacy::apply(const TangentVector& v, int k) const {
  if (!v.surface().same_as(base_.source())) throw UsageError("lift applied to a vector of another surface");
  ComplexValue log_u = principal_log(v.u());
  if (k != 0) log_u = log_u + ComplexValue(static_cast<long>(k)) * ComplexValue::two_pi_i();
  const ComplexValue z = base_.map()(v.z() + log_u) - log_u;
  return TangentVector(base_.target(), canonical_rep({z, base_.target()}), v.u());
}

LiftedConjugacy lift(BaseMap base) { return LiftedConjugacy(std::move(base)); }

// ---------------------------------------------------------------------------
// Verification

namespace {

double tangent_deviation(const TangentVector& a, const TangentVector& b) {
  const double dz = distance_to_group(a.z() - b.z(), a.surface().group());
  const double du = std::abs(a.u().value() - b.u().value());
  return std::max(dz, du);
}

ComplexValue random_point(const AffineSurface& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> wide(-3.0, 3.0);
  const auto& g = s.group().generators();
  if (const auto* r1 = std::get_if<DiscreteGroup::Rank1>(&g)) {
    const std::complex<double> mu = r1->mu.value();
    const std::complex<double> across = std::complex<double>(0.0, 1.0) * mu / std::abs(mu);
    const double along = unit(rng);
    return ComplexValue::approx(along * mu + wide(rng) * across);
  }
  if (const auto* r2 = std::get_if<DiscreteGroup::Rank2>(&g)) {
    const double a = unit(rng);
    const double b = unit(rng);
    return ComplexValue::approx(a * r2->lattice.mu().value() + b * r2->lattice.nu().value());
  }
  const double x = wide(rng);
  return ComplexValue::approx(x, wide(rng));
}

// Runs body(i) for i in [0, n), serially or with OpenMP, rethrowing the first failure.
template <typename Body>
void for_each_index(int n, Execution exec, Body&& body) {
  if (exec == Execution::Serial) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<TangentVector> sample_tangent_vectors(const AffineSurface& s, int n, std::uint64_t seed) {
  if (n < 1) throw UsageError("need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_radius(std::log(0.25), std::log(4.0));
  std::uniform_real_distribution<double> angle(0.05, std::numbers::pi - 0.05);
  std::bernoulli_distribution coin(0.5);
  constexpr double kNearBifurcation = 1e-3;

  std::vector<TangentVector> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    ComplexValue z = random_point(s, rng);
    const double r = std::exp(log_radius(rng));
    std::complex<double> u;
    switch (i % 3) {
      case 0: u = std::polar(r, angle(rng)); break;
      case 1: u = std::polar(r, -angle(rng)); break;
      default: {
        const double re = coin(rng) ? r : -r;
        u = {re, coin(rng) ? kNearBifurcation : -kNearBifurcation};
      }
    }
    out.emplace_back(s, std::move(z), ComplexValue::approx(u));
  }
  return out;
}

VerificationReport verify_flow_conjugacy(const LiftedConjugacy& psi, int n_samples, const std::vector<double>& t_grid,
                                         const Tolerance& tol, std::uint64_t seed, Execution exec) {
  const auto vs = sample_tangent_vectors(psi.base().source(), n_samples, seed);
  const int n = static_cast<int>(vs.size());
  const int m = static_cast<int>(t_grid.size());
  std::vector<double> worst(n, 0.0);
  std::vector<long> agreements(n, 0);

  for_each_index(n, exec, [&](int i) {
    const TangentVector& v = vs[i];
    const TangentVector image = psi(v);
    const MaximalInterval i1 = maximal_interval(v, tol);
    const MaximalInterval i2 = maximal_interval(image, tol);
    for (int j = 0; j < m; ++j) {
      const double t = t_grid[j];
      const bool d1 = i1.contains(t);
      const bool d2 = i2.contains(t);
      if (d1 == d2) ++agreements[i];
      if (!d1 || !d2) continue;
      const TangentVector lhs = psi(flow(v, t, tol));
      const TangentVector rhs = flow(image, t, tol);
      worst[i] = std::max(worst[i], tangent_deviation(lhs, rhs));
    }
  });

  VerificationReport r;
  r.samples = n;
  r.t_grid = t_grid;
  r.seed = seed;
  r.evaluations = static_cast<long>(n) * m;
  for (int i = 0; i < n; ++i) {
    r.max_deviation = std::max(r.max_deviation, worst[i]);
    r.domain_agreements += agreements[i];
  }
  return r;
}

VerificationReport verify_boundary_relations(const LiftedConjugacy& psi, const Tolerance& tol, std::uint64_t seed) {
  const AffineSurface& s1 = psi.base().source();
  const AffineSurface& s2 = psi.base().target();
  const SurfaceAutomorphism h1 = marking_automorphism(s1);
  const SurfaceAutomorphism h2 = marking_automorphism(s2);

  // Psi sends R+ to R+ or to R-; the matching boundary side and power of h2 follow.
  const bool keeps_sides =
      classify(psi(TangentVector(s1, ComplexValue(0), ComplexValue::rational(0, 1, 1, 1))), tol).kind ==
      FlowClassification::Kind::RegularPlus;
  auto mapped = [&](BoundarySide side) {
    if (keeps_sides) return side;
    return side == BoundarySide::Plus ? BoundarySide::Minus : BoundarySide::Plus;
  };
  const SurfaceAutomorphism h2_matched = keeps_sides ? h2 : h2.inverse();

  constexpr int kPoints = 8;
  std::vector<ComplexValue> points;
  points.emplace_back(0);
  points.push_back(ComplexValue::two_pi_i() / ComplexValue(3));
  for (const auto& v : sample_tangent_vectors(s1, kPoints - 2, seed)) points.push_back(v.z());

  const std::vector<ComplexValue> positive{ComplexValue::rational(1, 2), ComplexValue(1), ComplexValue(2)};

  VerificationReport r;
  r.seed = seed;
  r.samples = static_cast<int>(points.size());
  double worst = 0.0;
  bool ok = true;
  for (const ComplexValue& tau2 : positive) {
    for (const ComplexValue& neg : positive) {
      const ComplexValue tau1 = -neg;
      r.t_grid.push_back((tau2 - tau1).re());
      for (const ComplexValue& z : points) {
        const TangentVector v(s1, z, -ComplexValue(1) / tau2);
        const TangentVector w(s1, z, -ComplexValue(1) / tau1);
        const TangentVector pv = psi(v);
        const TangentVector pw = psi(w);
        ok = ok && pv.u() == v.u() && pw.u() == w.u();

        for (const BoundarySide side : {BoundarySide::Plus, BoundarySide::Minus}) {
          worst = std::max(worst, tangent_deviation(psi(boundary_flow(v, tau1, side, tol)),
                                                    boundary_flow(pv, tau1, mapped(side), tol)));
        }
        worst = std::max(worst, tangent_deviation(psi(h1.apply_tangent(v)), h2_matched.apply_tangent(pv)));
        worst = std::max(worst, tangent_deviation(psi(h1.apply_tangent(w)), h2_matched.apply_tangent(pw)));

        // F^{t,-} o Dh+ = F^{t,+} on the source and on the target.
        worst = std::max(worst, tangent_deviation(boundary_flow(h1.apply_tangent(v), tau1, BoundarySide::Minus, tol),
                                                  boundary_flow(v, tau1, BoundarySide::Plus, tol)));
        worst = std::max(worst, tangent_deviation(boundary_flow(h2.apply_tangent(pv), tau1, BoundarySide::Minus, tol),
                                                  boundary_flow(pv, tau1, BoundarySide::Plus, tol)));
      }
    }
  }
  r.max_deviation = worst;
  r.boundary_checks_passed = ok && worst <= tol.eps();
  return r;
}

double branch_deviation(const LiftedConjugacy& psi, int n_samples, std::uint64_t seed) {
  double worst = 0.0;
  for (const TangentVector& v : sample_tangent_vectors(psi.base().source(), n_samples, seed)) {
    const TangentVector principal = psi(v);
    for (const int k : {-2, -1, 1, 2})
      worst = std::max(worst, distance_to_group(principal.z() - psi.apply(v, k).z(), psi.base().target().group()));
  }
  return worst;
}

bool branch_independence(const LiftedConjugacy& psi, int n_samples, const Tolerance& tol, std::uint64_t seed) {
  return branch_deviation(psi, n_samples, seed) <= tol.eps();
}

VerificationReport verify_all(const LiftedConjugacy& psi, int n_samples, const std::vector<double>& t_grid,
                              const Tolerance& tol, std::uint64_t seed, Execution exec) {
  VerificationReport r = verify_flow_conjugacy(psi, n_samples, t_grid, tol, seed, exec);
  const VerificationReport boundary = verify_boundary_relations(psi, tol, seed);
  r.max_deviation = std::max(r.max_deviation, boundary.max_deviation);
  r.boundary_checks_passed = boundary.boundary_checks_passed;
  const double branch = branch_deviation(psi, std::min(n_samples, 100), seed);
  r.max_deviation = std::max(r.max_deviation, branch);
  r.branch_checks_passed = branch <= tol.eps();
  return r;
}

}  // namespace affine_lab
