#include "affine_lab/surfaces.hpp"

#include <cmath>
#include <cctype>
#include <limits>

#include "affine_lab/errors.hpp"
#include "affine_lab/literal.hpp"

namespace affine_lab {

namespace {

using cd = std::complex<double>;

struct Pick {
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;
};

// Among z - (k1 g1 + k2 g2) for the candidate coefficients, the one nearest 0;
// near-ties go to the lexicographically smallest (re, im).
template <typename Candidates>
Pick pick_nearest(cd z, cd g1, cd g2, const Candidates& candidates) {
  Pick best;
  cd best_rep{};
  double best_dist = std::numeric_limits<double>::infinity();
  const double tie = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z));
  for (const auto& [k1, k2] : candidates) {
    const cd rep = z - (static_cast<double>(k1) * g1 + static_cast<double>(k2) * g2);
    const double d = std::abs(rep);
    bool take = false;
    if (d < best_dist - tie) {
      take = true;
    } else if (d <= best_dist + tie) {
      take = rep.real() < best_rep.real() - tie ||
             (std::abs(rep.real() - best_rep.real()) <= tie && rep.imag() < best_rep.imag());
    }
    if (take) {
      best = {k1, k2};
      best_rep = rep;
      best_dist = std::min(d, best_dist);
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Plane: return "plane";
    case SurfaceKind::Cylinder: return "cylinder";
    case SurfaceKind::Torus: return "torus";
  }
  return "?";
}

DiscreteGroup::DiscreteGroup(std::variant<Trivial, Rank1, Rank2> gens) : gens_(std::move(gens)) {
  if (const auto* r1 = std::get_if<Rank1>(&gens_)) {
    g1_ = r1->mu.value();
  } else if (const auto* r2 = std::get_if<Rank2>(&gens_)) {
    reduced_ = std::make_shared<const ReducedBasis>(gauss_reduce(r2->lattice));
    g1_ = reduced_->lattice.mu().value();
    g2_ = reduced_->lattice.nu().value();
  }
}

DiscreteGroup DiscreteGroup::trivial() { return DiscreteGroup(Trivial{}); }

DiscreteGroup DiscreteGroup::rank1(ComplexValue mu) {
  if (mu.is_zero() || mu.abs() == 0.0) throw InvariantError("cylinder period must be nonzero");
  return DiscreteGroup(Rank1{std::move(mu)});
}

DiscreteGroup DiscreteGroup::rank2(Lattice lattice) { return DiscreteGroup(Rank2{std::move(lattice)}); }

SurfaceKind DiscreteGroup::kind() const {
  switch (gens_.index()) {
    case 0: return SurfaceKind::Plane;
    case 1: return SurfaceKind::Cylinder;
    default: return SurfaceKind::Torus;
  }
}

bool DiscreteGroup::is_exact() const {
  if (const auto* r1 = std::get_if<Rank1>(&gens_)) return r1->mu.is_exact();
  if (const auto* r2 = std::get_if<Rank2>(&gens_)) return r2->lattice.is_exact();
  return true;
}

ComplexValue DiscreteGroup::nearest_element(const ComplexValue& z) const {
  const cd w = z.value();
  if (const auto* r1 = std::get_if<Rank1>(&gens_)) {
    const double s = (w * std::conj(g1_)).real() / std::norm(g1_);
    const auto f = static_cast<std::int64_t>(std::floor(s));
    const std::pair<std::int64_t, std::int64_t> cands[] = {{f, 0}, {f + 1, 0}};
    const Pick p = pick_nearest(w, g1_, cd{}, cands);
    return ComplexValue(static_cast<long>(p.k1)) * r1->mu;
  }
  if (reduced_) {
    const double det = (std::conj(g1_) * g2_).imag();
    const double c1 = (std::conj(w) * g2_).imag() / det;
    const double c2 = (std::conj(g1_) * w).imag() / det;
    const auto f1 = static_cast<std::int64_t>(std::floor(c1));
    const auto f2 = static_cast<std::int64_t>(std::floor(c2));
    std::pair<std::int64_t, std::int64_t> cands[16];
    int n = 0;
    for (std::int64_t i = -1; i <= 2; ++i)
      for (std::int64_t j = -1; j <= 2; ++j) cands[n++] = {f1 + i, f2 + j};
    const Pick p = pick_nearest(w, g1_, g2_, cands);
    return reduced_->lattice.point(p.k1, p.k2);
  }
  return ComplexValue(0);
}

bool DiscreteGroup::contains(const ComplexValue& z, const Tolerance& tol) const {
  if (std::holds_alternative<Trivial>(gens_)) return z.is_exact() ? z.is_zero() : z.abs() <= tol.eps();
  if (const auto* r1 = std::get_if<Rank1>(&gens_)) {
    if (z.is_exact() && r1->mu.is_exact()) return (z / r1->mu).exact_integer().has_value();
    const cd w = z.value();
    const double k = round_half_even((w * std::conj(g1_)).real() / std::norm(g1_));
    return std::abs(w - k * g1_) <= tol.eps();
  }
  return lattice_member(z, std::get<Rank2>(gens_).lattice, tol).has_value();
}

bool same_group(const DiscreteGroup& a, const DiscreteGroup& b, const Tolerance& tol) {
  if (a.kind() != b.kind()) return false;
  const auto& ga = a.generators();
  const auto& gb = b.generators();
  if (const auto* r1 = std::get_if<DiscreteGroup::Rank1>(&ga)) {
    const auto& r1b = std::get<DiscreteGroup::Rank1>(gb);
    return b.contains(r1->mu, tol) && a.contains(r1b.mu, tol);
  }
  if (const auto* r2 = std::get_if<DiscreteGroup::Rank2>(&ga)) {
    const auto& r2b = std::get<DiscreteGroup::Rank2>(gb);
    return b.contains(r2->lattice.mu(), tol) && b.contains(r2->lattice.nu(), tol) &&
           a.contains(r2b.lattice.mu(), tol) && a.contains(r2b.lattice.nu(), tol);
  }
  return true;
}

// ---------------------------------------------------------------------------

AffineSurface::AffineSurface(DiscreteGroup group) : group_(std::make_shared<const DiscreteGroup>(std::move(group))) {}

std::string AffineSurface::describe() const {
  const auto& g = group_->generators();
  if (const auto* r1 = std::get_if<DiscreteGroup::Rank1>(&g)) return "cylinder:" + r1->mu.to_string();
  if (const auto* r2 = std::get_if<DiscreteGroup::Rank2>(&g))
    return "torus:" + r2->lattice.mu().to_string() + "," + r2->lattice.nu().to_string();
  return "plane";
}

bool AffineSurface::same_as(const AffineSurface& other, const Tolerance& tol) const {
  return group_ == other.group_ || same_group(*group_, *other.group_, tol);
}

AffineSurface parse_surface(std::string_view text, const Tolerance& tol) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "plane") return AffineSurface::plane();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("unknown surface '" + std::string(text) + "'");
  const std::string_view head = trim(text.substr(0, colon));
  const std::string_view body = text.substr(colon + 1);
  if (head == "cylinder") {
    ComplexValue mu = parse_complex(body);
    if (mu.is_zero()) throw ParseError("cylinder period must be nonzero");
    return AffineSurface::cylinder(std::move(mu));
  }
  if (head == "torus") {
    // Split on the top-level comma only.
    int depth = 0;
    std::size_t split = std::string_view::npos;
    for (std::size_t k = 0; k < body.size(); ++k) {
      if (body[k] == '(') ++depth;
      if (body[k] == ')') --depth;
      if (body[k] == ',' && depth == 0) {
        if (split != std::string_view::npos) throw ParseError("torus takes exactly two generators");
        split = k;
      }
    }
    if (split == std::string_view::npos) throw ParseError("torus takes exactly two generators");
    ComplexValue mu = parse_complex(body.substr(0, split));
    ComplexValue nu = parse_complex(body.substr(split + 1));
    if ((mu.involves_two_pi_i() && !nu.is_exact()) || (nu.involves_two_pi_i() && !mu.is_exact()))
      throw ParseError("torus mixes a 2pi*i-track generator with a decimal one");
    try {
      return AffineSurface::torus(std::move(mu), std::move(nu), tol);
    } catch (const InvariantError& e) {
      throw ParseError(std::string("invalid torus: ") + e.what());
    }
  }
  throw ParseError("unknown surface kind '" + std::string(head) + "'");
}

ComplexValue canonical_rep(const SurfacePoint& p) {
  const DiscreteGroup& g = p.surface.group();
  if (g.kind() == SurfaceKind::Plane) return p.z;
  return p.z - g.nearest_element(p.z);
}

double distance_to_group(const ComplexValue& z, const DiscreteGroup& group) {
  if (group.kind() == SurfaceKind::Plane) return z.abs();
  return std::abs(z.value() - group.nearest_element(z).value());
}

bool points_equal(const SurfacePoint& p, const SurfacePoint& q, const Tolerance& tol) {
  if (!p.surface.same_as(q.surface, tol)) throw UsageError("points live on different surfaces");
  return p.surface.group().contains(p.z - q.z, tol);
}

std::pair<SurfacePoint, SurfacePoint> marked_points(const AffineSurface& s) {
  return {SurfacePoint{ComplexValue(0), s}, SurfacePoint{ComplexValue::two_pi_i(), s}};
}

}  // namespace affine_lab
