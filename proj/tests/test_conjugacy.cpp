#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "affine_lab/conjugacy.hpp"
#include "affine_lab/errors.hpp"
#include "affine_lab/lift.hpp"
#include "support.hpp"

using namespace affine_lab;
using namespace affine_lab::testing;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

const Lattice& lattice_of(const AffineSurface& s) { return std::get<DiscreteGroup::Rank2>(s.group().generators()).lattice; }

bool lifts_cleanly(const ConjugacyVerdict& v, const AffineSurface& s1, const AffineSurface& s2, int samples) {
  const LiftedConjugacy psi = lift(build_base(*v.witness, s1, s2));
  return verify_all(psi, samples, kStandardTimeGrid, Tolerance{}, 7).passed(kVerificationThreshold);
}

// Approximate torus pair related by M0 = [[5, 6], [4, 5]]: L1 = (1, nu1) and
// L2 = (1, nu2) with marking (p, q) = (x, y) M0.
std::pair<AffineSurface, AffineSurface> approximate_orbit_pair(std::complex<double> nu1) {
  const std::complex<double> t{0.0, 2.0 * kPi};
  const double y = t.imag() / nu1.imag();
  const double x = -y * nu1.real();
  const double p = 5 * x + 4 * y, q = 6 * x + 5 * y;
  const std::complex<double> nu2 = (t - p) / q;
  return {AffineSurface::torus(ComplexValue::approx(1.0), ComplexValue::approx(nu1)),
          AffineSurface::torus(ComplexValue::approx(1.0), ComplexValue::approx(nu2))};
}

}  // namespace

// ---------------------------------------------------------------------------
// Cylinders

TEST(Cylinder, ClosedAndOpenPair) {
  const ConjugacyVerdict v =
      decide_cylinder(ComplexValue(1), parse_complex("2pi*i/(2pi*i-1)"), ConjugacyMode::Holomorphic);
  ASSERT_TRUE(v.conjugate());
  EXPECT_TRUE(v.exact);
  const auto& w = std::get<CylinderScalar>(*v.witness);
  EXPECT_EQ(w.sign, 1);
  EXPECT_EQ(w.ratio, parse_complex("2pi*i/(2pi*i-1)"));
}

TEST(Cylinder, BasicInstances) {
  const ComplexValue mu = parse_complex("3+2pi*i/5");
  for (const auto mode : {ConjugacyMode::Holomorphic, ConjugacyMode::Topological}) {
    const ConjugacyVerdict same = decide_cylinder(mu, mu, mode);
    ASSERT_TRUE(same.conjugate());
    EXPECT_EQ(std::get<CylinderScalar>(*same.witness).ratio, ComplexValue(1));
  }

  const ConjugacyVerdict imag = decide_cylinder(parse_complex("2pi*i"), parse_complex("4pi*i"), ConjugacyMode::Topological);
  EXPECT_EQ(imag.status, VerdictStatus::NotConjugate);
  EXPECT_EQ(imag.reason, NotConjugateReason::PurelyImaginaryPeriodMismatch);
  EXPECT_TRUE(imag.exact);

  const ConjugacyVerdict real = decide_cylinder(parse_complex("1+i"), parse_complex("3-i"), ConjugacyMode::Topological);
  ASSERT_TRUE(real.conjugate());
  EXPECT_EQ(witness_type(*real.witness), "cylinder_real_linear");

  EXPECT_EQ(decide_cylinder(parse_complex("1+i"), parse_complex("3-i"), ConjugacyMode::Holomorphic).reason,
            NotConjugateReason::NoScalingPreservesMarking);
  EXPECT_THROW(decide_cylinder(ComplexValue(0), ComplexValue(1), ConjugacyMode::Holomorphic), DomainError);
}

TEST(Cylinder, MinusSignIsFoundWhenPlusFails) {
  // rho = 1/3 and 2/3: the difference is not an integer, the sum is.
  const ConjugacyVerdict v = decide_cylinder(parse_complex("2pi*i/(1/3)"), parse_complex("2pi*i/(2/3)"),
                                             ConjugacyMode::Holomorphic);
  ASSERT_TRUE(v.conjugate());
  EXPECT_EQ(std::get<CylinderScalar>(*v.witness).sign, -1);
}

TEST(Cylinder, GridMatchesHandCriteriaAtEveryTolerance) {
  const auto grid = cylinder_rho_grid();
  int conjugate = 0, total = 0;
  for (const Rho& a : grid) {
    for (const Rho& b : grid) {
      const AffineSurface s1 = cylinder_from_rho(a), s2 = cylinder_from_rho(b);
      const ComplexValue mu1 = std::get<DiscreteGroup::Rank1>(s1.group().generators()).mu;
      const ComplexValue mu2 = std::get<DiscreteGroup::Rank1>(s2.group().generators()).mu;
      for (const double eps : {1e-12, 1e-10, 1e-9, 1e-8, 1e-6}) {
        const Tolerance tol(eps);
        const auto h = decide_cylinder(mu1, mu2, ConjugacyMode::Holomorphic, tol);
        const auto t = decide_cylinder(mu1, mu2, ConjugacyMode::Topological, tol);
        EXPECT_EQ(h.conjugate(), hand_holomorphic(a, b)) << a.text << " vs " << b.text << " eps " << eps;
        EXPECT_EQ(t.conjugate(), hand_topological(a, b)) << a.text << " vs " << b.text << " eps " << eps;
        EXPECT_TRUE(h.exact);
        EXPECT_TRUE(t.exact);
      }
      ++total;
      conjugate += hand_topological(a, b);
    }
  }
  // The grid exercises both outcomes.
  EXPECT_GT(conjugate, 0);
  EXPECT_LT(conjugate, total);
}

TEST(Cylinder, ConjugateVerdictsLift) {
  const auto grid = cylinder_rho_grid();
  for (std::size_t i = 0; i < grid.size(); i += 3) {
    for (std::size_t j = 0; j < grid.size(); j += 2) {
      const AffineSurface s1 = cylinder_from_rho(grid[i]), s2 = cylinder_from_rho(grid[j]);
      for (const auto mode : {ConjugacyMode::Holomorphic, ConjugacyMode::Topological}) {
        const ConjugacyVerdict v = decide(s1, s2, mode);
        if (!v.conjugate()) continue;
        EXPECT_TRUE(lifts_cleanly(v, s1, s2, 60)) << grid[i].text << " vs " << grid[j].text;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Marked tori

TEST(MarkedTorus, Coordinates) {
  const MarkedTorus a = make_marked_torus(Lattice(parse_complex("2pi*i"), ComplexValue(1)));
  EXPECT_EQ(a.x, ComplexValue(1));
  EXPECT_EQ(a.y, ComplexValue(0));
  const MarkedTorus b = make_marked_torus(Lattice(parse_complex("4pi*i"), ComplexValue(1)));
  EXPECT_EQ(b.x, ComplexValue::rational(1, 2));
  EXPECT_EQ(b.y, ComplexValue(0));
  const MarkedTorus c = make_marked_torus(Lattice(parse_complex("2*pi"), parse_complex("2pi*i")));
  EXPECT_EQ(c.x, ComplexValue(0));
  EXPECT_EQ(c.y, ComplexValue(1));
  EXPECT_TRUE(c.is_rational());

  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const auto [x, y] = random_rational_point(rng, 12);
    const MarkedTorus m = make_marked_torus(lattice_of(torus_with_marking(x, y)));
    if (x == 0 && y == 0) continue;
    EXPECT_EQ(m.x, from_mpq(x));
    EXPECT_EQ(m.y, from_mpq(y));
  }
}

// ---------------------------------------------------------------------------
// Torus, holomorphic

TEST(TorusHolomorphic, SquareTorusHasFourScalings) {
  const Lattice sq(parse_complex("2*pi"), parse_complex("2pi*i"));
  const auto ws = torus_scalar_witnesses(sq, sq);
  const std::vector<ComplexValue> expected{ComplexValue(1), parse_complex("-i"), parse_complex("i"), ComplexValue(-1)};
  EXPECT_EQ(ws, expected);
  const ConjugacyVerdict v = decide_torus_holomorphic(sq, sq);
  ASSERT_TRUE(v.conjugate());
  EXPECT_EQ(std::get<TorusScalar>(*v.witness).alpha, ComplexValue(1));
  EXPECT_TRUE(v.exact);
  // alpha = i: i 2 pi i - 2 pi i = -2 pi - 2 pi i is a period.
  EXPECT_TRUE(lattice_member(parse_complex("i") * ComplexValue::two_pi_i() - ComplexValue::two_pi_i(), sq));
}

TEST(TorusHolomorphic, IdentityOnArbitraryLattices) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 30; ++k) {
    const std::complex<double> mu{d(rng), d(rng)}, nu{d(rng), d(rng)};
    if (std::abs((std::conj(mu) * nu).imag()) < 0.2) continue;
    const Lattice l(ComplexValue::approx(mu), ComplexValue::approx(nu));
    const ConjugacyVerdict v = decide_torus_holomorphic(l, l);
    ASSERT_TRUE(v.conjugate());
    EXPECT_NEAR(std::abs(std::get<TorusScalar>(*v.witness).alpha.value() - 1.0), 0.0, 1e-12);
  }
}

TEST(TorusHolomorphic, IrrationalScaleAgainstBruteForce) {
  const Lattice l1(ComplexValue::approx(0.0, 2 * kPi), ComplexValue::approx(4 * kPi));
  const Lattice l2(ComplexValue::approx(0.0, 2 * kPi), ComplexValue::approx(2 * kPi * (1 + kE)));
  const ConjugacyVerdict v = decide_torus_holomorphic(l1, l2);
  EXPECT_EQ(v.status, VerdictStatus::NotConjugate);
  EXPECT_EQ(v.reason, NotConjugateReason::NoScalingPreservesMarking);
  EXPECT_FALSE(v.exact);

  // Oracle: every lattice point of L2 with small coefficients fails as lambda.
  const std::complex<double> t{0.0, 2 * kPi};
  const double cov1 = std::abs((std::conj(l1.mu().value()) * l1.nu().value()).imag());
  const double cov2 = std::abs((std::conj(l2.mu().value()) * l2.nu().value()).imag());
  auto in_l2 = [&](std::complex<double> z) {
    return lattice_member(ComplexValue::approx(z), l2).has_value();
  };
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b) {
      if (a == 0 && b == 0) continue;
      const std::complex<double> alpha = l2.point(a, b).value() / l1.mu().value();
      const bool ok = in_l2(alpha * l1.nu().value()) && in_l2(alpha * t - t) &&
                      std::abs(std::norm(alpha) * cov1 - cov2) <= 1e-9 * cov2;
      EXPECT_FALSE(ok) << a << "," << b;
    }
}

TEST(TorusHolomorphic, NonUnitScaling) {
  // L2 = alpha L1 with alpha = 2 pi i / (2 pi i - 1), so alpha 2 pi i - 2 pi i = alpha.
  const ComplexValue t = ComplexValue::two_pi_i();
  const ComplexValue alpha = t / (t - ComplexValue(1));
  const Lattice l1(ComplexValue(1), t);
  const Lattice l2(alpha, alpha * t);
  const auto ws = torus_scalar_witnesses(l1, l2);
  ASSERT_FALSE(ws.empty());
  EXPECT_EQ(ws.front(), alpha);
  EXPECT_TRUE(decide_torus_holomorphic(l1, l2).exact);

  // Doubling the lattice loses the marking: 2 pi i is not in 2 L1.
  const Lattice doubled(ComplexValue(2), ComplexValue(2) * t);
  EXPECT_TRUE(torus_scalar_witnesses(l1, doubled).empty());
}

// ---------------------------------------------------------------------------
// Torus, topological

TEST(TorusTopological, OrdersTwoAndThree) {
  const Lattice a(parse_complex("4pi*i"), ComplexValue(1));
  const Lattice b(ComplexValue(1), parse_complex("4pi*i+1"));
  const Lattice c(parse_complex("6pi*i"), ComplexValue(1));

  const ConjugacyVerdict same = decide_torus_topological(a, a);
  ASSERT_TRUE(same.conjugate());
  EXPECT_TRUE(same.exact);

  const ConjugacyVerdict ab = decide_torus_topological(a, b);
  ASSERT_TRUE(ab.conjugate());
  EXPECT_TRUE(ab.exact);
  const IntMatrix2 m = std::get<TorusRealLinear>(*ab.witness).m;
  EXPECT_EQ(std::abs(determinant(m)), 1);
  const auto mb = make_marked_torus(b);
  EXPECT_EQ(mb.x, ComplexValue::rational(-1, 2));
  EXPECT_EQ(mb.y, ComplexValue::rational(1, 2));
  EXPECT_TRUE(search_gl2z(0.5, 0.0, -0.5, 0.5, 20, Tolerance{}).has_value());

  const ConjugacyVerdict ac = decide_torus_topological(a, c);
  EXPECT_EQ(ac.status, VerdictStatus::NotConjugate);
  EXPECT_EQ(ac.reason, NotConjugateReason::MarkingOrdersDiffer);
  EXPECT_FALSE(search_gl2z(0.5, 0.0, 1.0 / 3.0, 0.0, 50, Tolerance{}).has_value());
}

TEST(TorusTopological, RationalAgainstIrrationalMarking) {
  // The square torus has marking (0, 1); (2 pi, 1 + 2 pi i) has an irrational one.
  const Lattice sq(parse_complex("2*pi"), parse_complex("2pi*i"));
  const Lattice odd(parse_complex("2*pi"), parse_complex("1+2pi*i"));
  EXPECT_FALSE(make_marked_torus(odd).is_rational());
  const ConjugacyVerdict v = decide_torus_topological(sq, odd);
  EXPECT_EQ(v.status, VerdictStatus::NotConjugate);
  EXPECT_EQ(v.reason, NotConjugateReason::MarkingOrdersDiffer);
}

TEST(TorusTopological, FastPathAgreesWithSearch) {
  std::mt19937_64 rng(11);
  int agreed_conjugate = 0, agreed_not = 0;
  for (int k = 0; k < 100; ++k) {
    const auto [x, y] = random_rational_point(rng, 12);
    auto [p, q] = random_rational_point(rng, 12);
    if (k % 2 == 0) {
      while (rational_point_order(p, q) != rational_point_order(x, y)) std::tie(p, q) = random_rational_point(rng, 12);
    }
    const auto fast = rational_orbit_witness(x, y, p, q);
    const auto found = search_gl2z(x.get_d(), y.get_d(), p.get_d(), q.get_d(), 20, Tolerance{});
    EXPECT_EQ(fast.has_value(), found.has_value()) << x << "," << y << " -> " << p << "," << q;
    EXPECT_EQ(fast.has_value(), rational_point_order(x, y) == rational_point_order(p, q));
    if (fast) {
      EXPECT_EQ(std::abs(determinant(*fast)), 1);
      const mpq_class dx = x * mpq_class((*fast)[0][0]) + y * mpq_class((*fast)[1][0]) - p;
      const mpq_class dy = x * mpq_class((*fast)[0][1]) + y * mpq_class((*fast)[1][1]) - q;
      EXPECT_EQ(dx.get_den(), 1);
      EXPECT_EQ(dy.get_den(), 1);
      ++agreed_conjugate;
    } else {
      ++agreed_not;
    }
  }
  EXPECT_GT(agreed_conjugate, 40);
  EXPECT_GT(agreed_not, 10);
}

TEST(TorusTopological, SerialAndParallelSearchReturnTheSameMatrix) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    const auto [x, y] = random_rational_point(rng, 8);
    const auto [p, q] = random_rational_point(rng, 8);
    const auto s = search_gl2z(x.get_d(), y.get_d(), p.get_d(), q.get_d(), 8, Tolerance{}, Execution::Serial);
    const auto par = search_gl2z(x.get_d(), y.get_d(), p.get_d(), q.get_d(), 8, Tolerance{}, Execution::Parallel);
    EXPECT_EQ(s, par);
  }
  const auto [l1, l2] = approximate_orbit_pair({0.3, 1.7});
  const auto m1 = make_marked_torus(lattice_of(l1)), m2 = make_marked_torus(lattice_of(l2));
  const auto s = search_gl2z(m1.x.re(), m1.y.re(), m2.x.re(), m2.y.re(), 6, Tolerance{}, Execution::Serial);
  const auto par = search_gl2z(m1.x.re(), m1.y.re(), m2.x.re(), m2.y.re(), 6, Tolerance{}, Execution::Parallel);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s, par);
  EXPECT_EQ(*s, (IntMatrix2{{{5, 6}, {4, 5}}}));
  EXPECT_THROW(search_gl2z(0, 0, 0, 0, 0, Tolerance{}), UsageError);
}

TEST(TorusTopological, SearchBoundGivesUnknown) {
  const auto [l1, l2] = approximate_orbit_pair({0.3, 1.7});
  const ConjugacyVerdict small = decide(l1, l2, ConjugacyMode::Topological, Tolerance{}, 3);
  EXPECT_EQ(small.status, VerdictStatus::Unknown);
  EXPECT_EQ(small.reason, NotConjugateReason::SearchBoundExhausted);
  EXPECT_EQ(small.search_bound, 3);

  const ConjugacyVerdict big = decide(l1, l2, ConjugacyMode::Topological);
  ASSERT_TRUE(big.conjugate());
  EXPECT_FALSE(big.exact);
  EXPECT_EQ(big.search_bound, kDefaultSearchBound);
  EXPECT_TRUE(lifts_cleanly(big, l1, l2, 100));
}

TEST(TorusTopological, UnimodularHelpers) {
  const IntMatrix2 m{{{2, 1}, {1, 1}}};
  EXPECT_EQ(multiply(m, inverse_unimodular(m)), (IntMatrix2{{{1, 0}, {0, 1}}}));
  EXPECT_THROW(inverse_unimodular(IntMatrix2{{{2, 0}, {0, 1}}}), DomainError);
  EXPECT_EQ(rational_point_order(mpq_class(1, 4), mpq_class(5, 6)), 12);
  EXPECT_EQ(rational_point_order(mpq_class(3), mpq_class(-2)), 1);
}

// ---------------------------------------------------------------------------
// decide

TEST(Decide, Dispatch) {
  const AffineSurface plane = AffineSurface::plane();
  const AffineSurface cyl = parse_surface("cylinder:1");
  const AffineSurface sq = parse_surface("torus:2*pi,2pi*i");
  for (const auto mode : {ConjugacyMode::Holomorphic, ConjugacyMode::Topological}) {
    const ConjugacyVerdict mixed = decide(cyl, sq, mode);
    EXPECT_EQ(mixed.status, VerdictStatus::NotConjugate);
    EXPECT_EQ(mixed.reason, NotConjugateReason::UnderlyingSpacesNotHomeomorphic);
    EXPECT_EQ(decide(plane, cyl, mode).reason, NotConjugateReason::UnderlyingSpacesNotHomeomorphic);
    const ConjugacyVerdict pp = decide(plane, plane, mode);
    ASSERT_TRUE(pp.conjugate());
    EXPECT_EQ(witness_type(*pp.witness), "identity");
  }
  const ConjugacyVerdict pair = decide(cyl, parse_surface("cylinder:2pi*i/(2pi*i-1)"), ConjugacyMode::Topological);
  ASSERT_TRUE(pair.conjugate());
  EXPECT_EQ(witness_type(*pair.witness), "cylinder_scalar");
  EXPECT_EQ(pair.mode, ConjugacyMode::Topological);
}

namespace {

std::vector<AffineSurface> random_instances(std::mt19937_64& rng) {
  std::vector<AffineSurface> out;
  const auto grid = cylinder_rho_grid();
  for (int k = 0; k < 8; ++k) out.push_back(cylinder_from_rho(grid[rng() % grid.size()]));
  for (int k = 0; k < 8; ++k) {
    const auto [x, y] = random_rational_point(rng, 6);
    out.push_back(torus_with_marking(x, y));
  }
  out.push_back(parse_surface("torus:2*pi,2pi*i"));
  out.push_back(parse_surface("torus:2*pi*i,2*pi"));
  const auto [a, b] = approximate_orbit_pair({-0.4, 2.3});
  out.push_back(a);
  out.push_back(b);
  out.push_back(parse_surface("cylinder:1+i"));
  return out;
}

}  // namespace

TEST(Decide, SymmetricWithInvertedWitness) {
  std::mt19937_64 rng(17);
  const auto surfaces = random_instances(rng);
  int checked = 0;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    for (std::size_t j = 0; j < surfaces.size(); ++j) {
      for (const auto mode : {ConjugacyMode::Holomorphic, ConjugacyMode::Topological}) {
        const ConjugacyVerdict ab = decide(surfaces[i], surfaces[j], mode);
        const ConjugacyVerdict ba = decide(surfaces[j], surfaces[i], mode);
        if (ab.status == VerdictStatus::Unknown || ba.status == VerdictStatus::Unknown) continue;
        EXPECT_EQ(ab.conjugate(), ba.conjugate()) << surfaces[i].describe() << " / " << surfaces[j].describe();
        if (ab.conjugate() && (i * 7 + j) % 5 == 0) {
          ConjugacyVerdict inv = ab;
          inv.witness = inverse_witness(*ab.witness);
          EXPECT_TRUE(lifts_cleanly(inv, surfaces[j], surfaces[i], 40));
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 5);
}

TEST(Decide, HolomorphicImpliesTopological) {
  std::mt19937_64 rng(19);
  const auto surfaces = random_instances(rng);
  for (const auto& s1 : surfaces)
    for (const auto& s2 : surfaces)
      if (decide(s1, s2, ConjugacyMode::Holomorphic).conjugate())
        EXPECT_TRUE(decide(s1, s2, ConjugacyMode::Topological).conjugate()) << s1.describe() << " / " << s2.describe();
}

TEST(Decide, RationalTorusVerdictMatchesOrders) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 40; ++k) {
    const auto [x, y] = random_rational_point(rng, 6);
    const auto [p, q] = random_rational_point(rng, 6);
    const AffineSurface s1 = torus_with_marking(x, y), s2 = torus_with_marking(p, q);
    const ConjugacyVerdict v = decide(s1, s2, ConjugacyMode::Topological);
    EXPECT_EQ(v.conjugate(), rational_point_order(x, y) == rational_point_order(p, q));
    if (v.conjugate() && k % 4 == 0) EXPECT_TRUE(lifts_cleanly(v, s1, s2, 60));
  }
}

TEST(Witness, InverseAndTags) {
  const Witness a = CylinderScalar{-1, ComplexValue(2)};
  const auto& inv = std::get<CylinderScalar>(inverse_witness(a));
  EXPECT_EQ(inv.sign, -1);
  EXPECT_EQ(inv.ratio, ComplexValue::rational(1, 2));
  const Witness m = TorusRealLinear{{{{2, 1}, {1, 1}}}};
  EXPECT_EQ(std::get<TorusRealLinear>(inverse_witness(m)).m, inverse_unimodular(IntMatrix2{{{2, 1}, {1, 1}}}));
  EXPECT_EQ(witness_type(TorusScalar{ComplexValue(1)}), "torus_scalar");
  EXPECT_EQ(to_string(NotConjugateReason::MarkingOrdersDiffer), "marking-orders-differ");
}
