#pragma once

// Instance generators and hand oracles shared by the unit tests and the
// acceptance runner. Nothing here calls the decision code.

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

#include "affine_lab/literal.hpp"
#include "affine_lab/surfaces.hpp"

namespace affine_lab::testing {

// rho = 2 pi i / mu as a Gaussian rational, written as a literal.
struct Rho {
  mpq_class re;
  mpq_class im;
  std::string text;
};

inline std::vector<Rho> cylinder_rho_grid() {
  return {
      {1, 0, "1"},         {2, 0, "2"},          {-1, 0, "-1"},        {-3, 0, "-3"},
      {mpq_class(1, 2), 0, "1/2"}, {mpq_class(-1, 2), 0, "-1/2"}, {mpq_class(3, 2), 0, "3/2"},
      {mpq_class(1, 3), 0, "1/3"}, {1, 1, "1+i"},      {1, -1, "1-i"},       {-1, 1, "-1+i"},
      {0, 1, "i"},         {2, mpq_class(1, 2), "2+i/2"}, {mpq_class(1, 2), mpq_class(1, 2), "1/2+i/2"},
  };
}

inline AffineSurface cylinder_from_rho(const Rho& r) { return parse_surface("cylinder:2pi*i/(" + r.text + ")"); }

inline bool rational_integer(const mpq_class& re, const mpq_class& im) { return im == 0 && re.get_den() == 1; }

// Holomorphic: rho2 - rho1 or rho2 + rho1 is in Z (not merely in Z[i]).
inline bool hand_holomorphic(const Rho& a, const Rho& b) {
  return rational_integer(b.re - a.re, b.im - a.im) || rational_integer(b.re + a.re, b.im + a.im);
}

// Re mu = 2 pi Im(rho) / |rho|^2, so Re mu != 0 iff Im rho != 0.
inline bool hand_topological(const Rho& a, const Rho& b) {
  return hand_holomorphic(a, b) || (a.im != 0 && b.im != 0);
}

inline ComplexValue from_mpq(const mpq_class& q) {
  return ComplexValue::rational(q.get_num().get_si(), q.get_den().get_si());
}

// An exact torus whose marking coordinates are (x, y): x mu + y nu = 2 pi i.
inline AffineSurface torus_with_marking(const mpq_class& x, const mpq_class& y) {
  const ComplexValue t = ComplexValue::two_pi_i();
  if (y != 0) return AffineSurface::torus(ComplexValue(1), (t - from_mpq(x)) / from_mpq(y));
  if (x != 0) return AffineSurface::torus(t / from_mpq(x), ComplexValue(1));
  // (0, 0) is the same point of R^2 / Z^2 as (1, 0).
  return AffineSurface::torus(t, ComplexValue(1));
}

// Random rational point of R^2 / Z^2 with denominators dividing some n <= max_order.
inline std::pair<mpq_class, mpq_class> random_rational_point(std::mt19937_64& rng, int max_order) {
  std::uniform_int_distribution<int> order(1, max_order);
  const int n = order(rng);
  std::uniform_int_distribution<int> num(0, n - 1);
  mpq_class x(num(rng), n), y(num(rng), n);
  x.canonicalize();
  y.canonicalize();
  return {x, y};
}

}  // namespace affine_lab::testing
