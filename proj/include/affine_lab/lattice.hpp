#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "affine_lab/arithmetic.hpp"

namespace affine_lab {

// Integer 2x2 matrix, row-major.
using IntMatrix2 = std::array<std::array<std::int64_t, 2>, 2>;

struct LatticeCoords {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const LatticeCoords&, const LatticeCoords&) = default;
};

/// Rank-2 lattice mu*Z + nu*Z in C.
class Lattice {
 public:
  // Throws InvariantError when mu, nu are R-linearly dependent: exactly on the
  // exact track, |Im(conj(mu) nu)| <= eps otherwise.
  Lattice(ComplexValue mu, ComplexValue nu, const Tolerance& tol = Tolerance{});

  [[nodiscard]] const ComplexValue& mu() const { return mu_; }
  [[nodiscard]] const ComplexValue& nu() const { return nu_; }
  [[nodiscard]] bool is_exact() const { return mu_.is_exact() && nu_.is_exact(); }
  [[nodiscard]] ComplexValue point(std::int64_t a, std::int64_t b) const;

 private:
  ComplexValue mu_;
  ComplexValue nu_;
};

/// Result of Gauss reduction: the reduced basis and the unimodular matrix U
/// with (mu', nu') = U * (mu, nu).
struct ReducedBasis {
  Lattice lattice;
  IntMatrix2 transform;
};

// Oriented area Im(conj(mu) nu); exact when the generators are.
ComplexValue signed_covolume(const ComplexValue& mu, const ComplexValue& nu);

ReducedBasis gauss_reduce(const Lattice& lattice);

/// Same lattice with |mu'| <= |nu'| and |Re(conj(mu') nu')| <= |mu'|^2 / 2.
/// Integer steps are chosen numerically and applied on the generators' own
/// track, so exact inputs stay exact.
Lattice reduce_basis(const Lattice& lattice);

/// |Im(conj(mu) nu)|, exact when the generators are.
ComplexValue covolume(const Lattice& lattice);

/// Integer (a, b) with z = a mu + b nu: decided exactly when z and the lattice
/// are exact, otherwise within |z - (a mu + b nu)| <= eps.
std::optional<LatticeCoords> lattice_member(const ComplexValue& z, const Lattice& lattice,
                                            const Tolerance& tol = Tolerance{});

/// Every lattice point with ||lambda| - r| <= eps * max(1, r), ordered by (re, im).
std::vector<ComplexValue> enumerate_norm_shell(const Lattice& lattice, double r,
                                               const Tolerance& tol = Tolerance{});

}  // namespace affine_lab
