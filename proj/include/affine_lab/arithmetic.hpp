#pragma once

#include "affine_lab/complex_value.hpp"

namespace affine_lab {

/// Absolute comparison threshold used by every approximate-track decision.
class Tolerance {
 public:
  static constexpr double kDefaultEps = 1e-9;

  constexpr Tolerance() = default;
  // Throws InvariantError unless eps is finite and > 0.
  explicit Tolerance(double eps);

  [[nodiscard]] constexpr double eps() const { return eps_; }

 private:
  double eps_ = kDefaultEps;
};

// Nearest integer, ties to even.
double round_half_even(double x);

/// Principal logarithm log|w| + i arg(w), arg in (-pi, pi].
///
/// Stays exact for w in {1, -1, i, -i} (values 0, T/2, T/4, -T/4 with T = 2 pi i);
/// everything else lands on the approximate track. Throws DomainError for w = 0.
ComplexValue principal_log(const ComplexValue& w);

/// Exact track: x is exactly a rational integer. Approximate track:
/// |Im x| <= eps and |Re x - round(Re x)| <= eps.
bool is_near_integer(const ComplexValue& x, const Tolerance& tol);

}  // namespace affine_lab
