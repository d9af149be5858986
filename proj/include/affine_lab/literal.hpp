#pragma once

#include <string_view>

#include "affine_lab/complex_value.hpp"

namespace affine_lab {

/// Parses a complex literal.
///
/// Accepted forms: `R`, `Ri`, `R+Ri`, `R-Ri` where R is an integer, a
/// rational `p/q` (exact) or a decimal `d.d` (approximate track), plus the
/// symbols `i`, `pi` and the token `2pi*i`, combined with + - * / and
/// parentheses. A number directly followed by a symbol or parenthesis
/// multiplies it (`3/4i`, `2pi*i`, `4pi*i`). Literals that use pi stay exact
/// in Q(i)(2 pi i); mixing pi with a decimal is rejected.
ComplexValue parse_complex(std::string_view text);

}  // namespace affine_lab
