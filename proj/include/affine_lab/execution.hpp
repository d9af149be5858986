#pragma once

namespace affine_lab {

// Serial selects the straightforward reference loop; Parallel the OpenMP kernel.
// Both must return identical results.
enum class Execution { Serial, Parallel };

}  // namespace affine_lab
