#pragma once

#include "oe/lattice.hpp"

namespace oe {

/// Dense matrix exponential by scaling and squaring with a Taylor kernel:
/// A is scaled by 2^-s until its 1-norm is <= 0.5, the series is summed to
/// machine-precision convergence, and the result squared s times.
Matrix expm_dense(const Matrix& a);

}  // namespace oe
