#pragma once

#include <vector>

#include "mordell/real.hpp"

namespace mordell {

using RealMatrix = std::vector<std::vector<Real>>;

/// Determinant by LU with partial pivoting, at the working precision.
Real determinant(RealMatrix a);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<Real> symmetric_eigenvalues(RealMatrix a);

}  // namespace mordell
