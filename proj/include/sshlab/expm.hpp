#pragma once

#include "sshlab/lattice.hpp"

namespace sshlab {

struct ExpmInfo {
  int pade_degree = 0;
  int squarings = 0;  // the argument was split into 2^squarings equal substeps
};

/// Matrix exponential by scaling and squaring with a diagonal Padé
/// approximant (degree 3, 5, 7, 9 or 13, picked from the 1-norm). Backward
/// error is at unit-roundoff level for any complex square matrix, normal or
/// not.
ComplexMatrix expm(const ComplexMatrix& a, ExpmInfo* info = nullptr);

}  // namespace sshlab
