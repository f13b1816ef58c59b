#include "cubeshift/quadrature.hpp"

#include "cubeshift/numeric.hpp"

namespace cubeshift {

int oscillation_panels(double cycles, int cap) {
  if (!(cycles >= 0)) throw SpecError("oscillation count must be nonnegative");
  double p = 4 * cycles + 16;
  return p >= (double)cap ? cap : (int)p;
}

}  // namespace cubeshift
