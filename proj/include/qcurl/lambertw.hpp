#pragma once

namespace qcurl {

// Principal branch W0: the w >= -1 solution of w*exp(w) = z, defined for
// z >= -1/e. Inputs up to 1e-12 below -1/e are clamped to the branch point
// (result exactly -1); anything further below throws.
double lambert_w0(double z);

}  // namespace qcurl
