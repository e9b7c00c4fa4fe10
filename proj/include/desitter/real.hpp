#pragma once

namespace desitter {

/**
 * Working precision of the library. Extended precision is the default:
 * frames of strongly curved timelike curves carry components of order
 * e^{kappa * length}, and their pseudo-orthonormality can only be checked
 * to about eps * |v|^2.
 */
using Real = long double;

} // namespace desitter
