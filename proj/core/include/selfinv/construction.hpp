#pragma once

#include "selfinv/catalog.hpp"
#include "selfinv/stats.hpp"

namespace selfinv {

// Admission-checked constructor for the exchangeable pair
// (X, Y) = (W * Z^I, W * Z^(1-I)), I a fair coin independent of (Z, W).
// Whatever the law of W (any Pr[W=0]=0 law), X/Y = Z^(2I-1) has the mixture
// law (1/2) Law(Z) + (1/2) Law(1/Z); when Z is self-inverse that is Law(Z)
// itself.
JointSpec build_pair(const DistSpec& z_dist, const DistSpec& w_dist);

// Draws n pairs. Component substreams are carved off the parent stream in
// the fixed order (Z, W, I), so the Z and I draw sequences at a given seed
// do not depend on the choice of W. That makes the algebraic cancellation
// X/Y = Z^(2I-1) checkable draw-by-draw across different W laws.
PairSample sample_constructed(const JointSpec& pair, RandomStream& stream,
                              std::size_t n);

// Samples a fresh PairSample and runs the binned symmetry test on it.
TestReport exchangeability_certificate(const JointSpec& pair, RandomStream& stream,
                                       std::size_t n, const GridSpec& grid,
                                       double alpha);

}  // namespace selfinv
