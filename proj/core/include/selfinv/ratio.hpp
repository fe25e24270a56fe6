#pragma once

#include <map>

#include "selfinv/catalog.hpp"
#include "selfinv/quadrature.hpp"
#include "selfinv/rational.hpp"

namespace selfinv {

// Exact law of X/Y for a finite discrete joint: reduced-fraction values
// mapped to exact probabilities summing to 1.
struct RatioPmf {
  std::map<Rational, Rational> p;
};

// Density of Z = X/Y at z:
//   f_Z(z) = int_0^inf y f(yz, y) dy - int_{-inf}^0 y f(yz, y) dy.
// Continuous joints evaluate each piece by adaptive quadrature to tol/2;
// region_uniform joints are integrated exactly piece by piece (err_bound 0).
// tol must lie in [1e-12, 1e-2].
QuadResult ratio_density_eval(const JointSpec& joint, double z, double tol);
double ratio_density(const JointSpec& joint, double z, double tol);

// Exact enumeration over all cells of a discrete_table joint.
RatioPmf ratio_pmf(const JointSpec& joint);

// The law of 1/Z: every key inverted, probabilities carried over.
RatioPmf reciprocal_pmf(const RatioPmf& pmf);

// Density of 1/Z at z: f_d(1/z) / z^2, with the measure-zero convention of
// returning 0 at z = 0.
double reciprocal_density(const DistSpec& d, double z);

// Pr[1/Z <= z] via the monotone piecewise transform, valid in the presence
// of atoms (uses Pr[Z < x] rather than Pr[Z <= x]):
//   z > 0: Pr[Z < 0] + Pr[Z >= 1/z]
//   z = 0: Pr[Z < 0]
//   z < 0: Pr[1/z <= Z < 0]
// (Pr[Z = 0] = 0 holds for every catalog law.)
double reciprocal_cdf(const DistSpec& d, double z);

// (1/2) Pr[Z <= z] + (1/2) Pr[1/Z <= z]: the cdf of Z^(2I-1) for a fair
// coin I. Fixed point exactly when Z is self-inverse.
double mixture_cdf(const DistSpec& z_dist, double z);

// Componentwise X/Y of a fresh PairSample; a denominator of exactly 0 is a
// probability-zero event and raises SampleError naming the stream.
// swapped_ratio_sample returns Y/X computed from the same draws.
Sample ratio_sample(const JointSpec& joint, RandomStream& stream, std::size_t n);
Sample swapped_ratio_sample(const JointSpec& joint, RandomStream& stream,
                            std::size_t n);

}  // namespace selfinv
