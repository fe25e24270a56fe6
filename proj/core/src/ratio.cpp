#include "selfinv/ratio.hpp"

#include <cmath>
#include <limits>

#include "selfinv/errors.hpp"

namespace selfinv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_tol(double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-2))
    throw DomainError("ratio density tol must lie in [1e-12, 1e-2]");
}

// Exact integral of y * f(yz, y) over one rectangle carrying constant
// density, restricted to a y-interval of one sign. The admissible y-range
// is the preimage {y : x_lo <= y z <= x_hi} intersected with [c, d];
// integrating y (or -y on the negative side) gives a quadratic, evaluated
// in closed form.
double region_piece(const Region& r, double z, double c, double d) {
  double lo = c;
  double hi = d;
  if (z > 0.0) {
    lo = std::max(lo, r.x_lo / z);
    hi = std::min(hi, r.x_hi / z);
  } else if (z < 0.0) {
    lo = std::max(lo, r.x_hi / z);
    hi = std::min(hi, r.x_lo / z);
  } else {
    if (!(r.x_lo <= 0.0 && 0.0 < r.x_hi)) return 0.0;
  }
  if (hi <= lo) return 0.0;
  // both endpoints share a sign, so |y| integrates to |hi^2 - lo^2| / 2
  return r.density * std::fabs(hi * hi - lo * lo) / 2.0;
}

double region_ratio_density(const RegionList& regions, double z) {
  double total = 0.0;
  for (const auto& r : regions.regions) {
    // split rectangles straddling y = 0, matching the two-piece integral
    if (r.y_lo < 0.0) total += region_piece(r, z, r.y_lo, std::min(r.y_hi, 0.0));
    if (r.y_hi > 0.0) total += region_piece(r, z, std::max(r.y_lo, 0.0), r.y_hi);
  }
  return total;
}

}  // namespace

QuadResult ratio_density_eval(const JointSpec& joint, double z, double tol) {
  check_tol(tol);
  if (joint.kind() == JointKind::region_uniform)
    return QuadResult{region_ratio_density(joint.regions(), z), 0.0, true};
  if (!joint.has_joint_density())
    throw CapabilityError("ratio density needs a pointwise joint density; " +
                          joint.text() + " has none");
  const auto integrand = [&joint, z](double y) {
    return y * joint_density(joint, y * z, y);
  };
  const QuadResult pos = integrate(integrand, 0.0, kInf, tol / 2.0);
  const QuadResult neg = integrate(integrand, -kInf, 0.0, tol / 2.0);
  return QuadResult{pos.value - neg.value, pos.err_bound + neg.err_bound,
                    pos.converged && neg.converged};
}

double ratio_density(const JointSpec& joint, double z, double tol) {
  return ratio_density_eval(joint, z, tol).value;
}

RatioPmf ratio_pmf(const JointSpec& joint) {
  const DiscreteTable& t = joint_pmf_table(joint);
  RatioPmf out;
  for (std::size_t i = 0; i < t.support_x.size(); ++i) {
    for (std::size_t j = 0; j < t.support_y.size(); ++j) {
      if (t.prob[i][j] == Rational(0)) continue;
      const Rational key = t.support_x[i] / t.support_y[j];
      auto [it, inserted] = out.p.try_emplace(key, t.prob[i][j]);
      if (!inserted) it->second += t.prob[i][j];
    }
  }
  return out;
}

RatioPmf reciprocal_pmf(const RatioPmf& pmf) {
  RatioPmf out;
  for (const auto& [key, prob] : pmf.p) {
    auto [it, inserted] = out.p.try_emplace(key.reciprocal(), prob);
    if (!inserted) it->second += prob;
  }
  return out;
}

double reciprocal_density(const DistSpec& d, double z) {
  if (z == 0.0) return 0.0;
  return density(d, 1.0 / z) / (z * z);
}

double reciprocal_cdf(const DistSpec& d, double z) {
  const double below_zero = cdf_strict(d, 0.0);
  if (z > 0.0) return below_zero + (1.0 - cdf_strict(d, 1.0 / z));
  if (z < 0.0) return below_zero - cdf_strict(d, 1.0 / z);
  return below_zero;
}

double mixture_cdf(const DistSpec& z_dist, double z) {
  return 0.5 * cdf(z_dist, z) + 0.5 * reciprocal_cdf(z_dist, z);
}

namespace {

Sample divide(const PairSample& ps, bool swapped, const std::string& label) {
  Sample out;
  out.provenance = ps.provenance;
  out.provenance.spec_text = label + "(" + ps.provenance.spec_text + ")";
  const auto& num = swapped ? ps.ys : ps.xs;
  const auto& den = swapped ? ps.xs : ps.ys;
  out.values.reserve(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (den[i] == 0.0)
      throw SampleError("ratio denominator of exactly 0 (seed=" +
                        std::to_string(ps.provenance.key.seed) + ", stream=" +
                        std::to_string(ps.provenance.key.stream_id) +
                        ", index=" + std::to_string(i) + ")");
    out.values.push_back(num[i] / den[i]);
  }
  return out;
}

}  // namespace

Sample ratio_sample(const JointSpec& joint, RandomStream& stream, std::size_t n) {
  return divide(sample_joint(joint, stream, n), false, "ratio");
}

Sample swapped_ratio_sample(const JointSpec& joint, RandomStream& stream,
                            std::size_t n) {
  return divide(sample_joint(joint, stream, n), true, "swapped-ratio");
}

}  // namespace selfinv
