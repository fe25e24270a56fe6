#include "selfinv/construction.hpp"

#include "selfinv/errors.hpp"

namespace selfinv {

JointSpec build_pair(const DistSpec& z_dist, const DistSpec& w_dist) {
  return JointSpec::constructed(z_dist, w_dist);
}

PairSample sample_constructed(const JointSpec& pair, RandomStream& stream,
                              std::size_t n) {
  if (pair.kind() != JointKind::constructed)
    throw CapabilityError("sample_constructed: not a constructed joint");
  if (n < 1) throw DomainError("sample_constructed: n must be >= 1");
  // substreams in fixed (Z, W, I) order; see header contract
  RandomStream z_stream = stream.split();
  RandomStream w_stream = stream.split();
  RandomStream i_stream = stream.split();
  const Sample zs = sample(pair.z_dist(), z_stream, n);
  const Sample ws = sample(pair.w_dist(), w_stream, n);
  PairSample out;
  out.provenance = Provenance{stream.key(), pair.text()};
  out.xs.reserve(n);
  out.ys.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double z = zs.values[k];
    const double w = ws.values[k];
    const int i = i_stream.bernoulli_half();
    // (X, Y) = (W Z^I, W Z^(1-I))
    out.xs.push_back(i ? w * z : w);
    out.ys.push_back(i ? w : w * z);
  }
  return out;
}

TestReport exchangeability_certificate(const JointSpec& pair, RandomStream& stream,
                                       std::size_t n, const GridSpec& grid,
                                       double alpha) {
  const PairSample ps = sample_joint(pair, stream, n);
  TestReport report = exchangeability_test(ps, grid, alpha);
  report.test_name = "exchangeability-certificate";
  report.diagnostics["spec"] = pair.text();
  return report;
}

}  // namespace selfinv
