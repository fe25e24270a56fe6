#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfinv/catalog.hpp"

namespace selfinv {

// Outcome of one hypothesis test. p_value is NaN when the verdict is exact
// (no sampling involved); decision semantics are: reject iff p_value < alpha,
// or iff an exact refutation was found.
struct TestReport {
  std::string test_name;
  double statistic = 0.0;
  double p_value = std::numeric_limits<double>::quiet_NaN();
  bool exact_verdict = false;
  double alpha = 0.0;
  bool reject = false;
  std::size_t n_used = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> diagnostics;
};

// JSON object with fields exactly
// {test, statistic, p_value, alpha, decision, n, seed, diagnostics};
// p_value serializes as null for exact verdicts.
std::string to_json(const TestReport& r);

// Two-sample Kolmogorov-Smirnov. Statistic is the sup-distance between the
// empirical CDFs (tie-aware merge walk); the p-value uses the asymptotic
// Kolmogorov distribution with Stephens' small-sample adjustment
// lambda = (sqrt(Ne) + 0.12 + 0.11/sqrt(Ne)) * D, Ne = n*m/(n+m).
TestReport ks_two_sample(const Sample& a, const Sample& b, double alpha);

// One-sample counterpart against a reference CDF; Ne = n.
TestReport ks_one_sample(const Sample& a,
                         const std::function<double(double)>& reference_cdf,
                         double alpha);

// Tests Z/theta =d theta/Z. Draws two independent samples of size n each
// and compares sample 1 against theta^2 / (sample 2) by two-sample KS; the
// halves must be independent, so a single sample is split, never reused.
// theta != 1 requires strictly positive data.
TestReport self_inverse_test(const DistSpec& d, RandomStream& stream,
                             std::size_t n, double alpha, double theta = 1.0);
TestReport self_inverse_test(const Sample& s, double alpha, double theta = 1.0);

// Symmetry of log Z about 0: first-half logs vs negated second-half logs.
TestReport log_symmetry_test(const Sample& s, double alpha);

// Square binning for the exchangeability test. With empty edges, k bins per
// axis are cut at pooled-sample quantiles; explicit edges (size >= 3,
// increasing) override both k and the pooling.
struct GridSpec {
  std::size_t k = 6;
  std::vector<double> edges;
};

// Bowker symmetry chi-square over off-diagonal bin pairs: for each i < j,
// (n_ij - n_ji)^2 / (n_ij + n_ji), df = k(k-1)/2. Pairs with zero total
// contribute 0. Quantile-binned grids coarsen (k -> k-1) while any
// off-diagonal pair holds fewer than 5 observations and k > 2.
TestReport exchangeability_test(const PairSample& pairs, const GridSpec& grid,
                                double alpha);

// Exact symmetry check of a rational table: reports the first witness pair
// of cells with unequal mass. No sampling, no p-value.
TestReport exchangeability_exact(const DiscreteTable& table);

// The raw statistic, exposed for property tests. df_out receives k(k-1)/2.
double bowker_statistic(const std::vector<std::vector<std::size_t>>& counts,
                        std::size_t* df_out = nullptr);

// Characteristic-function curve on a t-grid, either analytic (band 0) or
// empirical with a conservative uniform half-width band.
struct CfCurve {
  std::vector<double> t_grid;
  std::vector<std::complex<double>> values;
  double band = 0.0;
  bool analytic = true;
  std::size_t n = 0;
  std::uint64_t seed = 0;          // provenance for empirical curves
  std::optional<DistSpec> source;  // set for analytic curves (enables refinement)
};

// Multiples of pi/4 on (0, 4*pi]: the default scan grid for obstruction
// searches on log-scale cfs.
std::vector<double> default_cf_grid();

// Closed-form cf of log Z: (sin t)/t for log_uniform, cos t for
// log_rademacher. CapabilityError otherwise.
CfCurve analytic_log_cf(const DistSpec& d, const std::vector<double>& t_grid);

// values(t) = (1/n) sum_k exp(i t u_k); band = 3/sqrt(n). Values at -t are
// the exact conjugates of values at +t by construction.
CfCurve empirical_cf(const Sample& s, const std::vector<double>& t_grid);

// If Z =d X/Y with X, Y iid then the cf of log|Z| is |phi|^2 >= 0, so a
// verified negative real part (with imaginary part inside the band) refutes
// every iid ratio representation. Scans the curve for the candidate with the
// largest margin -Re - band. The witness is reported on the curve's own
// grid; for analytic curves a local subdivision around it verifies the sign
// is stable in a neighborhood (confirmation only, the witness is not moved).
// "No obstruction found" is not a proof that a decomposition exists.
TestReport iid_decomposability_obstruction(const CfCurve& curve);

}  // namespace selfinv
