#include "selfinv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "selfinv/errors.hpp"
#include "selfinv/format.hpp"
#include "selfinv/special.hpp"

namespace selfinv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMinKsSample = 25;

double stephens_lambda(double effective_n, double d) {
  const double root = std::sqrt(effective_n);
  return (root + 0.12 + 0.11 / root) * d;
}

TestReport make_ks_report(std::string name, double d, double effective_n,
                          double alpha, std::size_t n_used, std::uint64_t seed) {
  TestReport r;
  r.test_name = std::move(name);
  r.statistic = d;
  const double lambda = stephens_lambda(effective_n, d);
  r.p_value = kolmogorov_sf(lambda);
  r.alpha = alpha;
  r.reject = r.p_value < alpha;
  r.n_used = n_used;
  r.seed = seed;
  r.diagnostics["lambda"] = fmt_double(lambda);
  return r;
}

double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  // merge walk; ties advance both sides before the gap is measured
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n -
                              static_cast<double>(j) / m));
  }
  return d;
}

}  // namespace

std::string to_json(const TestReport& r) {
  nlohmann::ordered_json j;
  j["test"] = r.test_name;
  j["statistic"] = r.statistic;
  if (r.exact_verdict || std::isnan(r.p_value))
    j["p_value"] = nullptr;
  else
    j["p_value"] = r.p_value;
  j["alpha"] = r.alpha;
  j["decision"] = r.reject ? "reject" : "pass";
  j["n"] = r.n_used;
  j["seed"] = r.seed;
  j["diagnostics"] = r.diagnostics;
  return j.dump(2);
}

TestReport ks_two_sample(const Sample& a, const Sample& b, double alpha) {
  if (a.values.size() < kMinKsSample || b.values.size() < kMinKsSample)
    throw DomainError("ks_two_sample: both samples need >= 25 values");
  const double n = static_cast<double>(a.values.size());
  const double m = static_cast<double>(b.values.size());
  const double d = ks_two_sample_statistic(a.values, b.values);
  TestReport r = make_ks_report("ks-two-sample", d, n * m / (n + m), alpha,
                                a.values.size() + b.values.size(),
                                a.provenance.key.seed);
  r.diagnostics["n_a"] = std::to_string(a.values.size());
  r.diagnostics["n_b"] = std::to_string(b.values.size());
  r.diagnostics["stream_a"] = std::to_string(a.provenance.key.stream_id);
  r.diagnostics["stream_b"] = std::to_string(b.provenance.key.stream_id);
  return r;
}

TestReport ks_one_sample(const Sample& a,
                         const std::function<double(double)>& reference_cdf,
                         double alpha) {
  if (a.values.size() < kMinKsSample)
    throw DomainError("ks_one_sample: sample needs >= 25 values");
  std::vector<double> sorted = a.values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = reference_cdf(sorted[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  TestReport r = make_ks_report("ks-one-sample", d, n, alpha, sorted.size(),
                                a.provenance.key.seed);
  r.diagnostics["stream"] = std::to_string(a.provenance.key.stream_id);
  return r;
}

namespace {

TestReport self_inverse_core(const Sample& a, Sample b, double alpha,
                             double theta, const std::string& what) {
  if (theta != 1.0) {
    for (const Sample* s : {&a, static_cast<const Sample*>(&b)}) {
      for (double v : s->values)
        if (v <= 0.0)
          throw DomainError(
              "self_inverse_test: theta != 1 requires strictly positive data");
    }
  }
  for (double& v : b.values) v = theta * theta / v;
  TestReport r = ks_two_sample(a, b, alpha);
  r.test_name = "self-inverse";
  r.diagnostics["theta"] = fmt_double(theta);
  r.diagnostics["subject"] = what;
  return r;
}

}  // namespace

TestReport self_inverse_test(const DistSpec& d, RandomStream& stream,
                             std::size_t n, double alpha, double theta) {
  RandomStream s1 = stream.split();
  RandomStream s2 = stream.split();
  const Sample a = sample(d, s1, n);
  Sample b = sample(d, s2, n);
  return self_inverse_core(a, std::move(b), alpha, theta, d.text());
}

TestReport self_inverse_test(const Sample& s, double alpha, double theta) {
  const std::size_t half = s.values.size() / 2;
  if (half < kMinKsSample)
    throw DomainError("self_inverse_test: sample needs >= 50 values to split");
  // the comparison requires independent halves: draws are split, never reused
  Sample a;
  a.provenance = s.provenance;
  a.values.assign(s.values.begin(), s.values.begin() + half);
  Sample b;
  b.provenance = s.provenance;
  b.values.assign(s.values.begin() + half, s.values.end());
  return self_inverse_core(a, std::move(b), alpha, theta,
                           s.provenance.spec_text);
}

TestReport log_symmetry_test(const Sample& s, double alpha) {
  std::vector<double> w;
  w.reserve(s.values.size());
  for (double v : s.values) {
    if (v <= 0.0)
      throw DomainError("log_symmetry_test requires strictly positive data");
    w.push_back(std::log(v));
  }
  const std::size_t half = w.size() / 2;
  if (half < kMinKsSample)
    throw DomainError("log_symmetry_test: sample needs >= 50 values to split");
  Sample a;
  a.provenance = s.provenance;
  a.values.assign(w.begin(), w.begin() + half);
  Sample b;
  b.provenance = s.provenance;
  for (std::size_t i = half; i < w.size(); ++i) b.values.push_back(-w[i]);
  TestReport r = ks_two_sample(a, b, alpha);
  r.test_name = "log-symmetry";
  r.diagnostics["subject"] = s.provenance.spec_text;
  return r;
}

double bowker_statistic(const std::vector<std::vector<std::size_t>>& counts,
                        std::size_t* df_out) {
  const std::size_t k = counts.size();
  for (const auto& row : counts)
    if (row.size() != k) throw DomainError("bowker_statistic: matrix not square");
  double chi2 = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double nij = static_cast<double>(counts[i][j]);
      const double nji = static_cast<double>(counts[j][i]);
      const double total = nij + nji;
      if (total > 0.0) chi2 += (nij - nji) * (nij - nji) / total;
    }
  }
  if (df_out) *df_out = k * (k - 1) / 2;
  return chi2;
}

namespace {

// bin index from interior cut points: values below the first cut land in
// bin 0, values at or above the last cut land in the top bin
std::size_t bin_of(double v, const std::vector<double>& cuts) {
  return static_cast<std::size_t>(
      std::upper_bound(cuts.begin(), cuts.end(), v) - cuts.begin());
}

std::vector<double> quantile_cuts(const std::vector<double>& pooled_sorted,
                                  std::size_t k) {
  std::vector<double> cuts;
  const std::size_t n = pooled_sorted.size();
  for (std::size_t j = 1; j < k; ++j) {
    cuts.push_back(pooled_sorted[j * n / k]);
  }
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

TestReport exchangeability_test(const PairSample& pairs, const GridSpec& grid,
                                double alpha) {
  const std::size_t n = pairs.xs.size();
  if (n != pairs.ys.size()) throw DomainError("exchangeability_test: ragged pairs");
  if (n < 100) throw DomainError("exchangeability_test: needs >= 100 pairs");

  std::vector<double> cuts;
  const bool quantile_mode = grid.edges.empty();
  std::size_t k = grid.k;
  if (!quantile_mode) {
    if (grid.edges.size() < 3)
      throw DomainError("exchangeability_test: explicit grid needs >= 3 edges");
    for (std::size_t i = 1; i < grid.edges.size(); ++i)
      if (!(grid.edges[i - 1] < grid.edges[i]))
        throw DomainError("exchangeability_test: edges must be strictly increasing");
    cuts.assign(grid.edges.begin() + 1, grid.edges.end() - 1);
    k = cuts.size() + 1;
  } else if (k < 2) {
    throw DomainError("exchangeability_test: grid needs k >= 2");
  }

  std::vector<double> pooled;
  if (quantile_mode) {
    pooled = pairs.xs;
    pooled.insert(pooled.end(), pairs.ys.begin(), pairs.ys.end());
    std::sort(pooled.begin(), pooled.end());
  }

  std::vector<std::vector<std::size_t>> counts;
  for (;;) {
    if (quantile_mode) {
      cuts = quantile_cuts(pooled, k);
      // degenerate when deduplicated cuts vanish, or when min and max share a
      // bin (constant data leaves one cut with everything at or above it)
      if (cuts.empty() ||
          bin_of(pooled.front(), cuts) == bin_of(pooled.back(), cuts))
        throw DomainError("exchangeability_test: degenerate grid, all mass in one cell");
      k = cuts.size() + 1;
    }
    counts.assign(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < n; ++i)
      ++counts[bin_of(pairs.xs[i], cuts)][bin_of(pairs.ys[i], cuts)];
    bool sparse = false;
    for (std::size_t i = 0; i < k && !sparse; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (counts[i][j] + counts[j][i] < 5) {
          sparse = true;
          break;
        }
    if (sparse && quantile_mode && k > 2) {
      --k;
      continue;
    }
    break;
  }

  std::size_t df = 0;
  const double chi2 = bowker_statistic(counts, &df);
  TestReport r;
  r.test_name = "exchangeability";
  r.statistic = chi2;
  r.p_value = gamma_q(static_cast<double>(df) / 2.0, chi2 / 2.0);
  r.alpha = alpha;
  r.reject = r.p_value < alpha;
  r.n_used = n;
  r.seed = pairs.provenance.key.seed;
  r.diagnostics["k"] = std::to_string(k);
  r.diagnostics["df"] = std::to_string(df);
  r.diagnostics["binning"] = quantile_mode ? "pooled-quantile" : "explicit";
  // largest single off-diagonal asymmetry, for the diagnostics payload
  double worst = 0.0;
  std::string worst_cells = "none";
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double nij = static_cast<double>(counts[i][j]);
      const double nji = static_cast<double>(counts[j][i]);
      if (nij + nji == 0.0) continue;
      const double term = (nij - nji) * (nij - nji) / (nij + nji);
      if (term > worst) {
        worst = term;
        worst_cells = "(" + std::to_string(i) + "," + std::to_string(j) + ")=" +
                      fmt_double(nij) + " vs (" + std::to_string(j) + "," +
                      std::to_string(i) + ")=" + fmt_double(nji);
      }
    }
  }
  r.diagnostics["worst_pair"] = worst_cells;
  return r;
}

TestReport exchangeability_exact(const DiscreteTable& table) {
  TestReport r;
  r.test_name = "exchangeability-exact";
  r.exact_verdict = true;
  r.alpha = 0.0;
  r.n_used = 0;
  if (table.support_x != table.support_y) {
    r.reject = true;
    r.statistic = 1.0;
    r.diagnostics["witness"] = "support_x differs from support_y";
    return r;
  }
  const std::size_t k = table.support_x.size();
  double max_gap = 0.0;
  bool found = false;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (table.prob[i][j] == table.prob[j][i]) continue;
      const Rational gap = table.prob[i][j] - table.prob[j][i];
      const double gap_abs = std::fabs(gap.to_double());
      max_gap = std::max(max_gap, gap_abs);
      if (!found) {
        found = true;
        r.diagnostics["witness_cells"] =
            "(x=" + table.support_x[i].str() + ",y=" + table.support_y[j].str() +
            ") vs (x=" + table.support_x[j].str() + ",y=" +
            table.support_y[i].str() + ")";
        r.diagnostics["witness_masses"] =
            table.prob[i][j].str() + " vs " + table.prob[j][i].str();
      }
    }
  }
  r.reject = found;
  r.statistic = max_gap;
  if (!found) r.diagnostics["witness"] = "table is exactly symmetric";
  return r;
}

std::vector<double> default_cf_grid() {
  std::vector<double> grid;
  grid.reserve(16);
  for (int k = 1; k <= 16; ++k) grid.push_back(static_cast<double>(k) * kPi / 4.0);
  return grid;
}

namespace {

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

double analytic_log_cf_value(const DistSpec& d, double t) {
  switch (d.kind()) {
    case DistKind::log_uniform:
      return sinc(t);  // cf of U(-1,1)
    case DistKind::log_rademacher:
      return std::cos(t);  // cf of +/-1 with equal mass
    default:
      throw CapabilityError("analytic log-cf exists only for log-uniform and "
                            "log-rademacher, not " + d.text());
  }
}

}  // namespace

CfCurve analytic_log_cf(const DistSpec& d, const std::vector<double>& t_grid) {
  CfCurve curve;
  curve.t_grid = t_grid;
  curve.values.reserve(t_grid.size());
  for (double t : t_grid)
    curve.values.emplace_back(analytic_log_cf_value(d, t), 0.0);
  curve.band = 0.0;
  curve.analytic = true;
  curve.source = d;
  return curve;
}

CfCurve empirical_cf(const Sample& s, const std::vector<double>& t_grid) {
  const std::size_t n = s.values.size();
  if (n < 100) throw DomainError("empirical_cf: sample needs >= 100 values");
  CfCurve curve;
  curve.t_grid = t_grid;
  curve.values.reserve(t_grid.size());
  for (double t : t_grid) {
    // evaluate at |t| and conjugate, so values at -t are exact conjugates
    const double at = std::fabs(t);
    double re = 0.0;
    double im = 0.0;
    for (double u : s.values) {
      re += std::cos(at * u);
      im += std::sin(at * u);
    }
    re /= static_cast<double>(n);
    im /= static_cast<double>(n);
    curve.values.emplace_back(re, t < 0.0 ? -im : im);
  }
  curve.band = 3.0 / std::sqrt(static_cast<double>(n));
  curve.analytic = false;
  curve.n = n;
  curve.seed = s.provenance.key.seed;
  return curve;
}

TestReport iid_decomposability_obstruction(const CfCurve& curve) {
  TestReport r;
  r.test_name = "iid-decomposability-obstruction";
  r.exact_verdict = curve.analytic;
  r.alpha = 0.0;
  r.n_used = curve.n;
  r.seed = curve.seed;
  r.diagnostics["band"] = fmt_double(curve.band);

  std::size_t best = curve.values.size();
  double best_margin = 0.0;
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    const auto& v = curve.values[i];
    if (v.real() < -curve.band && std::fabs(v.imag()) <= curve.band) {
      const double margin = -v.real() - curve.band;
      if (best == curve.values.size() || margin > best_margin) {
        best = i;
        best_margin = margin;
      }
    }
  }

  if (best == curve.values.size()) {
    r.reject = false;
    r.statistic = 0.0;
    r.diagnostics["witness"] = "none found (not a proof of decomposability)";
    return r;
  }

  const double t = curve.t_grid[best];
  if (curve.analytic && curve.source) {
    // Subdivide locally to confirm the sign is stable around the grid
    // witness; an isolated negative point would be suspect. The witness
    // itself stays on the caller's grid.
    double step = kPi / 4.0;
    if (curve.t_grid.size() >= 2) {
      step = (best + 1 < curve.t_grid.size() ? curve.t_grid[best + 1] - t
                                             : t - curve.t_grid[best - 1]);
    }
    const double delta = step / 8.0;
    bool stable = true;
    for (int i = -8; i <= 8; ++i) {
      const double ti = t + delta * static_cast<double>(i) / 8.0;
      if (analytic_log_cf_value(*curve.source, ti) >= -curve.band) {
        stable = false;
        break;
      }
    }
    if (!stable) {
      r.reject = false;
      r.statistic = 0.0;
      r.diagnostics["witness"] =
          "candidate at t=" + fmt_double(t) + " rejected: sign not locally stable";
      return r;
    }
    r.diagnostics["neighborhood"] = "sign stable on [" + fmt_double(t - delta) +
                                    ", " + fmt_double(t + delta) + "]";
  }

  r.reject = true;
  r.statistic = best_margin;
  r.diagnostics["witness_t"] = fmt_double(t);
  r.diagnostics["margin"] = fmt_double(best_margin);
  r.diagnostics["re"] = fmt_double(curve.values[best].real());
  r.diagnostics["im"] = fmt_double(curve.values[best].imag());
  return r;
}

}  // namespace selfinv
