#include "selfinv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "selfinv/construction.hpp"
#include "selfinv/errors.hpp"
#include "selfinv/format.hpp"
#include "selfinv/ratio.hpp"
#include "selfinv/version.hpp"

namespace selfinv {

namespace {

constexpr double kPi = std::numbers::pi;

struct Builder {
  ExperimentResult result;

  void claim_interval(const std::string& what, double expected, double observed,
                      double tol) {
    ClaimCheck c;
    c.claim = what;
    c.expected = fmt_double(expected);
    c.observed = fmt_double(observed);
    c.tolerance = "abs err <= " + fmt_double(tol);
    c.pass = std::fabs(observed - expected) <= tol;
    result.checks.push_back(std::move(c));
  }

  void claim_exact(const std::string& what, const std::string& expected,
                   const std::string& observed) {
    ClaimCheck c;
    c.claim = what;
    c.expected = expected;
    c.observed = observed;
    c.tolerance = "exact";
    c.pass = expected == observed;
    result.checks.push_back(std::move(c));
  }

  void claim_decision(const std::string& what, bool expect_reject,
                      const TestReport& report) {
    ClaimCheck c;
    c.claim = what;
    c.expected = expect_reject ? "reject" : "pass";
    c.observed = report.reject ? "reject" : "pass";
    c.tolerance = "alpha = " + fmt_double(report.alpha);
    c.pass = report.reject == expect_reject;
    result.checks.push_back(std::move(c));
    result.reports.push_back(report);
  }

  void spec(const std::string& text) { result.specs.push_back(text); }

  ExperimentResult finish() {
    result.pass = std::all_of(result.checks.begin(), result.checks.end(),
                              [](const ClaimCheck& c) { return c.pass; });
    return std::move(result);
  }
};

double fraction_le(const std::vector<double>& values, double cut) {
  const auto count = std::count_if(values.begin(), values.end(),
                                   [cut](double v) { return v <= cut; });
  return static_cast<double>(count) / static_cast<double>(values.size());
}

ExperimentResult run_discrete_table(const ExperimentConfig& cfg) {
  (void)cfg;  // fully exact: no draws, no tolerances
  Builder b;
  const JointSpec joint =
      JointSpec::discrete_table(DiscreteTable::builtin(), "discrete-table:paper");
  b.spec(joint.text());
  const RatioPmf pmf = ratio_pmf(joint);
  const RatioPmf recip = reciprocal_pmf(pmf);

  auto mass = [](const RatioPmf& p, const Rational& key) {
    const auto it = p.p.find(key);
    return it == p.p.end() ? Rational(0) : it->second;
  };
  b.claim_exact("ratio mass at 2", Rational(1, 36).str(),
                mass(pmf, Rational(2)).str());
  b.claim_exact("reciprocal ratio mass at 2", Rational(9, 36).str(),
                mass(recip, Rational(2)).str());
  b.claim_exact("asymmetry gap at 2", Rational(8, 36).str(),
                (mass(recip, Rational(2)) - mass(pmf, Rational(2))).str());
  Rational total(0);
  for (const auto& [key, prob] : pmf.p) total += prob;
  b.claim_exact("ratio pmf total mass", "1", total.str());
  b.claim_decision("exact symmetry check rejects", true,
                   exchangeability_exact(joint.table()));

  CsvTable t;
  t.name = "ratio_pmf";
  t.header = {"value", "probability", "reciprocal_probability"};
  for (const auto& [key, prob] : pmf.p) {
    t.rows.push_back({key.str(), prob.str(), mass(recip, key).str()});
  }
  b.result.tables.push_back(std::move(t));
  return b.finish();
}

ExperimentResult run_shifted_uniform(const ExperimentConfig& cfg) {
  Builder b;
  const std::size_t n = cfg.n ? cfg.n : 100000;
  const JointSpec joint =
      JointSpec::region_uniform(RegionList::builtin(), "region-uniform:paper");
  b.spec(joint.text());
  RandomStream root = new_stream({cfg.seed, cfg.stream});
  RandomStream s1 = root.split();
  RandomStream s2 = root.split();
  RandomStream s3 = root.split();
  RandomStream s4 = root.split();

  const Sample fwd = ratio_sample(joint, s1, n);
  const Sample rev = swapped_ratio_sample(joint, s2, n);
  // 3 sigma binomial half-width at p in {1/3, 2/3} is 0.00447, widened
  const double bound = 0.005;
  b.claim_interval("Pr[X/Y <= 1]", 2.0 / 3.0, fraction_le(fwd.values, 1.0), bound);
  b.claim_interval("Pr[Y/X <= 1]", 1.0 / 3.0, fraction_le(rev.values, 1.0), bound);

  const Sample for_test = ratio_sample(joint, s3, 20000);
  b.claim_decision("self-inverse test rejects the ratio", true,
                   self_inverse_test(for_test, 0.001));

  const PairSample pairs = sample_joint(joint, s4, n);
  GridSpec grid;
  grid.edges = {0.0, 1.0, 2.0, 3.0};
  b.claim_decision("integer-aligned symmetry test rejects", true,
                   exchangeability_test(pairs, grid, 0.001));

  // rectangle algebra gives this ratio density exactly (err_bound 0)
  CsvTable t;
  t.name = "ratio_density";
  t.header = {"z", "f_Z", "err_bound"};
  for (int i = 0; i <= 32; ++i) {
    const double z = 0.125 * i;
    const QuadResult q = ratio_density_eval(joint, z, cfg.tol);
    t.rows.push_back({fmt_double(z), fmt_double(q.value), fmt_double(q.err_bound)});
  }
  b.result.tables.push_back(std::move(t));
  return b.finish();
}

ExperimentResult run_laha_cauchy(const ExperimentConfig& cfg) {
  Builder b;
  const std::size_t n = cfg.n ? cfg.n : 20000;
  const JointSpec joint = JointSpec::product(DistSpec::laha(), DistSpec::laha());
  b.spec(joint.text());
  RandomStream root = new_stream({cfg.seed, cfg.stream});
  RandomStream s1 = root.split();

  const Sample ratios = ratio_sample(joint, s1, n);
  const DistSpec cauchy = DistSpec::standard_cauchy();
  b.claim_decision(
      "ratio of two laha draws matches the standard cauchy", false,
      ks_one_sample(ratios, [&](double x) { return cdf(cauchy, x); }, cfg.alpha));
  b.claim_interval("ratio density at 0", 1.0 / kPi,
                   ratio_density(joint, 0.0, cfg.tol), 1e-5);

  CsvTable t;
  t.name = "ratio_density";
  t.header = {"z", "f_Z", "err_bound", "cauchy_density"};
  for (int i = -16; i <= 16; ++i) {
    const double z = 0.25 * i;
    const QuadResult q = ratio_density_eval(joint, z, cfg.tol);
    t.rows.push_back({fmt_double(z), fmt_double(q.value), fmt_double(q.err_bound),
                      fmt_double(density(cauchy, z))});
  }
  b.result.tables.push_back(std::move(t));
  return b.finish();
}

ExperimentResult run_corr_cauchy(const ExperimentConfig& cfg) {
  Builder b;
  const std::size_t n = cfg.n ? cfg.n : 20000;
  const JointSpec joint = JointSpec::bivariate_normal(0.5);
  const DistSpec closed = DistSpec::corr_normal_ratio(0.5);
  b.spec(joint.text());
  b.spec(closed.text());

  const std::vector<double> zs = {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0};
  double worst = 0.0;
  CsvTable t;
  t.name = "ratio_density_vs_closed_form";
  t.header = {"z", "quadrature", "closed_form", "abs_err"};
  for (double z : zs) {
    const double got = ratio_density(joint, z, cfg.tol);
    const double want = density(closed, z);
    worst = std::max(worst, std::fabs(got - want));
    t.rows.push_back({fmt_double(z), fmt_double(got), fmt_double(want),
                      fmt_double(std::fabs(got - want))});
  }
  b.result.tables.push_back(std::move(t));
  b.claim_interval("max |quadrature - closed form|, rho=0.5", 0.0, worst, 1e-6);

  const JointSpec indep = JointSpec::bivariate_normal(0.0);
  const DistSpec cauchy = DistSpec::standard_cauchy();
  double worst0 = 0.0;
  for (double z : zs)
    worst0 = std::max(worst0,
                      std::fabs(ratio_density(indep, z, cfg.tol) - density(cauchy, z)));
  b.claim_interval("max |quadrature - cauchy density|, rho=0", 0.0, worst0, 1e-6);

  RandomStream root = new_stream({cfg.seed, cfg.stream});
  RandomStream s1 = root.split();
  RandomStream s2 = root.split();
  RandomStream s3 = root.split();
  const Sample ratios = ratio_sample(joint, s1, n);
  b.claim_decision(
      "sampled X/Y matches the closed-form cdf", false,
      ks_one_sample(ratios, [&](double x) { return cdf(closed, x); }, cfg.alpha));
  const Sample fwd = ratio_sample(joint, s2, n);
  const Sample rev = swapped_ratio_sample(joint, s3, n);
  b.claim_decision("X/Y and Y/X agree (exchangeable pair)", false,
                   ks_two_sample(fwd, rev, cfg.alpha));
  return b.finish();
}

ExperimentResult run_prop2_roundtrip(const ExperimentConfig& cfg) {
  Builder b;
  const std::size_t n = cfg.n ? cfg.n : 20000;
  const JointSpec pair = build_pair(DistSpec::log_uniform(), DistSpec::constant(1.0));
  b.spec(pair.text());
  RandomStream root = new_stream({cfg.seed, cfg.stream});
  RandomStream s1 = root.split();
  RandomStream s2 = root.split();
  RandomStream s3 = root.split();

  const DistSpec target = DistSpec::log_uniform();
  const Sample ratios = ratio_sample(pair, s1, n);
  b.claim_decision(
      "constructed ratio matches the target law", false,
      ks_one_sample(ratios, [&](double x) { return cdf(target, x); }, cfg.alpha));
  const Sample direct = sample(target, s2, n);
  b.claim_decision("constructed ratio matches a direct sample", false,
                   ks_two_sample(ratios, direct, cfg.alpha));

  // W cancels in X/Y: identical substream draws of (Z, I) must give the
  // same ratios whatever the W law is, up to the rounding of (w*z)/w.
  const JointSpec pair_normal_w =
      build_pair(DistSpec::log_uniform(), DistSpec::normal(0.0, 1.0));
  b.spec(pair_normal_w.text());
  RandomStream r1 = new_stream({cfg.seed, cfg.stream + 1000});
  RandomStream r2 = new_stream({cfg.seed, cfg.stream + 1000});
  const Sample ratio_const_w = ratio_sample(pair, r1, 1000);
  const Sample ratio_normal_w = ratio_sample(pair_normal_w, r2, 1000);
  double max_diff = 0.0;
  for (std::size_t i = 0; i < 1000; ++i)
    max_diff = std::max(max_diff, std::fabs(ratio_const_w.values[i] -
                                            ratio_normal_w.values[i]));
  b.claim_interval("ratio is invariant to the W law (same substreams)", 0.0,
                   max_diff, 1e-12);

  GridSpec grid;
  grid.k = 6;
  b.claim_decision("exchangeability certificate at n=100000", false,
                   exchangeability_certificate(pair, s3, 100000, grid, cfg.alpha));
  return b.finish();
}

ExperimentResult run_prop2_nonselfinverse(const ExperimentConfig& cfg) {
  Builder b;
  const std::size_t n = cfg.n ? cfg.n : 20000;
  const DistSpec expo = DistSpec::exponential(1.0);
  const JointSpec pair = build_pair(expo, DistSpec::constant(1.0));
  b.spec(pair.text());
  RandomStream root = new_stream({cfg.seed, cfg.stream});
  RandomStream s1 = root.split();

  const Sample ratios = ratio_sample(pair, s1, n);
  b.claim_decision(
      "ratio matches the two-sided mixture cdf", false,
      ks_one_sample(ratios, [&](double x) { return mixture_cdf(expo, x); },
                    cfg.alpha));
  b.claim_decision(
      "ratio rejected against the unmixed law", true,
      ks_one_sample(ratios, [&](double x) { return cdf(expo, x); }, 0.001));
  return b.finish();
}

ExperimentResult run_cf_witness(const ExperimentConfig& cfg) {
  Builder b;
  const std::size_t n = cfg.n ? cfg.n : 100000;
  const DistSpec lu = DistSpec::log_uniform();
  const DistSpec lr = DistSpec::log_rademacher();
  b.spec(lu.text());
  b.spec(lr.text());

  const std::vector<double> grid = default_cf_grid();
  const TestReport rep_u = iid_decomposability_obstruction(analytic_log_cf(lu, grid));
  b.claim_decision("log-uniform obstruction found", true, rep_u);
  const double t_u = rep_u.reject ? std::stod(rep_u.diagnostics.at("witness_t")) : 0.0;
  const double m_u = rep_u.reject ? std::stod(rep_u.diagnostics.at("margin")) : 0.0;
  b.claim_interval("log-uniform witness t", 3.0 * kPi / 2.0, t_u, 0.05);
  b.claim_interval("log-uniform margin", 0.2122, m_u, 1e-3);

  const TestReport rep_r = iid_decomposability_obstruction(analytic_log_cf(lr, grid));
  b.claim_decision("log-rademacher obstruction found", true, rep_r);
  const double t_r = rep_r.reject ? std::stod(rep_r.diagnostics.at("witness_t")) : 0.0;
  const double m_r = rep_r.reject ? std::stod(rep_r.diagnostics.at("margin")) : 0.0;
  b.claim_interval("log-rademacher witness t", kPi, t_r, 1e-12);
  b.claim_interval("log-rademacher margin", 1.0, m_r, 1e-12);

  // a genuine iid ratio must never trigger the obstruction
  const DistSpec cauchy = DistSpec::standard_cauchy();
  b.spec(cauchy.text());
  RandomStream root = new_stream({cfg.seed, cfg.stream});
  RandomStream s1 = root.split();
  Sample logs = sample(cauchy, s1, n);
  for (double& v : logs.values) v = std::log(std::fabs(v));
  logs.provenance.spec_text = "log|cauchy|";
  std::vector<double> tgrid;
  for (int i = 1; i <= 40; ++i) tgrid.push_back(0.25 * i);
  const TestReport rep_e = iid_decomposability_obstruction(empirical_cf(logs, tgrid));
  b.claim_decision("no obstruction on an iid-ratio log sample", false, rep_e);

  CsvTable t;
  t.name = "cf_curves";
  t.header = {"t", "log_uniform_re", "log_rademacher_re"};
  for (double ti : grid) {
    t.rows.push_back({fmt_double(ti),
                      fmt_double(ti == 0.0 ? 1.0 : std::sin(ti) / ti),
                      fmt_double(std::cos(ti))});
  }
  b.result.tables.push_back(std::move(t));
  return b.finish();
}

ExperimentResult run_fnn_selfinverse(const ExperimentConfig& cfg) {
  Builder b;
  const std::size_t n = cfg.n ? cfg.n : 20000;
  const DistSpec f4 = DistSpec::f_ratio(4);
  b.spec(f4.text());
  RandomStream root = new_stream({cfg.seed, cfg.stream});
  RandomStream s1 = root.split();
  RandomStream s2 = root.split();
  RandomStream s3 = root.split();

  b.claim_decision("self-inverse test passes", false,
                   self_inverse_test(f4, s1, n, cfg.alpha));
  const Sample direct = sample(f4, s2, n);
  b.claim_decision("log-symmetry test passes", false,
                   log_symmetry_test(direct, cfg.alpha));
  const Sample again = sample(f4, s3, n);
  b.claim_decision(
      "sampler matches the cdf", false,
      ks_one_sample(again, [&](double x) { return cdf(f4, x); }, cfg.alpha));

  double worst = 0.0;
  double worst_mix = 0.0;
  for (double z : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    worst = std::max(worst, std::fabs(reciprocal_cdf(f4, z) - cdf(f4, z)));
    worst_mix = std::max(worst_mix, std::fabs(mixture_cdf(f4, z) - cdf(f4, z)));
  }
  b.claim_interval("max |reciprocal cdf - cdf| on a z grid", 0.0, worst, 1e-8);
  b.claim_interval("max |mixture cdf - cdf| on a z grid", 0.0, worst_mix, 1e-8);
  return b.finish();
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "discrete-table",  "shifted-uniform", "laha-cauchy",
      "corr-cauchy",     "prop2-roundtrip", "prop2-nonselfinverse",
      "cf-witness",      "fnn-selfinverse",
  };
  return names;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), config.name) == names.end())
    throw DomainError("unknown experiment '" + config.name + "'");
  if (config.n != 0 && config.n < 1000)
    throw DomainError("experiment n must be >= 1000");
  if (!(config.alpha > 0.0 && config.alpha <= 0.1))
    throw DomainError("experiment alpha must lie in (0, 0.1]");

  ExperimentResult result;
  if (config.name == "discrete-table") result = run_discrete_table(config);
  else if (config.name == "shifted-uniform") result = run_shifted_uniform(config);
  else if (config.name == "laha-cauchy") result = run_laha_cauchy(config);
  else if (config.name == "corr-cauchy") result = run_corr_cauchy(config);
  else if (config.name == "prop2-roundtrip") result = run_prop2_roundtrip(config);
  else if (config.name == "prop2-nonselfinverse")
    result = run_prop2_nonselfinverse(config);
  else if (config.name == "cf-witness") result = run_cf_witness(config);
  else result = run_fnn_selfinverse(config);
  result.name = config.name;
  result.config = config;
  return result;
}

std::string experiment_to_json(const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["experiment"] = result.name;
  j["version"] = kVersion;
  j["seed"] = result.config.seed;
  j["stream"] = result.config.stream;
  j["n"] = result.config.n;
  j["alpha"] = result.config.alpha;
  j["tol"] = result.config.tol;
  j["specs"] = result.specs;
  j["pass"] = result.pass;
  auto& claims = j["claims"] = nlohmann::ordered_json::array();
  for (const auto& c : result.checks) {
    nlohmann::ordered_json cj;
    cj["claim"] = c.claim;
    cj["expected"] = c.expected;
    cj["observed"] = c.observed;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    claims.push_back(std::move(cj));
  }
  auto& reports = j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : result.reports)
    reports.push_back(nlohmann::ordered_json::parse(to_json(r)));
  return j.dump(2);
}

}  // namespace selfinv
