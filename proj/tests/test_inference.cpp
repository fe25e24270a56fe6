#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "selfinv/catalog.hpp"
#include "selfinv/errors.hpp"
#include "selfinv/stats.hpp"

using namespace selfinv;

namespace {
constexpr double kPi = std::numbers::pi;

Sample make_sample(std::vector<double> values, std::uint64_t stream_id = 0) {
  Sample s;
  s.values = std::move(values);
  s.provenance = {StreamKey{0, stream_id}, "literal"};
  return s;
}

Sample uniform_sample(StreamKey key, std::size_t n) {
  RandomStream stream(key);
  Sample s;
  s.provenance = {key, "uniform01"};
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(stream.uniform01());
  return s;
}
}  // namespace

TEST_SUITE("inference") {

TEST_CASE("ks_two_sample statistic on hand-built samples") {
  std::vector<double> a, b;
  for (int i = 1; i <= 25; ++i) {
    a.push_back(i);
    b.push_back(i);
  }
  const TestReport same = ks_two_sample(make_sample(a), make_sample(b), 0.01);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK_FALSE(same.reject);
  CHECK(same.n_used == 50);

  for (double& v : b) v += 0.5;  // interleave: D = 1/25
  const TestReport off = ks_two_sample(make_sample(a), make_sample(b), 0.01);
  CHECK(off.statistic == doctest::Approx(0.04).epsilon(1e-12));
  CHECK_FALSE(off.reject);

  // heavy ties collapse to zero distance
  const TestReport tied = ks_two_sample(make_sample(std::vector<double>(30, 1.0)),
                                        make_sample(std::vector<double>(40, 1.0)),
                                        0.01);
  CHECK(tied.statistic == 0.0);
}

TEST_CASE("ks_two_sample requires 25 points per side") {
  std::vector<double> few(24, 1.0), enough(25, 1.0);
  CHECK_THROWS_AS(ks_two_sample(make_sample(few), make_sample(enough), 0.01),
                  DomainError);
  CHECK_THROWS_AS(ks_two_sample(make_sample(enough), make_sample(few), 0.01),
                  DomainError);
}

TEST_CASE("ks_two_sample separates shifted laws") {
  RandomStream s1(StreamKey{201, 0});
  RandomStream s2(StreamKey{201, 1});
  const Sample a = sample(DistSpec::normal(0, 1), s1, 2000);
  const Sample b = sample(DistSpec::normal(1, 1), s2, 2000);
  const TestReport r = ks_two_sample(a, b, 0.01);
  CHECK(r.reject);
  CHECK(r.p_value < 1e-50);
  CHECK(r.statistic > 0.3);
  CHECK(r.diagnostics.count("lambda") == 1);
}

TEST_CASE("ks_one_sample self-consistency and power") {
  const Sample u = uniform_sample(StreamKey{202, 0}, 10000);
  auto identity = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK_FALSE(ks_one_sample(u, identity, 1e-3).reject);
  auto wrong = [](double x) { return std::clamp(x * x, 0.0, 1.0); };
  CHECK(ks_one_sample(u, wrong, 1e-3).reject);
  std::vector<double> few(24, 0.5);
  CHECK_THROWS_AS(ks_one_sample(make_sample(few), identity, 0.01), DomainError);
}

TEST_CASE("self_inverse_test accepts self-inverse laws and rejects others") {
  RandomStream s1(StreamKey{203, 0});
  CHECK_FALSE(
      self_inverse_test(DistSpec::standard_cauchy(), s1, 20000, 0.01).reject);
  RandomStream s2(StreamKey{203, 1});
  CHECK(self_inverse_test(DistSpec::exponential(1), s2, 10000, 0.001).reject);
}

TEST_CASE("self_inverse_test with a pivot theta") {
  // 2Z for self-inverse Z is log-symmetric about 2, not about 1
  RandomStream s(StreamKey{204, 0});
  const Sample z = sample(DistSpec::log_uniform(), s, 20000);
  Sample scaled = z;
  for (double& v : scaled.values) v *= 2.0;
  CHECK_FALSE(self_inverse_test(scaled, 0.01, 2.0).reject);
  CHECK(self_inverse_test(scaled, 0.001, 1.0).reject);

  Sample with_negative = make_sample(std::vector<double>(100, 1.0));
  with_negative.values[7] = -1.0;
  CHECK_THROWS_AS(self_inverse_test(with_negative, 0.01, 2.0), DomainError);
}

TEST_CASE("log_symmetry_test") {
  RandomStream s1(StreamKey{205, 0});
  const Sample f = sample(DistSpec::f_ratio(4), s1, 20000);
  CHECK_FALSE(log_symmetry_test(f, 0.01).reject);

  RandomStream s2(StreamKey{205, 1});
  const Sample e = sample(DistSpec::exponential(1), s2, 10000);
  CHECK(log_symmetry_test(e, 0.001).reject);

  std::vector<double> bad(100, 1.0);
  bad[3] = 0.0;
  CHECK_THROWS_AS(log_symmetry_test(make_sample(bad), 0.01), DomainError);
}

TEST_CASE("bowker_statistic on hand counts") {
  std::size_t df = 0;
  const double balanced = bowker_statistic({{0, 5}, {5, 0}}, &df);
  CHECK(balanced == 0.0);
  CHECK(df == 1);
  const double skewed = bowker_statistic({{1, 8}, {2, 4}}, &df);
  CHECK(skewed == doctest::Approx(3.6).epsilon(1e-12));  // (8-2)^2 / 10
  CHECK(bowker_statistic({{0, 0}, {0, 0}}) == 0.0);      // empty pairs add 0
}

TEST_CASE("bowker_statistic is invariant under simultaneous relabeling") {
  const std::vector<std::vector<std::size_t>> counts = {
      {5, 9, 2}, {4, 7, 11}, {6, 3, 8}};
  // permute rows and columns by the same permutation (2,0,1)
  const std::size_t perm[3] = {2, 0, 1};
  std::vector<std::vector<std::size_t>> permuted(3, std::vector<std::size_t>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      permuted[i][j] = counts[perm[i]][perm[j]];
  CHECK(bowker_statistic(counts) ==
        doctest::Approx(bowker_statistic(permuted)).epsilon(1e-12));
}

TEST_CASE("exchangeability_test passes exchangeable joints") {
  RandomStream s(StreamKey{206, 0});
  const PairSample ps = sample_joint(JointSpec::bivariate_normal(0.8), s, 20000);
  GridSpec grid;
  grid.k = 6;
  const TestReport r = exchangeability_test(ps, grid, 0.01);
  CHECK_FALSE(r.reject);
  CHECK(r.diagnostics.at("binning") == "pooled-quantile");
  // rho=0.8 drains the far-off-diagonal corner pairs, so the sparse-pair
  // rule may coarsen below the requested 6
  const int k_used = std::stoi(r.diagnostics.at("k"));
  CHECK(k_used >= 2);
  CHECK(k_used <= 6);

  // no coarsening pressure at rho=0: the requested grid survives
  RandomStream s0(StreamKey{206, 4});
  const PairSample ps0 = sample_joint(JointSpec::bivariate_normal(0.0), s0, 20000);
  const TestReport r0 = exchangeability_test(ps0, grid, 0.01);
  CHECK_FALSE(r0.reject);
  CHECK(r0.diagnostics.at("k") == "6");
}

TEST_CASE("exchangeability_test rejects the shifted-rectangle joint") {
  RandomStream s(StreamKey{206, 1});
  const JointSpec region = JointSpec::region_uniform(RegionList::builtin(),
                                                     "region-uniform:paper");
  const PairSample ps = sample_joint(region, s, 20000);
  GridSpec grid;
  grid.edges = {0.0, 1.0, 2.0, 3.0};
  const TestReport r = exchangeability_test(ps, grid, 0.001);
  CHECK(r.reject);
  CHECK(r.diagnostics.at("binning") == "explicit");
  CHECK(r.statistic > 1000.0);  // cell (0-1,1-2) holds 1/3 mass vs 0 opposite
}

TEST_CASE("exchangeability_test coarsens sparse quantile grids") {
  RandomStream s(StreamKey{206, 2});
  const PairSample ps = sample_joint(JointSpec::bivariate_normal(0.0), s, 120);
  GridSpec grid;
  grid.k = 6;
  const TestReport r = exchangeability_test(ps, grid, 0.01);
  const int k_used = std::stoi(r.diagnostics.at("k"));
  CHECK(k_used >= 2);
  CHECK(k_used < 6);
}

TEST_CASE("exchangeability_test input validation") {
  RandomStream s(StreamKey{206, 3});
  const PairSample small =
      sample_joint(JointSpec::bivariate_normal(0.0), s, 99);
  GridSpec grid;
  CHECK_THROWS_AS(exchangeability_test(small, grid, 0.01), DomainError);

  const PairSample ok = sample_joint(JointSpec::bivariate_normal(0.0), s, 200);
  GridSpec two_edges;
  two_edges.edges = {0.0, 1.0};
  CHECK_THROWS_AS(exchangeability_test(ok, two_edges, 0.01), DomainError);
  GridSpec unsorted;
  unsorted.edges = {0.0, 2.0, 1.0};
  CHECK_THROWS_AS(exchangeability_test(ok, unsorted, 0.01), DomainError);

  PairSample constant;
  constant.xs.assign(200, 1.0);
  constant.ys.assign(200, 1.0);
  GridSpec quant;
  quant.k = 4;
  CHECK_THROWS_AS(exchangeability_test(constant, quant, 0.01), DomainError);
}

TEST_CASE("exchangeability_exact finds the witness cells") {
  const TestReport r = exchangeability_exact(DiscreteTable::builtin());
  CHECK(r.reject);
  CHECK(r.exact_verdict);
  CHECK(std::isnan(r.p_value));
  CHECK(r.statistic == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK(r.diagnostics.count("witness_cells") == 1);
  CHECK(r.diagnostics.count("witness_masses") == 1);

  DiscreteTable sym;
  sym.support_x = {Rational(1), Rational(2)};
  sym.support_y = {Rational(1), Rational(2)};
  sym.prob = {{Rational(1, 4), Rational(1, 4)},
              {Rational(1, 4), Rational(1, 4)}};
  const TestReport ok = exchangeability_exact(sym);
  CHECK_FALSE(ok.reject);
  CHECK(ok.exact_verdict);
}

TEST_CASE("default_cf_grid spans (0, 4pi] in pi/4 steps") {
  const std::vector<double> grid = default_cf_grid();
  REQUIRE(grid.size() == 16);
  CHECK(grid.front() == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(grid.back() == doctest::Approx(4 * kPi).epsilon(1e-15));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("analytic_log_cf closed forms") {
  const std::vector<double> grid = {0.0, kPi / 2, kPi, 3 * kPi / 2};
  const CfCurve lu = analytic_log_cf(DistSpec::log_uniform(), grid);
  CHECK(lu.analytic);
  CHECK(lu.band == 0.0);
  CHECK(lu.values[0].real() == 1.0);
  CHECK(lu.values[1].real() == doctest::Approx(2 / kPi).epsilon(1e-14));
  CHECK(lu.values[2].real() ==
        doctest::Approx(std::sin(kPi) / kPi).epsilon(1e-14));
  CHECK(lu.values[3].real() ==
        doctest::Approx(-0.2122065907891938).epsilon(1e-13));
  for (const auto& v : lu.values) CHECK(v.imag() == 0.0);

  const CfCurve lr = analytic_log_cf(DistSpec::log_rademacher(), grid);
  CHECK(lr.values[0].real() == 1.0);
  CHECK(lr.values[2].real() == doctest::Approx(-1.0).epsilon(1e-15));

  CHECK_THROWS_AS(analytic_log_cf(DistSpec::laha(), grid), CapabilityError);
  CHECK_THROWS_AS(analytic_log_cf(DistSpec::standard_cauchy(), grid),
                  CapabilityError);
}

TEST_CASE("empirical_cf conjugate symmetry is exact") {
  const Sample u = uniform_sample(StreamKey{207, 0}, 500);
  const CfCurve cf = empirical_cf(u, {-2.0, -1.0, 0.0, 1.0, 2.0});
  CHECK(cf.values[2] == std::complex<double>(1.0, 0.0));  // t = 0 exactly
  CHECK(cf.values[0].real() == cf.values[4].real());
  CHECK(cf.values[0].imag() == -cf.values[4].imag());
  CHECK(cf.values[1].real() == cf.values[3].real());
  CHECK(cf.values[1].imag() == -cf.values[3].imag());
  CHECK(cf.band == doctest::Approx(3.0 / std::sqrt(500.0)).epsilon(1e-15));
  CHECK_FALSE(cf.analytic);
  CHECK(cf.n == 500);

  std::vector<double> few(99, 0.5);
  CHECK_THROWS_AS(empirical_cf(make_sample(few), {1.0}), DomainError);
}

TEST_CASE("empirical_cf approximates the analytic curve") {
  // log of log_uniform draws is U(-1,1), whose cf is sin(t)/t
  RandomStream s(StreamKey{207, 1});
  Sample logs = sample(DistSpec::log_uniform(), s, 100000);
  for (double& v : logs.values) v = std::log(v);
  const double t = 3 * kPi / 2;
  const CfCurve cf = empirical_cf(logs, {t});
  CHECK(std::fabs(cf.values[0].real() - -0.2122065907891938) < cf.band);
  CHECK(std::fabs(cf.values[0].imag()) < cf.band);
}

TEST_CASE("obstruction witness for the log-uniform cf") {
  const CfCurve curve =
      analytic_log_cf(DistSpec::log_uniform(), default_cf_grid());
  const TestReport r = iid_decomposability_obstruction(curve);
  CHECK(r.reject);
  const double wt = std::stod(r.diagnostics.at("witness_t"));
  CHECK(wt == doctest::Approx(3 * kPi / 2).epsilon(1e-12));
  CHECK(r.statistic == doctest::Approx(0.2122065907891938).epsilon(1e-12));
  CHECK(std::stod(r.diagnostics.at("margin")) == r.statistic);
  CHECK(r.diagnostics.count("neighborhood") == 1);
}

TEST_CASE("obstruction witness for the log-rademacher cf") {
  const CfCurve curve =
      analytic_log_cf(DistSpec::log_rademacher(), default_cf_grid());
  const TestReport r = iid_decomposability_obstruction(curve);
  CHECK(r.reject);
  CHECK(std::stod(r.diagnostics.at("witness_t")) ==
        doctest::Approx(kPi).epsilon(1e-12));
  CHECK(r.statistic == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("no obstruction on genuine iid log-ratios") {
  // log|X/Y| = log|X| - log|Y| with X, Y iid has cf |phi|^2 >= 0
  std::uint64_t sid = 0;
  for (const DistSpec& d : {DistSpec::normal(0, 1), DistSpec::exponential(1),
                            DistSpec::laha()}) {
    RandomStream sx(StreamKey{208, sid++});
    RandomStream sy(StreamKey{208, sid++});
    const Sample x = sample(d, sx, 20000);
    const Sample y = sample(d, sy, 20000);
    Sample logs;
    logs.provenance = x.provenance;
    for (std::size_t i = 0; i < x.values.size(); ++i)
      logs.values.push_back(std::log(std::fabs(x.values[i])) -
                            std::log(std::fabs(y.values[i])));
    const CfCurve cf = empirical_cf(logs, default_cf_grid());
    const TestReport r = iid_decomposability_obstruction(cf);
    CHECK_MESSAGE(!r.reject, d.text());
  }
}

TEST_CASE("TestReport serializes with the exact field set") {
  RandomStream s1(StreamKey{209, 0});
  RandomStream s2(StreamKey{209, 1});
  const Sample a = sample(DistSpec::standard_cauchy(), s1, 1000);
  const Sample b = sample(DistSpec::standard_cauchy(), s2, 1000);
  const TestReport r = ks_two_sample(a, b, 0.01);
  const auto j = nlohmann::ordered_json::parse(to_json(r));
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  CHECK(keys == std::vector<std::string>{"test", "statistic", "p_value", "alpha",
                                         "decision", "n", "seed", "diagnostics"});
  CHECK(j["decision"].is_string());
  CHECK((j["decision"] == "pass" || j["decision"] == "reject"));
  CHECK(j["p_value"].is_number());
  CHECK(j["n"] == 2000);

  // exact verdicts serialize p_value as null
  const auto je = nlohmann::ordered_json::parse(
      to_json(exchangeability_exact(DiscreteTable::builtin())));
  CHECK(je["p_value"].is_null());
  CHECK(je["decision"] == "reject");
}

}  // TEST_SUITE
