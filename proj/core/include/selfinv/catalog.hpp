#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "selfinv/rational.hpp"
#include "selfinv/rng.hpp"

namespace selfinv {

enum class DistKind {
  standard_cauchy,
  cauchy,
  corr_normal_ratio,
  f_ratio,
  laha,
  log_uniform,
  log_rademacher,
  exponential,
  constant,
  normal,
};

struct Capabilities {
  bool has_density = false;
  bool has_cdf = false;
  bool has_sampler = false;
};

// A validated description of a scalar law. Instances are immutable; all
// parameter checks happen in the factories, so a constructed DistSpec is
// always usable. Every kind satisfies Pr[X = 0] = 0, which is what makes the
// whole catalog admissible on either side of a ratio.
class DistSpec {
 public:
  static DistSpec standard_cauchy();
  static DistSpec cauchy(double mu, double sigma);  // mu=0, sigma=1 canonicalizes
  static DistSpec corr_normal_ratio(double rho);
  static DistSpec f_ratio(int n);
  static DistSpec laha();
  static DistSpec log_uniform();
  static DistSpec log_rademacher();
  static DistSpec exponential(double rate);
  static DistSpec constant(double c);
  static DistSpec normal(double mu, double sigma);

  DistKind kind() const { return kind_; }
  Capabilities capabilities() const;
  // True when the law equals the law of its own reciprocal.
  bool self_inverse() const;
  // Canonical spec string; parse_spec(text()) round-trips.
  std::string text() const;

  double mu() const { return p1_; }     // cauchy, normal
  double sigma() const { return p2_; }  // cauchy, normal
  double rho() const { return p1_; }    // corr_normal_ratio
  int n() const { return n_; }          // f_ratio
  double rate() const { return p1_; }   // exponential
  double c() const { return p1_; }      // constant

  friend bool operator==(const DistSpec&, const DistSpec&) = default;

 private:
  DistSpec(DistKind kind, double p1, double p2, int n)
      : kind_(kind), p1_(p1), p2_(p2), n_(n) {}

  DistKind kind_;
  double p1_ = 0.0;
  double p2_ = 0.0;
  int n_ = 0;
};

// 3x3-style finite joint law with exact rational masses. Support values are
// rational so ratio enumeration stays exact.
struct DiscreteTable {
  std::vector<Rational> support_x;
  std::vector<Rational> support_y;
  std::vector<std::vector<Rational>> prob;  // prob[ix][iy]

  // Built-in table behind the spec string "discrete-table:paper":
  // support {1,2,3} x {1,2,3}, masses in 36ths, both marginals uniform,
  // but prob[0][1] = 9/36 against prob[1][0] = 1/36, so the table is not
  // symmetric and X/Y is not self-inverse.
  static DiscreteTable builtin();
};

struct Region {
  double x_lo, x_hi;
  double y_lo, y_hi;
  double density;
};

// Piecewise-constant joint density on disjoint axis-aligned rectangles.
struct RegionList {
  std::vector<Region> regions;

  // Built-in regions behind "region-uniform:paper": density 1/3 on
  // (0,1)x(1,2), (1,2)x(2,3), (2,3)x(0,1). Both marginals are U(0,3), yet
  // Pr[X/Y <= 1] = 2/3 while Pr[Y/X <= 1] = 1/3.
  static RegionList builtin();
};

enum class JointKind {
  product,
  discrete_table,
  region_uniform,
  constructed,
  bivariate_normal,
};

// A validated description of a bivariate law. The constructed kind realizes
// the exchangeable pair (X, Y) = (W * Z^I, W * Z^(1-I)) with I a fair coin.
class JointSpec {
 public:
  static JointSpec product(DistSpec x, DistSpec y);
  static JointSpec discrete_table(DiscreteTable table, std::string name = "");
  static JointSpec region_uniform(RegionList regions, std::string name = "");
  static JointSpec constructed(DistSpec z, DistSpec w);
  static JointSpec bivariate_normal(double rho);

  JointKind kind() const { return kind_; }
  std::string text() const;
  // f(x,y) = f(y,x) holds for every (x,y); true for product(d,d),
  // bivariate_normal, constructed, and symmetric tables/regions.
  bool exchangeable() const;
  bool has_joint_density() const;

  const DistSpec& x_dist() const;  // product
  const DistSpec& y_dist() const;  // product
  const DistSpec& z_dist() const;  // constructed
  const DistSpec& w_dist() const;  // constructed
  const DiscreteTable& table() const;
  const RegionList& regions() const;
  double rho() const;  // bivariate_normal

 private:
  JointSpec(JointKind kind) : kind_(kind) {}

  JointKind kind_;
  std::vector<DistSpec> dists_;  // product: {x, y}; constructed: {z, w}
  DiscreteTable table_;
  RegionList regions_;
  double rho_ = 0.0;
  std::string name_;  // nonempty for named built-ins
};

struct Provenance {
  StreamKey key;
  std::string spec_text;
};

struct Sample {
  std::vector<double> values;
  Provenance provenance;
};

struct PairSample {
  std::vector<double> xs;
  std::vector<double> ys;
  Provenance provenance;
};

using AnySpec = std::variant<DistSpec, JointSpec>;

// Parses the documented spec grammar, e.g. "cauchy", "cauchy(0, 2)",
// "corr-normal-ratio(0.5)", "f-ratio(4)", "discrete-table:paper",
// "region-uniform:paper", "constructed(z=log-uniform, w=constant(1))",
// "product(x=normal(0,1), y=normal(0,1))", "bivariate-normal(0.5)".
// Syntax problems raise ParseError (position + expected tokens); a
// well-formed spec with an out-of-range parameter raises DomainError.
AnySpec parse_spec(const std::string& text);

// Same grammar, restricted to one side of the variant.
DistSpec parse_dist(const std::string& text);
JointSpec parse_joint(const std::string& text);

// Density f_d(x). CapabilityError when !has_density.
double density(const DistSpec& d, double x);

// Pr[X <= x]. Closed forms throughout the catalog; error <= 1e-10.
double cdf(const DistSpec& d, double x);

// Pr[X < x] and Pr[X = x]; they differ from cdf only for atomic laws
// (log_rademacher, constant).
double cdf_strict(const DistSpec& d, double x);
double atom_at(const DistSpec& d, double x);

Sample sample(const DistSpec& d, RandomStream& stream, std::size_t n);
PairSample sample_joint(const JointSpec& j, RandomStream& stream, std::size_t n);

// Joint density at (x, y) for product / region_uniform / bivariate_normal.
// CapabilityError for constructed (no closed form) and discrete_table (use
// joint_pmf_table).
double joint_density(const JointSpec& j, double x, double y);

// Exact rational table; CapabilityError unless kind == discrete_table.
const DiscreteTable& joint_pmf_table(const JointSpec& j);

// The joint with components swapped: law of (Y, X).
JointSpec transpose(const JointSpec& j);

}  // namespace selfinv
