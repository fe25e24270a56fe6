#include "selfinv/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "selfinv/construction.hpp"
#include "selfinv/errors.hpp"
#include "selfinv/format.hpp"
#include "selfinv/special.hpp"

namespace selfinv {

namespace {

constexpr double kPi = std::numbers::pi;
const double kE = std::exp(1.0);
const double kEInv = 1.0 / std::exp(1.0);

std::string kind_name(DistKind k) {
  switch (k) {
    case DistKind::standard_cauchy: return "cauchy";
    case DistKind::cauchy: return "cauchy";
    case DistKind::corr_normal_ratio: return "corr-normal-ratio";
    case DistKind::f_ratio: return "f-ratio";
    case DistKind::laha: return "laha";
    case DistKind::log_uniform: return "log-uniform";
    case DistKind::log_rademacher: return "log-rademacher";
    case DistKind::exponential: return "exponential";
    case DistKind::constant: return "constant";
    case DistKind::normal: return "normal";
  }
  return "?";
}

}  // namespace

DistSpec DistSpec::standard_cauchy() {
  return DistSpec(DistKind::standard_cauchy, 0.0, 1.0, 0);
}

DistSpec DistSpec::cauchy(double mu, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("cauchy: sigma must be > 0");
  if (!std::isfinite(mu) || !std::isfinite(sigma))
    throw DomainError("cauchy: parameters must be finite");
  if (mu == 0.0 && sigma == 1.0) return standard_cauchy();
  return DistSpec(DistKind::cauchy, mu, sigma, 0);
}

DistSpec DistSpec::corr_normal_ratio(double rho) {
  if (!(rho > -1.0 && rho < 1.0))
    throw DomainError("corr-normal-ratio: rho must lie in (-1, 1)");
  return DistSpec(DistKind::corr_normal_ratio, rho, 0.0, 0);
}

DistSpec DistSpec::f_ratio(int n) {
  if (n < 1) throw DomainError("f-ratio: n must be a positive integer");
  return DistSpec(DistKind::f_ratio, 0.0, 0.0, n);
}

DistSpec DistSpec::laha() { return DistSpec(DistKind::laha, 0.0, 0.0, 0); }

DistSpec DistSpec::log_uniform() {
  return DistSpec(DistKind::log_uniform, 0.0, 0.0, 0);
}

DistSpec DistSpec::log_rademacher() {
  return DistSpec(DistKind::log_rademacher, 0.0, 0.0, 0);
}

DistSpec DistSpec::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw DomainError("exponential: rate must be > 0");
  return DistSpec(DistKind::exponential, rate, 0.0, 0);
}

DistSpec DistSpec::constant(double c) {
  if (c == 0.0) throw DomainError("constant: c must be nonzero");
  if (!std::isfinite(c)) throw DomainError("constant: c must be finite");
  return DistSpec(DistKind::constant, c, 0.0, 0);
}

DistSpec DistSpec::normal(double mu, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("normal: sigma must be > 0");
  if (!std::isfinite(mu) || !std::isfinite(sigma))
    throw DomainError("normal: parameters must be finite");
  return DistSpec(DistKind::normal, mu, sigma, 0);
}

Capabilities DistSpec::capabilities() const {
  switch (kind_) {
    case DistKind::log_rademacher:
    case DistKind::constant:
      return Capabilities{false, true, true};
    default:
      return Capabilities{true, true, true};
  }
}

bool DistSpec::self_inverse() const {
  switch (kind_) {
    case DistKind::standard_cauchy:
    case DistKind::f_ratio:
    case DistKind::log_uniform:
    case DistKind::log_rademacher:
      return true;
    // 1/Z for Z ~ cauchy(mu, sigma) is cauchy(mu/(mu^2+sigma^2),
    // sigma/(mu^2+sigma^2)); the law is a fixed point iff mu^2 + sigma^2 = 1.
    // corr_normal_ratio(rho) is cauchy(rho, sqrt(1-rho^2)), which satisfies
    // that identity for every rho.
    case DistKind::corr_normal_ratio:
      return true;
    case DistKind::cauchy:
      return p1_ * p1_ + p2_ * p2_ == 1.0;
    case DistKind::constant:
      return p1_ == 1.0 || p1_ == -1.0;
    default:
      return false;
  }
}

std::string DistSpec::text() const {
  switch (kind_) {
    case DistKind::standard_cauchy: return "cauchy";
    case DistKind::cauchy:
      return "cauchy(" + fmt_double(p1_) + ", " + fmt_double(p2_) + ")";
    case DistKind::corr_normal_ratio:
      return "corr-normal-ratio(" + fmt_double(p1_) + ")";
    case DistKind::f_ratio: return "f-ratio(" + std::to_string(n_) + ")";
    case DistKind::laha: return "laha";
    case DistKind::log_uniform: return "log-uniform";
    case DistKind::log_rademacher: return "log-rademacher";
    case DistKind::exponential: return "exponential(" + fmt_double(p1_) + ")";
    case DistKind::constant: return "constant(" + fmt_double(p1_) + ")";
    case DistKind::normal:
      return "normal(" + fmt_double(p1_) + ", " + fmt_double(p2_) + ")";
  }
  return "?";
}

double density(const DistSpec& d, double x) {
  switch (d.kind()) {
    case DistKind::standard_cauchy:
      return 1.0 / (kPi * (1.0 + x * x));
    case DistKind::cauchy: {
      const double t = x - d.mu();
      return d.sigma() / (kPi * (d.sigma() * d.sigma() + t * t));
    }
    case DistKind::corr_normal_ratio: {
      const double rho = d.rho();
      const double s2 = 1.0 - rho * rho;
      const double t = x - rho;
      return std::sqrt(s2) / (kPi * (s2 + t * t));
    }
    case DistKind::f_ratio: {
      const double a = d.n() / 2.0;
      if (x < 0.0) return 0.0;
      if (x == 0.0) {
        if (d.n() == 1) return std::numeric_limits<double>::infinity();
        if (d.n() == 2) return 1.0;
        return 0.0;
      }
      return std::exp(std::lgamma(2.0 * a) - 2.0 * std::lgamma(a) +
                      (a - 1.0) * std::log(x) - 2.0 * a * std::log1p(x));
    }
    case DistKind::laha: {
      const double x2 = x * x;
      return std::sqrt(2.0) / (kPi * (1.0 + x2 * x2));
    }
    case DistKind::log_uniform:
      return (x >= kEInv && x <= kE) ? 1.0 / (2.0 * x) : 0.0;
    case DistKind::exponential:
      return (x >= 0.0) ? d.rate() * std::exp(-d.rate() * x) : 0.0;
    case DistKind::normal: {
      const double t = (x - d.mu()) / d.sigma();
      return std::exp(-0.5 * t * t) / (d.sigma() * std::sqrt(2.0 * kPi));
    }
    case DistKind::log_rademacher:
    case DistKind::constant:
      throw CapabilityError("no density: " + d.text() + " is purely atomic");
  }
  throw CapabilityError("no density for " + d.text());
}

double cdf(const DistSpec& d, double x) {
  switch (d.kind()) {
    case DistKind::standard_cauchy:
      return 0.5 + std::atan(x) / kPi;
    case DistKind::cauchy:
      return 0.5 + std::atan((x - d.mu()) / d.sigma()) / kPi;
    case DistKind::corr_normal_ratio: {
      const double rho = d.rho();
      return 0.5 + std::atan((x - rho) / std::sqrt(1.0 - rho * rho)) / kPi;
    }
    case DistKind::f_ratio: {
      if (x <= 0.0) return 0.0;
      const double a = d.n() / 2.0;
      return incomplete_beta(a, a, x / (1.0 + x));
    }
    case DistKind::laha: {
      // Antiderivative of sqrt(2)/(pi(1+t^4)), fixed so that F(-inf) = 0:
      // F(x) = 1/2 + (1/(4 pi)) ln((x^2+sqrt(2)x+1)/(x^2-sqrt(2)x+1))
      //            + (1/(2 pi)) (atan(sqrt(2)x+1) + atan(sqrt(2)x-1)).
      const double r2 = std::sqrt(2.0);
      const double x2 = x * x;
      const double lg = std::log((x2 + r2 * x + 1.0) / (x2 - r2 * x + 1.0));
      const double at = std::atan(r2 * x + 1.0) + std::atan(r2 * x - 1.0);
      return 0.5 + lg / (4.0 * kPi) + at / (2.0 * kPi);
    }
    case DistKind::log_uniform:
      if (x < kEInv) return 0.0;
      if (x > kE) return 1.0;
      return 0.5 * (std::log(x) + 1.0);
    case DistKind::log_rademacher:
      if (x < kEInv) return 0.0;
      if (x < kE) return 0.5;
      return 1.0;
    case DistKind::exponential:
      return (x > 0.0) ? -std::expm1(-d.rate() * x) : 0.0;
    case DistKind::constant:
      return (x >= d.c()) ? 1.0 : 0.0;
    case DistKind::normal:
      return normal_cdf((x - d.mu()) / d.sigma());
  }
  throw CapabilityError("no cdf for " + d.text());
}

double atom_at(const DistSpec& d, double x) {
  switch (d.kind()) {
    case DistKind::log_rademacher:
      return (x == kE || x == kEInv) ? 0.5 : 0.0;
    case DistKind::constant:
      return (x == d.c()) ? 1.0 : 0.0;
    default:
      return 0.0;
  }
}

double cdf_strict(const DistSpec& d, double x) { return cdf(d, x) - atom_at(d, x); }

namespace {

[[noreturn]] void throw_zero_draw(const DistSpec& d, const RandomStream& stream,
                                  std::size_t index) {
  throw SampleError("degenerate draw (0 or non-finite) from " + d.text() +
                    " (seed=" + std::to_string(stream.key().seed) + ", stream=" +
                    std::to_string(stream.key().stream_id) + ", index=" +
                    std::to_string(index) + ")");
}

double draw_cauchy(RandomStream& stream) {
  return std::tan(kPi * (stream.uniform01() - 0.5));
}

// Chi-square(n): sum of n squared normals for small n; for large n the
// Marsaglia-Tsang gamma(n/2, 2) sampler (squeeze + log acceptance test).
double draw_chi_square(RandomStream& stream, int n) {
  if (n <= 32) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = stream.normal01();
      s += z * z;
    }
    return s;
  }
  const double a = 0.5 * n;
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = stream.normal01();
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = stream.uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return 2.0 * d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return 2.0 * d * v;
  }
}

// Rejection from a standard Cauchy envelope. The density ratio is
//   r(x) = [sqrt(2)/(pi(1+x^4))] / [1/(pi(1+x^2))] = sqrt(2)(1+x^2)/(1+x^4).
// In s = x^2, (1+s)/(1+s^2) has derivative (1-2s-s^2)/(1+s^2)^2, which
// vanishes at s = sqrt(2)-1; there 1+s = sqrt(2) and 1+s^2 = 2(2-sqrt(2)),
// so r peaks at sqrt(2)*sqrt(2)/(2(2-sqrt(2))) = (2+sqrt(2))/2. Envelope
// constant M = (2+sqrt(2))/2, acceptance rate 1/M ~ 0.586.
double draw_laha(RandomStream& stream) {
  const double m = (2.0 + std::sqrt(2.0)) / 2.0;
  for (;;) {
    const double x = draw_cauchy(stream);
    const double u = stream.uniform01();
    const double x2 = x * x;
    const double ratio = std::sqrt(2.0) * (1.0 + x2) / (1.0 + x2 * x2);
    if (u * m <= ratio) return x;
  }
}

double draw_one(const DistSpec& d, RandomStream& stream) {
  switch (d.kind()) {
    case DistKind::standard_cauchy:
      return draw_cauchy(stream);
    case DistKind::cauchy:
      return d.mu() + d.sigma() * draw_cauchy(stream);
    case DistKind::corr_normal_ratio: {
      const double rho = d.rho();
      const double n1 = stream.normal01();
      const double n2 = stream.normal01();
      const double y = rho * n1 + std::sqrt(1.0 - rho * rho) * n2;
      return n1 / y;
    }
    case DistKind::f_ratio: {
      const double num = draw_chi_square(stream, d.n());
      const double den = draw_chi_square(stream, d.n());
      return num / den;
    }
    case DistKind::laha:
      return draw_laha(stream);
    case DistKind::log_uniform:
      return std::exp(2.0 * stream.uniform01() - 1.0);
    case DistKind::log_rademacher:
      return stream.bernoulli_half() ? kE : kEInv;
    case DistKind::exponential:
      return -std::log1p(-stream.uniform01()) / d.rate();
    case DistKind::constant:
      return d.c();
    case DistKind::normal:
      return d.mu() + d.sigma() * stream.normal01();
  }
  throw CapabilityError("no sampler for " + d.text());
}

}  // namespace

Sample sample(const DistSpec& d, RandomStream& stream, std::size_t n) {
  if (n < 1) throw DomainError("sample: n must be >= 1");
  Sample out;
  out.provenance = Provenance{stream.key(), d.text()};
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = draw_one(d, stream);
    // Pr[X = 0] is 0 for every catalog law; an exact 0 is a probability-zero
    // event that must surface, not be resampled away.
    if (v == 0.0 || !std::isfinite(v)) throw_zero_draw(d, stream, i);
    out.values.push_back(v);
  }
  return out;
}

DiscreteTable DiscreteTable::builtin() {
  DiscreteTable t;
  t.support_x = {1, 2, 3};
  t.support_y = {1, 2, 3};
  t.prob = {
      {{2, 36}, {9, 36}, {1, 36}},
      {{1, 36}, {2, 36}, {9, 36}},
      {{9, 36}, {1, 36}, {2, 36}},
  };
  return t;
}

RegionList RegionList::builtin() {
  const double third = 1.0 / 3.0;
  return RegionList{{
      {0.0, 1.0, 1.0, 2.0, third},
      {1.0, 2.0, 2.0, 3.0, third},
      {2.0, 3.0, 0.0, 1.0, third},
  }};
}

namespace {

void validate_table(const DiscreteTable& t) {
  const std::size_t nx = t.support_x.size();
  const std::size_t ny = t.support_y.size();
  if (nx == 0 || ny == 0 || t.prob.size() != nx)
    throw DomainError("discrete table: shape mismatch");
  for (const auto& row : t.prob)
    if (row.size() != ny) throw DomainError("discrete table: ragged rows");
  for (auto support : {&t.support_x, &t.support_y}) {
    for (const auto& v : *support)
      if (v == Rational(0)) throw DomainError("discrete table: support contains 0");
    auto sorted = *support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DomainError("discrete table: duplicate support value");
  }
  Rational total(0);
  for (const auto& row : t.prob) {
    for (const auto& p : row) {
      if (p < Rational(0)) throw DomainError("discrete table: negative probability");
      total += p;
    }
  }
  if (total != Rational(1))
    throw DomainError("discrete table: probabilities sum to " + total.str() +
                      ", expected 1");
}

void validate_regions(const RegionList& r) {
  if (r.regions.empty()) throw DomainError("region list: empty");
  double mass = 0.0;
  for (const auto& reg : r.regions) {
    if (!(reg.x_lo < reg.x_hi && reg.y_lo < reg.y_hi))
      throw DomainError("region list: degenerate rectangle");
    if (!(reg.density > 0.0)) throw DomainError("region list: nonpositive density");
    mass += reg.density * (reg.x_hi - reg.x_lo) * (reg.y_hi - reg.y_lo);
  }
  if (std::fabs(mass - 1.0) > 1e-9)
    throw DomainError("region list: total mass " + fmt_double(mass) +
                      ", expected 1");
  for (std::size_t i = 0; i < r.regions.size(); ++i) {
    for (std::size_t j = i + 1; j < r.regions.size(); ++j) {
      const auto& a = r.regions[i];
      const auto& b = r.regions[j];
      const bool overlap_x = a.x_lo < b.x_hi && b.x_lo < a.x_hi;
      const bool overlap_y = a.y_lo < b.y_hi && b.y_lo < a.y_hi;
      if (overlap_x && overlap_y)
        throw DomainError("region list: rectangles overlap");
    }
  }
}

}  // namespace

JointSpec JointSpec::product(DistSpec x, DistSpec y) {
  if (!x.capabilities().has_sampler || !y.capabilities().has_sampler)
    throw DomainError("product: both components must be samplable");
  JointSpec j(JointKind::product);
  j.dists_ = {std::move(x), std::move(y)};
  return j;
}

JointSpec JointSpec::discrete_table(DiscreteTable table, std::string name) {
  validate_table(table);
  JointSpec j(JointKind::discrete_table);
  j.table_ = std::move(table);
  j.name_ = std::move(name);
  return j;
}

JointSpec JointSpec::region_uniform(RegionList regions, std::string name) {
  validate_regions(regions);
  JointSpec j(JointKind::region_uniform);
  j.regions_ = std::move(regions);
  j.name_ = std::move(name);
  return j;
}

JointSpec JointSpec::constructed(DistSpec z, DistSpec w) {
  if (!z.capabilities().has_sampler || !w.capabilities().has_sampler)
    throw DomainError("constructed: both components must be samplable");
  if (atom_at(z, 0.0) > 0.0 || atom_at(w, 0.0) > 0.0)
    throw DomainError("constructed: components must satisfy Pr[.=0] = 0");
  JointSpec j(JointKind::constructed);
  j.dists_ = {std::move(z), std::move(w)};
  return j;
}

JointSpec JointSpec::bivariate_normal(double rho) {
  if (!(rho > -1.0 && rho < 1.0))
    throw DomainError("bivariate-normal: rho must lie in (-1, 1)");
  JointSpec j(JointKind::bivariate_normal);
  j.rho_ = rho;
  return j;
}

std::string JointSpec::text() const {
  switch (kind_) {
    case JointKind::product:
      return "product(x=" + dists_[0].text() + ", y=" + dists_[1].text() + ")";
    case JointKind::discrete_table:
      return name_.empty() ? "discrete-table:custom" : name_;
    case JointKind::region_uniform:
      return name_.empty() ? "region-uniform:custom" : name_;
    case JointKind::constructed:
      return "constructed(z=" + dists_[0].text() + ", w=" + dists_[1].text() + ")";
    case JointKind::bivariate_normal:
      return "bivariate-normal(" + fmt_double(rho_) + ")";
  }
  return "?";
}

bool JointSpec::exchangeable() const {
  switch (kind_) {
    case JointKind::product:
      return dists_[0] == dists_[1];
    case JointKind::discrete_table: {
      if (table_.support_x != table_.support_y) return false;
      const std::size_t k = table_.support_x.size();
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          if (table_.prob[i][j] != table_.prob[j][i]) return false;
      return true;
    }
    case JointKind::region_uniform: {
      // Symmetric iff the transposed rectangle set is the same set.
      auto canon = [](const RegionList& r) {
        std::vector<std::array<double, 5>> v;
        for (const auto& reg : r.regions)
          v.push_back({reg.x_lo, reg.x_hi, reg.y_lo, reg.y_hi, reg.density});
        std::sort(v.begin(), v.end());
        return v;
      };
      RegionList t;
      for (const auto& reg : regions_.regions)
        t.regions.push_back({reg.y_lo, reg.y_hi, reg.x_lo, reg.x_hi, reg.density});
      return canon(regions_) == canon(t);
    }
    case JointKind::constructed:
    case JointKind::bivariate_normal:
      return true;
  }
  return false;
}

bool JointSpec::has_joint_density() const {
  switch (kind_) {
    case JointKind::product:
      return dists_[0].capabilities().has_density &&
             dists_[1].capabilities().has_density;
    case JointKind::region_uniform:
    case JointKind::bivariate_normal:
      return true;
    default:
      return false;
  }
}

const DistSpec& JointSpec::x_dist() const {
  if (kind_ != JointKind::product) throw CapabilityError("x_dist: not a product joint");
  return dists_[0];
}
const DistSpec& JointSpec::y_dist() const {
  if (kind_ != JointKind::product) throw CapabilityError("y_dist: not a product joint");
  return dists_[1];
}
const DistSpec& JointSpec::z_dist() const {
  if (kind_ != JointKind::constructed)
    throw CapabilityError("z_dist: not a constructed joint");
  return dists_[0];
}
const DistSpec& JointSpec::w_dist() const {
  if (kind_ != JointKind::constructed)
    throw CapabilityError("w_dist: not a constructed joint");
  return dists_[1];
}
const DiscreteTable& JointSpec::table() const {
  if (kind_ != JointKind::discrete_table)
    throw CapabilityError("table: not a discrete-table joint");
  return table_;
}
const RegionList& JointSpec::regions() const {
  if (kind_ != JointKind::region_uniform)
    throw CapabilityError("regions: not a region-uniform joint");
  return regions_;
}
double JointSpec::rho() const {
  if (kind_ != JointKind::bivariate_normal)
    throw CapabilityError("rho: not a bivariate-normal joint");
  return rho_;
}

PairSample sample_joint(const JointSpec& j, RandomStream& stream, std::size_t n) {
  if (n < 1) throw DomainError("sample_joint: n must be >= 1");
  PairSample out;
  out.provenance = Provenance{stream.key(), j.text()};
  out.xs.reserve(n);
  out.ys.reserve(n);
  switch (j.kind()) {
    case JointKind::product: {
      // Component substreams keep each marginal's draw sequence independent
      // of how many words the other component consumes.
      RandomStream xs = stream.split();
      RandomStream ys = stream.split();
      out.xs = sample(j.x_dist(), xs, n).values;
      out.ys = sample(j.y_dist(), ys, n).values;
      return out;
    }
    case JointKind::discrete_table: {
      const auto& t = j.table();
      // inverse-CDF walk over cells in row-major order, one uniform per pair
      for (std::size_t k = 0; k < n; ++k) {
        const double u = stream.uniform01();
        double acc = 0.0;
        std::size_t ix = t.support_x.size() - 1;
        std::size_t iy = t.support_y.size() - 1;
        bool found = false;
        for (std::size_t i = 0; i < t.prob.size() && !found; ++i) {
          for (std::size_t l = 0; l < t.prob[i].size(); ++l) {
            acc += t.prob[i][l].to_double();
            if (u < acc) {
              ix = i;
              iy = l;
              found = true;
              break;
            }
          }
        }
        out.xs.push_back(t.support_x[ix].to_double());
        out.ys.push_back(t.support_y[iy].to_double());
      }
      return out;
    }
    case JointKind::region_uniform: {
      const auto& regs = j.regions().regions;
      std::vector<double> cum;
      double acc = 0.0;
      for (const auto& r : regs) {
        acc += r.density * (r.x_hi - r.x_lo) * (r.y_hi - r.y_lo);
        cum.push_back(acc);
      }
      // per pair: region index, then a uniform point inside the rectangle
      for (std::size_t k = 0; k < n; ++k) {
        const double u = stream.uniform01();
        std::size_t idx = regs.size() - 1;
        for (std::size_t i = 0; i < cum.size(); ++i) {
          if (u < cum[i]) {
            idx = i;
            break;
          }
        }
        const auto& r = regs[idx];
        out.xs.push_back(r.x_lo + (r.x_hi - r.x_lo) * stream.uniform01());
        out.ys.push_back(r.y_lo + (r.y_hi - r.y_lo) * stream.uniform01());
      }
      return out;
    }
    case JointKind::constructed:
      return sample_constructed(j, stream, n);
    case JointKind::bivariate_normal: {
      const double rho = j.rho();
      const double s = std::sqrt(1.0 - rho * rho);
      for (std::size_t k = 0; k < n; ++k) {
        const double n1 = stream.normal01();
        const double n2 = stream.normal01();
        out.xs.push_back(n1);
        out.ys.push_back(rho * n1 + s * n2);
      }
      return out;
    }
  }
  throw CapabilityError("no sampler for joint " + j.text());
}

double joint_density(const JointSpec& j, double x, double y) {
  switch (j.kind()) {
    case JointKind::product:
      return density(j.x_dist(), x) * density(j.y_dist(), y);
    case JointKind::region_uniform: {
      // half-open cells so shared rectangle edges are counted once
      for (const auto& r : j.regions().regions) {
        if (x >= r.x_lo && x < r.x_hi && y >= r.y_lo && y < r.y_hi)
          return r.density;
      }
      return 0.0;
    }
    case JointKind::bivariate_normal: {
      const double rho = j.rho();
      const double s2 = 1.0 - rho * rho;
      const double q = (x * x - 2.0 * rho * x * y + y * y) / (2.0 * s2);
      return std::exp(-q) / (2.0 * kPi * std::sqrt(s2));
    }
    case JointKind::discrete_table:
      throw CapabilityError("joint_density: " + j.text() +
                            " is discrete; use joint_pmf_table");
    case JointKind::constructed:
      throw CapabilityError("joint_density: no closed form for " + j.text());
  }
  throw CapabilityError("joint_density: unsupported joint");
}

const DiscreteTable& joint_pmf_table(const JointSpec& j) { return j.table(); }

JointSpec transpose(const JointSpec& j) {
  switch (j.kind()) {
    case JointKind::product:
      return JointSpec::product(j.y_dist(), j.x_dist());
    case JointKind::discrete_table: {
      const auto& t = j.table();
      DiscreteTable out;
      out.support_x = t.support_y;
      out.support_y = t.support_x;
      out.prob.assign(t.support_y.size(),
                      std::vector<Rational>(t.support_x.size(), Rational(0)));
      for (std::size_t i = 0; i < t.prob.size(); ++i)
        for (std::size_t l = 0; l < t.prob[i].size(); ++l) out.prob[l][i] = t.prob[i][l];
      return JointSpec::discrete_table(std::move(out));
    }
    case JointKind::region_uniform: {
      RegionList out;
      for (const auto& r : j.regions().regions)
        out.regions.push_back({r.y_lo, r.y_hi, r.x_lo, r.x_hi, r.density});
      return JointSpec::region_uniform(std::move(out));
    }
    case JointKind::constructed:
      return j;  // exchangeable by construction
    case JointKind::bivariate_normal:
      return j;  // symmetric density
  }
  throw CapabilityError("transpose: unsupported joint");
}

}  // namespace selfinv
