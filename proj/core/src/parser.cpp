#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "selfinv/catalog.hpp"
#include "selfinv/errors.hpp"

namespace selfinv {

namespace {

const std::vector<std::string> kDistNames = {
    "cauchy",    "corr-normal-ratio", "f-ratio",     "laha",   "log-uniform",
    "log-rademacher", "exponential",  "constant",    "normal",
};
const std::vector<std::string> kJointNames = {
    "product", "constructed", "bivariate-normal", "discrete-table",
    "region-uniform",
};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  AnySpec parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty spec", all_names());
    AnySpec spec = parse_any();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input", {"end of input"});
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& message,
                         std::vector<std::string> expected) {
    throw ParseError(message, pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'", {std::string(1, c)});
    ++pos_;
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '-'))
      ++pos_;
    if (pos_ == start) fail("expected a name", all_names());
    return text_.substr(start, pos_ - start);
  }

  double number() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected a number", {"number"});
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  int integer(const std::string& what) {
    const std::size_t at = pos_;
    const double v = number();
    if (v != std::floor(v) || std::fabs(v) > 1e9) {
      pos_ = at;
      fail("expected an integer for " + what, {"integer"});
    }
    return static_cast<int>(v);
  }

  void keyword(const std::string& key) {
    skip_ws();
    if (text_.compare(pos_, key.size(), key) != 0)
      fail("expected '" + key + "'", {key});
    pos_ += key.size();
  }

  static std::vector<std::string> all_names() {
    std::vector<std::string> names = kDistNames;
    names.insert(names.end(), kJointNames.begin(), kJointNames.end());
    return names;
  }

  DistSpec parse_dist_named(const std::string& name, std::size_t name_pos) {
    if (name == "cauchy") {
      if (!peek_is('(')) return DistSpec::standard_cauchy();
      expect('(');
      const double mu = number();
      expect(',');
      const double sigma = number();
      expect(')');
      return DistSpec::cauchy(mu, sigma);
    }
    if (name == "corr-normal-ratio") {
      expect('(');
      const double rho = number();
      expect(')');
      return DistSpec::corr_normal_ratio(rho);
    }
    if (name == "f-ratio") {
      expect('(');
      const int n = integer("f-ratio degrees");
      expect(')');
      return DistSpec::f_ratio(n);
    }
    if (name == "laha") return DistSpec::laha();
    if (name == "log-uniform") return DistSpec::log_uniform();
    if (name == "log-rademacher") return DistSpec::log_rademacher();
    if (name == "exponential") {
      expect('(');
      const double rate = number();
      expect(')');
      return DistSpec::exponential(rate);
    }
    if (name == "constant") {
      expect('(');
      const double c = number();
      expect(')');
      return DistSpec::constant(c);
    }
    if (name == "normal") {
      expect('(');
      const double mu = number();
      expect(',');
      const double sigma = number();
      expect(')');
      return DistSpec::normal(mu, sigma);
    }
    pos_ = name_pos;
    fail("unknown distribution '" + name + "'", kDistNames);
  }

  DistSpec parse_dist_arg() {
    skip_ws();
    const std::size_t at = pos_;
    return parse_dist_named(ident(), at);
  }

  AnySpec parse_any() {
    skip_ws();
    const std::size_t at = pos_;
    const std::string name = ident();
    if (name == "product") {
      expect('(');
      keyword("x");
      expect('=');
      DistSpec x = parse_dist_arg();
      expect(',');
      keyword("y");
      expect('=');
      DistSpec y = parse_dist_arg();
      expect(')');
      return JointSpec::product(std::move(x), std::move(y));
    }
    if (name == "constructed") {
      expect('(');
      keyword("z");
      expect('=');
      DistSpec z = parse_dist_arg();
      expect(',');
      keyword("w");
      expect('=');
      DistSpec w = parse_dist_arg();
      expect(')');
      return JointSpec::constructed(std::move(z), std::move(w));
    }
    if (name == "bivariate-normal") {
      expect('(');
      const double rho = number();
      expect(')');
      return JointSpec::bivariate_normal(rho);
    }
    if (name == "discrete-table") {
      expect(':');
      keyword("paper");
      return JointSpec::discrete_table(DiscreteTable::builtin(),
                                       "discrete-table:paper");
    }
    if (name == "region-uniform") {
      expect(':');
      keyword("paper");
      return JointSpec::region_uniform(RegionList::builtin(),
                                       "region-uniform:paper");
    }
    return parse_dist_named(name, at);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

AnySpec parse_spec(const std::string& text) { return Parser(text).parse(); }

DistSpec parse_dist(const std::string& text) {
  AnySpec spec = parse_spec(text);
  if (auto* d = std::get_if<DistSpec>(&spec)) return *d;
  throw DomainError("expected a scalar distribution, got joint spec '" + text +
                    "'");
}

JointSpec parse_joint(const std::string& text) {
  AnySpec spec = parse_spec(text);
  if (auto* j = std::get_if<JointSpec>(&spec)) return *j;
  throw DomainError("expected a joint spec, got scalar distribution '" + text +
                    "'");
}

}  // namespace selfinv
