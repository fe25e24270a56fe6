#include <cmath>

#include "doctest.h"
#include "selfinv/errors.hpp"
#include "selfinv/special.hpp"

using namespace selfinv;

// Reference values below were computed with an independent implementation
// (scipy 1.15: ndtri/ndtr, betainc, gammaincc, kstwobign.sf) and frozen.

TEST_SUITE("special") {

TEST_CASE("normal_quantile matches the reference across the range") {
  CHECK(normal_quantile(1e-12) ==
        doctest::Approx(-7.034483825301131).epsilon(1e-13));
  CHECK(normal_quantile(0.025) ==
        doctest::Approx(-1.9599639845400545).epsilon(1e-13));
  CHECK(normal_quantile(0.3) ==
        doctest::Approx(-0.5244005127080409).epsilon(1e-13));
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.7) ==
        doctest::Approx(0.5244005127080407).epsilon(1e-13));
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-13));
  CHECK(normal_quantile(1.0 - 1e-12) ==
        doctest::Approx(7.0344869100478356).epsilon(1e-13));
}

TEST_CASE("normal_quantile antisymmetry and roundtrip") {
  for (double p : {0.001, 0.01, 0.2, 0.37, 0.49}) {
    CHECK(normal_quantile(p) + normal_quantile(1.0 - p) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("normal_quantile domain") {
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(-0.5), DomainError);
}

TEST_CASE("normal_cdf reference values") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(-3.0) ==
        doctest::Approx(0.0013498980316300933).epsilon(1e-13));
  CHECK(normal_cdf(-1.0) ==
        doctest::Approx(0.15865525393145707).epsilon(1e-13));
  CHECK(normal_cdf(0.5) == doctest::Approx(0.6914624612740131).epsilon(1e-13));
  CHECK(normal_cdf(2.5) == doctest::Approx(0.9937903346742238).epsilon(1e-13));
}

TEST_CASE("incomplete_beta reference values") {
  CHECK(incomplete_beta(2, 2, 0.3) ==
        doctest::Approx(0.21599999999999994).epsilon(1e-12));
  CHECK(incomplete_beta(0.5, 0.5, 0.7) ==
        doctest::Approx(0.6309898804344546).epsilon(1e-12));
  CHECK(incomplete_beta(2, 3, 1.0 / 3.0) ==
        doctest::Approx(0.40740740740740744).epsilon(1e-12));
  CHECK(incomplete_beta(2, 2, 0.25925925925925924) ==
        doctest::Approx(0.16679367982522988).epsilon(1e-12));
  CHECK(incomplete_beta(2, 2, 0.0) == 0.0);
  CHECK(incomplete_beta(2, 2, 1.0) == 1.0);
}

TEST_CASE("incomplete_beta symmetry I_x(a,b) + I_{1-x}(b,a) = 1") {
  for (double x : {0.1, 0.35, 0.62, 0.9}) {
    CHECK(incomplete_beta(2, 5, x) + incomplete_beta(5, 2, 1.0 - x) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("incomplete_beta domain") {
  CHECK_THROWS_AS(incomplete_beta(0.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(incomplete_beta(1.0, 1.0, 1.5), DomainError);
}

TEST_CASE("gamma_q matches chi-square survival references") {
  // chi2.sf(x, df) = gamma_q(df/2, x/2)
  CHECK(gamma_q(1.5, 7.814727903251179 / 2) ==
        doctest::Approx(0.05).epsilon(1e-12));
  CHECK(gamma_q(7.5, 15.0) ==
        doctest::Approx(0.011921495938159686).epsilon(1e-12));
  CHECK(gamma_q(0.5, 3.841458820694124 / 2) ==
        doctest::Approx(0.05).epsilon(1e-12));
  CHECK(gamma_q(3.0, 0.0) == 1.0);
}

TEST_CASE("gamma_q domain") {
  CHECK_THROWS_AS(gamma_q(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gamma_q(1.0, -1.0), DomainError);
}

TEST_CASE("kolmogorov_sf reference values") {
  CHECK(kolmogorov_sf(0.5) ==
        doctest::Approx(0.9639452436648751).epsilon(1e-12));
  CHECK(kolmogorov_sf(1.0) ==
        doctest::Approx(0.26999967167735456).epsilon(1e-12));
  CHECK(kolmogorov_sf(1.6276236115189502) ==
        doctest::Approx(0.01).epsilon(1e-12));
  CHECK(kolmogorov_sf(1.949947104098) ==
        doctest::Approx(0.0009963218229844105).epsilon(1e-10));
}

TEST_CASE("kolmogorov_sf clamps and decreases") {
  CHECK(kolmogorov_sf(0.0) == 1.0);
  CHECK(kolmogorov_sf(0.12) == 1.0);  // below the series cutoff
  double prev = kolmogorov_sf(0.2);
  for (double lam = 0.3; lam < 3.0; lam += 0.1) {
    const double cur = kolmogorov_sf(lam);
    CHECK(cur <= prev);
    CHECK(cur >= 0.0);
    CHECK(cur <= 1.0);
    prev = cur;
  }
}

}  // TEST_SUITE
