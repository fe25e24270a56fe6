#pragma once

namespace selfinv {

// Inverse of the standard normal cdf for p in (0, 1). AS 241 (Wichura 1988),
// the PPND16 fit; absolute error below 1e-15 over the full open interval.
double normal_quantile(double p);

// Standard normal cdf.
double normal_cdf(double x);

// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1]. Continued
// fraction with the usual symmetry split.
double incomplete_beta(double a, double b, double x);

// Regularized upper incomplete gamma Q(a, x), a > 0, x >= 0. Series for
// x < a + 1, continued fraction otherwise. chi-square survival with df
// degrees of freedom is Q(df/2, x/2).
double gamma_q(double a, double x);

// Survival function of the limiting Kolmogorov distribution,
//   Q(lambda) = 2 sum_{j >= 1} (-1)^{j-1} exp(-2 j^2 lambda^2),
// clamped to [0, 1].
double kolmogorov_sf(double lambda);

}  // namespace selfinv
