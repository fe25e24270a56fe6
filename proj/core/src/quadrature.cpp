#include "selfinv/quadrature.hpp"

#include <cmath>

#include "selfinv/errors.hpp"

namespace selfinv {

namespace {

constexpr int kMaxDepth = 50;

struct Accum {
  double err = 0.0;
  bool converged = true;
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double eval(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  return std::isfinite(v) ? v : 0.0;
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth, Accum& acc) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = eval(f, lm);
  const double frm = eval(f, rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol || depth >= kMaxDepth) {
    if (depth >= kMaxDepth && std::fabs(delta) > 15.0 * tol) acc.converged = false;
    acc.err += std::fabs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, acc) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, acc);
}

QuadResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                            double tol) {
  Accum acc;
  const double m = 0.5 * (a + b);
  const double fa = eval(f, a);
  const double fm = eval(f, m);
  const double fb = eval(f, b);
  const double whole = simpson(fa, fm, fb, b - a);
  QuadResult result;
  result.value = adapt(f, a, b, fa, fm, fb, whole, tol, 0, acc);
  result.err_bound = acc.err;
  result.converged = acc.converged;
  return result;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol) {
  if (!(tol > 0.0)) throw DomainError("integrate requires tol > 0");
  if (a == b) return QuadResult{0.0, 0.0, true};
  if (a > b) {
    QuadResult r = integrate(f, b, a, tol);
    r.value = -r.value;
    return r;
  }
  const bool inf_a = std::isinf(a);
  const bool inf_b = std::isinf(b);
  if (!inf_a && !inf_b) return integrate_finite(f, a, b, tol);
  // x = tan(u) maps (-pi/2, pi/2) onto the real line with dx = (1 + x^2) du.
  const double lo = inf_a ? -std::asin(1.0) : std::atan(a);
  const double hi = inf_b ? std::asin(1.0) : std::atan(b);
  auto g = [&f](double u) {
    const double x = std::tan(u);
    const double v = f(x);
    if (!std::isfinite(v) || !std::isfinite(x)) return 0.0;
    return v * (1.0 + x * x);
  };
  return integrate_finite(g, lo, hi, tol);
}

}  // namespace selfinv
