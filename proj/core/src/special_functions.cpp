#include "ruinband/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "ruinband/error.hpp"

namespace ruinband {
namespace {

// -gamma_E - ln x + sum_{n>=1} (-1)^{n+1} x^n / (n * n!)
double e1_series(double x) {
  double sum = 0.0;
  double term = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= -x / n;
    const double contrib = -term / n;
    sum += contrib;
    if (std::abs(contrib) < 1e-17 * std::abs(sum)) break;
  }
  return -std::numbers::egamma - std::log(x) + sum;
}

// e^x E1(x) via the modified Lentz evaluation of
// 1/(x+1-) 1/(x+3-) 4/(x+5-) ...
double e1_scaled_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h;
  }
  throw Error(ErrorCode::NoConvergence, "E1 continued fraction at x = " + std::to_string(x));
}

}  // namespace

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "E1 requires x > 0");
  if (x <= 1.0) return e1_series(x);
  return std::exp(-x) * e1_scaled_continued_fraction(x);
}

double exp_scaled_e1(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "E1 requires x > 0");
  if (x <= 1.0) return std::exp(x) * e1_series(x);
  return e1_scaled_continued_fraction(x);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::DomainError, "quantile level outside (0,1)");
  return boost::math::quantile(boost::math::normal_distribution<double>{}, p);
}

}  // namespace ruinband
