#pragma once

#include <functional>

namespace ruinband::quad {

using Integrand = std::function<double(double)>;

struct Tolerance {
  double abs = 1e-13;
  double rel = 1e-12;
};

/// Adaptive Gauss-Kronrod (61 point) on a finite interval.
/// Throws Error{QuadratureFail} when the error estimate misses tolerance.
double integrate(const Integrand& f, double a, double b, Tolerance tol = {});

/// Tanh-sinh on a finite interval; tolerates integrable endpoint
/// singularities (log, x^-s with s < 1). Endpoints are never evaluated.
double integrate_endpoint_singular(const Integrand& f, double a, double b, Tolerance tol = {});

/// int_a^inf f for integrands bounded by C e^{-decay x}. The range is
/// truncated at a + 50/decay and the exponential tail f(X)/decay added.
/// With singular_at_a the first panel of width `inner_scale` is integrated after the substitution x = a + w t^2.
double integrate_decaying(const Integrand& f, double a, double decay, bool singular_at_a = false,
                          double inner_scale = 0.0, Tolerance tol = {});

/// Fixed 10-point Gauss-Legendre rule.
double gauss_legendre10(const Integrand& f, double a, double b);

}  // namespace ruinband::quad
