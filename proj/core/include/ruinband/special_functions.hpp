#pragma once

namespace ruinband {

/// Exponential integral E1(x) = int_x^inf t^-1 e^-t dt for x > 0.
/// Power series for x <= 1, Lentz continued fraction beyond; absolute
/// error below 1e-12 (relative error near machine precision).
/// Throws Error{DomainError} for x <= 0.
double exp_integral_e1(double x);

/// e^x * E1(x), evaluated without overflow for large x.
double exp_scaled_e1(double x);

/// Inverse of the standard normal CDF.
double normal_quantile(double p);

}  // namespace ruinband
