#pragma once

namespace annealm {

/// Standard normal density.
double norm_pdf(double x);

/// Standard normal distribution function, via erfc.
double norm_cdf(double x);

/// Numerically stable logistic function 1/(1+exp(-x)).
double logistic(double x);

/// Principal branch W0 of the Lambert W function, Halley iteration.
/// Requires x >= -1/e.
double lambert_w0(double x);

/// W0(exp(log_x)) without forming exp(log_x); safe for arguments whose
/// exponential overflows. Solves w + log w = log_x for large arguments.
double lambert_w0_from_log(double log_x);

}  // namespace annealm
