#pragma once

namespace fracdiff {

/// Euler gamma function for x > 0 (Lanczos, g = 7, with reflection below
/// 1/2). Throws DomainError for x <= 0 or NaN.
double gamma(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Upper incomplete gamma Gamma(s, x) = int_x^inf rho^{s-1} e^{-rho} drho
/// for 0 < s <= 1 and x >= 0. Power series below x = s + 1, Lentz continued
/// fraction above.
double upper_incomplete_gamma(double s, double x);

/// Lower incomplete gamma gamma(s, x) = Gamma(s) - Gamma(s, x), s > 0,
/// x >= 0.
double lower_incomplete_gamma(double s, double x);

/// Same functions with the argument passed as log(x), so that arguments
/// beyond the double range (as in t * e^{N h} for large N) are handled
/// without overflow or underflow of x itself.
double upper_incomplete_gamma_log_arg(double s, double log_x);
double lower_incomplete_gamma_log_arg(double s, double log_x);

/// expm1(x) / x, continuous at 0.
double exprel(double x);

}  // namespace fracdiff
