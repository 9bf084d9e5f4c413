#ifndef NOMA_SECRECY_SPECIAL_FUNCTIONS_HPP
#define NOMA_SECRECY_SPECIAL_FUNCTIONS_HPP

// Gamma-family special functions needed by the closed-form secrecy
// expressions. Only the argument ranges the outage formulas generate are
// supported; this is not a general special-function library.

namespace noma_secrecy {

inline constexpr double kEulerGamma = 0.5772156649015328606;

// Gamma(z), z > 0. Exact factorial at positive integers.
double gamma_fn(double z);

// log Gamma(z), z > 0.
double lgamma_fn(double z);

// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt,
// for s in [0, 2] and x > 0. At s = 0 this is the exponential integral
// E1(x). Continued fraction for x >= 1, series (minus log at s = 0)
// below; the split keeps accuracy uniform over the parameter ranges the
// path-loss exponent produces.
double upper_incomplete_gamma(double s, double x);

// e^x * Gamma(s, x). Stays representable for large x, where the plain
// value underflows; the eavesdropper CDFs need exactly this product.
double upper_incomplete_gamma_scaled(double s, double x);

} // namespace noma_secrecy

#endif
