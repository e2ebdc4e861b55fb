// Scalar special functions used by every analytical formula in the library:
// error function, complementary error function, its inverse, and the Gaussian
// tail (Q) function.  All functions are pure, deterministic, and thread-safe.
#pragma once

namespace l1ldp {

/// Accuracy targets shared by the special-function implementations.
struct Accuracy {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
};

/// erf(x) = (2/sqrt(pi)) * integral_0^x exp(-t^2) dt, odd, range (-1, 1).
/// Throws std::domain_error on non-finite input.
double erf(double x);

/// erfc(x) = 1 - erf(x), computed without cancellation for large x
/// (relative accuracy holds out to x ~ 10, far below underflow).
/// Throws std::domain_error on non-finite input.
double erfc(double x);

/// Inverse of erf on (-1, 1): erf(erfinv(p)) = p.
/// Implemented as a rational initial approximation refined by Newton steps on
/// erf, so the result is accurate to ~1 ulp and smooth in p.
/// Throws std::domain_error unless -1 < p < 1.
double erfinv(double p);

/// Gaussian tail Q(x) = P(N(0,1) > x) = erfc(x / sqrt(2)) / 2.
/// Satisfies x/(1+x^2) * phi(x) < Q(x) < phi(x)/x for x > 0, where phi is the
/// standard normal density.
/// Throws std::domain_error on non-finite input.
double gaussian_q(double x);

}  // namespace l1ldp
