// Bracketed scalar root finding (Brent's method) and bounded scalar
// minimization (golden section with parabolic acceleration).  These solve all
// implicit scalar equations in the library: the transition curves, the
// auxiliary point of the rate function, and the exponent minimizers.
#pragma once

#include <functional>
#include <stdexcept>

namespace l1ldp {

/// A sign-changing interval: f(lo) and f(hi) have strictly opposite signs.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

/// Root plus convergence diagnostics.
struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

/// Raised when a bracket is invalid (lo >= hi, non-finite endpoints, or no
/// strict sign change).
class bracket_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when the iteration cap is exceeded before the tolerance is met.
class convergence_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Evaluates f at both endpoints and returns a validated Bracket.
/// Throws bracket_error if the interval does not bracket a sign change.
Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi);

/// Brent-style hybrid root finder (bisection + secant + inverse quadratic).
/// Returns x with |f(x)| <= tol or bracket width <= tol * max(1, |x|).
/// Deterministic for fixed inputs.  Throws bracket_error on an invalid
/// bracket and convergence_error after max_iter iterations.
RootResult find_root(const std::function<double(double)>& f, const Bracket& bracket,
                     double tol = 1e-11, int max_iter = 200);

/// Minimizer location and value.
struct MinimizeResult {
    double x_min = 0.0;
    double f_min = 0.0;
    int iterations = 0;
};

/// Bounded scalar minimization of a unimodal function on [lo, hi] by golden
/// section with parabolic-interpolation acceleration (Brent).  |x_min - true
/// minimizer| <= tol on exit.  Throws convergence_error after max_iter.
MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo,
                               double hi, double tol = 1e-11, int max_iter = 200);

}  // namespace l1ldp
