// Large-deviations machinery for the recovery phase transition: the auxiliary
// point beta_0 of the fundamental rate-function characterization, the
// closed-form optimal tuple (nu, A_0, c_3, gamma), the rate function itself,
// and the bound objective zeta with its gradient, for both problem families
// and both tails.
//
// Conventions.  For a shape (alpha, beta) with transition point alpha_w(beta):
//   - upper tail (alpha > alpha_w): failure is the rare event, A_0 < 1, c_3 > 0;
//   - lower tail (alpha < alpha_w): success is the rare event, A_0 > 1, c_3 < 0;
//   - rate <= 0 always, with equality exactly on the transition curve.
#pragma once

#include <cstddef>

#include "l1ldp/pt_core.hpp"

namespace l1ldp {

/// Which probability decays exponentially: Upper = failure probability
/// (alpha above the curve), Lower = success probability (alpha below).
enum class Tail {
    Upper,
    Lower,
};

/// Returns "upper" or "lower".
const char* to_string(Tail tail);

/// The solved rate-function data at one shape (alpha, beta).
struct LdpSolution {
    double beta_w = 0.0;  // transition curve value at this alpha
    double beta_0 = 0.0;  // auxiliary point; may be negative in the lower tail
    double nu = 0.0;      // nu = sqrt(2) * erfinv(argument at beta_w)
    double a0 = 0.0;      // A_0 = erfinv(arg at beta_w) / erfinv(arg at beta_0)
    double c3 = 0.0;      // c_3 = (1 - A_0^2) sqrt(alpha) / A_0
    double gamma = 0.0;   // gamma = sqrt(alpha) / (2 A_0)
    double rate = 0.0;    // I(alpha, beta) <= 0
    Tail tail = Tail::Upper;
    Mode mode = Mode::Signed;
};

/// A point of the three-variable bound objective.
struct ZetaPoint {
    double c3 = 0.0;
    double nu = 0.0;  // >= 0
    double a0 = 0.0;  // > 0; a0 != 1 whenever c3 != 0
};

/// Partial derivatives of zeta at a ZetaPoint.
struct ZetaGradient {
    double d_c3 = 0.0;
    double d_nu = 0.0;
    double d_a0 = 0.0;
};

/// Solves the fundamental rate characterization
///   (alpha - beta) / (alpha - beta_0) * xi_alpha(beta_0) = 1
/// for the unique beta_0.  Solved in the substituted variable
/// q = erfinv(argument(beta_0)), where both families reduce to the same
/// scalar equation sqrt(1/pi) e^{-q^2}/q = erfc(q) * alpha/(alpha-beta) with
/// a unique root in (0, 1/sqrt(2c(c-1))), c = alpha/(alpha-beta); only the
/// map back to beta_0 differs between families.  beta_0 may be negative in
/// the lower tail.
double solve_beta_0(double alpha, double beta, Mode mode);

/// Assembles the closed-form optimal tuple and rate at (alpha, beta).
/// Within 1e-9 of the transition (alpha == alpha_w) the analytic degenerate
/// tuple is returned: A_0 = 1, c_3 = 0, gamma = sqrt(alpha)/2, rate = 0,
/// beta_0 = beta_w, labeled Tail::Upper.
LdpSolution optimal_point(double alpha, double beta, Mode mode);

/// The rate function I(alpha, beta) <= 0:
///   alpha * log(q_w / q_0) + (1-beta) * log((1-beta)/(1-beta_w))
///   + beta * log((alpha-beta)(1-beta_0) / ((alpha-beta_0)(1-beta_w)))
/// with q_w, q_0 the erfinv values at beta_w, beta_0.
double rate(double alpha, double beta, Mode mode);

/// Exponential growth rate of the spherical moment E exp(c_3 sqrt(n) |g|)
/// for Gaussian g of dimension alpha*n.  One smooth function of signed c3:
///   gamma_hat = (c3 - sqrt(c3^2 + 4 alpha)) / 4,
///   I_sph = gamma_hat * c3 - (alpha/2) log(1 - c3 / (2 gamma_hat)).
/// The tail parameter follows the magnitude convention of the two printed
/// forms: Lower evaluates the same smooth function at -c3.  I_sph(0) = 0.
double i_sph(double c3, double alpha, Tail tail);

/// Gaussian exponential-moment factors of the bound objective, closed form.
/// With g standard normal, s = (1 - a0^2)/2, and t = s nu^2 / a0^2:
///   w1      = E exp(s (|g| - nu)^2 * [|g| > nu])
///           = e^t erfc(nu / (sqrt(2) a0)) / a0 + erf(nu / sqrt(2)),
///   w2      = E exp(s (g + nu)^2) = e^t / a0,
///   w1_plus = E exp(s (g - nu)^2 * [g > nu]) = (w1 + 1) / 2.
/// Requires nu >= 0 and a0 > 0; throws std::domain_error when |t| > 700.
struct WFactors {
    double w1 = 0.0;
    double w2 = 0.0;
    double w1_plus = 0.0;
};
WFactors w_factors(double nu, double a0);

/// The three-variable bound objective
///   zeta = -c3^2/2 + I_sph(c3) + (1-beta) log w1 + beta log w2
///          + c3^2 / (2 (1 - a0^2)),
///   w1 = e^{(1-a0^2) nu^2 / (2 a0^2)} / a0 * erfc(nu/(sqrt(2) a0)) + erf(nu/sqrt(2)),
///   w2 = e^{(1-a0^2) nu^2 / (2 a0^2)} / a0.
/// The nonnegative family replaces log w1 by log((w1+1)/2).  Evaluated in
/// log-space when the w-exponent exceeds 40; throws std::domain_error when
/// it exceeds 700 (overflow) or the point violates the ZetaPoint invariants.
double zeta(double alpha, double beta, const ZetaPoint& p, Mode mode);

/// Closed-form partial derivatives of zeta; all three vanish at the
/// optimal_point tuple.
ZetaGradient zeta_gradient(double alpha, double beta, const ZetaPoint& p, Mode mode);

/// Finite-n upper bound on log(P_failure)/n for the exact shape
/// (alpha, beta) = (m/n, k/n): the rate at the asymptotic optimal tuple in
/// the upper tail, and the trivial bound 0 at or below the transition (the
/// c3 >= 0 minimization degenerates to c3 = 0 there), as well as for the
/// degenerate shapes k = 0, k = m, or m = n.  Monotone non-increasing in m.
/// Throws std::domain_error unless k <= m <= n with n >= 1.
double finite_n_bound(std::size_t n, std::size_t k, std::size_t m, Mode mode);

}  // namespace l1ldp
