#include "l1ldp/ldp_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "l1ldp/root_finding.hpp"
#include "l1ldp/special_functions.hpp"

namespace l1ldp {

namespace {

constexpr double kLogSpaceThreshold = 40.0;   // switch w1/w2 to log-space
constexpr double kExponentOverflow = 700.0;   // beyond exp() range: domain error
constexpr double kDegenerateWindow = 1e-9;    // |alpha - alpha_w| treated as PT

// erfinv argument at a transition-style point b: (1-alpha)/(1-b) signed,
// 2(1-alpha)/(1-b) - 1 nonnegative.
double transition_argument(double alpha, double b, Mode mode) {
    double arg = (1.0 - alpha) / (1.0 - b);
    if (mode == Mode::Nonnegative) {
        arg = 2.0 * arg - 1.0;
    }
    if (!(arg > 0.0 && arg < 1.0)) {
        throw std::domain_error("transition argument left (0, 1)");
    }
    return arg;
}

struct Beta0 {
    double beta_0;
    double q;  // erfinv of the transition argument at beta_0
};

// Shared q-space solve; both families reduce to the same scalar equation.
Beta0 solve_beta_0_q(double alpha, double beta, Mode mode) {
    validate_geometry(ProblemGeometry{alpha, beta}, mode);
    const double c = alpha / (alpha - beta);  // > 1
    auto equation = [&](double q) {
        return std::sqrt(1.0 / M_PI) * std::exp(-q * q) / q - erfc(q) * c;
    };
    // The uniqueness argument bounds the root by 1/sqrt(2c(c-1)); expand the
    // upper end geometrically as a numerical safety while it has not yet
    // crossed zero.
    double hi = 1.0 / std::sqrt(2.0 * c * (c - 1.0));
    int expansions = 0;
    while (equation(hi) > 0.0) {
        hi *= 1.5;
        if (++expansions > 200) {
            throw convergence_error("solve_beta_0: no sign change found in q");
        }
    }
    const double lo = 1e-8;
    RootResult r = find_root(equation, make_bracket(equation, lo, hi));
    const double q = r.root;
    double beta_0;
    if (mode == Mode::Nonnegative) {
        beta_0 = 1.0 - 2.0 * (1.0 - alpha) / (1.0 + erf(q));
    } else {
        beta_0 = 1.0 - (1.0 - alpha) / erf(q);
    }
    return Beta0{beta_0, q};
}

// Smooth sphere exponent of signed c3 (the public i_sph maps tails onto it).
double i_sph_smooth(double c3, double alpha) {
    if (c3 == 0.0) {
        return 0.0;
    }
    const double gamma_hat = (c3 - std::sqrt(c3 * c3 + 4.0 * alpha)) / 4.0;
    return gamma_hat * c3 - 0.5 * alpha * std::log(1.0 - c3 / (2.0 * gamma_hat));
}

void validate_zeta_point(const ZetaPoint& p) {
    if (!(std::isfinite(p.c3) && std::isfinite(p.nu) && std::isfinite(p.a0)) ||
        p.nu < 0.0 || p.a0 <= 0.0) {
        throw std::domain_error("zeta: point requires nu >= 0 and a0 > 0");
    }
    if (p.a0 == 1.0 && p.c3 != 0.0) {
        throw std::domain_error("zeta: a0 == 1 is only valid together with c3 == 0");
    }
}

// Shared pieces of zeta and its gradient at a validated point.
struct WTerms {
    double t;         // (1 - a0^2) nu^2 / (2 a0^2)
    double log_w2;    // t - log(a0)
    double log_w1;    // log of the signed-family w1
    double w1;        // may be +inf when t is huge; ratios below stay finite
    double e_big;     // erfc(nu / (sqrt(2) a0))
    double f_small;   // erf(nu / sqrt(2))
    double r_inv;     // (e^t E / a0)^{-1}, safe in log-space
};

WTerms w_terms(const ZetaPoint& p) {
    const double a2 = p.a0 * p.a0;
    const double t = (1.0 - a2) * p.nu * p.nu / (2.0 * a2);
    if (std::abs(t) > kExponentOverflow) {
        throw std::domain_error("zeta: w-exponent exceeds 700; point not evaluable");
    }
    WTerms w;
    w.t = t;
    w.log_w2 = t - std::log(p.a0);
    w.e_big = erfc(p.nu / (std::sqrt(2.0) * p.a0));
    w.f_small = erf(p.nu / std::sqrt(2.0));
    if (t <= kLogSpaceThreshold) {
        const double r = std::exp(t) * w.e_big / p.a0;
        w.w1 = r + w.f_small;
        w.log_w1 = std::log(w.w1);
        w.r_inv = (r > 0.0) ? 1.0 / r : std::numeric_limits<double>::infinity();
    } else {
        // Log-space: r = e^t E / a0 dominates; log w1 = log r + log1p(F/r).
        const double log_r = t + std::log(w.e_big) - std::log(p.a0);
        w.r_inv = std::exp(-log_r);
        w.log_w1 = log_r + std::log1p(w.f_small * w.r_inv);
        w.w1 = std::exp(w.log_w1);  // may overflow to +inf; used only directly
    }
    return w;
}

}  // namespace

const char* to_string(Tail tail) {
    return tail == Tail::Upper ? "upper" : "lower";
}

double solve_beta_0(double alpha, double beta, Mode mode) {
    return solve_beta_0_q(alpha, beta, mode).beta_0;
}

LdpSolution optimal_point(double alpha, double beta, Mode mode) {
    validate_geometry(ProblemGeometry{alpha, beta}, mode);
    LdpSolution s;
    s.mode = mode;

    const double beta_w = solve_beta_w(alpha, mode).value;
    const double q_w = erfinv(transition_argument(alpha, beta_w, mode));
    s.beta_w = beta_w;
    s.nu = std::sqrt(2.0) * q_w;

    const double alpha_w = solve_alpha_w(beta, mode).value;
    if (std::abs(alpha - alpha_w) <= kDegenerateWindow) {
        // Exactly on the transition curve: the tuple degenerates smoothly.
        s.beta_0 = beta_w;
        s.a0 = 1.0;
        s.c3 = 0.0;
        s.gamma = 0.5 * std::sqrt(alpha);
        s.rate = 0.0;
        s.tail = Tail::Upper;
        return s;
    }
    s.tail = (alpha > alpha_w) ? Tail::Upper : Tail::Lower;

    const Beta0 b0 = solve_beta_0_q(alpha, beta, mode);
    const double q_0 = b0.q;
    s.beta_0 = b0.beta_0;
    s.a0 = q_w / q_0;
    const double sqrt_alpha = std::sqrt(alpha);
    s.c3 = (1.0 - s.a0 * s.a0) * sqrt_alpha / s.a0;
    s.gamma = sqrt_alpha / (2.0 * s.a0);
    const double beta_0 = s.beta_0;
    double value = alpha * std::log(q_w / q_0) +
                   (1.0 - beta) * std::log((1.0 - beta) / (1.0 - beta_w)) +
                   beta * std::log((alpha - beta) * (1.0 - beta_0) /
                                   ((alpha - beta_0) * (1.0 - beta_w)));
    // The closed form is <= 0 analytically; shield the invariant from the
    // last-ulp rounding that can push a near-transition value above zero.
    s.rate = std::min(value, 0.0);
    return s;
}

double rate(double alpha, double beta, Mode mode) {
    return optimal_point(alpha, beta, mode).rate;
}

double i_sph(double c3, double alpha, Tail tail) {
    if (!(std::isfinite(c3) && std::isfinite(alpha) && alpha > 0.0)) {
        throw std::domain_error("i_sph: need finite c3 and alpha > 0");
    }
    return i_sph_smooth(tail == Tail::Lower ? -c3 : c3, alpha);
}

WFactors w_factors(double nu, double a0) {
    const ZetaPoint p{0.0, nu, a0};
    validate_zeta_point(p);
    const WTerms w = w_terms(p);
    WFactors f;
    f.w1 = w.w1;
    f.w2 = std::exp(w.log_w2);
    f.w1_plus = 0.5 * (w.w1 + 1.0);
    return f;
}

double zeta(double alpha, double beta, const ZetaPoint& p, Mode mode) {
    validate_geometry(ProblemGeometry{alpha, beta}, mode);
    validate_zeta_point(p);
    const WTerms w = w_terms(p);

    double log_w1_term;
    if (mode == Mode::Nonnegative) {
        // log((w1 + 1) / 2), stable whether w1 is moderate or huge.
        log_w1_term = (w.w1 < std::numeric_limits<double>::max())
                          ? std::log1p(w.w1) - std::log(2.0)
                          : w.log_w1 - std::log(2.0);
    } else {
        log_w1_term = w.log_w1;
    }

    const double last_term =
        (p.c3 == 0.0) ? 0.0 : p.c3 * p.c3 / (2.0 * (1.0 - p.a0 * p.a0));
    return -0.5 * p.c3 * p.c3 + i_sph_smooth(p.c3, alpha) +
           (1.0 - beta) * log_w1_term + beta * w.log_w2 + last_term;
}

ZetaGradient zeta_gradient(double alpha, double beta, const ZetaPoint& p, Mode mode) {
    validate_geometry(ProblemGeometry{alpha, beta}, mode);
    validate_zeta_point(p);
    const WTerms w = w_terms(p);
    const double a0 = p.a0, nu = p.nu, c3 = p.c3;
    const double a2 = a0 * a0;
    const double sqrt_2_over_pi = std::sqrt(2.0 / M_PI);
    const double gauss = sqrt_2_over_pi * std::exp(-0.5 * nu * nu);

    ZetaGradient g;

    // d/dc3: -c3 + c3/(1 - a0^2) + dI_sph/dc3, with dI_sph/dc3 = 2 gamma_hat.
    // At the degenerate point (c3 = 0, a0 = 1) the middle term is continued
    // along the optimal manifold, where c3/(1 - a0^2) = sqrt(alpha)/a0.
    const double middle =
        (c3 == 0.0 && a0 == 1.0) ? std::sqrt(alpha) : c3 / (1.0 - a2);
    g.d_c3 = -c3 + middle + 0.5 * (c3 - std::sqrt(c3 * c3 + 4.0 * alpha));

    // Ratios (nu R + beta-part) / w1 with R = e^t E / a0 evaluated without
    // forming e^t when it is huge: divide through by R.
    const double factor = (1.0 - a2) / a2;
    if (w.t <= kLogSpaceThreshold) {
        const double r = std::exp(w.t) * w.e_big / a0;
        if (mode == Mode::Nonnegative) {
            g.d_nu = factor *
                     (nu * r + beta * nu * (w.f_small + 1.0) - (1.0 - beta) * gauss) /
                     (w.w1 + 1.0);
        } else {
            g.d_nu = factor * (nu * r + beta * nu * w.f_small - (1.0 - beta) * gauss) /
                     w.w1;
        }
        const double dw1_da0 =
            (-r * (nu * nu + a2) + gauss * nu) / (a0 * a2);  // d w1 / d a0
        const double denom = (mode == Mode::Nonnegative) ? (w.w1 + 1.0) : w.w1;
        g.d_a0 = (1.0 - beta) * dw1_da0 / denom - beta * nu * nu / (a0 * a2) -
                 beta / a0 +
                 ((c3 == 0.0) ? 0.0 : c3 * c3 * a0 / ((1.0 - a2) * (1.0 - a2)));
    } else {
        // R huge: divide numerators and denominators by R.
        const double ri = w.r_inv;
        const double denom_scaled =
            1.0 + (w.f_small + (mode == Mode::Nonnegative ? 1.0 : 0.0)) * ri;
        const double extra = (mode == Mode::Nonnegative) ? 1.0 : 0.0;
        g.d_nu = factor *
                 (nu + (beta * nu * (w.f_small + extra) - (1.0 - beta) * gauss) * ri) /
                 denom_scaled;
        const double dw1_da0_scaled = (-(nu * nu + a2) + gauss * nu * ri) / (a0 * a2);
        g.d_a0 = (1.0 - beta) * dw1_da0_scaled / denom_scaled -
                 beta * nu * nu / (a0 * a2) - beta / a0 +
                 ((c3 == 0.0) ? 0.0 : c3 * c3 * a0 / ((1.0 - a2) * (1.0 - a2)));
    }
    return g;
}

double finite_n_bound(std::size_t n, std::size_t k, std::size_t m, Mode mode) {
    if (n == 0 || k > m || m > n) {
        throw std::domain_error("finite_n_bound: need 1 <= k <= m <= n");
    }
    // Degenerate shapes: the Chernoff-style minimization over c3 >= 0 yields
    // the trivial bound 0 (log P <= 0 always holds).
    if (k == 0 || k == m || m == n) {
        return 0.0;
    }
    const double alpha = static_cast<double>(m) / static_cast<double>(n);
    const double beta = static_cast<double>(k) / static_cast<double>(n);
    const LdpSolution s = optimal_point(alpha, beta, mode);
    return (s.tail == Tail::Upper) ? s.rate : 0.0;
}

}  // namespace l1ldp
