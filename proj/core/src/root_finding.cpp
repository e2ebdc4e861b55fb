#include "l1ldp/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace l1ldp {

Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo >= hi) {
        throw bracket_error("make_bracket: endpoints must be finite with lo < hi");
    }
    Bracket b{lo, hi, f(lo), f(hi)};
    if (!std::isfinite(b.f_lo) || !std::isfinite(b.f_hi)) {
        throw bracket_error("make_bracket: function non-finite at an endpoint");
    }
    if (!(b.f_lo * b.f_hi < 0.0)) {
        throw bracket_error("make_bracket: no strict sign change on the interval");
    }
    return b;
}

RootResult find_root(const std::function<double(double)>& f, const Bracket& bracket,
                     double tol, int max_iter) {
    double a = bracket.lo, b = bracket.hi;
    double fa = bracket.f_lo, fb = bracket.f_hi;
    if (!std::isfinite(a) || !std::isfinite(b) || a >= b || !(fa * fb < 0.0)) {
        throw bracket_error("find_root: invalid bracket");
    }

    // Classic Brent: b is the current best iterate, a the previous one, c the
    // counterpoint keeping [b, c] a sign-changing interval.
    double c = a, fc = fa;
    double d = b - a;  // step taken in the current iteration
    double e = d;      // step taken in the previous iteration
    for (int iter = 1; iter <= max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double width_tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                                 0.5 * tol * std::max(1.0, std::abs(b));
        const double half_width = 0.5 * (c - b);
        // Stop on interval width (or an exact zero), never on a small residual:
        // a residual threshold is meaningless where the function is nearly flat.
        if (fb == 0.0 || std::abs(half_width) <= width_tol) {
            return RootResult{b, fb, iter};
        }
        if (std::abs(e) >= width_tol && std::abs(fa) > std::abs(fb)) {
            // Attempt inverse quadratic interpolation (secant when a == c).
            double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * half_width * s;
                q = 1.0 - s;
            } else {
                double r = fb / fc;
                double t = fa / fc;
                p = s * (2.0 * half_width * t * (t - r) - (b - a) * (r - 1.0));
                q = (t - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            }
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * half_width * q - std::abs(width_tol * q),
                                   std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = half_width;
                e = d;
            }
        } else {
            d = half_width;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > width_tol) ? d : (half_width > 0.0 ? width_tol : -width_tol);
        fb = f(b);
        if (fb * fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw convergence_error("find_root: iteration cap exceeded");
}

MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo,
                               double hi, double tol, int max_iter) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo >= hi) {
        throw bracket_error("minimize_scalar: endpoints must be finite with lo < hi");
    }
    // Brent minimization: golden-section steps with parabolic acceleration.
    const double golden = 0.3819660112501051;  // (3 - sqrt(5)) / 2
    double a = lo, b = hi;
    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        const double mid = 0.5 * (a + b);
        const double tol1 = tol * std::abs(x) + 1e-15;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) {
            return MinimizeResult{x, fx, iter};
        }
        bool use_golden = true;
        if (std::abs(e) > tol1) {
            // Fit a parabola through (v, fv), (w, fw), (x, fx).
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) {
                p = -p;
            }
            q = std::abs(q);
            double e_prev = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) &&
                p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                if (u - a < tol2 || b - u < tol2) {
                    d = (mid > x) ? tol1 : -tol1;
                }
                use_golden = false;
            }
        }
        if (use_golden) {
            e = (x < mid) ? b - x : a - x;
            d = golden * e;
        }
        double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        double fu = f(u);
        if (fu <= fx) {
            if (u < x) {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x) {
                a = u;
            } else {
                b = u;
            }
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    throw convergence_error("minimize_scalar: iteration cap exceeded");
}

}  // namespace l1ldp
