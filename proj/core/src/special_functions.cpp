#include "l1ldp/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace l1ldp {

namespace {

void require_finite(double x, const char* fn) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(fn) + ": non-finite argument");
    }
}

// Rational approximation to the inverse normal CDF (Acklam's coefficients),
// used only to seed Newton iteration in erfinv.  Max relative error ~1.15e-9.
double inverse_normal_cdf_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double erf(double x) {
    require_finite(x, "erf");
    return std::erf(x);
}

double erfc(double x) {
    require_finite(x, "erfc");
    return std::erfc(x);
}

double erfinv(double p) {
    require_finite(p, "erfinv");
    if (p <= -1.0 || p >= 1.0) {
        throw std::domain_error("erfinv: argument must lie in (-1, 1)");
    }
    if (p == 0.0) {
        return 0.0;
    }
    // erfinv(p) = Phi^{-1}((p+1)/2) / sqrt(2), where Phi is the normal CDF.
    double x = inverse_normal_cdf_approx(0.5 * (p + 1.0)) / std::sqrt(2.0);
    // Newton refinement on f(x) = erf(x) - p; f'(x) = (2/sqrt(pi)) exp(-x^2).
    // Three steps take the ~1e-9 seed to ~1 ulp and keep the map smooth in p.
    const double two_over_sqrt_pi = 1.1283791670955126;
    for (int step = 0; step < 3; ++step) {
        // Evaluate erf(x) - p through erfc near the endpoints, where both
        // terms are small and the direct difference would cancel.
        double residual;
        if (p > 0.5) {
            residual = (1.0 - p) - std::erfc(x);
        } else if (p < -0.5) {
            residual = std::erfc(-x) - (1.0 + p);
        } else {
            residual = std::erf(x) - p;
        }
        double derivative = two_over_sqrt_pi * std::exp(-x * x);
        x -= residual / derivative;
    }
    return x;
}

double gaussian_q(double x) {
    require_finite(x, "gaussian_q");
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

}  // namespace l1ldp
