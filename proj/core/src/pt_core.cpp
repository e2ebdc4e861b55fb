#include "l1ldp/pt_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "l1ldp/root_finding.hpp"
#include "l1ldp/special_functions.hpp"

namespace l1ldp {

namespace {

constexpr double kArgFloor = 1e-15;        // clamp window for erfinv arguments
constexpr double kArgCeiling = 1.0 - 1e-15;

// The erfinv argument of the characteristic: (1-alpha)/(1-beta) for the
// signed family, 2*(1-alpha)/(1-beta) - 1 for the nonnegative one.
double erfinv_argument(double alpha, double beta, Mode mode) {
    double arg = (1.0 - alpha) / (1.0 - beta);
    if (mode == Mode::Nonnegative) {
        arg = 2.0 * arg - 1.0;
    }
    if (!(arg >= kArgFloor && arg <= kArgCeiling)) {
        throw std::domain_error(
            "xi: erfinv argument outside [1e-15, 1-1e-15]; the characteristic "
            "is singular at the domain edge");
    }
    return arg;
}

}  // namespace

const char* to_string(Mode mode) {
    return mode == Mode::Signed ? "signed" : "nonnegative";
}

Mode mode_from_string(const std::string& name) {
    if (name == "signed") return Mode::Signed;
    if (name == "nonnegative" || name == "nonneg") return Mode::Nonnegative;
    throw std::invalid_argument("unknown mode '" + name +
                                "' (expected signed or nonnegative)");
}

void validate_geometry(const ProblemGeometry& geometry, Mode mode,
                       bool beta_as_pt_unknown) {
    const double alpha = geometry.alpha;
    const double beta = geometry.beta;
    if (!(std::isfinite(alpha) && std::isfinite(beta) && 0.0 < beta && beta < alpha &&
          alpha < 1.0)) {
        throw std::domain_error("geometry: need 0 < beta < alpha < 1");
    }
    if (mode == Mode::Nonnegative && beta_as_pt_unknown &&
        !(beta > std::max(2.0 * alpha - 1.0, 0.0))) {
        throw std::domain_error(
            "geometry: nonnegative transition requires beta > max(2*alpha-1, 0)");
    }
}

double xi(double alpha, double beta, Mode mode) {
    const double q = erfinv(erfinv_argument(alpha, beta, mode));
    const double prefactor =
        (mode == Mode::Signed) ? std::sqrt(2.0 / M_PI) : std::sqrt(0.5 / M_PI);
    return (1.0 - beta) * prefactor * std::exp(-q * q) / (alpha * std::sqrt(2.0) * q);
}

double psi(double beta, double alpha, Mode mode) {
    return xi(alpha, beta, mode);
}

PtSolution solve_beta_w(double alpha, Mode mode) {
    if (!(std::isfinite(alpha) && 0.0 < alpha && alpha < 1.0)) {
        throw std::domain_error("solve_beta_w: alpha must lie in (0, 1)");
    }
    const double epsilon = 1e-12 * alpha;
    const double lo =
        (mode == Mode::Nonnegative ? std::max(2.0 * alpha - 1.0, 0.0) : 0.0) + epsilon;
    const double hi = alpha - epsilon;
    auto characteristic = [&](double beta) { return xi(alpha, beta, mode) - 1.0; };
    RootResult r = find_root(characteristic, make_bracket(characteristic, lo, hi));
    return PtSolution{r.root, r.residual, mode};
}

PtSolution solve_alpha_w(double beta, Mode mode) {
    if (!(std::isfinite(beta) && 0.0 < beta && beta < 1.0)) {
        throw std::domain_error("solve_alpha_w: beta must lie in (0, 1)");
    }
    // psi_beta(alpha) - 1 increases from -1 to positive values on the search
    // interval, so the endpoints always bracket the unique crossing.
    const double epsilon = 1e-12 * (1.0 - beta);
    const double lo = beta + epsilon;
    const double hi =
        (mode == Mode::Nonnegative) ? 0.5 * (1.0 + beta) - epsilon : 1.0 - 1e-12;
    auto characteristic = [&](double alpha) { return psi(beta, alpha, mode) - 1.0; };
    RootResult r = find_root(characteristic, make_bracket(characteristic, lo, hi));
    return PtSolution{r.root, r.residual, mode};
}

PtCurve pt_curve(Mode mode, std::vector<double> alphas) {
    std::sort(alphas.begin(), alphas.end());
    PtCurve curve;
    double previous_beta_w = -1.0;
    for (double alpha : alphas) {
        try {
            if (!(std::isfinite(alpha) && 0.0 < alpha && alpha < 1.0)) {
                throw std::domain_error("pt_curve: alpha must lie in (0, 1)");
            }
            const double epsilon = 1e-12 * alpha;
            const double default_lo =
                (mode == Mode::Nonnegative ? std::max(2.0 * alpha - 1.0, 0.0) : 0.0) +
                epsilon;
            const double hi = alpha - epsilon;
            auto characteristic = [&](double beta) { return xi(alpha, beta, mode) - 1.0; };
            // beta_w grows with alpha, so the previous point tightens the
            // bracket from below when its sign still fits.
            double lo = default_lo;
            if (previous_beta_w > default_lo && previous_beta_w < hi) {
                double hinted = previous_beta_w;
                if (characteristic(hinted) > 0.0) {
                    lo = hinted;
                }
            }
            RootResult r = find_root(characteristic, make_bracket(characteristic, lo, hi));
            curve.points.push_back(PtCurvePoint{alpha, r.root});
            previous_beta_w = r.root;
        } catch (const std::exception& error) {
            curve.failures.emplace_back(alpha, error.what());
        }
    }
    return curve;
}

}  // namespace l1ldp
