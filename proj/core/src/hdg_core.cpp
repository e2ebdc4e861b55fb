#include "l1ldp/hdg_core.hpp"

#include <cmath>
#include <stdexcept>

#include "l1ldp/ldp_core.hpp"
#include "l1ldp/root_finding.hpp"
#include "l1ldp/special_functions.hpp"

namespace l1ldp {

namespace {

// erfinv argument at a transition-style point b (mirrors pt_core's xi).
double hdg_argument(double alpha, double b, Mode mode) {
    double arg = (1.0 - alpha) / (1.0 - b);
    if (mode == Mode::Nonnegative) {
        arg = 2.0 * arg - 1.0;
    }
    if (!(arg > 0.0 && arg < 1.0)) {
        throw std::domain_error("exponent argument left (0, 1)");
    }
    return arg;
}

}  // namespace

double psi_com(double alpha, double beta, Mode mode) {
    validate_geometry(ProblemGeometry{alpha, beta}, mode);
    const double ab = alpha - beta;
    const double value = -ab * std::log(ab / (1.0 - beta)) -
                         (1.0 - alpha) * std::log((1.0 - alpha) / (1.0 - beta));
    return (mode == Mode::Signed) ? value + ab * std::log(2.0) : value;
}

PsiIntResult psi_int(double alpha, double beta, Mode mode) {
    validate_geometry(ProblemGeometry{alpha, beta}, mode);
    const double beta_0 = solve_beta_0(alpha, beta, mode);
    const double y = erfinv(hdg_argument(alpha, beta_0, mode));
    const double ab = alpha - beta;
    const double value = alpha * y * y + ab * std::log(erfc(y)) - ab * std::log(2.0);
    return PsiIntResult{value, y};
}

PsiExtResult psi_ext(double alpha, Mode mode) {
    if (!(std::isfinite(alpha) && 0.0 < alpha && alpha < 1.0)) {
        throw std::domain_error("psi_ext: alpha must lie in (0, 1)");
    }
    const double beta_w = solve_beta_w(alpha, mode).value;
    const double y = erfinv(hdg_argument(alpha, beta_w, mode));
    double value;
    if (mode == Mode::Signed) {
        value = alpha * y * y - (1.0 - alpha) * std::log(erf(y));
    } else {
        value = alpha * y * y - (1.0 - alpha) * std::log(1.0 + erf(y)) +
                (1.0 - alpha) * std::log(2.0);
    }
    return PsiExtResult{value, y};
}

HdgDecomposition psi_net(double alpha, double beta, Mode mode) {
    HdgDecomposition d;
    d.mode = mode;
    d.psi_com = psi_com(alpha, beta, mode);
    const PsiIntResult internal = psi_int(alpha, beta, mode);
    d.psi_int = internal.value;
    d.y_int = internal.y_int;
    const PsiExtResult external = psi_ext(alpha, mode);
    d.psi_ext = external.value;
    d.y_ext = external.y_ext;
    d.psi_net = d.psi_com + d.psi_int - d.psi_ext;
    return d;
}

PsiIntDonohoResult psi_int_donoho(double alpha, double beta, Mode mode) {
    validate_geometry(ProblemGeometry{alpha, beta}, mode);
    const double ratio = (alpha - beta) / alpha;  // in (0, 1)
    // Stationarity equation for s; independent of the family.  The left side
    // decays like the right side times alpha/(alpha-beta) > 1, so the
    // bracket (1e-8, 6) always straddles the unique root.
    auto equation = [&](double s) {
        return 0.5 * erfc(s / std::sqrt(2.0)) -
               ratio * std::exp(-0.5 * s * s) / (s * std::sqrt(2.0 * M_PI));
    };
    RootResult r = find_root(equation, make_bracket(equation, 1e-8, 6.0));
    const double s = r.root;
    const double ab = alpha - beta;
    const double value =
        ab * (-0.5 * (beta / ab) * s * s - 0.5 * std::log(2.0 / M_PI) +
              std::log(alpha * s / ab)) +
        ab * std::log(2.0);
    return PsiIntDonohoResult{value, s};
}

}  // namespace l1ldp
