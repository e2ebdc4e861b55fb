// Weak phase-transition characterizations for l1 and nonnegative-l1 recovery
// of k-sparse solutions to under-determined Gaussian systems, in the
// proportional regime m = alpha*n, k = beta*n.
//
// The characteristic xi_alpha(beta) equals 1 exactly on the transition curve:
// below the curve (beta < beta_w) recovery succeeds with overwhelming
// probability as n grows, above it recovery fails.  psi_beta(alpha) is the
// same expression read as a function of alpha.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace l1ldp {

/// Problem family: signed unknowns, or unknowns known a priori nonnegative.
enum class Mode {
    Signed,
    Nonnegative,
};

/// Returns "signed" or "nonnegative".
const char* to_string(Mode mode);

/// Parses "signed", "nonnegative", or the shorthand "nonneg";
/// throws std::invalid_argument otherwise.
Mode mode_from_string(const std::string& name);

/// Asymptotic system shape: alpha = m/n (undersampling), beta = k/n (sparsity).
struct ProblemGeometry {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Throws std::domain_error unless 0 < beta < alpha < 1 (and, for solving the
/// nonnegative transition in beta, beta > max(2*alpha - 1, 0)).
void validate_geometry(const ProblemGeometry& geometry, Mode mode,
                       bool beta_as_pt_unknown = false);

/// A solved transition point (beta_w or alpha_w) with its residual.
struct PtSolution {
    double value = 0.0;
    double residual = 0.0;  // characteristic(value) - 1
    Mode mode = Mode::Signed;
};

/// The transition characteristic.
///
/// Signed:       xi = (1-beta) * sqrt(2/pi) * exp(-q^2) / (alpha * sqrt(2) * q)
///               with q = erfinv((1-alpha)/(1-beta)).
/// Nonnegative:  q = erfinv(2*(1-alpha)/(1-beta) - 1) and the prefactor
///               sqrt(2/pi) becomes sqrt(1/(2*pi)).
///
/// Throws std::domain_error when the erfinv argument leaves [1e-15, 1-1e-15]
/// (the formula's genuine singularities at the domain edges).
double xi(double alpha, double beta, Mode mode);

/// The same expression read as a function of alpha for fixed beta;
/// evaluates xi(alpha, beta, mode) bit-for-bit.
double psi(double beta, double alpha, Mode mode);

/// Solves xi_alpha(beta_w) = 1 for the unique beta_w.
/// Signed: beta_w in (0, alpha); nonnegative: in (max(2*alpha-1, 0), alpha).
PtSolution solve_beta_w(double alpha, Mode mode);

/// Solves psi_beta(alpha_w) = 1 for the unique alpha_w.
/// Signed: alpha_w in (beta, 1); nonnegative: in (beta, (1+beta)/2).
PtSolution solve_alpha_w(double beta, Mode mode);

/// One point of the transition curve.
struct PtCurvePoint {
    double alpha = 0.0;
    double beta_w = 0.0;
};

/// Transition curve over a grid of alpha values, sorted by alpha.  Failed
/// points are collected (alpha, reason) rather than aborting the sweep.
struct PtCurve {
    std::vector<PtCurvePoint> points;
    std::vector<std::pair<double, std::string>> failures;
};

/// Sweeps solve_beta_w over the grid, reusing each solved beta_w to narrow
/// the next point's bracket (the curve is continuous and increasing in alpha).
PtCurve pt_curve(Mode mode, std::vector<double> alphas);

}  // namespace l1ldp
