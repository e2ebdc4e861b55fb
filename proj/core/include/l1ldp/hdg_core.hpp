// High-dimensional-geometry formulation of the recovery rates: combinatorial,
// internal-angle, and external-angle exponents whose signed sum Psi_net equals
// the rate function from ldp_core.  Serves as an independent derivation path
// for cross-validation, plus a Donoho-style variant of the internal exponent.
#pragma once

#include "l1ldp/pt_core.hpp"

namespace l1ldp {

/// The full exponent decomposition at a shape (alpha, beta).
struct HdgDecomposition {
    double psi_com = 0.0;  // combinatorial exponent
    double psi_int = 0.0;  // internal-angle exponent (negative for typical shapes)
    double psi_ext = 0.0;  // external-angle exponent
    double psi_net = 0.0;  // psi_com + psi_int - psi_ext
    double y_int = 0.0;    // minimizer of the internal objective
    double y_ext = 0.0;    // minimizer of the external objective
    Mode mode = Mode::Signed;
};

/// Combinatorial exponent.
/// Signed:  (a-b)log 2 - (a-b)log((a-b)/(1-b)) - (1-a)log((1-a)/(1-b)).
/// Nonnegative: the same without the (a-b)log 2 term.
double psi_com(double alpha, double beta, Mode mode);

/// Internal-angle exponent and its minimizer.
struct PsiIntResult {
    double value = 0.0;
    double y_int = 0.0;
};

/// psi_int = min_{y>=0}(alpha y^2 + (alpha-beta) log erfc(y)) - (alpha-beta) log 2.
/// The objective is identical in both families; the minimizer has the closed
/// form y_int = erfinv(argument at beta_0) routed through the family's own
/// auxiliary point beta_0 (both routes land on the same number).
PsiIntResult psi_int(double alpha, double beta, Mode mode);

/// External-angle exponent and its minimizer.
struct PsiExtResult {
    double value = 0.0;
    double y_ext = 0.0;
};

/// Signed:      psi_ext = min_{y>=0}(alpha y^2 - (1-alpha) log erf(y)).
/// Nonnegative: min_{y>=0}(alpha y^2 - (1-alpha) log(1+erf(y)) + (1-alpha) log 2).
/// Closed-form minimizer y_ext = erfinv(argument at beta_w(alpha)).
PsiExtResult psi_ext(double alpha, Mode mode);

/// Assembles the decomposition; psi_net equals ldp_core's rate(alpha, beta)
/// to ~1e-9 (the two derivations' central equivalence).
HdgDecomposition psi_net(double alpha, double beta, Mode mode);

/// Donoho-style internal exponent variant.
struct PsiIntDonohoResult {
    double value = 0.0;
    double s = 0.0;
};

/// Solves s from the scalar stationarity equation
///   (1/2) erfc(s/sqrt(2)) = ((alpha-beta)/alpha) * e^{-s^2/2} / (s sqrt(2 pi))
/// (the same equation in both families) and evaluates
///   value = (alpha-beta) * ( -(beta/(alpha-beta)) s^2/2 - (1/2) log(2/pi)
///           + log(alpha s/(alpha-beta)) ) + (alpha-beta) log 2.
/// Satisfies value == -psi_int(alpha, beta, mode) exactly in theory; s equals
/// sqrt(2) * y_int.
PsiIntDonohoResult psi_int_donoho(double alpha, double beta, Mode mode);

}  // namespace l1ldp
