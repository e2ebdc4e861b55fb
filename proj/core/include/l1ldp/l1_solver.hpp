// Exact recovery engine: minimum-l1-norm solutions of under-determined dense
// systems via an in-repo dense revised-simplex LP solver, plus the
// deterministic null-space success test for planted sparse solutions.
#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "l1ldp/pt_core.hpp"

namespace l1ldp {

/// Dense row-major matrix.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols, row-major

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Gaussian-elimination row-rank check with partial pivoting.
bool has_full_row_rank(const DenseMatrix& a, double tol = 1e-10);

/// An under-determined (m <= n) dense system A x = y.
struct LinearSystem {
    DenseMatrix a;
    std::vector<double> y;
};

/// Linear program min cost'z  s.t.  eq_matrix z = eq_rhs, z_i >= lower_bounds_i,
/// where each lower bound is either 0 or -infinity (free variable).
/// An empty lower_bounds vector means all-zero bounds.
///
/// objective_cutoff enables an early exit: if a basic feasible point with
/// objective strictly below the cutoff is reached, the solve stops and
/// reports CutoffReached with that point.  This turns "the optimum is below
/// this bound" questions into cheap certified answers without driving the
/// solve to optimality.  The default (-infinity) disables it.
struct LpProblem {
    std::vector<double> cost;
    DenseMatrix eq_matrix;
    std::vector<double> eq_rhs;
    std::vector<double> lower_bounds;
    double objective_cutoff = -std::numeric_limits<double>::infinity();
};

enum class LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    CutoffReached,
};

/// Returns "optimal", "infeasible", "unbounded", "iteration_limit", or
/// "cutoff_reached".
const char* to_string(LpStatus status);

/// LP solution with optimality certificates (computed on the standard-form
/// reformulation at exit): dual feasibility holds when min_reduced_cost
/// >= -1e-9, complementary slackness when max_comp_slack < 1e-9.
/// Certificates are populated at Optimal only; a CutoffReached result
/// carries a feasible point and its objective, with certificates zeroed.
struct LpResult {
    std::vector<double> z;
    double objective = 0.0;
    LpStatus status = LpStatus::IterationLimit;
    double min_reduced_cost = 0.0;
    double max_comp_slack = 0.0;
    double max_primal_residual = 0.0;
    int iterations = 0;
};

/// Dense revised simplex: explicit basis inverse with periodic
/// refactorization, partial (windowed) Dantzig pricing that serves exact
/// negated column pairs with one dot product, a Harris-style two-pass ratio
/// test, and a stall-escalation ladder (full pricing, then anti-degeneracy
/// bound perturbation, then Bland's rule).  Deterministic for fixed inputs.
/// Iteration cap: 50 * (rows + cols).
LpResult solve_lp(const LpProblem& problem, double feas_tol = 1e-9);

/// Result of an l1-minimization solve.
struct RecoveryResult {
    std::vector<double> x_hat;
    double objective = 0.0;  // l1 norm of x_hat at Optimal
    LpStatus status = LpStatus::IterationLimit;
};

/// Raw LP result (including optimality certificates) of the recovery
/// formulation used by solve_l1 (Signed: split x = u - v) or solve_l1_nonneg
/// (Nonnegative: x >= 0 directly).  solve_l1 / solve_l1_nonneg are thin
/// wrappers over this.  objective_cutoff (on the l1 norm) is forwarded to
/// the LP: pass a known norm bound to stop as soon as a strictly better
/// feasible point certifies that the bound is not optimal.
LpResult recovery_lp(const LinearSystem& sys, Mode mode, double feas_tol = 1e-9,
                     double objective_cutoff =
                         -std::numeric_limits<double>::infinity());

/// min ||x||_1 s.t. A x = y, via the split x = u - v, u, v >= 0 with cost
/// 1'(u + v).  Any optimal vertex is accepted.
RecoveryResult solve_l1(const LinearSystem& sys, double feas_tol = 1e-9,
                        double objective_cutoff =
                            -std::numeric_limits<double>::infinity());

/// min ||x||_1 s.t. A x = y, x >= 0.  Infeasible is a legitimate outcome
/// (no nonnegative solution exists) and counts as recovery failure downstream.
RecoveryResult solve_l1_nonneg(const LinearSystem& sys, double feas_tol = 1e-9,
                               double objective_cutoff =
                                   -std::numeric_limits<double>::infinity());

/// Decides the deterministic success condition for a planted sparse solution
/// with the given support and sign pattern:
///
///   Signed:       for all w != 0 with A w = 0:
///                 sum_{i off support} |w_i| + sum_{i in support} sign_i w_i > 0.
///   Nonnegative:  for all w != 0 with A w = 0 and w >= 0 off support:
///                 sum_{i off support} w_i + sum_{i in support} w_i > 0
///                 (signs are implicitly +1 and the signs argument is ignored).
///
/// Decided exactly by minimizing the support term over the null space under
/// the normalization sum_off |w_i| <= 1 (resp. sum_off w_i <= 1): the
/// condition holds iff 1 + minimum > 0.  `trials > 0` runs a randomized
/// pre-screen first (signed family only): sampled null-space vectors that
/// violate the condition certify failure without an LP solve.
///
/// m == n (trivial null space) and k == 0 are vacuously true.  Throws
/// convergence_error if the decision LP hits its iteration cap.
bool null_space_success_check(const DenseMatrix& a,
                              const std::vector<std::size_t>& support,
                              const std::vector<int>& signs, Mode mode,
                              std::size_t trials = 0);

}  // namespace l1ldp
