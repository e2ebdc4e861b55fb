#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "l1ldp/l1_solver.hpp"
#include "l1ldp/monte_carlo.hpp"
#include "l1ldp/rng.hpp"

using l1ldp::DenseMatrix;
using l1ldp::ExperimentConfig;
using l1ldp::LinearSystem;
using l1ldp::LpProblem;
using l1ldp::LpResult;
using l1ldp::LpStatus;
using l1ldp::Mode;
using l1ldp::RecoveryResult;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ExperimentConfig make_config(std::size_t n, std::size_t k, std::size_t m,
                             Mode mode, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.m = m;
    cfg.trials = 1;
    cfg.seed = seed;
    cfg.mode = mode;
    return cfg;
}

// Solves the square system g x = rhs by Gaussian elimination (test helper).
std::vector<double> dense_solve(std::vector<double> g, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i) {
            if (std::abs(g[i * n + col]) > std::abs(g[piv * n + col])) piv = i;
        }
        for (std::size_t kk = 0; kk < n; ++kk) std::swap(g[piv * n + kk], g[col * n + kk]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = g[i * n + col] / g[col * n + col];
            for (std::size_t kk = col; kk < n; ++kk) g[i * n + kk] -= f * g[col * n + kk];
            rhs[i] -= f * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double v = rhs[ii];
        for (std::size_t kk = ii + 1; kk < n; ++kk) v -= g[ii * n + kk] * x[kk];
        x[ii] = v / g[ii * n + ii];
    }
    return x;
}

// Projects g onto the null space of a (test helper).
std::vector<double> null_space_project(const DenseMatrix& a,
                                       const std::vector<double>& g) {
    const std::size_t m = a.rows, n = a.cols;
    std::vector<double> gram(m * m, 0.0), ag(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double v = 0.0;
            for (std::size_t kk = 0; kk < n; ++kk) v += a.at(i, kk) * a.at(j, kk);
            gram[i * m + j] = v;
        }
        double v = 0.0;
        for (std::size_t kk = 0; kk < n; ++kk) v += a.at(i, kk) * g[kk];
        ag[i] = v;
    }
    const std::vector<double> h = dense_solve(gram, ag);
    std::vector<double> w = g;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) w[j] -= a.at(i, j) * h[i];
    }
    return w;
}

}  // namespace

TEST_CASE("solve_lp on elementary programs") {
    SUBCASE("two nonnegative variables on a budget line") {
        LpProblem lp;
        lp.cost = {1.0, 1.0};
        lp.eq_matrix = DenseMatrix{1, 2, {1.0, 1.0}};
        lp.eq_rhs = {1.0};
        const l1ldp::LpResult r = l1ldp::solve_lp(lp);
        CHECK(r.status == LpStatus::Optimal);
        CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.min_reduced_cost >= -1e-9);
        CHECK(r.max_comp_slack < 1e-9);
        CHECK(r.max_primal_residual <= 1e-12);
    }
    SUBCASE("free variable mapping") {
        LpProblem lp;
        lp.cost = {-1.0, 0.0};
        lp.eq_matrix = DenseMatrix{1, 2, {1.0, 1.0}};
        lp.eq_rhs = {-5.0};
        lp.lower_bounds = {-kInf, 0.0};
        const l1ldp::LpResult r = l1ldp::solve_lp(lp);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.z[0] == doctest::Approx(-5.0).epsilon(1e-12));
        CHECK(r.objective == doctest::Approx(5.0).epsilon(1e-12));
    }
    SUBCASE("unbounded ray through a free variable") {
        LpProblem lp;
        lp.cost = {1.0, 0.0};
        lp.eq_matrix = DenseMatrix{1, 2, {1.0, 1.0}};
        lp.eq_rhs = {-5.0};
        lp.lower_bounds = {-kInf, 0.0};
        CHECK(l1ldp::solve_lp(lp).status == LpStatus::Unbounded);
    }
    SUBCASE("infeasible sign constraint") {
        LpProblem lp;
        lp.cost = {1.0};
        lp.eq_matrix = DenseMatrix{1, 1, {1.0}};
        lp.eq_rhs = {-1.0};
        CHECK(l1ldp::solve_lp(lp).status == LpStatus::Infeasible);
    }
}

TEST_CASE("solve_lp input validation") {
    LpProblem lp;
    lp.cost = {1.0, 1.0};
    lp.eq_matrix = DenseMatrix{1, 2, {1.0, 1.0}};
    lp.eq_rhs = {1.0};
    LpProblem bad = lp;
    bad.cost = {1.0};
    CHECK_THROWS_AS((void)l1ldp::solve_lp(bad), std::invalid_argument);
    bad = lp;
    bad.eq_rhs = {1.0, 2.0};
    CHECK_THROWS_AS((void)l1ldp::solve_lp(bad), std::invalid_argument);
    bad = lp;
    bad.lower_bounds = {0.0};
    CHECK_THROWS_AS((void)l1ldp::solve_lp(bad), std::invalid_argument);
    bad = lp;
    bad.lower_bounds = {-3.0, 0.0};  // finite nonzero bounds unsupported
    CHECK_THROWS_AS((void)l1ldp::solve_lp(bad), std::invalid_argument);
    bad = lp;
    bad.eq_matrix.data = {1.0};
    CHECK_THROWS_AS((void)l1ldp::solve_lp(bad), std::invalid_argument);
}

TEST_CASE("the 1x2 system has the two expected l1 vertices") {
    LinearSystem sys;
    sys.a = DenseMatrix{1, 2, {1.0, 1.0}};
    sys.y = {1.0};
    const l1ldp::RecoveryResult r = l1ldp::solve_l1(sys);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
    const double to_e1 = std::abs(r.x_hat[0] - 1.0) + std::abs(r.x_hat[1]);
    const double to_e2 = std::abs(r.x_hat[0]) + std::abs(r.x_hat[1] - 1.0);
    CHECK(std::min(to_e1, to_e2) <= 1e-9);
}

TEST_CASE("sparse recovery on a well-posed random instance") {
    const l1ldp::SampledInstance inst =
        l1ldp::sample_instance(make_config(8, 1, 5, Mode::Signed, 11), 0);
    const l1ldp::RecoveryResult r = l1ldp::solve_l1(inst.system);
    REQUIRE(r.status == LpStatus::Optimal);
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK(r.x_hat[j] == doctest::Approx(inst.x0[j]).epsilon(1e-8));
    }
}

TEST_CASE("optimality certificates on a moderate Gaussian instance") {
    const l1ldp::SampledInstance inst =
        l1ldp::sample_instance(make_config(60, 8, 30, Mode::Signed, 5), 0);
    const l1ldp::LpResult lp = l1ldp::recovery_lp(inst.system, Mode::Signed);
    REQUIRE(lp.status == LpStatus::Optimal);
    CHECK(lp.min_reduced_cost >= -1e-9);
    CHECK(lp.max_comp_slack < 1e-9);
    CHECK(lp.max_primal_residual <= 1e-8);
    CHECK(lp.iterations > 0);
}

TEST_CASE("returned point is l1-minimal against null-space perturbations") {
    const l1ldp::SampledInstance inst =
        l1ldp::sample_instance(make_config(40, 6, 20, Mode::Signed, 17), 0);
    const l1ldp::RecoveryResult r = l1ldp::solve_l1(inst.system);
    REQUIRE(r.status == LpStatus::Optimal);
    double base = 0.0;
    for (double v : r.x_hat) base += std::abs(v);
    const l1ldp::CounterRng rng(99);
    for (std::uint64_t t = 0; t < 100; ++t) {
        std::vector<double> g(40);
        for (std::size_t j = 0; j < 40; ++j) g[j] = rng.gaussian(t * 40 + j);
        const std::vector<double> z = null_space_project(inst.system.a, g);
        double perturbed = 0.0;
        for (std::size_t j = 0; j < 40; ++j) {
            perturbed += std::abs(r.x_hat[j] + 0.25 * z[j]);
        }
        CHECK(perturbed >= base - 1e-8);
    }
}

TEST_CASE("scale equivariance of the recovery map") {
    const l1ldp::SampledInstance inst =
        l1ldp::sample_instance(make_config(30, 5, 15, Mode::Signed, 23), 0);
    const l1ldp::RecoveryResult r1 = l1ldp::solve_l1(inst.system);
    LinearSystem scaled = inst.system;
    for (double& v : scaled.y) v *= 2.5;
    const l1ldp::RecoveryResult r2 = l1ldp::solve_l1(scaled);
    REQUIRE(r1.status == LpStatus::Optimal);
    REQUIRE(r2.status == LpStatus::Optimal);
    for (std::size_t j = 0; j < 30; ++j) {
        CHECK(std::abs(r2.x_hat[j] - 2.5 * r1.x_hat[j]) <=
              1e-12 * std::max(1.0, std::abs(r1.x_hat[j])));
    }
}

TEST_CASE("nonnegative solver basics") {
    SUBCASE("planted nonnegative vector is recovered") {
        const l1ldp::SampledInstance inst =
            l1ldp::sample_instance(make_config(40, 5, 25, Mode::Nonnegative, 31), 0);
        const l1ldp::RecoveryResult r = l1ldp::solve_l1_nonneg(inst.system);
        REQUIRE(r.status == LpStatus::Optimal);
        for (std::size_t j = 0; j < 40; ++j) {
            CHECK(r.x_hat[j] == doctest::Approx(inst.x0[j]).epsilon(1e-7));
        }
    }
    SUBCASE("no nonnegative solution means Infeasible") {
        LinearSystem sys;
        sys.a = DenseMatrix{1, 2, {1.0, 1.0}};
        sys.y = {-1.0};
        CHECK(l1ldp::solve_l1_nonneg(sys).status == LpStatus::Infeasible);
    }
}

TEST_CASE("null-space success condition on hand-checkable systems") {
    // A = [1, 0.5]: null space is spanned by (-0.5, 1).
    DenseMatrix a{1, 2, {1.0, 0.5}};
    // Support {0}: min of w_0 subject to |w_1| <= 1 is -0.5, so 1 - 0.5 > 0.
    CHECK(l1ldp::null_space_success_check(a, {0}, {1}, Mode::Signed));
    // Support {1}: min of w_1 subject to |w_0| <= 1 is -2, so 1 - 2 < 0.
    CHECK_FALSE(l1ldp::null_space_success_check(a, {1}, {1}, Mode::Signed));
    // Boundary tie 1 + (-1) = 0 counts as failure (strict inequality).
    DenseMatrix b{1, 2, {1.0, -1.0}};
    CHECK_FALSE(l1ldp::null_space_success_check(b, {1}, {1}, Mode::Signed));
    // Nonnegative: off-support w_0 >= 0 forces w = t(1,1), t >= 0; sums > 0.
    CHECK(l1ldp::null_space_success_check(b, {1}, {}, Mode::Nonnegative));
    // Trivial cases.
    DenseMatrix eye{2, 2, {1.0, 0.0, 0.0, 1.0}};
    CHECK(l1ldp::null_space_success_check(eye, {0}, {1}, Mode::Signed));
    CHECK(l1ldp::null_space_success_check(a, {}, {}, Mode::Signed));
}

TEST_CASE("null-space check input validation") {
    DenseMatrix a{1, 2, {1.0, 0.5}};
    CHECK_THROWS_AS(
        (void)l1ldp::null_space_success_check(a, {2}, {1}, Mode::Signed),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)l1ldp::null_space_success_check(a, {0, 0}, {1, 1}, Mode::Signed),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)l1ldp::null_space_success_check(a, {0}, {}, Mode::Signed),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)l1ldp::null_space_success_check(a, {0}, {2}, Mode::Signed),
        std::invalid_argument);
}

TEST_CASE("pre-screen agrees with the decision LP") {
    // Far above the transition the condition fails; the randomized screen and
    // the LP must return the same verdict.
    const l1ldp::SampledInstance inst =
        l1ldp::sample_instance(make_config(40, 10, 12, Mode::Signed, 7), 0);
    const bool with_screen = l1ldp::null_space_success_check(
        inst.system.a, inst.support, inst.signs, Mode::Signed, 200);
    const bool pure_lp = l1ldp::null_space_success_check(
        inst.system.a, inst.support, inst.signs, Mode::Signed, 0);
    CHECK(with_screen == pure_lp);
    CHECK_FALSE(pure_lp);
}

TEST_CASE("recovery agrees with the null-space condition across instances") {
    int disagreements = 0;
    for (std::size_t trial = 0; trial < 100; ++trial) {
        const ExperimentConfig cfg = make_config(40, 7, 20, Mode::Signed, 1234);
        const l1ldp::SampledInstance inst = l1ldp::sample_instance(cfg, trial);
        const l1ldp::RecoveryResult r = l1ldp::solve_l1(inst.system);
        REQUIRE(r.status == LpStatus::Optimal);
        double dev = 0.0, scale = 1.0;
        for (std::size_t j = 0; j < 40; ++j) {
            dev = std::max(dev, std::abs(r.x_hat[j] - inst.x0[j]));
            scale = std::max(scale, std::abs(inst.x0[j]));
        }
        const bool recovered = dev <= 1e-6 * scale;
        const bool predicted = l1ldp::null_space_success_check(
            inst.system.a, inst.support, inst.signs, Mode::Signed, 16);
        if (recovered != predicted) ++disagreements;
    }
    CHECK(disagreements <= 1);  // ties live only on tolerance boundaries
}

TEST_CASE("has_full_row_rank") {
    CHECK(l1ldp::has_full_row_rank(DenseMatrix{2, 2, {1.0, 0.0, 0.0, 1.0}}));
    CHECK_FALSE(l1ldp::has_full_row_rank(DenseMatrix{2, 2, {1.0, 2.0, 2.0, 4.0}}));
    CHECK_FALSE(l1ldp::has_full_row_rank(DenseMatrix{2, 3, {0, 0, 0, 0, 0, 0}}));
    CHECK_FALSE(l1ldp::has_full_row_rank(DenseMatrix{3, 2, {1, 0, 0, 1, 1, 1}}));
    const l1ldp::SampledInstance inst =
        l1ldp::sample_instance(make_config(10, 2, 5, Mode::Signed, 3), 0);
    CHECK(l1ldp::has_full_row_rank(inst.system.a));
}

TEST_CASE("status names") {
    CHECK(l1ldp::to_string(LpStatus::Optimal) == std::string("optimal"));
    CHECK(l1ldp::to_string(LpStatus::Infeasible) == std::string("infeasible"));
    CHECK(l1ldp::to_string(LpStatus::Unbounded) == std::string("unbounded"));
    CHECK(l1ldp::to_string(LpStatus::IterationLimit) ==
          std::string("iteration_limit"));
    CHECK(l1ldp::to_string(LpStatus::CutoffReached) ==
          std::string("cutoff_reached"));
}

TEST_CASE("objective cutoff certifies a beatable bound") {
    // min z1 + z2 s.t. z1 + z2 = 1: optimum 1.  A cutoff above the optimum
    // must trigger an early certified exit; one below it must not.
    LpProblem lp;
    lp.eq_matrix = DenseMatrix{1, 2, {1.0, 1.0}};
    lp.eq_rhs = {1.0};
    lp.cost = {1.0, 1.0};
    lp.objective_cutoff = 1.5;
    const LpResult hit = l1ldp::solve_lp(lp);
    CHECK(hit.status == LpStatus::CutoffReached);
    REQUIRE(hit.z.size() == 2);
    CHECK(hit.z[0] + hit.z[1] == doctest::Approx(1.0));
    CHECK(hit.objective < 1.5);

    lp.objective_cutoff = 0.5;
    const LpResult miss = l1ldp::solve_lp(lp);
    CHECK(miss.status == LpStatus::Optimal);
    CHECK(miss.objective == doctest::Approx(1.0));
}

TEST_CASE("recovery cutoff marks failed instances without full solves") {
    // Dense flat planted vectors at alpha far above the curve fail recovery;
    // the cutoff path must agree with the full solve on the verdict.
    for (std::size_t t = 0; t < 8; ++t) {
        const l1ldp::SampledInstance inst =
            l1ldp::sample_instance(make_config(60, 24, 30, Mode::Signed, 1), t);
        double l1 = 0.0;
        for (double v : inst.x0) l1 += std::abs(v);
        const double cutoff = l1 - 1e-6 * (1.0 + l1);
        const RecoveryResult full = l1ldp::solve_l1(inst.system);
        const RecoveryResult cut = l1ldp::solve_l1(inst.system, 1e-9, cutoff);
        REQUIRE(full.status == LpStatus::Optimal);
        const bool full_failed = full.objective < cutoff;
        if (cut.status == LpStatus::CutoffReached) {
            CHECK(full_failed);
            CHECK(cut.objective < cutoff);
        } else {
            REQUIRE(cut.status == LpStatus::Optimal);
            CHECK(cut.objective == doctest::Approx(full.objective));
        }
    }
}

TEST_CASE("system validation") {
    LinearSystem sys;
    sys.a = DenseMatrix{3, 2, {1, 0, 0, 1, 1, 1}};
    sys.y = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS((void)l1ldp::solve_l1(sys), std::invalid_argument);  // m > n
    sys.a = DenseMatrix{1, 2, {1.0, 1.0}};
    sys.y = {1.0, 2.0};
    CHECK_THROWS_AS((void)l1ldp::solve_l1(sys), std::invalid_argument);
}
