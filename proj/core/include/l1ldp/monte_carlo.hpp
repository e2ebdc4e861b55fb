// Monte-Carlo estimation of recovery error/success probabilities and their
// exponential rates log(p)/n at finite n, for random Gaussian systems with a
// planted sparse solution.  Fully deterministic for a fixed seed: every trial
// derives its own random stream from (seed, trial) independently of worker
// scheduling.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "l1ldp/l1_solver.hpp"
#include "l1ldp/pt_core.hpp"

namespace l1ldp {

/// How a trial decides recovery success: solve the l1 program and compare
/// against the planted solution, or evaluate the deterministic null-space
/// condition on the sampled matrix.
enum class SuccessTest {
    SolveLp,
    NullSpaceCondition,
};

/// Returns "solve_lp" or "null_space_condition".
const char* to_string(SuccessTest test);

/// Parses the strings produced by to_string; throws std::invalid_argument.
SuccessTest success_test_from_string(const std::string& name);

struct ExperimentConfig {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t m = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    Mode mode = Mode::Signed;
    SuccessTest success_test = SuccessTest::SolveLp;
};

/// Throws std::invalid_argument unless k <= m <= n, n >= 1, trials >= 1.
void validate_config(const ExperimentConfig& config);

/// One sampled problem instance: A has i.i.d. standard normal entries, the
/// planted x0 is supported on the last k coordinates with positive entries
/// |N(0,1)| + 0.5, and y = A*x0.
struct SampledInstance {
    LinearSystem system;
    std::vector<double> x0;
    std::vector<std::size_t> support;  // the last k indices, ascending
    std::vector<int> signs;            // all +1 by construction
};

/// Deterministic function of (config.seed, trial); config.trials is ignored.
SampledInstance sample_instance(const ExperimentConfig& config, std::size_t trial);

enum class TrialOutcome {
    Correct,
    Error,
    Indeterminate,  // solver iteration cap or numerical breakdown
};

/// Runs the configured success test on sample_instance(config, trial).
/// SolveLp: success iff the solve is Optimal and
/// ||x_hat - x0||_inf <= 1e-6 * max(1, ||x0||_inf).
TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial);

struct TrialBatch {
    ExperimentConfig config;
    std::size_t errors = 0;
    std::size_t corrects = 0;
    std::size_t indeterminate = 0;
};

/// Executes config.trials independent trials on a worker pool (threads = 0
/// means hardware concurrency) and tallies outcomes.  Identical config and
/// seed give identical counts regardless of the worker count.
TrialBatch run_experiment(const ExperimentConfig& config, unsigned threads = 0);

/// Empirical rate estimates.  With N = errors + corrects (indeterminate
/// trials excluded from the denominator):
///   i_err = log(errors/N)/n when errors > 0, otherwise absent;
///   i_cor symmetrically.
/// ci_half_width is the 95% binomial half-width of the rarer side propagated
/// through log(.)/n by the delta method; when the rarer count is zero it is
/// instead the one-sided 95% Clopper-Pearson magnitude bound |log(3.689/N)|/n.
struct RateEstimate {
    std::optional<double> i_err;
    std::optional<double> i_cor;
    double ci_half_width = 0.0;
};

RateEstimate rate_estimate(const TrialBatch& batch);

/// Finite-size schedule entry for one grid point.
struct ScheduleEntry {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t m = 0;
};

/// Runs one experiment per alpha using the matching schedule entry (looked up
/// with tolerance 1e-9 on alpha).  Each (n, k, m) must satisfy
/// |m/n - alpha| <= 0.5/n and |k/n - beta| <= 0.5/n (integer rounding).
/// All batches share the seed, so equal-n points reuse common random numbers,
/// which tightens paired comparisons across alphas.
std::vector<TrialBatch> sweep(double beta, const std::vector<double>& alphas,
                              const std::map<double, ScheduleEntry>& n_schedule,
                              std::size_t trials, std::uint64_t seed, Mode mode,
                              SuccessTest success_test = SuccessTest::SolveLp,
                              unsigned threads = 0);

/// Flat JSON record with fields exactly: n, k, m, trials, seed, mode,
/// success_test, errors, corrects, indeterminate, i_err_hat, i_cor_hat, ci.
/// i_err_hat / i_cor_hat are null when undefined.
void to_json(nlohmann::json& j, const TrialBatch& batch);

/// Reads the record back (derived fields are ignored; counts are validated).
void from_json(const nlohmann::json& j, TrialBatch& batch);

}  // namespace l1ldp
