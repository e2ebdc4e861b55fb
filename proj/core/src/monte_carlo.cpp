#include "l1ldp/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "l1ldp/rng.hpp"
#include "l1ldp/root_finding.hpp"

namespace l1ldp {

namespace {

// Randomized pre-screen budget for the null-space test: cheap certified
// failures before the decision LP runs.
constexpr std::size_t kPrescreenTrials = 32;

// -log(0.025): one-sided 95% Clopper-Pearson zero-count bound p <= 3.689/N.
constexpr double kZeroCountBound = 3.6888794541139363;

constexpr double kNormal975 = 1.959963984540054;

}  // namespace

const char* to_string(SuccessTest test) {
    return test == SuccessTest::SolveLp ? "solve_lp" : "null_space_condition";
}

SuccessTest success_test_from_string(const std::string& name) {
    if (name == "solve_lp") return SuccessTest::SolveLp;
    if (name == "null_space_condition") return SuccessTest::NullSpaceCondition;
    throw std::invalid_argument(
        "unknown success test '" + name +
        "' (expected solve_lp or null_space_condition)");
}

void validate_config(const ExperimentConfig& config) {
    if (config.n == 0 || config.trials == 0 || config.k > config.m ||
        config.m > config.n) {
        throw std::invalid_argument(
            "ExperimentConfig: need k <= m <= n, n >= 1, trials >= 1");
    }
}

SampledInstance sample_instance(const ExperimentConfig& config, std::size_t trial) {
    validate_config(config);
    const std::size_t n = config.n;
    const std::size_t m = config.m;
    const std::size_t k = config.k;
    const CounterRng rng = CounterRng::for_stream(config.seed, trial);

    SampledInstance inst;
    inst.system.a.rows = m;
    inst.system.a.cols = n;
    inst.system.a.data.resize(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inst.system.a.at(i, j) = rng.gaussian(i * n + j);
        }
    }
    inst.x0.assign(n, 0.0);
    inst.support.reserve(k);
    inst.signs.assign(k, 1);
    for (std::size_t t = 0; t < k; ++t) {
        const std::size_t idx = n - k + t;
        inst.x0[idx] = std::abs(rng.gaussian(m * n + t)) + 0.5;
        inst.support.push_back(idx);
    }
    inst.system.y.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double v = 0.0;
        for (std::size_t idx : inst.support) {
            v += inst.system.a.at(i, idx) * inst.x0[idx];
        }
        inst.system.y[i] = v;
    }
    return inst;
}

TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial) {
    const SampledInstance inst = sample_instance(config, trial);
    if (config.success_test == SuccessTest::NullSpaceCondition) {
        try {
            return null_space_success_check(inst.system.a, inst.support, inst.signs,
                                            config.mode, kPrescreenTrials)
                       ? TrialOutcome::Correct
                       : TrialOutcome::Error;
        } catch (const convergence_error&) {
            return TrialOutcome::Indeterminate;
        }
    }
    // A feasible point strictly cheaper than the planted vector already
    // proves the recovery wrong; let the solver stop there instead of
    // polishing the minimizer of a failed instance.
    double planted_l1 = 0.0;
    for (double v : inst.x0) planted_l1 += std::abs(v);
    const double cutoff = planted_l1 - 1e-6 * (1.0 + planted_l1);
    const RecoveryResult res =
        config.mode == Mode::Signed
            ? solve_l1(inst.system, 1e-9, cutoff)
            : solve_l1_nonneg(inst.system, 1e-9, cutoff);
    if (res.status == LpStatus::CutoffReached) return TrialOutcome::Error;
    if (res.status == LpStatus::IterationLimit) return TrialOutcome::Indeterminate;
    if (res.status != LpStatus::Optimal) return TrialOutcome::Error;
    double scale = 1.0;
    for (double v : inst.x0) scale = std::max(scale, std::abs(v));
    double deviation = 0.0;
    for (std::size_t j = 0; j < config.n; ++j) {
        deviation = std::max(deviation, std::abs(res.x_hat[j] - inst.x0[j]));
    }
    return deviation <= 1e-6 * scale ? TrialOutcome::Correct : TrialOutcome::Error;
}

TrialBatch run_experiment(const ExperimentConfig& config, unsigned threads) {
    validate_config(config);
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, config.trials));

    std::vector<unsigned char> outcomes(config.trials);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    const auto worker = [&]() {
        while (true) {
            const std::size_t t = next.fetch_add(1);
            if (t >= config.trials) return;
            try {
                outcomes[t] = static_cast<unsigned char>(run_trial(config, t));
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                outcomes[t] =
                    static_cast<unsigned char>(TrialOutcome::Indeterminate);
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    TrialBatch batch;
    batch.config = config;
    for (unsigned char o : outcomes) {
        switch (static_cast<TrialOutcome>(o)) {
            case TrialOutcome::Correct: ++batch.corrects; break;
            case TrialOutcome::Error: ++batch.errors; break;
            case TrialOutcome::Indeterminate: ++batch.indeterminate; break;
        }
    }
    return batch;
}

RateEstimate rate_estimate(const TrialBatch& batch) {
    RateEstimate est;
    const double n = static_cast<double>(batch.config.n);
    const std::size_t decided = batch.errors + batch.corrects;
    if (decided == 0) {
        est.ci_half_width = std::numeric_limits<double>::infinity();
        return est;
    }
    const double dn = static_cast<double>(decided);
    if (batch.errors > 0) {
        est.i_err = std::log(static_cast<double>(batch.errors) / dn) / n;
    }
    if (batch.corrects > 0) {
        est.i_cor = std::log(static_cast<double>(batch.corrects) / dn) / n;
    }
    const std::size_t rare = std::min(batch.errors, batch.corrects);
    if (rare == 0) {
        est.ci_half_width = std::abs(std::log(kZeroCountBound / dn)) / n;
    } else {
        const double p = static_cast<double>(rare) / dn;
        est.ci_half_width = kNormal975 * std::sqrt((1.0 - p) / (p * dn)) / n;
    }
    return est;
}

std::vector<TrialBatch> sweep(double beta, const std::vector<double>& alphas,
                              const std::map<double, ScheduleEntry>& n_schedule,
                              std::size_t trials, std::uint64_t seed, Mode mode,
                              SuccessTest success_test, unsigned threads) {
    std::vector<TrialBatch> out;
    out.reserve(alphas.size());
    for (double alpha : alphas) {
        const ScheduleEntry* entry = nullptr;
        for (const auto& [key, value] : n_schedule) {
            if (std::abs(key - alpha) <= 1e-9) {
                entry = &value;
                break;
            }
        }
        if (entry == nullptr) {
            throw std::invalid_argument("sweep: no schedule entry for alpha=" +
                                        std::to_string(alpha));
        }
        const double n = static_cast<double>(entry->n);
        // Published experiment designs round k and m to convenient integers,
        // deviating from exact n*beta / n*alpha by up to half a percent; allow
        // that while still rejecting mis-keyed entries.
        const double round_tol = std::max(0.5 / n, 0.005) + 1e-12;
        const double alpha_gap =
            std::abs(static_cast<double>(entry->m) / n - alpha);
        const double beta_gap = std::abs(static_cast<double>(entry->k) / n - beta);
        if (alpha_gap > round_tol || beta_gap > round_tol) {
            throw std::invalid_argument(
                "sweep: schedule entry for alpha=" + std::to_string(alpha) +
                " is inconsistent with (alpha, beta) beyond rounding");
        }
        ExperimentConfig config;
        config.n = entry->n;
        config.k = entry->k;
        config.m = entry->m;
        config.trials = trials;
        config.seed = seed;
        config.mode = mode;
        config.success_test = success_test;
        out.push_back(run_experiment(config, threads));
    }
    return out;
}

void to_json(nlohmann::json& j, const TrialBatch& batch) {
    const RateEstimate est = rate_estimate(batch);
    j = nlohmann::json{
        {"n", batch.config.n},
        {"k", batch.config.k},
        {"m", batch.config.m},
        {"trials", batch.config.trials},
        {"seed", batch.config.seed},
        {"mode", to_string(batch.config.mode)},
        {"success_test", to_string(batch.config.success_test)},
        {"errors", batch.errors},
        {"corrects", batch.corrects},
        {"indeterminate", batch.indeterminate},
        {"i_err_hat",
         est.i_err ? nlohmann::json(*est.i_err) : nlohmann::json(nullptr)},
        {"i_cor_hat",
         est.i_cor ? nlohmann::json(*est.i_cor) : nlohmann::json(nullptr)},
        {"ci", est.ci_half_width},
    };
}

void from_json(const nlohmann::json& j, TrialBatch& batch) {
    TrialBatch parsed;
    parsed.config.n = j.at("n").get<std::size_t>();
    parsed.config.k = j.at("k").get<std::size_t>();
    parsed.config.m = j.at("m").get<std::size_t>();
    parsed.config.trials = j.at("trials").get<std::size_t>();
    parsed.config.seed = j.at("seed").get<std::uint64_t>();
    parsed.config.mode = mode_from_string(j.at("mode").get<std::string>());
    parsed.config.success_test =
        success_test_from_string(j.at("success_test").get<std::string>());
    parsed.errors = j.at("errors").get<std::size_t>();
    parsed.corrects = j.at("corrects").get<std::size_t>();
    parsed.indeterminate = j.at("indeterminate").get<std::size_t>();
    validate_config(parsed.config);
    if (parsed.errors + parsed.corrects + parsed.indeterminate !=
        parsed.config.trials) {
        throw std::invalid_argument(
            "TrialBatch: errors + corrects + indeterminate must equal trials");
    }
    batch = parsed;
}

}  // namespace l1ldp
