// ptldp: transition curves, rate functions, reference tables, Monte-Carlo
// experiments, and a cross-validation battery for l1 recovery of sparse
// solutions to under-determined Gaussian linear systems.
//
// Exit codes: 0 success, 1 usage error, 2 partial sweep failure,
// 3 indeterminate-trial rate above 1%, 4 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "l1ldp/hdg_core.hpp"
#include "l1ldp/ldp_core.hpp"
#include "l1ldp/monte_carlo.hpp"
#include "l1ldp/pt_core.hpp"
#include "l1ldp/rng.hpp"
#include "l1ldp/special_functions.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitVerifyFailure = 4;

struct OutputSpec {
    std::string format = "csv";  // "csv" or "json"
    std::string path;            // empty means standard output
    int precision = 17;
};

std::string fmt_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

// Destination stream: a file when a path is given, else standard output.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw std::runtime_error("cannot open output file: " + path);
            }
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::vector<double> linspace(double from, double to, int points) {
    std::vector<double> grid;
    grid.reserve(points);
    if (points == 1) {
        grid.push_back(from);
        return grid;
    }
    const double step = (to - from) / (points - 1);
    for (int i = 0; i < points; ++i) grid.push_back(from + i * step);
    return grid;
}

// ---------------------------------------------------------------- pt-curve

int cmd_pt_curve(l1ldp::Mode mode, double from, double to, int points,
                 const OutputSpec& out) {
    const l1ldp::PtCurve curve = l1ldp::pt_curve(mode, linspace(from, to, points));
    Sink sink(out.path);
    if (out.format == "json") {
        json rows = json::array();
        for (const l1ldp::PtCurvePoint& p : curve.points) {
            rows.push_back({{"alpha", p.alpha}, {"beta_w", p.beta_w}});
        }
        sink.out() << rows.dump(2) << '\n';
    } else {
        sink.out() << "alpha,beta_w\n";
        for (const l1ldp::PtCurvePoint& p : curve.points) {
            sink.out() << fmt_double(p.alpha, out.precision) << ','
                       << fmt_double(p.beta_w, out.precision) << '\n';
        }
    }
    for (const auto& [alpha, reason] : curve.failures) {
        std::cerr << "pt-curve: alpha=" << fmt_double(alpha, 6)
                  << " failed: " << reason << '\n';
    }
    return curve.failures.empty() ? kExitOk : kExitPartial;
}

// ---------------------------------------------------------------- ldp-rate

struct RateRowOut {
    double alpha, beta_w, beta_0, nu, a0, c3, gamma, i_ldp, psi_net, diff;
};

int cmd_ldp_rate(l1ldp::Mode mode, double beta, double from, double to,
                 int points, const OutputSpec& out) {
    std::vector<RateRowOut> rows;
    std::vector<std::pair<double, std::string>> failures;
    for (double alpha : linspace(from, to, points)) {
        try {
            const l1ldp::LdpSolution s = l1ldp::optimal_point(alpha, beta, mode);
            const l1ldp::HdgDecomposition h = l1ldp::psi_net(alpha, beta, mode);
            rows.push_back({alpha, s.beta_w, s.beta_0, s.nu, s.a0, s.c3, s.gamma,
                            s.rate, h.psi_net, std::abs(s.rate - h.psi_net)});
        } catch (const std::exception& e) {
            failures.emplace_back(alpha, e.what());
        }
    }
    Sink sink(out.path);
    if (out.format == "json") {
        json jrows = json::array();
        for (const RateRowOut& r : rows) {
            jrows.push_back({{"alpha", r.alpha},
                             {"beta_w", r.beta_w},
                             {"beta_0", r.beta_0},
                             {"nu", r.nu},
                             {"a0", r.a0},
                             {"c3", r.c3},
                             {"gamma", r.gamma},
                             {"I_ldp", r.i_ldp},
                             {"Psi_net", r.psi_net},
                             {"abs_diff", r.diff}});
        }
        sink.out() << jrows.dump(2) << '\n';
    } else {
        sink.out() << "alpha,beta_w,beta_0,nu,a0,c3,gamma,I_ldp,Psi_net,"
                      "|I_ldp-Psi_net|\n";
        for (const RateRowOut& r : rows) {
            sink.out() << fmt_double(r.alpha, out.precision) << ','
                       << fmt_double(r.beta_w, out.precision) << ','
                       << fmt_double(r.beta_0, out.precision) << ','
                       << fmt_double(r.nu, out.precision) << ','
                       << fmt_double(r.a0, out.precision) << ','
                       << fmt_double(r.c3, out.precision) << ','
                       << fmt_double(r.gamma, out.precision) << ','
                       << fmt_double(r.i_ldp, out.precision) << ','
                       << fmt_double(r.psi_net, out.precision) << ','
                       << fmt_double(r.diff, out.precision) << '\n';
        }
    }
    for (const auto& [alpha, reason] : failures) {
        std::cerr << "ldp-rate: alpha=" << fmt_double(alpha, 6)
                  << " failed: " << reason << '\n';
    }
    return failures.empty() ? kExitOk : kExitPartial;
}

// ------------------------------------------------------------------- table

struct ScheduleRow {
    double alpha;
    std::size_t n, k, m;
};

// Experiment designs paired with the two reference tables: one (n, k, m)
// shape per alpha, at beta ~ 0.19284 (signed) and beta ~ 0.27911 (nonneg).
const std::vector<ScheduleRow>& signed_schedule() {
    static const std::vector<ScheduleRow> rows = {
        {0.35, 100, 19, 35},  {0.40, 200, 38, 80},  {0.45, 200, 38, 90},
        {0.50, 300, 57, 150}, {0.55, 300, 57, 165}, {0.60, 200, 38, 120},
        {0.65, 137, 26, 89},
    };
    return rows;
}

const std::vector<ScheduleRow>& nonneg_schedule() {
    static const std::vector<ScheduleRow> rows = {
        {0.40, 125, 35, 50},  {0.45, 200, 56, 90}, {0.50, 300, 84, 150},
        {0.55, 300, 84, 165}, {0.60, 150, 42, 90},
    };
    return rows;
}

constexpr double kSignedBeta = 0.19284;
constexpr double kNonnegBeta = 0.27911;

int emit_theory_table(l1ldp::Mode mode, double beta,
                      const std::vector<double>& alphas, const OutputSpec& out) {
    std::vector<l1ldp::LdpSolution> cols;
    cols.reserve(alphas.size());
    for (double alpha : alphas) cols.push_back(l1ldp::optimal_point(alpha, beta, mode));

    const char* quantity[8] = {"alpha", "beta_w", "beta_0", "nu",
                               "a0",    "c3",     "gamma",  "I_ldp"};
    auto cell = [&](int q, std::size_t j) -> double {
        const l1ldp::LdpSolution& s = cols[j];
        switch (q) {
            case 0: return alphas[j];
            case 1: return s.beta_w;
            case 2: return s.beta_0;
            case 3: return s.nu;
            case 4: return s.a0;
            case 5: return s.c3;
            case 6: return s.gamma;
            default: return s.rate;
        }
    };

    Sink sink(out.path);
    if (out.format == "json") {
        json obj;
        obj["beta"] = beta;
        obj["mode"] = l1ldp::to_string(mode);
        json rows = json::object();
        for (int q = 0; q < 8; ++q) {
            json vals = json::array();
            for (std::size_t j = 0; j < alphas.size(); ++j) vals.push_back(cell(q, j));
            rows[quantity[q]] = vals;
        }
        obj["rows"] = rows;
        sink.out() << obj.dump(2) << '\n';
    } else {
        sink.out() << "quantity";
        for (double alpha : alphas) sink.out() << ',' << fmt_double(alpha, out.precision);
        sink.out() << '\n';
        for (int q = 0; q < 8; ++q) {
            sink.out() << quantity[q];
            for (std::size_t j = 0; j < alphas.size(); ++j) {
                sink.out() << ',' << fmt_double(cell(q, j), out.precision);
            }
            sink.out() << '\n';
        }
    }
    return kExitOk;
}

int emit_schedule(const std::vector<ScheduleRow>& rows, l1ldp::Mode mode,
                  const OutputSpec& out) {
    json configs = json::array();
    for (const ScheduleRow& r : rows) {
        configs.push_back({{"n", r.n},
                           {"k", r.k},
                           {"m", r.m},
                           {"trials", 10000},
                           {"seed", 1},
                           {"mode", l1ldp::to_string(mode)},
                           {"success_test", "solve_lp"}});
    }
    Sink sink(out.path);
    sink.out() << configs.dump(2) << '\n';
    return kExitOk;
}

int cmd_table(const std::string& which, const OutputSpec& out) {
    if (which == "T1") {
        return emit_theory_table(l1ldp::Mode::Signed, kSignedBeta,
                                 {0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65}, out);
    }
    if (which == "T3") {
        return emit_theory_table(l1ldp::Mode::Nonnegative, kNonnegBeta,
                                 {0.40, 0.45, 0.50, 0.55, 0.60}, out);
    }
    if (which == "T2schedule") {
        return emit_schedule(signed_schedule(), l1ldp::Mode::Signed, out);
    }
    return emit_schedule(nonneg_schedule(), l1ldp::Mode::Nonnegative, out);
}

// ---------------------------------------------------------------- simulate

json run_one_experiment(const l1ldp::ExperimentConfig& config, std::size_t threads,
                        int& exit_code) {
    const l1ldp::TrialBatch batch = l1ldp::run_experiment(config, threads);
    json record = batch;

    const double alpha = static_cast<double>(config.m) / config.n;
    const double beta = static_cast<double>(config.k) / config.n;
    json theory;
    theory["alpha"] = alpha;
    theory["beta"] = beta;
    const std::size_t decided = batch.errors + batch.corrects;
    theory["p_err_hat"] =
        decided ? json(static_cast<double>(batch.errors) / decided) : json();
    theory["p_cor_hat"] =
        decided ? json(static_cast<double>(batch.corrects) / decided) : json();
    try {
        const l1ldp::LdpSolution s = l1ldp::optimal_point(alpha, beta, config.mode);
        theory["i_ldp"] = s.rate;
        theory["tail"] = l1ldp::to_string(s.tail);
    } catch (const std::exception& e) {
        theory["i_ldp"] = nullptr;
        theory["tail"] = nullptr;
        std::cerr << "simulate: no theory values at (alpha=" << alpha
                  << ", beta=" << beta << "): " << e.what() << '\n';
    }
    record["theory"] = theory;

    if (batch.indeterminate * 100 > config.trials) {
        std::cerr << "simulate: " << batch.indeterminate << " of " << config.trials
                  << " trials were indeterminate (above the 1% budget)\n";
        exit_code = std::max(exit_code, kExitIndeterminate);
    }
    return record;
}

l1ldp::ExperimentConfig config_from_json(const json& j) {
    l1ldp::ExperimentConfig config;
    config.n = j.at("n").get<std::size_t>();
    config.k = j.at("k").get<std::size_t>();
    config.m = j.at("m").get<std::size_t>();
    config.trials = j.value("trials", std::size_t{10000});
    config.seed = j.value("seed", std::uint64_t{1});
    config.mode = l1ldp::mode_from_string(j.value("mode", std::string("signed")));
    config.success_test =
        l1ldp::success_test_from_string(j.value("success_test", std::string("solve_lp")));
    return config;
}

int cmd_simulate(const std::vector<l1ldp::ExperimentConfig>& configs,
                 std::size_t threads, const OutputSpec& out) {
    int exit_code = kExitOk;
    json result;
    if (configs.size() == 1) {
        result = run_one_experiment(configs[0], threads, exit_code);
    } else {
        result = json::array();
        for (const l1ldp::ExperimentConfig& config : configs) {
            result.push_back(run_one_experiment(config, threads, exit_code));
        }
    }
    Sink sink(out.path);
    sink.out() << result.dump(2) << '\n';
    return exit_code;
}

// ------------------------------------------------------------------ verify

// Adaptive Simpson quadrature with interval-halving error control.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Integral definitions of the closed-form Gaussian moment factors.
struct WQuadrature {
    double w1, w2, w1_plus;
};

// The quadrature tolerance must track each integral's own magnitude (w2 grows
// like e^{(1-a0^2) nu^2 / (2 a0^2)}), so callers pass a rough scale per factor.
WQuadrature w_by_quadrature(double nu, double a0, const l1ldp::WFactors& scale) {
    const double s = 0.5 * (1.0 - a0 * a0);
    auto phi = [](double g) {
        return std::exp(-0.5 * g * g) / std::sqrt(2.0 * M_PI);
    };
    // Integrands decay at least like exp(-a0^2 u^2 / 2) past their peaks; a
    // margin of 12 / a0 puts the truncated tail around e^{-72} of the peak.
    const double margin = 12.0 / std::min(a0, 1.0);
    const double reach = nu + margin;
    auto two_sided = [&](double g) {
        const double excess = std::abs(g) - nu;
        return phi(g) * (excess > 0.0 ? std::exp(s * excess * excess) : 1.0);
    };
    auto one_sided = [&](double g) {
        const double excess = g - nu;
        return phi(g) * (excess > 0.0 ? std::exp(s * excess * excess) : 1.0);
    };
    // w2's integrand peaks at g* = nu (1 - a0^2) / a0^2.
    const double peak = nu * (1.0 - a0 * a0) / (a0 * a0);
    const double reach2 = std::abs(peak) + reach;
    auto shifted = [&](double g) {
        return phi(g) * std::exp(s * (g + nu) * (g + nu));
    };
    WQuadrature q;
    q.w1 = integrate(two_sided, -reach, reach,
                     1e-12 * std::max(1.0, std::abs(scale.w1)));
    q.w1_plus = integrate(one_sided, -reach, reach,
                          1e-12 * std::max(1.0, std::abs(scale.w1_plus)));
    q.w2 = integrate(shifted, -reach2, reach2,
                     1e-12 * std::max(1.0, std::abs(scale.w2)));
    return q;
}

struct VerifyCheck {
    std::string name;
    bool pass = true;
    double worst = 0.0;
    std::string detail;
};

// Deterministic spread of shapes (alpha, beta) valid for the given family,
// covering both tails of the transition.
std::vector<std::pair<double, double>> shape_grid(l1ldp::Mode mode, int points) {
    std::vector<std::pair<double, double>> shapes;
    for (int i = 0; i < points; ++i) {
        const double alpha =
            0.32 + 0.56 * (points == 1 ? 0.5 : static_cast<double>(i) / (points - 1));
        const double frac = std::fmod(0.13 + 0.6180339887498949 * i, 1.0);
        double lo = 0.02, hi = alpha;
        if (mode == l1ldp::Mode::Nonnegative) {
            lo = std::max(2.0 * alpha - 1.0, 0.0) + 0.02;
        }
        const double beta = lo + (0.05 + 0.88 * frac) * (hi - lo);
        shapes.emplace_back(alpha, beta);
    }
    return shapes;
}

int cmd_verify(int grid, bool perturb, const OutputSpec& out) {
    std::vector<VerifyCheck> checks;
    const double nudge = perturb ? 1e-6 : 0.0;

    // 1. Stationarity: the closed-form tuple zeroes the bound gradient.
    {
        VerifyCheck c{"stationarity", true, 0.0, ""};
        for (l1ldp::Mode mode : {l1ldp::Mode::Signed, l1ldp::Mode::Nonnegative}) {
            for (const auto& [alpha, beta] : shape_grid(mode, grid)) {
                const l1ldp::LdpSolution s = l1ldp::optimal_point(alpha, beta, mode);
                const l1ldp::ZetaGradient g = l1ldp::zeta_gradient(
                    alpha, beta, l1ldp::ZetaPoint{s.c3, s.nu, s.a0}, mode);
                const double worst = std::max(
                    {std::abs(g.d_c3), std::abs(g.d_nu), std::abs(g.d_a0)});
                c.worst = std::max(c.worst, worst);
            }
        }
        c.pass = c.worst < 1e-7;
        c.detail = "max |gradient| = " + fmt_double(c.worst, 3);
        checks.push_back(c);
    }

    // 2. Equivalence of the probabilistic rate and the geometric exponent.
    {
        VerifyCheck c{"theory-equivalence", true, 0.0, ""};
        for (l1ldp::Mode mode : {l1ldp::Mode::Signed, l1ldp::Mode::Nonnegative}) {
            for (const auto& [alpha, beta] : shape_grid(mode, grid)) {
                const double rate = l1ldp::rate(alpha, beta, mode);
                const double net = l1ldp::psi_net(alpha, beta, mode).psi_net + nudge;
                c.worst = std::max(c.worst, std::abs(rate - net));
            }
        }
        c.pass = c.worst < 1e-9;
        c.detail = "max |I_ldp - Psi_net| = " + fmt_double(c.worst, 3);
        checks.push_back(c);
    }

    // 3. Closed-form moment factors versus adaptive quadrature.
    {
        VerifyCheck c{"quadrature-vs-closed-form", true, 0.0, ""};
        const l1ldp::CounterRng rng(0x77ULL);
        const int draws = std::max(grid, 8);
        for (int i = 0; i < draws; ++i) {
            const std::uint64_t base = static_cast<std::uint64_t>(i) * 4;
            const double nu = 0.05 + 2.2 * rng.uniform(base);
            const double a0 = (i % 2 == 0) ? 0.30 + 0.65 * rng.uniform(base + 1)
                                           : 1.05 + 0.95 * rng.uniform(base + 1);
            const l1ldp::WFactors closed = l1ldp::w_factors(nu, a0);
            const WQuadrature quad = w_by_quadrature(nu, a0, closed);
            const double gap = std::max(
                {std::abs(closed.w1 - quad.w1) / std::max(1.0, std::abs(quad.w1)),
                 std::abs(closed.w2 - quad.w2) / std::max(1.0, std::abs(quad.w2)),
                 std::abs(closed.w1_plus - quad.w1_plus) /
                     std::max(1.0, std::abs(quad.w1_plus))});
            c.worst = std::max(c.worst, gap);
        }
        c.pass = c.worst < 1e-9;
        c.detail = "max relative gap = " + fmt_double(c.worst, 3);
        checks.push_back(c);
    }

    // 4. Tail sandwiches for the Gaussian Q function and erfc.
    {
        VerifyCheck c{"tail-sandwiches", true, 0.0, ""};
        bool ok = true;
        for (int i = 0; i < 200; ++i) {
            const double x = std::exp(std::log(1e-2) +
                                      (std::log(8.0) - std::log(1e-2)) * i / 199.0);
            const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
            const double q = l1ldp::gaussian_q(x);
            ok = ok && q > x / (1.0 + x * x) * phi && q < phi / x;
            const double y = std::exp(std::log(1e-2) +
                                      (std::log(10.0) - std::log(1e-2)) * i / 199.0);
            const double common = 2.0 / std::sqrt(M_PI) * std::exp(-y * y);
            const double lower = common / (y + std::sqrt(y * y + 2.0));
            const double upper = common / (y + std::sqrt(y * y + 4.0 / M_PI));
            const double e = l1ldp::erfc(y);
            ok = ok && e > lower && e <= upper;
        }
        c.pass = ok;
        c.detail = ok ? "all bounds strict" : "a bound failed";
        checks.push_back(c);
    }

    Sink sink(out.path);
    bool all_pass = true;
    for (const VerifyCheck& c : checks) {
        all_pass = all_pass && c.pass;
        sink.out() << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.detail
                   << ")\n";
    }
    sink.out() << (all_pass ? "verify: all checks passed\n"
                            : "verify: at least one check FAILED\n");
    return all_pass ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Weak-transition curves, large-deviation rates, and recovery "
        "experiments for l1 minimization on random under-determined systems"};
    app.require_subcommand(1);

    // Shared output flags are registered per subcommand so help stays local.
    auto add_output_flags = [](CLI::App* cmd, OutputSpec* spec) {
        cmd->add_option("--out", spec->path, "Write to this file instead of stdout");
        cmd->add_option("--format", spec->format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        cmd->add_option("--precision", spec->precision,
                        "Significant digits for CSV numbers")
            ->check(CLI::Range(4, 17))
            ->capture_default_str();
    };

    auto add_mode_flag = [](CLI::App* cmd, std::string* target) {
        cmd->add_option("--mode", *target, "Problem family")
            ->check(CLI::IsMember({"signed", "nonneg", "nonnegative"}))
            ->capture_default_str();
    };

    // pt-curve ---------------------------------------------------------------
    OutputSpec pt_out;
    std::string pt_mode = "signed";
    double pt_from = 0.05, pt_to = 0.95;
    int pt_points = 19;
    CLI::App* pt = app.add_subcommand(
        "pt-curve", "Weak transition curve beta_w over a grid of alpha");
    add_mode_flag(pt, &pt_mode);
    pt->add_option("--from", pt_from, "Smallest alpha")
        ->check(CLI::Range(1e-6, 1.0 - 1e-6))
        ->capture_default_str();
    pt->add_option("--to", pt_to, "Largest alpha")
        ->check(CLI::Range(1e-6, 1.0 - 1e-6))
        ->capture_default_str();
    pt->add_option("--points", pt_points, "Grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(pt, &pt_out);

    // ldp-rate ---------------------------------------------------------------
    OutputSpec rate_out;
    std::string rate_mode = "signed";
    double rate_beta = 0.0, rate_from = 0.35, rate_to = 0.65;
    int rate_points = 7;
    CLI::App* rate = app.add_subcommand(
        "ldp-rate", "Rate-function table over a grid of alpha at fixed beta");
    add_mode_flag(rate, &rate_mode);
    rate->add_option("--beta", rate_beta, "Sparsity fraction beta = k/n")
        ->required()
        ->check(CLI::Range(1e-6, 1.0 - 1e-6));
    rate->add_option("--from", rate_from, "Smallest alpha")->capture_default_str();
    rate->add_option("--to", rate_to, "Largest alpha")->capture_default_str();
    rate->add_option("--points", rate_points, "Grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(rate, &rate_out);

    // table ------------------------------------------------------------------
    OutputSpec table_out;
    std::string table_which;
    CLI::App* table = app.add_subcommand(
        "table", "Reference tables (T1, T3) and experiment schedules "
                 "(T2schedule, T4schedule)");
    table->add_option("--which", table_which, "Which table to emit")
        ->required()
        ->check(CLI::IsMember({"T1", "T2schedule", "T3", "T4schedule"}));
    add_output_flags(table, &table_out);

    // simulate ---------------------------------------------------------------
    OutputSpec sim_out;
    std::string sim_mode = "signed", sim_test = "solve_lp", sim_config_path;
    std::uint64_t sim_n = 0, sim_k = 0, sim_m = 0, sim_trials = 10000, sim_seed = 1;
    std::size_t sim_threads = 0;
    CLI::App* sim = app.add_subcommand(
        "simulate", "Monte-Carlo recovery experiment at one (n, k, m) shape");
    CLI::Option* opt_n = sim->add_option("--n", sim_n, "Ambient dimension");
    CLI::Option* opt_k = sim->add_option("--k", sim_k, "Planted sparsity");
    CLI::Option* opt_m = sim->add_option("--m", sim_m, "Number of equations");
    sim->add_option("--trials", sim_trials, "Trial count")->capture_default_str();
    sim->add_option("--seed", sim_seed, "Deterministic seed; no wall-clock entropy")
        ->capture_default_str();
    add_mode_flag(sim, &sim_mode);
    sim->add_option("--success-test", sim_test, "Recovery decision backend")
        ->check(CLI::IsMember({"solve_lp", "null_space_condition"}))
        ->capture_default_str();
    sim->add_option("--threads", sim_threads,
                    "Worker threads (0 = hardware concurrency)")
        ->capture_default_str();
    CLI::Option* opt_config =
        sim->add_option("--config", sim_config_path,
                        "JSON config object or array (excludes --n/--k/--m)");
    opt_config->excludes(opt_n)->excludes(opt_k)->excludes(opt_m);
    add_output_flags(sim, &sim_out);

    // verify -----------------------------------------------------------------
    OutputSpec verify_out;
    int verify_grid = 12;
    bool verify_perturb = false;
    CLI::App* verify = app.add_subcommand(
        "verify", "Cross-validation battery: stationarity, rate/exponent "
                  "equivalence, quadrature checks, tail sandwiches");
    verify->add_option("--grid", verify_grid, "Shapes per family")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    verify->add_flag("--self-test-perturb", verify_perturb)->group("");
    add_output_flags(verify, &verify_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (pt->parsed()) {
            if (!(pt_from < pt_to) && pt_points > 1) {
                std::cerr << "pt-curve: --from must be below --to\n";
                return kExitUsage;
            }
            return cmd_pt_curve(l1ldp::mode_from_string(pt_mode), pt_from, pt_to,
                                pt_points, pt_out);
        }
        if (rate->parsed()) {
            if (!(rate_from < rate_to) && rate_points > 1) {
                std::cerr << "ldp-rate: --from must be below --to\n";
                return kExitUsage;
            }
            return cmd_ldp_rate(l1ldp::mode_from_string(rate_mode), rate_beta,
                                rate_from, rate_to, rate_points, rate_out);
        }
        if (table->parsed()) {
            return cmd_table(table_which, table_out);
        }
        if (sim->parsed()) {
            std::vector<l1ldp::ExperimentConfig> configs;
            if (!sim_config_path.empty()) {
                std::ifstream in(sim_config_path);
                if (!in) {
                    std::cerr << "simulate: cannot read " << sim_config_path << '\n';
                    return kExitUsage;
                }
                json doc = json::parse(in);
                if (doc.is_array()) {
                    for (const json& item : doc) configs.push_back(config_from_json(item));
                } else {
                    configs.push_back(config_from_json(doc));
                }
            } else {
                if (opt_n->count() == 0 || opt_k->count() == 0 || opt_m->count() == 0) {
                    std::cerr << "simulate: need --n, --k, --m (or --config)\n";
                    return kExitUsage;
                }
                l1ldp::ExperimentConfig config;
                config.n = sim_n;
                config.k = sim_k;
                config.m = sim_m;
                config.trials = sim_trials;
                config.seed = sim_seed;
                config.mode = l1ldp::mode_from_string(sim_mode);
                config.success_test = l1ldp::success_test_from_string(sim_test);
                configs.push_back(config);
            }
            for (const l1ldp::ExperimentConfig& config : configs) {
                l1ldp::validate_config(config);
            }
            return cmd_simulate(configs, sim_threads, sim_out);
        }
        return cmd_verify(verify_grid, verify_perturb, verify_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
