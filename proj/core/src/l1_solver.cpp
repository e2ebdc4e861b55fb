#include "l1ldp/l1_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "l1ldp/rng.hpp"
#include "l1ldp/root_finding.hpp"

namespace l1ldp {

namespace {

constexpr double kEnteringTol = 1e-9;    // reduced cost must beat this to enter
constexpr double kRatioPivotTol = 1e-9;  // minimum direction entry in the ratio test
constexpr double kHarrisDelta = 1e-9;    // bounded infeasibility window in the ratio test
constexpr double kDegenerateStep = 1e-10;  // steps below this count as degenerate
constexpr int kBlandTrigger = 200;  // degenerate pivots in a row before Bland's rule
constexpr int kRefactorInterval = 64;
constexpr std::size_t kPricingWindow = 64;  // minimum entries per partial-pricing scan
constexpr int kStallWindow = 300;    // pivots per stall-detection window
constexpr double kPerturbScale = 1e-9;  // anti-degeneracy bound-shift magnitude

/// Standard-form simplex state: min c'z s.t. E z = b, z >= 0 with b >= 0,
/// artificial variables indexed nc..nc+r-1 (implicit unit columns).
class Simplex {
  public:
    Simplex(std::vector<double> cols, std::size_t rows, std::size_t num_cols,
            std::vector<double> cost, std::vector<double> rhs, double cutoff)
        : r_(rows),
          nc_(num_cols),
          cutoff_(cutoff),
          e_(std::move(cols)),
          c_(std::move(cost)),
          b_(std::move(rhs)),
          basis_(rows),
          in_basis_(num_cols + rows, 0),
          binv_(rows * rows, 0.0),
          xb_(b_),
          max_iterations_(50 * static_cast<int>(rows + num_cols)) {
        for (std::size_t i = 0; i < r_; ++i) {
            basis_[i] = nc_ + i;
            in_basis_[nc_ + i] = 1;
            binv_[i * r_ + i] = 1.0;
        }
        detect_negated_pairs();
    }

    LpStatus run(double feas_tol) {
        phase_one_ = true;
        LpStatus status = iterate();
        if (status != LpStatus::Optimal) {
            // Phase 1 minimizes a sum of nonnegative variables, so a ray of
            // unbounded descent cannot exist; an Unbounded verdict here is a
            // numerical breakdown and the instance is reported infeasible.
            return status == LpStatus::Unbounded ? LpStatus::Infeasible : status;
        }
        double infeasibility = 0.0;
        for (std::size_t i = 0; i < r_; ++i) {
            if (basis_[i] >= nc_) infeasibility += std::max(xb_[i], 0.0);
        }
        double b_scale = 0.0;
        for (double v : b_) b_scale += std::abs(v);
        if (infeasibility > feas_tol * (1.0 + b_scale)) return LpStatus::Infeasible;
        drive_out_artificials();
        phase_one_ = false;
        y_valid_ = false;  // the objective changes at the phase switch
        objective_estimate_ = 0.0;
        window_descent_ = 0.0;
        window_count_ = 0;
        full_pricing_ = false;
        status = iterate();
        if (status == LpStatus::Optimal) refactorize();
        return status;
    }

    std::vector<double> solution() const {
        std::vector<double> z(nc_, 0.0);
        for (std::size_t i = 0; i < r_; ++i) {
            if (basis_[i] < nc_) z[basis_[i]] = std::max(xb_[i], 0.0);
        }
        return z;
    }

    double objective() const {
        double obj = 0.0;
        for (std::size_t i = 0; i < r_; ++i) {
            if (basis_[i] < nc_) obj += c_[basis_[i]] * xb_[i];
        }
        return obj;
    }

    int iterations() const { return iterations_; }

    /// Dual feasibility: minimum reduced cost over all non-artificial columns.
    double min_reduced_cost() const {
        std::vector<double> y = dual_prices();
        double lowest = 0.0;
        for (std::size_t j = 0; j < nc_; ++j) {
            lowest = std::min(lowest, reduced_cost(j, y));
        }
        return lowest;
    }

    /// Complementary slackness: max |z_j * reduced_cost_j| (nonbasic z_j = 0).
    double max_comp_slack() const {
        std::vector<double> y = dual_prices();
        double worst = 0.0;
        for (std::size_t i = 0; i < r_; ++i) {
            if (basis_[i] < nc_) {
                worst = std::max(worst,
                                 std::abs(xb_[i] * reduced_cost(basis_[i], y)));
            }
        }
        return worst;
    }

    double max_primal_residual() const {
        std::vector<double> res = b_;
        for (std::size_t i = 0; i < r_; ++i) {
            const double v = xb_[i];
            if (basis_[i] < nc_) {
                const double* col = &e_[basis_[i] * r_];
                for (std::size_t kk = 0; kk < r_; ++kk) res[kk] -= v * col[kk];
            } else {
                res[basis_[i] - nc_] -= v;
            }
        }
        double worst = 0.0;
        for (double v : res) worst = std::max(worst, std::abs(v));
        return worst;
    }

  private:
    double effective_cost(std::size_t j) const {
        if (phase_one_) return j < nc_ ? 0.0 : 1.0;
        return j < nc_ ? c_[j] : 0.0;
    }

    /// y = cost_basis' * binv (a row vector indexed by constraint row).
    std::vector<double> dual_prices() const {
        std::vector<double> y(r_, 0.0);
        for (std::size_t i = 0; i < r_; ++i) {
            const double cb = effective_cost(basis_[i]);
            if (cb == 0.0) continue;
            const double* row = &binv_[i * r_];
            for (std::size_t kk = 0; kk < r_; ++kk) y[kk] += cb * row[kk];
        }
        return y;
    }

    double reduced_cost(std::size_t j, const std::vector<double>& y) const {
        const double* col = &e_[j * r_];
        double dot = 0.0;
        for (std::size_t kk = 0; kk < r_; ++kk) dot += y[kk] * col[kk];
        return effective_cost(j) - dot;
    }

    /// binv * column j of the extended matrix.
    std::vector<double> apply_binv(std::size_t j) const {
        std::vector<double> u(r_, 0.0);
        if (j < nc_) {
            const double* col = &e_[j * r_];
            for (std::size_t i = 0; i < r_; ++i) {
                const double* row = &binv_[i * r_];
                double dot = 0.0;
                for (std::size_t kk = 0; kk < r_; ++kk) dot += row[kk] * col[kk];
                u[i] = dot;
            }
        } else {
            const std::size_t kk = j - nc_;
            for (std::size_t i = 0; i < r_; ++i) u[i] = binv_[i * r_ + kk];
        }
        return u;
    }

    LpStatus iterate() {
        while (true) {
            if (iterations_ >= max_iterations_) return LpStatus::IterationLimit;
            if (pivots_since_refactor_ >= kRefactorInterval) {
                if (!refactorize()) return LpStatus::IterationLimit;
            }
            if (!phase_one_ && std::isfinite(cutoff_) && objective() < cutoff_) {
                // Confirm against an exactly rebuilt basic point -- shifts
                // dropped -- before declaring the bound beaten.
                perturbed_ = false;
                if (!refactorize()) return LpStatus::IterationLimit;
                if (objective() < cutoff_) return LpStatus::CutoffReached;
            }
            if (!y_valid_) {
                y_ = dual_prices();
                y_valid_ = true;
            }
            std::size_t enter = nc_;
            double d_enter = 0.0;
            if (use_bland_) {
                for (std::size_t j = 0; j < nc_; ++j) {
                    if (in_basis_[j]) continue;
                    const double d = reduced_cost(j, y_);
                    if (d < -kEnteringTol) {
                        enter = j;
                        d_enter = d;
                        break;
                    }
                }
            } else {
                enter = price_partial(d_enter);
            }
            if (enter == nc_) {
                if (perturbed_) {
                    // Optimal for the shifted bounds only.  Drop the shifts,
                    // rebuild the true basic point, and keep iterating so the
                    // final claim is about the original problem.
                    perturbed_ = false;
                    if (!refactorize()) return LpStatus::IterationLimit;
                    continue;
                }
                return LpStatus::Optimal;
            }

            const std::vector<double> u = apply_binv(enter);
            std::size_t leave = r_;
            if (use_bland_) {
                double theta = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < r_; ++i) {
                    if (u[i] <= kRatioPivotTol) continue;
                    const double t = std::max(xb_[i], 0.0) / u[i];
                    if (leave == r_ || t < theta - kDegenerateStep * (1.0 + theta)) {
                        theta = t;
                        leave = i;
                    } else if (t <= theta + kDegenerateStep * (1.0 + theta) &&
                               basis_[i] < basis_[leave]) {
                        leave = i;  // ties go to the lowest variable index
                    }
                }
            } else {
                // Harris two-pass ratio test.  Pass 1 finds the smallest ratio
                // with the basic values relaxed by kHarrisDelta; pass 2 picks,
                // among rows whose true ratio fits under that bound, the one
                // with the largest direction entry.  Rows passed over go
                // negative by at most kHarrisDelta, which the periodic
                // refactorization cleans up; the payoff is a well-conditioned
                // pivot and far fewer degenerate stalls than an index rule.
                // While anti-degeneracy shifts are active the ratios are kept
                // exact: the shifts already separate the ties the relaxation
                // exists to smooth over.
                const double relax = perturbed_ ? 0.0 : kHarrisDelta;
                double theta_rel = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < r_; ++i) {
                    if (u[i] <= kRatioPivotTol) continue;
                    const double t = (std::max(xb_[i], 0.0) + relax) / u[i];
                    theta_rel = std::min(theta_rel, t);
                }
                double best_piv = 0.0;
                for (std::size_t i = 0; i < r_; ++i) {
                    if (u[i] <= kRatioPivotTol || u[i] <= best_piv) continue;
                    if (std::max(xb_[i], 0.0) / u[i] <= theta_rel) {
                        best_piv = u[i];
                        leave = i;
                    }
                }
            }
            if (leave == r_) return LpStatus::Unbounded;
            pivot(enter, leave, u, std::max(xb_[leave], 0.0) / u[leave], d_enter);
        }
    }

    void pivot(std::size_t enter, std::size_t leave, const std::vector<double>& u,
               double theta, double d_enter) {
        for (std::size_t i = 0; i < r_; ++i) {
            xb_[i] -= theta * u[i];
            if (xb_[i] < 0.0 && xb_[i] > -2.0 * kHarrisDelta) xb_[i] = 0.0;
        }
        xb_[leave] = theta;

        const double piv = u[leave];
        double* lrow = &binv_[leave * r_];
        for (std::size_t kk = 0; kk < r_; ++kk) lrow[kk] /= piv;
        for (std::size_t i = 0; i < r_; ++i) {
            if (i == leave || u[i] == 0.0) continue;
            const double f = u[i];
            double* row = &binv_[i * r_];
            for (std::size_t kk = 0; kk < r_; ++kk) row[kk] -= f * lrow[kk];
        }

        in_basis_[basis_[leave]] = 0;
        in_basis_[enter] = 1;
        basis_[leave] = enter;

        // Dual-price update: with R'_r the updated pivot row of the inverse,
        // y_new = y_old + d_enter * R'_r (exact; re-derived at refactorization).
        if (!std::isfinite(d_enter)) {
            y_valid_ = false;
        } else if (y_valid_) {
            const double* row = &binv_[leave * r_];
            for (std::size_t kk = 0; kk < r_; ++kk) y_[kk] += d_enter * row[kk];
        }

        ++iterations_;
        ++pivots_since_refactor_;
        if (theta < kDegenerateStep) {
            if (++degenerate_streak_ > kBlandTrigger) use_bland_ = true;
        } else {
            degenerate_streak_ = 0;
        }
        // Anti-stall escalation.  A stalled solve makes negligible objective
        // progress over hundreds of pivots (mostly-degenerate runs with the
        // odd tiny step, so a consecutive-streak test misses it).  When a
        // whole window of pivots descends by less than a relative epsilon,
        // escalate: widen to full-ring pricing, then apply anti-degeneracy
        // bound shifts (every step strictly improves the shifted objective,
        // so the walk cannot revisit a basis), and as a last resort switch
        // to Bland's rule under the global iteration cap.
        if (std::isfinite(d_enter)) {
            objective_estimate_ += theta * d_enter;
            window_descent_ += theta * d_enter;
        }
        if (++window_count_ >= kStallWindow) {
            if (window_descent_ > -1e-9 * (1.0 + std::abs(objective_estimate_))) {
                if (!full_pricing_) {
                    full_pricing_ = true;
                } else if (!perturbed_) {
                    perturbed_ = true;
                    apply_shifts();
                } else {
                    use_bland_ = true;
                }
            }
            window_descent_ = 0.0;
            window_count_ = 0;
        }
    }

    /// Anti-degeneracy bound shift: nudges every near-zero basic value to a
    /// distinct strictly positive level so ratio tests stop tying and every
    /// pivot makes real progress.  The shift pattern is deterministic
    /// (golden-ratio spaced), re-applied whenever the inverse is rebuilt,
    /// and dropped -- with a clean rebuild from the original right-hand
    /// side -- before any claim about the problem is returned.
    void apply_shifts() {
        for (std::size_t i = 0; i < r_; ++i) {
            if (xb_[i] < kPerturbScale) {
                const double g = static_cast<double>(i + 1) * 0.6180339887498949;
                xb_[i] = std::max(xb_[i], 0.0) +
                         kPerturbScale * (0.5 + 0.5 * (g - std::floor(g)));
            }
        }
    }

    /// Records exact negated-duplicate column pairs (sign-split variables and
    /// +/- mirrored blocks), letting the pricing loop serve both columns of a
    /// pair with one dot product.  Columns are bucketed by the bit pattern of
    /// their first nonzero magnitude, then candidates verified entrywise.
    void detect_negated_pairs() {
        partner_.assign(nc_, nc_);
        std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
        buckets.reserve(nc_ * 2);
        for (std::size_t j = 0; j < nc_; ++j) {
            const double* col = &e_[j * r_];
            std::size_t fi = r_;
            for (std::size_t i = 0; i < r_; ++i) {
                if (col[i] != 0.0) {
                    fi = i;
                    break;
                }
            }
            if (fi == r_) continue;  // zero column: nothing to pair
            const std::uint64_t key =
                std::bit_cast<std::uint64_t>(std::abs(col[fi])) ^ (fi * 0x9e3779b97f4a7c15ULL);
            std::vector<std::size_t>& bucket = buckets[key];
            for (std::size_t other : bucket) {
                if (partner_[other] != nc_) continue;
                const double* oc = &e_[other * r_];
                bool negated = true;
                for (std::size_t i = 0; i < r_ && negated; ++i) {
                    negated = col[i] == -oc[i];
                }
                if (negated) {
                    partner_[other] = j;
                    partner_[j] = other;
                    break;
                }
            }
            if (partner_[j] == nc_) bucket.push_back(j);
        }
        scan_order_.clear();
        scan_order_.reserve(nc_);
        for (std::size_t j = 0; j < nc_; ++j) {
            if (partner_[j] == nc_ || partner_[j] > j) scan_order_.push_back(j);
        }
    }

    /// Rotating partial pricing (Dantzig within the window).  Scans at least
    /// kPricingWindow ring entries collecting the most negative reduced cost,
    /// then keeps scanning only until an improving column is seen; returning
    /// nc_ therefore certifies a full improving-free sweep, i.e. optimality.
    std::size_t price_partial(double& d_enter) {
        const std::size_t len = scan_order_.size();
        const std::size_t window =
            full_pricing_ ? len : std::max(kPricingWindow, len / 8);
        std::size_t best = nc_;
        double best_d = -kEnteringTol;
        for (std::size_t examined = 0; examined < len;) {
            const std::size_t j = scan_order_[cursor_];
            cursor_ = cursor_ + 1 == len ? 0 : cursor_ + 1;
            ++examined;
            const std::size_t j2 = partner_[j];
            const bool need_j = !in_basis_[j];
            const bool need_j2 = j2 != nc_ && !in_basis_[j2];
            if (need_j || need_j2) {
                const double* col = &e_[j * r_];
                double dot = 0.0;
                for (std::size_t kk = 0; kk < r_; ++kk) dot += y_[kk] * col[kk];
                if (need_j) {
                    const double d = effective_cost(j) - dot;
                    if (d < best_d) {
                        best_d = d;
                        best = j;
                    }
                }
                if (need_j2) {
                    const double d = effective_cost(j2) + dot;
                    if (d < best_d) {
                        best_d = d;
                        best = j2;
                    }
                }
            }
            if (examined >= window && best != nc_) break;
        }
        d_enter = best_d;
        return best;
    }

    /// Replaces basic artificials with real columns via degenerate pivots;
    /// rows where no real column has a nonzero transformed entry are
    /// redundant and keep their (zero-valued) artificial.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < r_; ++i) {
            if (basis_[i] < nc_) continue;
            const double* row = &binv_[i * r_];
            std::size_t enter = nc_;
            for (std::size_t j = 0; j < nc_ && enter == nc_; ++j) {
                if (in_basis_[j]) continue;
                const double* col = &e_[j * r_];
                double v = 0.0;
                for (std::size_t kk = 0; kk < r_; ++kk) v += row[kk] * col[kk];
                if (std::abs(v) > 1e-7) enter = j;
            }
            if (enter == nc_) continue;
            const std::vector<double> u = apply_binv(enter);
            pivot(enter, i, u, std::max(xb_[i], 0.0) / u[i],
                  std::numeric_limits<double>::quiet_NaN());
        }
    }

    /// Rebuilds the explicit basis inverse by Gauss-Jordan elimination with
    /// partial pivoting and recomputes the basic solution from scratch.
    bool refactorize() {
        std::vector<double> m(r_ * r_, 0.0);  // basis matrix, row-major
        for (std::size_t i = 0; i < r_; ++i) {
            if (basis_[i] < nc_) {
                const double* col = &e_[basis_[i] * r_];
                for (std::size_t kk = 0; kk < r_; ++kk) m[kk * r_ + i] = col[kk];
            } else {
                m[(basis_[i] - nc_) * r_ + i] = 1.0;
            }
        }
        std::vector<double> inv(r_ * r_, 0.0);
        for (std::size_t i = 0; i < r_; ++i) inv[i * r_ + i] = 1.0;
        for (std::size_t col = 0; col < r_; ++col) {
            std::size_t piv = col;
            for (std::size_t i = col + 1; i < r_; ++i) {
                if (std::abs(m[i * r_ + col]) > std::abs(m[piv * r_ + col])) piv = i;
            }
            if (std::abs(m[piv * r_ + col]) < 1e-12) return false;
            if (piv != col) {
                for (std::size_t kk = 0; kk < r_; ++kk) {
                    std::swap(m[piv * r_ + kk], m[col * r_ + kk]);
                    std::swap(inv[piv * r_ + kk], inv[col * r_ + kk]);
                }
            }
            const double d = m[col * r_ + col];
            for (std::size_t kk = 0; kk < r_; ++kk) {
                m[col * r_ + kk] /= d;
                inv[col * r_ + kk] /= d;
            }
            for (std::size_t i = 0; i < r_; ++i) {
                if (i == col) continue;
                const double f = m[i * r_ + col];
                if (f == 0.0) continue;
                for (std::size_t kk = 0; kk < r_; ++kk) {
                    m[i * r_ + kk] -= f * m[col * r_ + kk];
                    inv[i * r_ + kk] -= f * inv[col * r_ + kk];
                }
            }
        }
        binv_ = std::move(inv);
        for (std::size_t i = 0; i < r_; ++i) {
            double v = 0.0;
            for (std::size_t kk = 0; kk < r_; ++kk) v += binv_[i * r_ + kk] * b_[kk];
            xb_[i] = (v < 0.0 && v > -1e-9) ? 0.0 : v;
        }
        pivots_since_refactor_ = 0;
        y_valid_ = false;
        if (perturbed_) apply_shifts();
        return true;
    }

    std::size_t r_;
    std::size_t nc_;
    double cutoff_;  // early-exit bound on the phase-2 objective
    std::vector<double> e_;  // col-major, real columns only
    std::vector<double> c_;
    std::vector<double> b_;
    std::vector<std::size_t> basis_;
    std::vector<char> in_basis_;
    std::vector<double> binv_;  // row-major r x r
    std::vector<double> xb_;
    std::vector<double> y_;               // dual prices, valid iff y_valid_
    std::vector<std::size_t> partner_;    // exact negated duplicate, or nc_
    std::vector<std::size_t> scan_order_; // pricing ring: one entry per pair
    std::size_t cursor_ = 0;
    bool y_valid_ = false;
    bool full_pricing_ = false;
    bool perturbed_ = false;  // anti-degeneracy shifts currently applied
    double objective_estimate_ = 0.0;
    double window_descent_ = 0.0;
    int window_count_ = 0;
    int max_iterations_;
    int iterations_ = 0;
    int pivots_since_refactor_ = 0;
    int degenerate_streak_ = 0;
    bool use_bland_ = false;
    bool phase_one_ = true;
};

void validate_matrix(const DenseMatrix& a, const char* what) {
    if (a.rows == 0 || a.cols == 0) {
        throw std::invalid_argument(std::string(what) + ": matrix must be non-empty");
    }
    if (a.data.size() != a.rows * a.cols) {
        throw std::invalid_argument(std::string(what) +
                                    ": data size does not match rows*cols");
    }
    for (double v : a.data) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(what) +
                                        ": matrix entries must be finite");
        }
    }
}

void validate_system(const LinearSystem& sys) {
    validate_matrix(sys.a, "LinearSystem");
    if (sys.y.size() != sys.a.rows) {
        throw std::invalid_argument("LinearSystem: rhs length must equal rows");
    }
    if (sys.a.rows > sys.a.cols) {
        throw std::invalid_argument("LinearSystem: expected m <= n (rows <= cols)");
    }
    for (double v : sys.y) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("LinearSystem: rhs entries must be finite");
        }
    }
}

/// In-place lower Cholesky of an SPD matrix; returns false if a pivot fails.
bool cholesky(std::vector<double>& m, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = m[j * n + j];
        for (std::size_t kk = 0; kk < j; ++kk) d -= m[j * n + kk] * m[j * n + kk];
        if (d <= 0.0) return false;
        const double root = std::sqrt(d);
        m[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = m[i * n + j];
            for (std::size_t kk = 0; kk < j; ++kk) {
                v -= m[i * n + kk] * m[j * n + kk];
            }
            m[i * n + j] = v / root;
        }
    }
    return true;
}

void cholesky_solve(const std::vector<double>& l, std::size_t n,
                    std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) {
        double v = x[i];
        for (std::size_t kk = 0; kk < i; ++kk) v -= l[i * n + kk] * x[kk];
        x[i] = v / l[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double v = x[ii];
        for (std::size_t kk = ii + 1; kk < n; ++kk) v -= l[kk * n + ii] * x[kk];
        x[ii] = v / l[ii * n + ii];
    }
}

RecoveryResult recovery_from_lp(const LpResult& lp, std::size_t n, bool split) {
    RecoveryResult out;
    out.status = lp.status;
    if (lp.status != LpStatus::Optimal && lp.status != LpStatus::CutoffReached) {
        return out;
    }
    out.x_hat.resize(n);
    double l1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out.x_hat[j] = split ? lp.z[j] - lp.z[n + j] : lp.z[j];
        l1 += std::abs(out.x_hat[j]);
    }
    out.objective = l1;
    return out;
}

}  // namespace

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration_limit";
        case LpStatus::CutoffReached: return "cutoff_reached";
    }
    return "unknown";
}

bool has_full_row_rank(const DenseMatrix& a, double tol) {
    validate_matrix(a, "has_full_row_rank");
    if (a.rows > a.cols) return false;
    std::vector<double> m = a.data;
    double scale = 0.0;
    for (double v : m) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return false;
    const double thresh = tol * scale;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols && rank < a.rows; ++col) {
        std::size_t piv = rank;
        for (std::size_t i = rank + 1; i < a.rows; ++i) {
            if (std::abs(m[i * a.cols + col]) > std::abs(m[piv * a.cols + col])) {
                piv = i;
            }
        }
        if (std::abs(m[piv * a.cols + col]) <= thresh) continue;
        if (piv != rank) {
            for (std::size_t kk = col; kk < a.cols; ++kk) {
                std::swap(m[piv * a.cols + kk], m[rank * a.cols + kk]);
            }
        }
        for (std::size_t i = rank + 1; i < a.rows; ++i) {
            const double f = m[i * a.cols + col] / m[rank * a.cols + col];
            if (f == 0.0) continue;
            for (std::size_t kk = col; kk < a.cols; ++kk) {
                m[i * a.cols + kk] -= f * m[rank * a.cols + kk];
            }
        }
        ++rank;
    }
    return rank == a.rows;
}

LpResult solve_lp(const LpProblem& problem, double feas_tol) {
    validate_matrix(problem.eq_matrix, "LpProblem");
    const std::size_t rows = problem.eq_matrix.rows;
    const std::size_t cols = problem.eq_matrix.cols;
    if (problem.cost.size() != cols) {
        throw std::invalid_argument("LpProblem: cost length must equal columns");
    }
    if (problem.eq_rhs.size() != rows) {
        throw std::invalid_argument("LpProblem: rhs length must equal rows");
    }
    const bool has_bounds = !problem.lower_bounds.empty();
    if (has_bounds && problem.lower_bounds.size() != cols) {
        throw std::invalid_argument(
            "LpProblem: lower_bounds must be empty or one per column");
    }
    std::vector<char> is_free(cols, 0);
    if (has_bounds) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double lb = problem.lower_bounds[j];
            if (lb == 0.0) continue;
            if (std::isinf(lb) && lb < 0.0) {
                is_free[j] = 1;
            } else {
                throw std::invalid_argument(
                    "LpProblem: lower bounds must be 0 or -infinity");
            }
        }
    }

    // Standard form: flip rows so the rhs is nonnegative, split free
    // variables as z = z+ - z- (negative parts appended after the primary
    // columns, in column order).
    std::vector<double> sign(rows, 1.0);
    std::vector<double> rhs(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        sign[i] = problem.eq_rhs[i] < 0.0 ? -1.0 : 1.0;
        rhs[i] = sign[i] * problem.eq_rhs[i];
    }
    std::size_t num_free = 0;
    for (std::size_t j = 0; j < cols; ++j) num_free += is_free[j];
    const std::size_t nc = cols + num_free;
    std::vector<double> e(nc * rows, 0.0);
    std::vector<double> cost(nc, 0.0);
    std::vector<std::size_t> split_pos(cols, 0);
    for (std::size_t j = 0; j < cols; ++j) {
        cost[j] = problem.cost[j];
        for (std::size_t i = 0; i < rows; ++i) {
            e[j * rows + i] = sign[i] * problem.eq_matrix.at(i, j);
        }
    }
    std::size_t next = cols;
    for (std::size_t j = 0; j < cols; ++j) {
        if (!is_free[j]) continue;
        split_pos[j] = next;
        cost[next] = -problem.cost[j];
        for (std::size_t i = 0; i < rows; ++i) {
            e[next * rows + i] = -e[j * rows + i];
        }
        ++next;
    }

    Simplex simplex(std::move(e), rows, nc, std::move(cost), std::move(rhs),
                    problem.objective_cutoff);
    LpResult out;
    out.status = simplex.run(feas_tol);
    out.iterations = simplex.iterations();
    if (out.status != LpStatus::Optimal && out.status != LpStatus::CutoffReached) {
        return out;
    }

    const std::vector<double> z_std = simplex.solution();
    out.z.resize(cols);
    double obj = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
        out.z[j] = z_std[j] - (is_free[j] ? z_std[split_pos[j]] : 0.0);
        obj += problem.cost[j] * out.z[j];
    }
    out.objective = obj;
    if (out.status == LpStatus::Optimal) {
        out.min_reduced_cost = simplex.min_reduced_cost();
        out.max_comp_slack = simplex.max_comp_slack();
        out.max_primal_residual = simplex.max_primal_residual();
    }
    return out;
}

LpResult recovery_lp(const LinearSystem& sys, Mode mode, double feas_tol,
                     double objective_cutoff) {
    validate_system(sys);
    LpProblem lp;
    lp.objective_cutoff = objective_cutoff;
    if (mode == Mode::Signed) {
        const std::size_t m = sys.a.rows;
        const std::size_t n = sys.a.cols;
        lp.cost.assign(2 * n, 1.0);
        lp.eq_matrix.rows = m;
        lp.eq_matrix.cols = 2 * n;
        lp.eq_matrix.data.resize(m * 2 * n);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double v = sys.a.at(i, j);
                lp.eq_matrix.at(i, j) = v;
                lp.eq_matrix.at(i, n + j) = -v;
            }
        }
    } else {
        lp.cost.assign(sys.a.cols, 1.0);
        lp.eq_matrix = sys.a;
    }
    lp.eq_rhs = sys.y;
    return solve_lp(lp, feas_tol);
}

RecoveryResult solve_l1(const LinearSystem& sys, double feas_tol,
                        double objective_cutoff) {
    return recovery_from_lp(
        recovery_lp(sys, Mode::Signed, feas_tol, objective_cutoff), sys.a.cols,
        /*split=*/true);
}

RecoveryResult solve_l1_nonneg(const LinearSystem& sys, double feas_tol,
                               double objective_cutoff) {
    return recovery_from_lp(
        recovery_lp(sys, Mode::Nonnegative, feas_tol, objective_cutoff),
        sys.a.cols, /*split=*/false);
}

namespace {

/// Randomized failure screen for the signed condition: projects Gaussian
/// vectors onto the null space of A and looks for a direction that already
/// violates the inequality, which settles the verdict without an LP solve.
bool prescreen_finds_violation(const DenseMatrix& a,
                               const std::vector<char>& on_support,
                               const std::vector<double>& sign_of,
                               std::size_t trials) {
    const std::size_t m = a.rows;
    const std::size_t n = a.cols;
    std::vector<double> gram(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double v = 0.0;
            for (std::size_t kk = 0; kk < n; ++kk) {
                v += a.at(i, kk) * a.at(j, kk);
            }
            gram[i * m + j] = v;
            gram[j * m + i] = v;
        }
    }
    if (!cholesky(gram, m)) return false;  // rank-deficient: let the LP decide

    const CounterRng rng(0x6c316c6470323536ULL);
    std::vector<double> g(n), h(m), w(n);
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = rng.gaussian(t * n + i);
        }
        for (std::size_t i = 0; i < m; ++i) {
            double v = 0.0;
            for (std::size_t kk = 0; kk < n; ++kk) v += a.at(i, kk) * g[kk];
            h[i] = v;
        }
        cholesky_solve(gram, m, h);
        double support_term = 0.0;
        double off_term = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = g[i];
            for (std::size_t kk = 0; kk < m; ++kk) v -= a.at(kk, i) * h[kk];
            w[i] = v;
            if (on_support[i]) {
                support_term += sign_of[i] * v;
            } else {
                off_term += std::abs(v);
            }
        }
        // The condition must hold for both w and -w.
        if (std::abs(support_term) - off_term > 1e-9 * std::max(1.0, off_term)) {
            return true;
        }
    }
    return false;
}

}  // namespace

bool null_space_success_check(const DenseMatrix& a,
                              const std::vector<std::size_t>& support,
                              const std::vector<int>& signs, Mode mode,
                              std::size_t trials) {
    validate_matrix(a, "null_space_success_check");
    const std::size_t m = a.rows;
    const std::size_t n = a.cols;
    if (m > n) {
        throw std::invalid_argument(
            "null_space_success_check: expected m <= n (rows <= cols)");
    }
    const std::size_t k = support.size();
    std::vector<char> on_support(n, 0);
    for (std::size_t idx : support) {
        if (idx >= n) {
            throw std::invalid_argument(
                "null_space_success_check: support index out of range");
        }
        if (on_support[idx]) {
            throw std::invalid_argument(
                "null_space_success_check: duplicate support index");
        }
        on_support[idx] = 1;
    }
    std::vector<double> sign_of(n, 1.0);
    if (mode == Mode::Signed) {
        if (signs.size() != k) {
            throw std::invalid_argument(
                "null_space_success_check: one sign per support index required");
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (signs[i] != 1 && signs[i] != -1) {
                throw std::invalid_argument(
                    "null_space_success_check: signs must be +1 or -1");
            }
            sign_of[support[i]] = static_cast<double>(signs[i]);
        }
    }
    if (m == n || k == 0) return true;

    if (mode == Mode::Signed && trials > 0 &&
        prescreen_finds_violation(a, on_support, sign_of, trials)) {
        return false;
    }

    // Decision LP over the null space of A, normalized so the off-support
    // mass is at most 1 (slack variable t).  Variable layout, signed mode:
    // w_i = g_i - h_i off support (columns j and (n-k)+j), free f_i on the
    // support, then t.  Nonnegative mode: w_i >= 0 off support directly.
    const std::size_t num_off = n - k;
    const bool is_signed = mode == Mode::Signed;
    const std::size_t cols = (is_signed ? 2 * num_off : num_off) + k + 1;
    LpProblem lp;
    lp.cost.assign(cols, 0.0);
    lp.lower_bounds.assign(cols, 0.0);
    lp.eq_matrix.rows = m + 1;
    lp.eq_matrix.cols = cols;
    lp.eq_matrix.data.assign((m + 1) * cols, 0.0);
    lp.eq_rhs.assign(m + 1, 0.0);
    lp.eq_rhs[m] = 1.0;

    std::size_t col = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (on_support[i]) continue;
        for (std::size_t row = 0; row < m; ++row) {
            lp.eq_matrix.at(row, col) = a.at(row, i);
        }
        lp.eq_matrix.at(m, col) = 1.0;
        if (is_signed) {
            const std::size_t neg = num_off + col;
            for (std::size_t row = 0; row < m; ++row) {
                lp.eq_matrix.at(row, neg) = -a.at(row, i);
            }
            lp.eq_matrix.at(m, neg) = 1.0;
        }
        ++col;
    }
    std::size_t fcol = is_signed ? 2 * num_off : num_off;
    for (std::size_t i = 0; i < n; ++i) {
        if (!on_support[i]) continue;
        for (std::size_t row = 0; row < m; ++row) {
            lp.eq_matrix.at(row, fcol) = a.at(row, i);
        }
        lp.cost[fcol] = sign_of[i];
        lp.lower_bounds[fcol] = -std::numeric_limits<double>::infinity();
        ++fcol;
    }
    lp.eq_matrix.at(m, cols - 1) = 1.0;  // slack for the normalization row
    // The condition fails as soon as any feasible point dips below -1; no
    // need to locate the exact minimum once that is certified.
    lp.objective_cutoff = -1.0 - 1e-6;

    const LpResult res = solve_lp(lp);
    switch (res.status) {
        case LpStatus::Optimal:
            return 1.0 + res.objective > 0.0;
        case LpStatus::CutoffReached:
            return false;
        case LpStatus::Unbounded:
            // A descent ray with zero off-support mass violates the condition.
            return false;
        case LpStatus::Infeasible:
            // w = 0, t = 1 is always feasible; reaching this is numerical.
            throw convergence_error(
                "null_space_success_check: decision LP reported infeasible");
        case LpStatus::IterationLimit:
            throw convergence_error(
                "null_space_success_check: decision LP hit its iteration cap");
    }
    throw std::logic_error("null_space_success_check: unreachable");
}

}  // namespace l1ldp
