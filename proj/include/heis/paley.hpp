#pragma once

// Weighted spectral-integral machinery for the Hardy/Paley-type bound: the
// quantity
//   LHS(f) = Int sum_{m,alpha} |R_f(lambda,m,alpha)|^p
//                ((2|alpha| + n) |lambda|)^{-sigma} |lambda|^n dlambda,
// its split S1 + S2 at a threshold gamma, the admissible sigma window, the
// gamma selection rule, the exponents of the S1/S2 bounds, and dilation
// sweeps of atoms across support radii.
//
// The sweep exploits exact dilation covariance: with the L^p-normalized
// dilation a_rho, R_{a_rho}(lambda, m, alpha) = rho^{Q(1-1/p)}
// R_a(rho^2 lambda, m, alpha), so every row reuses the base atom's table on
// a mapped grid and LHS(a_rho) = rho^{Q(p-2)+2 sigma} LHS(a) holds exactly.
// Two rows are cross-checked against a direct transform of the dilated atom.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "heis/atoms.hpp"
#include "heis/transform.hpp"

namespace heis {

struct PaleyParams {
    double p = 1.0;
    int n = 1;
    double sigma = 2.0;
    bool probe = false;  // allow sigma outside the admissible window

    int Q() const { return homogeneous_dimension(n); }
    int J() const { return moment_order_floor(p, n); }
};

// Admissible window [sigma_min, sigma_max) from the exponent condition.
inline std::pair<double, double> sigma_range(double p, int n) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("sigma_range: p must lie in (0,1]");
    if (n < 1) throw std::invalid_argument("sigma_range: n must be >= 1");
    const double Q = homogeneous_dimension(n);
    const int J = moment_order_floor(p, n);
    return {Q / 2.0 * (2.0 - p), Q / 2.0 + p * (J + 1) / 2.0};
}

inline bool sigma_in_range(const PaleyParams& prm) {
    auto [lo, hi] = sigma_range(prm.p, prm.n);
    return prm.sigma >= lo && prm.sigma < hi;
}

inline void require_sigma(const PaleyParams& prm) {
    if (!prm.probe && !sigma_in_range(prm))
        throw std::invalid_argument("sigma outside the admissible window (probe mode required)");
}

enum class WeightReading {
    PerCoefficient,   // weight each coefficient by ((2|alpha|+n)|lambda|)^{-sigma}
    HsFixedAlphaMax,  // weight the whole HS norm at the alpha_max scale
};

inline double paley_lhs(const SpectralCoefficients& S, const PaleyParams& prm,
                        WeightReading reading = WeightReading::PerCoefficient) {
    require_sigma(prm);
    if (S.values.empty() || S.index_set.empty())
        throw std::invalid_argument("paley_lhs: empty table");
    double acc = 0.0;
    for (std::size_t j = 0; j < S.lambda.size(); ++j) {
        const double al = std::abs(S.lambda[j]);
        const double meas = S.weight[j] * std::pow(al, S.n);
        if (reading == WeightReading::PerCoefficient) {
            double colsum = 0.0;
            for (std::size_t idx = 0; idx < S.index_set.size(); ++idx) {
                const double mag = std::abs(S.values[j][idx]);
                if (mag == 0.0) continue;
                const double eig = (2.0 * S.index_set[idx].alpha_total() + S.n) * al;
                colsum += std::pow(mag, prm.p) * std::pow(eig, -prm.sigma);
            }
            acc += meas * colsum;
        } else {
            const double hs = hs_norm_at(S, j);
            const double eig = (2.0 * S.alpha_max + S.n) * al;
            acc += meas * std::pow(hs, prm.p) * std::pow(eig, -prm.sigma);
        }
    }
    return acc;
}

struct SplitResult {
    double s1 = 0.0;
    double s2 = 0.0;
    bool gamma_in_span = true;
};

// S1 over 0 < |lambda| <= gamma, S2 over |lambda| > gamma; the grid nodes are
// partitioned, so s1 + s2 reproduces paley_lhs to machine precision.
inline SplitResult split_s1_s2(const SpectralCoefficients& S, const PaleyParams& prm, double gamma,
                               WeightReading reading = WeightReading::PerCoefficient) {
    require_sigma(prm);
    if (!(gamma > 0.0)) throw std::invalid_argument("split_s1_s2: gamma must be positive");
    SplitResult out;
    double min_al = std::numeric_limits<double>::infinity(), max_al = 0.0;
    for (std::size_t j = 0; j < S.lambda.size(); ++j) {
        const double al = std::abs(S.lambda[j]);
        min_al = std::min(min_al, al);
        max_al = std::max(max_al, al);
        const double meas = S.weight[j] * std::pow(al, S.n);
        double colsum = 0.0;
        if (reading == WeightReading::PerCoefficient) {
            for (std::size_t idx = 0; idx < S.index_set.size(); ++idx) {
                const double mag = std::abs(S.values[j][idx]);
                if (mag == 0.0) continue;
                const double eig = (2.0 * S.index_set[idx].alpha_total() + S.n) * al;
                colsum += std::pow(mag, prm.p) * std::pow(eig, -prm.sigma);
            }
        } else {
            const double hs = hs_norm_at(S, j);
            colsum = std::pow(hs, prm.p) * std::pow((2.0 * S.alpha_max + S.n) * al, -prm.sigma);
        }
        (al <= gamma ? out.s1 : out.s2) += meas * colsum;
    }
    out.gamma_in_span = gamma >= min_al && gamma <= max_al;
    return out;
}

// gamma = R^x with x = (Q(1-p) - p(J+1)) / (p(J+1)/2 + Q/2 - sigma).
inline double gamma_star(const PaleyParams& prm, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("gamma_star: R must be positive");
    const double Q = prm.Q();
    const int J = prm.J();
    const double den = prm.p * (J + 1) / 2.0 + Q / 2.0 - prm.sigma;
    if (!(den > 0.0)) throw std::invalid_argument("gamma_star: sigma at or above the window top");
    const double num = Q * (1.0 - prm.p) - prm.p * (J + 1);
    return std::pow(R, num / den);
}

struct PredictedExponents {
    double s1_R = 0.0;
    double s1_gamma = 0.0;
    double s2_R = 0.0;
    double s2_gamma = 0.0;
};

inline PredictedExponents predicted_exponents(const PaleyParams& prm) {
    const double Q = prm.Q();
    const int J = prm.J();
    PredictedExponents e;
    e.s1_R = Q * (prm.p - 1.0) + prm.p * (J + 1);
    e.s1_gamma = prm.p * (J + 1) / 2.0 + Q / 2.0 - prm.sigma;
    e.s2_R = -Q / 2.0 * (2.0 - prm.p);
    e.s2_gamma = Q / 4.0 * (2.0 - prm.p) - prm.sigma;
    return e;
}

// Exact exponent of LHS(a_R) on the dilation orbit, Q(p-2) + 2 sigma.
inline double dilation_lhs_exponent(const PaleyParams& prm) {
    return prm.Q() * (prm.p - 2.0) + 2.0 * prm.sigma;
}

// Both logarithmic inequalities defining the gamma window for 0 < R < 1.
inline bool gamma_window_contains(const PaleyParams& prm, double R, double gamma) {
    const double Q = prm.Q();
    const int J = prm.J();
    const double lo_slope = (Q / 2.0 * (2.0 - prm.p)) / (Q / 4.0 * (2.0 - prm.p) - prm.sigma);
    const double hi_slope =
        (Q * (1.0 - prm.p) - prm.p * (J + 1)) / (prm.p * (J + 1) / 2.0 + Q / 2.0 - prm.sigma);
    const double lg = std::log(gamma), lR = std::log(R);
    const double tol = 1e-12 * std::max(1.0, std::abs(lR));
    return lo_slope * lR <= lg + tol && lg <= hi_slope * lR + tol;
}

struct GammaRule {
    enum class Mode { Star, Fixed };
    Mode mode = Mode::Star;
    double fixed_value = 1.0;

    double value(const PaleyParams& prm, double R) const {
        return mode == Mode::Star ? gamma_star(prm, R) : fixed_value;
    }
};

struct SweepRow {
    double R = 1.0;
    double gamma = 1.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double lhs = 0.0;
    bool gamma_in_span = true;
};

struct SweepConfig {
    GammaRule gamma;
    double bound_factor = 10.0;
    double growth_tolerance = 1.05;  // end-divergence detection threshold
    int base_alpha_max = 48;
    int per_decade = 16;
    double base_log10_min = -7.0;
    double base_log10_max = 7.0;
    int crosscheck_rows = 2;
    WeightReading reading = WeightReading::PerCoefficient;
    int atom_basis_size = 0;  // 0: constraints + 4
    unsigned seed = 0;
};

struct PaleySweepReport {
    PaleyParams params;
    SweepConfig config;
    std::vector<SweepRow> rows;
    bool slopes_defined = false;
    double slope_s1 = 0.0;
    double slope_s2 = 0.0;
    double slope_lhs = 0.0;
    PredictedExponents predicted;
    double lhs_ratio = 0.0;  // max/min over rows
    bool divergent_small_R = false;
    bool divergent_large_R = false;
    bool bounded = false;
    std::vector<std::pair<double, double>> crosschecks;  // (R, relative LHS difference)
};

namespace detail {

inline std::optional<double> fit_loglog(const std::vector<double>& R, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < R.size(); ++i)
        if (y[i] > 0.0 && std::isfinite(y[i])) {
            lx.push_back(std::log(R[i]));
            ly.push_back(std::log(y[i]));
        }
    if (lx.size() < 2) return std::nullopt;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double nn = static_cast<double>(lx.size());
    const double den = nn * sxx - sx * sx;
    if (std::abs(den) < 1e-30) return std::nullopt;
    return (nn * sxy - sx * sy) / den;
}

// values strictly increase toward the given end by more than the tolerance
inline bool diverges_toward_end(const std::vector<double>& lhs, bool left_end, double tol) {
    const std::size_t k = std::min<std::size_t>(3, lhs.size() - 1);
    if (k == 0) return false;
    double total = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t a = left_end ? i + 1 : lhs.size() - 2 - i;
        const std::size_t b = left_end ? i : lhs.size() - 1 - i;
        if (!(lhs[b] > lhs[a])) return false;
        total *= lhs[b] / lhs[a];
    }
    return total > tol;
}

}  // namespace detail

// Dilation sweep over support radii.  One base atom is built at R = 1; each
// row evaluates the full weighted integral of the dilated atom through the
// covariance fast path, and crosscheck_rows rows are recomputed by a direct
// transform of the dilated atom itself.
inline PaleySweepReport sweep(const PaleyParams& prm, const std::vector<double>& R_list,
                              const SweepConfig& cfg = {}) {
    require_sigma(prm);
    if (R_list.empty()) throw std::invalid_argument("sweep: empty R list");

    PaleySweepReport rep;
    rep.params = prm;
    rep.config = cfg;
    rep.predicted = predicted_exponents(prm);

    const AtomSpec base = build_atom(prm.n, prm.p, std::max(prm.J(), 0), 1.0, cfg.atom_basis_size,
                                     cfg.seed);

    TransformConfig tc;
    tc.alpha_max = cfg.base_alpha_max;
    tc.per_decade = cfg.per_decade;
    tc.log10_lambda_min = cfg.base_log10_min;
    tc.log10_lambda_max = cfg.base_log10_max;
    const SpectralGrid W = grid_from_config(tc);
    const SpectralCoefficients base_table = spectral_table(base.profile, W, tc);

    const double Q = prm.Q();
    const auto pref = [&](double rho) { return std::pow(rho, Q * (1.0 - 1.0 / prm.p)); };

    for (double R : R_list) {
        SweepRow row;
        row.R = R;
        row.gamma = cfg.gamma.value(prm, R);
        const double rho2 = R * R;
        const double amp_p = std::pow(pref(R), prm.p);
        double min_al = std::numeric_limits<double>::infinity(), max_al = 0.0;
        for (std::size_t j = 0; j < base_table.lambda.size(); ++j) {
            const double lam = base_table.lambda[j] / rho2;
            const double w = base_table.weight[j] / rho2;
            const double al = std::abs(lam);
            min_al = std::min(min_al, al);
            max_al = std::max(max_al, al);
            double colsum = 0.0;
            if (cfg.reading == WeightReading::PerCoefficient) {
                for (std::size_t idx = 0; idx < base_table.index_set.size(); ++idx) {
                    const double mag = std::abs(base_table.values[j][idx]);
                    if (mag == 0.0) continue;
                    const double eig = (2.0 * base_table.index_set[idx].alpha_total() + prm.n) * al;
                    colsum += std::pow(mag, prm.p) * std::pow(eig, -prm.sigma);
                }
            } else {
                const double hs = hs_norm_at(base_table, j);
                colsum = std::pow(hs, prm.p) *
                         std::pow((2.0 * base_table.alpha_max + prm.n) * al, -prm.sigma);
            }
            const double contrib = amp_p * w * std::pow(al, prm.n) * colsum;
            (al <= row.gamma ? row.s1 : row.s2) += contrib;
        }
        row.lhs = row.s1 + row.s2;
        row.gamma_in_span = row.gamma >= min_al && row.gamma <= max_al;
        rep.rows.push_back(row);
    }

    // slopes of S1, S2, LHS against R
    {
        std::vector<double> Rs, s1s, s2s, ls;
        for (const auto& r : rep.rows) {
            Rs.push_back(r.R);
            s1s.push_back(r.s1);
            s2s.push_back(r.s2);
            ls.push_back(r.lhs);
        }
        const auto f1 = detail::fit_loglog(Rs, s1s);
        const auto f2 = detail::fit_loglog(Rs, s2s);
        const auto fl = detail::fit_loglog(Rs, ls);
        rep.slopes_defined = f1 && f2 && fl && rep.rows.size() >= 2;
        if (f1) rep.slope_s1 = *f1;
        if (f2) rep.slope_s2 = *f2;
        if (fl) rep.slope_lhs = *fl;
    }

    // boundedness: plateau ratio plus no growth toward either end
    {
        std::vector<double> ls;
        for (const auto& r : rep.rows) ls.push_back(r.lhs);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double v : ls) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        rep.lhs_ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
        if (ls.size() >= 2) {
            rep.divergent_small_R = detail::diverges_toward_end(ls, true, cfg.growth_tolerance);
            rep.divergent_large_R = detail::diverges_toward_end(ls, false, cfg.growth_tolerance);
        }
        rep.bounded = rep.lhs_ratio <= cfg.bound_factor && !rep.divergent_small_R &&
                      !rep.divergent_large_R;
    }

    // direct-transform cross-checks on a couple of rows
    const std::size_t nrows = rep.rows.size();
    std::vector<std::size_t> picks;
    if (cfg.crosscheck_rows > 0 && nrows > 0) picks.push_back(nrows / 2);
    if (cfg.crosscheck_rows > 1 && nrows > 1) picks.push_back(nrows - 1);
    for (std::size_t pi : picks) {
        const double R = rep.rows[pi].R;
        const AtomSpec dil = dilate_atom(base, R);
        SpectralGrid mapped;
        mapped.per_decade = W.per_decade;
        mapped.lambda.reserve(W.lambda.size());
        mapped.weight.reserve(W.weight.size());
        for (std::size_t j = 0; j < W.lambda.size(); ++j) {
            mapped.lambda.push_back(W.lambda[j] / (R * R));
            mapped.weight.push_back(W.weight[j] / (R * R));
        }
        const SpectralCoefficients direct = spectral_table(dil.profile, mapped, tc);
        const double direct_lhs = paley_lhs(direct, prm, cfg.reading);
        const double rel =
            std::abs(direct_lhs - rep.rows[pi].lhs) / std::max(direct_lhs, rep.rows[pi].lhs);
        rep.crosschecks.emplace_back(R, rel);
    }

    return rep;
}

}  // namespace heis
