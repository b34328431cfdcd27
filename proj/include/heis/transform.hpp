#pragma once

// Laguerre-spectral group Fourier transform for polyradial functions.
//
// For f(z,t) = sum_m f_m(r,t) e^{i m.theta} the operator-valued transform is
// described by the scalar coefficients
//   R_f(lambda, m, alpha) = (2 pi)^n Int f_m(r,t) e^{i lambda t}
//                             prod_j l_{alpha_j}^{|m_j|}(2|lambda| r_j^2)
//                             prod_j r_j dr_j dt,
// the angular integration and the radial part of the Haar measure having been
// carried out.  Plancherel and inversion at the origin read
//   ||f||_2^2 = 2^{n-1} / pi^{n+1} Int ||R(lambda,.)||_2^2 |lambda|^n dlambda,
//   f(0)      = 4^n / (2 pi)^{n+1} Int sum_a R(lambda,0,a) |lambda|^n dlambda.
//
// Tables hold one column per lambda node of a log-spaced grid.  Per column
// the radial projections are evaluated in the x = 2|lambda| r^2 variable with
// node counts scaled to the Laguerre oscillation budget sqrt(alpha x), and
// the alpha range actually computed scales like |lambda| + 1/|lambda| (the
// remaining entries are below the per-column tail estimate).

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "heis/group.hpp"
#include "heis/laguerre.hpp"
#include "heis/parallel.hpp"
#include "heis/polyradial.hpp"
#include "heis/quadrature.hpp"

namespace heis {

struct SupportError : std::runtime_error {
    explicit SupportError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TransformConfig {
    int alpha_max = 48;
    int m_max = 0;
    double log10_lambda_min = -3.0;
    double log10_lambda_max = 3.0;
    int per_decade = 16;
    double laguerre_scale = 1.0;  // global calibration factor per l-factor
    double active_alpha_rate = 6.0;
    int active_alpha_floor = 64;
    double x_cutoff_factor = 8.0;
    double x_node_factor = 1.15;
    int x_node_base = 96;
    double radial_cutoff = 0.0;  // 0 = auto-size to the profile support
    double time_cutoff = 0.0;

    int active_alpha(double lambda) const {
        const double al = std::abs(lambda);
        const double need = active_alpha_rate * (al + 1.0 / al);
        const double a = std::max(static_cast<double>(active_alpha_floor), std::ceil(need));
        return static_cast<int>(std::min(static_cast<double>(alpha_max), a));
    }
};

struct SpectralIndex {
    std::vector<int> m;
    std::vector<int> alpha;

    int alpha_total() const {
        int s = 0;
        for (int a : alpha) s += a;
        return s;
    }
};

struct SpectralCoefficients {
    int n = 1;
    std::vector<double> lambda;  // ascending, 0 excluded
    std::vector<double> weight;  // quadrature weights for Int . d(lambda)
    std::vector<SpectralIndex> index_set;
    std::vector<std::vector<Complex>> values;  // [lambda][index]
    double tail_estimate = 0.0;
    int alpha_max = 0;
    int m_max = 0;
    double laguerre_scale = 1.0;

    std::size_t find_lambda(double lam) const {
        for (std::size_t j = 0; j < lambda.size(); ++j)
            if (lambda[j] == lam || std::abs(lambda[j] - lam) <= 1e-15 * std::abs(lam)) return j;
        throw std::invalid_argument("lambda is not a grid point");
    }
};

namespace detail {

inline void append_alpha_multi(int n, int cap, std::vector<int>& cur,
                               std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int a : cur) used += a;
    for (int a = 0; a <= cap - used; ++a) {
        cur.push_back(a);
        append_alpha_multi(n, cap, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<int>> alpha_multi_indices(int n, int alpha_max) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    append_alpha_multi(n, alpha_max, cur, out);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int sa = 0, sb = 0;
        for (int v : a) sa += v;
        for (int v : b) sb += v;
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return out;
}

}  // namespace detail

// Index set: every m present in f with max_j |m_j| <= m_max, crossed with all
// alpha, |alpha| <= alpha_max.  A function with no terms yields the m = 0 set.
inline std::vector<SpectralIndex> make_index_set(const PolyradialSpec& f, const TransformConfig& cfg) {
    std::vector<std::vector<int>> ms;
    for (const auto& [m, ts] : f.terms) {
        bool ok = true;
        for (int mj : m)
            if (std::abs(mj) > cfg.m_max) ok = false;
        if (ok) ms.push_back(m);
    }
    if (ms.empty()) ms.push_back(std::vector<int>(static_cast<std::size_t>(f.n), 0));
    std::sort(ms.begin(), ms.end());
    const auto alphas = detail::alpha_multi_indices(f.n, cfg.alpha_max);
    std::vector<SpectralIndex> set;
    set.reserve(ms.size() * alphas.size());
    for (const auto& m : ms)
        for (const auto& a : alphas) set.push_back({m, a});
    return set;
}

namespace detail {

// Row of radial projections Int g(r) l_a^d(2|lambda| r^2) r dr, a = 0..amax.
// Even-in-r factors integrate in x = 2|lambda| r^2; the envelope is then
// smooth and the node count follows the oscillation budget sqrt(a_max x).
inline std::vector<double> radial_projection_row(const Func1D& g, double lambda, int type,
                                                 int amax, const TransformConfig& cfg) {
    const double al = std::abs(lambda);
    const double ext = g.extent();
    std::vector<double> row(static_cast<std::size_t>(amax) + 1, 0.0);
    if (!(ext > 0.0)) return row;
    const double x_support = 2.0 * al * ext * ext;
    const double x_cut = cfg.x_cutoff_factor * (amax + type + 10.0);
    const double X = std::min(x_support, x_cut);
    if (!(X > 0.0)) return row;

    const int nodes = cfg.x_node_base +
                      static_cast<int>(std::ceil(cfg.x_node_factor * std::sqrt(static_cast<double>(amax + 1) * X)));
    std::vector<double> lrow(static_cast<std::size_t>(amax) + 1);

    if (g.even_in_x()) {
        std::vector<double> xbreaks;
        for (double rb : g.breakpoints()) {
            const double xb = 2.0 * al * rb * rb;
            if (xb > 0.0 && xb < X) xbreaks.push_back(xb);
        }
        std::vector<double> gx, gw;
        gauss_legendre(nodes, gx, gw);
        std::vector<double> edges{0.0};
        edges.insert(edges.end(), xbreaks.begin(), xbreaks.end());
        edges.push_back(X);
        std::sort(edges.begin(), edges.end());
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double lo = edges[p], hi = edges[p + 1];
            if (!(hi > lo)) continue;
            for (std::size_t i = 0; i < gx.size(); ++i) {
                const double x = 0.5 * (hi - lo) * gx[i] + 0.5 * (lo + hi);
                const double wq = 0.5 * (hi - lo) * gw[i];
                const double env = g.eval(std::sqrt(x / (2.0 * al)));
                if (env == 0.0) continue;
                laguerre_fn_row(amax, type, x, lrow);
                const double c = wq * env / (4.0 * al);
                for (int a = 0; a <= amax; ++a) row[static_cast<std::size_t>(a)] += c * lrow[static_cast<std::size_t>(a)];
            }
        }
    } else {
        const double rmax = std::min(ext, std::sqrt(X / (2.0 * al)));
        std::vector<double> gx, gw;
        gauss_legendre(nodes, gx, gw);
        std::vector<double> edges{0.0};
        for (double rb : g.breakpoints())
            if (rb > 0.0 && rb < rmax) edges.push_back(rb);
        edges.push_back(rmax);
        std::sort(edges.begin(), edges.end());
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double lo = edges[p], hi = edges[p + 1];
            if (!(hi > lo)) continue;
            for (std::size_t i = 0; i < gx.size(); ++i) {
                const double r = 0.5 * (hi - lo) * gx[i] + 0.5 * (lo + hi);
                const double wq = 0.5 * (hi - lo) * gw[i];
                const double env = g.eval(r) * r;
                if (env == 0.0) continue;
                laguerre_fn_row(amax, type, 2.0 * al * r * r, lrow);
                for (int a = 0; a <= amax; ++a) row[static_cast<std::size_t>(a)] += wq * env * lrow[static_cast<std::size_t>(a)];
            }
        }
    }
    return row;
}

}  // namespace detail

// Explicit quadrature rules for the single-coefficient entry point.
struct TransformRules {
    QuadratureRule radial;  // RadialTruncated, in r
    QuadratureRule time;    // TimeTruncated, in t
};

inline TransformRules default_rules(const PolyradialSpec& f, double lambda,
                                    const TransformConfig& cfg = {}) {
    const double rext = std::max(f.radial_extent(), 1e-6);
    const double text = std::max(f.time_extent(), 1e-6);
    const double X = 2.0 * std::abs(lambda) * rext * rext;
    const int rn = cfg.x_node_base +
                   static_cast<int>(std::ceil(cfg.x_node_factor *
                                              std::sqrt((cfg.alpha_max + 1.0) * std::min(X, cfg.x_cutoff_factor * (cfg.alpha_max + 10.0)))));
    const int tn = 48 + static_cast<int>(std::ceil(0.72 * std::abs(lambda) * text));
    return TransformRules{build_rule(QuadDomain::RadialTruncated, rn, rext),
                          build_rule(QuadDomain::TimeTruncated, tn, text)};
}

// Single coefficient by direct summation of the explicit rules.  This is the
// plain reference path; spectral_table uses the accelerated column pipeline
// and agrees with it to quadrature accuracy.
inline Complex spectral_coefficient(const PolyradialSpec& f, double lambda,
                                    const std::vector<int>& m, const std::vector<int>& alpha,
                                    const TransformRules& rules, const TransformConfig& cfg = {}) {
    if (lambda == 0.0) throw std::invalid_argument("spectral_coefficient: lambda must be nonzero");
    if (static_cast<int>(m.size()) != f.n || static_cast<int>(alpha.size()) != f.n)
        throw std::invalid_argument("spectral_coefficient: index dimension mismatch");
    for (int a : alpha)
        if (a < 0) throw std::invalid_argument("spectral_coefficient: alpha must be >= 0");
    if (f.radial_extent() > rules.radial.cutoff * (1.0 + 1e-12))
        throw SupportError("radial support exceeds quadrature cutoff");
    if (f.time_extent() > rules.time.cutoff * (1.0 + 1e-12))
        throw SupportError("time support exceeds quadrature cutoff");

    auto it = f.terms.find(m);
    if (it == f.terms.end()) return {0.0, 0.0};

    const double al = std::abs(lambda);
    Complex total(0.0, 0.0);
    for (const auto& term : it->second) {
        Complex tpart(0.0, 0.0);
        for (std::size_t i = 0; i < rules.time.nodes.size(); ++i) {
            const double t = rules.time.nodes[i];
            tpart += rules.time.weights[i] * term.tfac.eval(t) * std::polar(1.0, lambda * t);
        }
        double rpart = 1.0;
        for (int j = 0; j < f.n; ++j) {
            const int type = std::abs(m[static_cast<std::size_t>(j)]);
            double acc = 0.0;
            for (std::size_t i = 0; i < rules.radial.nodes.size(); ++i) {
                const double r = rules.radial.nodes[i];
                acc += rules.radial.weights[i] * term.rfac[static_cast<std::size_t>(j)].eval(r) * r *
                       laguerre_fn(alpha[static_cast<std::size_t>(j)], type, 2.0 * al * r * r);
            }
            rpart *= acc * cfg.laguerre_scale;
        }
        total += term.amp * tpart * rpart;
    }
    return total * std::pow(2.0 * std::numbers::pi, f.n);
}

// Full coefficient table over a log-spaced lambda grid.
inline SpectralCoefficients spectral_table(const PolyradialSpec& f, const SpectralGrid& grid,
                                           const TransformConfig& cfg) {
    if (cfg.radial_cutoff > 0.0 && f.radial_extent() > cfg.radial_cutoff * (1.0 + 1e-12))
        throw SupportError("radial support exceeds the configured quadrature cutoff");
    if (cfg.time_cutoff > 0.0 && f.time_extent() > cfg.time_cutoff * (1.0 + 1e-12))
        throw SupportError("time support exceeds the configured quadrature cutoff");
    SpectralCoefficients S;
    S.n = f.n;
    S.lambda = grid.lambda;
    S.weight = grid.weight;
    S.index_set = make_index_set(f, cfg);
    S.alpha_max = cfg.alpha_max;
    S.m_max = cfg.m_max;
    S.laguerre_scale = cfg.laguerre_scale;
    S.values.assign(S.lambda.size(), std::vector<Complex>(S.index_set.size(), Complex(0.0, 0.0)));

    const double angular = std::pow(2.0 * std::numbers::pi, f.n);
    std::vector<double> tails(S.lambda.size(), 0.0);

    parallel_for(S.lambda.size(), [&](std::size_t col) {
        const double lambda = S.lambda[col];
        const int amax_col = cfg.active_alpha(lambda);
        auto& out = S.values[col];

        for (const auto& [m, ts] : f.terms) {
            bool in_range = true;
            for (int mj : m)
                if (std::abs(mj) > cfg.m_max) in_range = false;
            if (!in_range) continue;

            // per-term t-transforms and per-dimension projection rows
            std::vector<Complex> tparts(ts.size());
            std::vector<std::vector<std::vector<double>>> rrows(ts.size());
            for (std::size_t k = 0; k < ts.size(); ++k) {
                tparts[k] = ts[k].tfac.fourier(lambda);
                rrows[k].resize(static_cast<std::size_t>(f.n));
                for (int j = 0; j < f.n; ++j)
                    rrows[k][static_cast<std::size_t>(j)] = detail::radial_projection_row(
                        ts[k].rfac[static_cast<std::size_t>(j)], lambda,
                        std::abs(m[static_cast<std::size_t>(j)]), amax_col, cfg);
            }

            for (std::size_t idx = 0; idx < S.index_set.size(); ++idx) {
                const auto& si = S.index_set[idx];
                if (si.m != m) continue;
                bool computable = true;
                for (int a : si.alpha)
                    if (a > amax_col) computable = false;
                if (!computable) continue;
                Complex v(0.0, 0.0);
                for (std::size_t k = 0; k < ts.size(); ++k) {
                    double rprod = 1.0;
                    for (int j = 0; j < f.n; ++j)
                        rprod *= rrows[k][static_cast<std::size_t>(j)]
                                      [static_cast<std::size_t>(si.alpha[static_cast<std::size_t>(j)])] *
                                 cfg.laguerre_scale;
                    v += ts[k].amp * tparts[k] * rprod;
                }
                out[idx] = angular * v;
            }
        }

        // largest |R| on the outermost computed alpha layer
        double tail = 0.0;
        const int edge = std::min(amax_col, cfg.alpha_max);
        for (std::size_t idx = 0; idx < S.index_set.size(); ++idx)
            if (S.index_set[idx].alpha_total() == edge) tail = std::max(tail, std::abs(out[idx]));
        tails[col] = tail;
    });

    S.tail_estimate = 0.0;
    for (double t : tails) S.tail_estimate = std::max(S.tail_estimate, t);
    return S;
}

inline SpectralGrid grid_from_config(const TransformConfig& cfg) {
    return spectral_lattice(cfg.log10_lambda_min, cfg.log10_lambda_max, cfg.per_decade);
}

inline double hs_norm_at(const SpectralCoefficients& S, std::size_t col) {
    double s = 0.0;
    for (const auto& v : S.values[col]) s += std::norm(v);
    return std::sqrt(s);
}

inline double hs_norm(const SpectralCoefficients& S, double lambda) {
    return hs_norm_at(S, S.find_lambda(lambda));
}

inline void scale_table(SpectralCoefficients& S, Complex c) {
    for (auto& col : S.values)
        for (auto& v : col) v *= c;
    S.tail_estimate *= std::abs(c);
}

struct PlancherelReport {
    double lhs = 0.0;   // direct ||f||_2^2
    double rhs = 0.0;   // spectral side with the 2^{n-1}/pi^{n+1} constant
    double ratio = 1.0; // rhs / lhs, 1 by convention when both vanish
};

inline PlancherelReport plancherel_check(const PolyradialSpec& f, const SpectralCoefficients& S) {
    PlancherelReport rep;
    rep.lhs = l2_norm_sq(f);
    const double c = std::pow(2.0, S.n - 1) / std::pow(std::numbers::pi, S.n + 1);
    double acc = 0.0;
    for (std::size_t j = 0; j < S.lambda.size(); ++j) {
        const double hs2 = [&] {
            double s = 0.0;
            for (const auto& v : S.values[j]) s += std::norm(v);
            return s;
        }();
        acc += S.weight[j] * hs2 * std::pow(std::abs(S.lambda[j]), S.n);
    }
    rep.rhs = c * acc;
    if (rep.lhs == 0.0 && rep.rhs == 0.0)
        rep.ratio = 1.0;
    else if (rep.lhs == 0.0)
        throw std::invalid_argument("plancherel_check: direct norm vanished but spectral side did not");
    else
        rep.ratio = rep.rhs / rep.lhs;
    return rep;
}

// Inversion at the group origin, radial tables only (every m must be 0).
inline Complex invert_at_origin(const SpectralCoefficients& S) {
    for (const auto& si : S.index_set)
        for (int mj : si.m)
            if (mj != 0) throw std::invalid_argument("invert_at_origin: table has non-radial entries");
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < S.lambda.size(); ++j) {
        Complex colsum(0.0, 0.0);
        for (const auto& v : S.values[j]) colsum += v;
        acc += S.weight[j] * colsum * std::pow(std::abs(S.lambda[j]), S.n);
    }
    const double c = std::pow(4.0, S.n) / std::pow(2.0 * std::numbers::pi, S.n + 1);
    return c * acc;
}

// Grid tuned for the L^2 identities: wide small-lambda coverage and a deep
// alpha budget, so table truncation sits below 1e-4 relative.
inline TransformConfig check_config(int alpha_max = 8192) {
    TransformConfig cfg;
    cfg.alpha_max = alpha_max;
    cfg.log10_lambda_min = -5.0;
    cfg.log10_lambda_max = 1.5;
    cfg.per_decade = 24;
    return cfg;
}

struct CalibrationReport {
    double kappa_plancherel = 1.0;  // measured rhs/lhs on the reference Gaussian
    double kappa_inversion = 1.0;   // measured inversion / f(0)
    double scale = 1.0;             // per-factor correction folded into l
};

// One-time calibration on the reference Gaussian.  Under the adopted
// normalization both ratios measure 1 up to quadrature error; the folded
// scale fixes the l-normalization if a convention ever drifts.
inline CalibrationReport calibrate_plancherel(int n, TransformConfig cfg) {
    const PolyradialSpec f = gaussian_spec(n);
    const SpectralCoefficients S = spectral_table(f, grid_from_config(cfg), cfg);
    CalibrationReport rep;
    rep.kappa_plancherel = plancherel_check(f, S).ratio;
    rep.kappa_inversion = invert_at_origin(S).real() / f.value_at_origin();
    rep.scale = cfg.laguerre_scale * std::pow(rep.kappa_plancherel, -1.0 / (2.0 * n));
    return rep;
}

}  // namespace heis
