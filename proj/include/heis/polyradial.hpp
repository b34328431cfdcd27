#pragma once

// Polyradial functions on H^n:
//   f(z,t) = sum_m f_m(r_1..r_n, t) e^{i m.theta},
// with each profile f_m held as a sum of separable terms
//   amp * tfac(t) * prod_j rfac_j(r_j).

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "heis/func1d.hpp"

namespace heis {

struct SeparableTerm {
    double amp = 1.0;
    Func1D tfac;
    std::vector<Func1D> rfac;  // length n
};

struct PolyradialSpec {
    int n = 1;
    std::map<std::vector<int>, std::vector<SeparableTerm>> terms;  // keyed by m

    bool empty() const {
        for (const auto& [m, ts] : terms)
            if (!ts.empty()) return false;
        return true;
    }

    double radial_extent() const {
        double e = 0.0;
        for (const auto& [m, ts] : terms)
            for (const auto& t : ts)
                for (const auto& rf : t.rfac) e = std::max(e, rf.extent());
        return e;
    }

    double time_extent() const {
        double e = 0.0;
        for (const auto& [m, ts] : terms)
            for (const auto& t : ts) e = std::max(e, t.tfac.extent());
        return e;
    }

    double profile_value(const std::vector<int>& m, const std::vector<double>& r, double t) const {
        auto it = terms.find(m);
        if (it == terms.end()) return 0.0;
        double v = 0.0;
        for (const auto& term : it->second) {
            double prod = term.amp * term.tfac.eval(t);
            for (int j = 0; j < n; ++j) prod *= term.rfac[static_cast<std::size_t>(j)].eval(r[static_cast<std::size_t>(j)]);
            v += prod;
        }
        return v;
    }

    // Value of f at the group origin (all m contribute with e^{i m.0} = 1).
    double value_at_origin() const {
        std::vector<double> r0(static_cast<std::size_t>(n), 0.0);
        double v = 0.0;
        for (const auto& [m, ts] : terms) v += profile_value(m, r0, 0.0);
        return v;
    }

    void add_term(std::vector<int> m, SeparableTerm term) {
        if (static_cast<int>(m.size()) != n || static_cast<int>(term.rfac.size()) != n)
            throw std::invalid_argument("PolyradialSpec::add_term: dimension mismatch");
        terms[std::move(m)].push_back(std::move(term));
    }

    // f + c g, merged term lists.
    static PolyradialSpec linear_combination(const PolyradialSpec& f, const PolyradialSpec& g,
                                             double cf = 1.0, double cg = 1.0) {
        if (f.n != g.n) throw std::invalid_argument("linear_combination: dimension mismatch");
        PolyradialSpec h;
        h.n = f.n;
        for (const auto& [m, ts] : f.terms)
            for (auto t : ts) {
                t.amp *= cf;
                h.terms[m].push_back(std::move(t));
            }
        for (const auto& [m, ts] : g.terms)
            for (auto t : ts) {
                t.amp *= cg;
                h.terms[m].push_back(std::move(t));
            }
        return h;
    }
};

// (sum_k c_k r^{2 pr_k} t^{pt_k}) exp(-a |z|^2 - b t^2) for n = 1, radial (m=0).
inline PolyradialSpec gauss_poly_radial(const std::vector<double>& c, const std::vector<int>& r2_pow,
                                        const std::vector<int>& t_pow, double a, double b) {
    if (c.size() != r2_pow.size() || c.size() != t_pow.size() || c.empty())
        throw std::invalid_argument("gauss_poly_radial: coefficient arrays mismatch");
    PolyradialSpec f;
    f.n = 1;
    for (std::size_t k = 0; k < c.size(); ++k) {
        SeparableTerm term;
        term.amp = c[k];
        term.tfac = Func1D::gauss_poly({t_pow[k]}, {1.0}, b);
        term.rfac.push_back(Func1D::gauss_poly({2 * r2_pow[k]}, {1.0}, a));
        f.terms[{0}].push_back(std::move(term));
    }
    return f;
}

// The reference Gaussian e^{-|z|^2 - t^2} on H^n (m = 0).
inline PolyradialSpec gaussian_spec(int n, double a = 1.0, double b = 1.0) {
    PolyradialSpec f;
    f.n = n;
    SeparableTerm term;
    term.amp = 1.0;
    term.tfac = Func1D::gauss_poly({0}, {1.0}, b);
    for (int j = 0; j < n; ++j) term.rfac.push_back(Func1D::gauss_poly({0}, {1.0}, a));
    f.terms[std::vector<int>(static_cast<std::size_t>(n), 0)].push_back(std::move(term));
    return f;
}

namespace detail {

// Int g1(x) g2(x) x^rpow dx over the union support (used for L^2 and moments).
inline double factor_pair_integral(const Func1D& g1, const Func1D& g2, int rpow, double lo,
                                   double hi, int order) {
    std::vector<double> breaks = g1.breakpoints();
    const auto b2 = g2.breakpoints();
    breaks.insert(breaks.end(), b2.begin(), b2.end());
    auto f = [&](double x) { return g1.eval(x) * g2.eval(x) * std::pow(x, rpow); };
    return integrate_piecewise(f, lo, hi, breaks, order);
}

}  // namespace detail

// ||f||_2^2 = sum_m (2 pi)^n Int |f_m|^2 prod r_j dr_j dt  (theta-orthogonality
// removes cross terms between different m).
inline double l2_norm_sq(const PolyradialSpec& f, int order = 64) {
    const double tp = std::pow(2.0 * std::numbers::pi, f.n);
    double total = 0.0;
    for (const auto& [m, ts] : f.terms) {
        for (std::size_t a = 0; a < ts.size(); ++a) {
            for (std::size_t b = 0; b < ts.size(); ++b) {
                const auto& ta = ts[a];
                const auto& tb = ts[b];
                double prod = ta.amp * tb.amp;
                const double text = std::max(ta.tfac.extent(), tb.tfac.extent());
                prod *= detail::factor_pair_integral(ta.tfac, tb.tfac, 0, -text, text, order);
                for (int j = 0; j < f.n; ++j) {
                    const auto& ga = ta.rfac[static_cast<std::size_t>(j)];
                    const auto& gb = tb.rfac[static_cast<std::size_t>(j)];
                    const double rext = std::max(ga.extent(), gb.extent());
                    prod *= detail::factor_pair_integral(ga, gb, 1, 0.0, rext, order);
                }
                total += prod;
            }
        }
    }
    return tp * total;
}

// ||f||_1 computed termwise is only an upper bound when terms overlap with
// mixed signs; for single-term or same-sign profiles it is exact.
inline double l1_norm_bound(const PolyradialSpec& f, int order = 64) {
    const double tp = std::pow(2.0 * std::numbers::pi, f.n);
    double total = 0.0;
    for (const auto& [m, ts] : f.terms) {
        for (const auto& t : ts) {
            double prod = std::abs(t.amp);
            const double text = t.tfac.extent();
            prod *= integrate_piecewise([&](double x) { return std::abs(t.tfac.eval(x)); }, -text, text,
                                        t.tfac.breakpoints(), order);
            for (int j = 0; j < f.n; ++j) {
                const auto& g = t.rfac[static_cast<std::size_t>(j)];
                prod *= integrate_piecewise([&](double x) { return std::abs(g.eval(x)) * x; }, 0.0,
                                            g.extent(), g.breakpoints(), order);
            }
            total += prod;
        }
    }
    return tp * total;
}

}  // namespace heis
