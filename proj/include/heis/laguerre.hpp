#pragma once

// Associated Laguerre polynomials L_k^d and the L^2((0,inf), dx)-orthonormal
// Laguerre functions
//   l_k^d(x) = sqrt(k! / Gamma(k+d+1)) e^{-x/2} x^{d/2} L_k^d(x).
//
// l_k^d is evaluated through the normalized three-term recurrence
//   sqrt((k+1)(k+d+1)) q_{k+1} = (2k+1+d-x) q_k - sqrt(k(k+d)) q_{k-1},
// which keeps every intermediate O(1); only the k-independent prefactor is
// taken through the log domain, so k + d in the thousands is fine.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace heis {

namespace detail {
inline void check_laguerre_args(int k, int type) {
    if (k < 0) throw std::invalid_argument("laguerre: degree k must be >= 0");
    if (type < 0) throw std::invalid_argument("laguerre: type must be >= 0");
}
}  // namespace detail

// Plain polynomial recurrence (k+1) L_{k+1} = (2k+1+d-x) L_k - (k+d) L_{k-1}.
inline double laguerre_poly(int k, int type, double x) {
    detail::check_laguerre_args(k, type);
    if (x < 0.0) throw std::invalid_argument("laguerre_poly: x must be >= 0");
    double pm1 = 1.0;
    if (k == 0) return pm1;
    double p = 1.0 + type - x;
    for (int j = 1; j < k; ++j) {
        const double pnext = ((2.0 * j + 1.0 + type - x) * p - (j + type) * pm1) / (j + 1.0);
        pm1 = p;
        p = pnext;
    }
    return p;
}

// e^{-x/2} x^{d/2} / sqrt(Gamma(d+1)), evaluated in the log domain.
inline double laguerre_prefactor(int type, double x) {
    if (x == 0.0) return type == 0 ? 1.0 : 0.0;
    return std::exp(-0.5 * x + 0.5 * type * std::log(x) - 0.5 * std::lgamma(type + 1.0));
}

// Fills out[0..kmax] with l_k^d(x).
inline void laguerre_fn_row(int kmax, int type, double x, std::span<double> out) {
    detail::check_laguerre_args(kmax, type);
    if (x < 0.0) throw std::invalid_argument("laguerre_fn_row: x must be >= 0");
    if (static_cast<int>(out.size()) < kmax + 1)
        throw std::invalid_argument("laguerre_fn_row: output span too small");
    const double pref = laguerre_prefactor(type, x);
    double qm1 = 0.0;
    double q = 1.0;
    out[0] = pref * q;
    for (int j = 0; j < kmax; ++j) {
        const double num = (2.0 * j + 1.0 + type - x) * q - std::sqrt(static_cast<double>(j) * (j + type)) * qm1;
        const double qnext = num / std::sqrt((j + 1.0) * (j + 1.0 + type));
        qm1 = q;
        q = qnext;
        out[static_cast<std::size_t>(j) + 1] = pref * q;
    }
}

inline double laguerre_fn(int k, int type, double x) {
    std::vector<double> row(static_cast<std::size_t>(k) + 1);
    laguerre_fn_row(k, type, x, row);
    return row.back();
}

// x beyond this lies in the exponential tail: |l_k^d(x)| < 1e-12 there.
inline double laguerre_decay_cutoff(int k, int type) {
    return 8.0 * (k + type + 10.0);
}

}  // namespace heis
