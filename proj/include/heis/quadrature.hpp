#pragma once

// Gauss-Legendre based quadrature rules for the three integration domains the
// transform needs: truncated radial half-lines, truncated symmetric time
// intervals, and symmetric spectral windows.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "heis/group.hpp"  // detail::gauss_legendre_base

namespace heis {

enum class QuadDomain { RadialTruncated, TimeTruncated, Spectral };

struct QuadratureRule {
    QuadDomain domain = QuadDomain::RadialTruncated;
    double cutoff = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    template <typename F>
    auto integrate(F&& f) const -> decltype(f(0.0)) {
        decltype(f(0.0)) acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

// Gauss-Legendre nodes/weights on [-1,1].
inline void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w) {
    detail::gauss_legendre_base(order, x, w);
}

// RadialTruncated: order-point rule on [0, cutoff].
// TimeTruncated:   order-point rule on [0, cutoff] mirrored to [-cutoff, cutoff].
// Spectral:        order-point rule on [-cutoff, cutoff].
inline QuadratureRule build_rule(QuadDomain domain, int order, double cutoff) {
    if (order < 2) throw std::invalid_argument("build_rule: order must be >= 2");
    if (!(cutoff > 0.0)) throw std::invalid_argument("build_rule: cutoff must be positive");
    std::vector<double> x, w;
    gauss_legendre(order, x, w);

    QuadratureRule rule;
    rule.domain = domain;
    rule.cutoff = cutoff;
    switch (domain) {
        case QuadDomain::RadialTruncated: {
            rule.nodes.reserve(x.size());
            rule.weights.reserve(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                rule.nodes.push_back(0.5 * cutoff * (x[i] + 1.0));
                rule.weights.push_back(0.5 * cutoff * w[i]);
            }
            break;
        }
        case QuadDomain::TimeTruncated: {
            rule.nodes.reserve(2 * x.size());
            rule.weights.reserve(2 * x.size());
            for (std::size_t i = x.size(); i-- > 0;) {
                rule.nodes.push_back(-0.5 * cutoff * (x[i] + 1.0));
                rule.weights.push_back(0.5 * cutoff * w[i]);
            }
            for (std::size_t i = 0; i < x.size(); ++i) {
                rule.nodes.push_back(0.5 * cutoff * (x[i] + 1.0));
                rule.weights.push_back(0.5 * cutoff * w[i]);
            }
            break;
        }
        case QuadDomain::Spectral: {
            rule.nodes.reserve(x.size());
            rule.weights.reserve(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                rule.nodes.push_back(cutoff * x[i]);
                rule.weights.push_back(cutoff * w[i]);
            }
            break;
        }
    }
    return rule;
}

// Composite Gauss-Legendre over [a,b] split at the given interior breakpoints.
template <typename F>
auto integrate_piecewise(F&& f, double a, double b, const std::vector<double>& breaks,
                         int order_per_piece) -> decltype(f(0.0)) {
    std::vector<double> edges;
    edges.push_back(a);
    for (double c : breaks)
        if (c > a && c < b) edges.push_back(c);
    edges.push_back(b);
    std::vector<double> x, w;
    gauss_legendre(order_per_piece, x, w);
    decltype(f(0.0)) acc{};
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        if (!(hi > lo)) continue;
        for (std::size_t i = 0; i < x.size(); ++i)
            acc += 0.5 * (hi - lo) * w[i] * f(0.5 * (hi - lo) * x[i] + 0.5 * (lo + hi));
    }
    return acc;
}

// Log-spaced spectral lattice: per decade, the per_decade-point Gauss-Legendre
// rule in log10(lambda), mirrored to negative lambda.  Weights integrate
// d(lambda); nodes are strictly increasing and exclude 0.
struct SpectralGrid {
    std::vector<double> lambda;  // ascending, signed
    std::vector<double> weight;  // for Int . d(lambda)
    int per_decade = 16;
    double log10_min = -3.0;
    double log10_max = 3.0;
};

inline SpectralGrid spectral_lattice(double log10_min, double log10_max, int per_decade) {
    if (!(log10_max > log10_min)) throw std::invalid_argument("spectral_lattice: empty range");
    if (per_decade < 2) throw std::invalid_argument("spectral_lattice: per_decade must be >= 2");
    std::vector<double> x, w;
    gauss_legendre(per_decade, x, w);

    std::vector<double> pos, posw;
    const double ln10 = std::numbers::ln10;
    double d = log10_min;
    while (d < log10_max - 1e-12) {
        const double hi = std::min(d + 1.0, log10_max);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double u = 0.5 * (hi - d) * (x[i] + 1.0) + d;
            const double lam = std::pow(10.0, u);
            pos.push_back(lam);
            posw.push_back(0.5 * (hi - d) * w[i] * ln10 * lam);
        }
        d = hi;
    }

    SpectralGrid g;
    g.per_decade = per_decade;
    g.log10_min = log10_min;
    g.log10_max = log10_max;
    g.lambda.reserve(2 * pos.size());
    g.weight.reserve(2 * pos.size());
    for (std::size_t i = pos.size(); i-- > 0;) {
        g.lambda.push_back(-pos[i]);
        g.weight.push_back(posw[i]);
    }
    for (std::size_t i = 0; i < pos.size(); ++i) {
        g.lambda.push_back(pos[i]);
        g.weight.push_back(posw[i]);
    }
    return g;
}

}  // namespace heis
