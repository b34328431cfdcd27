#pragma once

// One-dimensional profile factors.  Polyradial test functions and atoms are
// sums of separable terms; each factor along r_j or t is one of
//   PiecewisePoly - polynomial pieces, coefficients in the scaled local
//                   coordinate xi = (2x - lo - hi)/(hi - lo) in [-1,1]
//                   (well conditioned under dilation, exact under rescale),
//   GaussPoly     - (sum_k c_k x^k) exp(-a x^2),
//   Sampled       - linear interpolation of tabulated values (zero outside).
//
// fourier(mu) computes Int f(x) e^{i mu x} dx.  Polynomial pieces switch to
// the exact boundary-term expansion once mu * width is large, which avoids
// the cancellation floor of quadrature on strongly oscillatory integrands.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "heis/quadrature.hpp"

namespace heis {

namespace poly {

// Coefficient-vector helpers, ascending powers.
inline double eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

inline std::vector<double> derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
    return d;
}

inline std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// p(alpha * y + beta) as a polynomial in y.
inline std::vector<double> compose_linear(const std::vector<double>& p, double alpha, double beta) {
    std::vector<double> out{0.0};
    std::vector<double> lin{beta, alpha};
    std::vector<double> pw{1.0};
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (out.size() < pw.size()) out.resize(pw.size(), 0.0);
        for (std::size_t j = 0; j < pw.size(); ++j) out[j] += p[k] * pw[j];
        if (k + 1 < p.size()) pw = multiply(pw, lin);
    }
    return out;
}

}  // namespace poly

struct PolyPiece {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> coef;  // in xi = (2x - lo - hi)/(hi - lo)

    double width() const { return hi - lo; }
    double xi(double x) const { return (2.0 * x - lo - hi) / (hi - lo); }
    double eval(double x) const { return poly::eval(coef, xi(x)); }
};

class Func1D {
  public:
    enum class Kind { PiecewisePoly, GaussPoly, Sampled };

    static Func1D piecewise(std::vector<PolyPiece> pieces, bool even_in_x = false) {
        Func1D f;
        f.kind_ = Kind::PiecewisePoly;
        f.pieces_ = std::move(pieces);
        std::sort(f.pieces_.begin(), f.pieces_.end(),
                  [](const PolyPiece& a, const PolyPiece& b) { return a.lo < b.lo; });
        f.even_ = even_in_x;
        return f;
    }

    // (sum c_k x^k) exp(-a x^2); powers lists the exponents matching coefs.
    static Func1D gauss_poly(std::vector<int> powers, std::vector<double> coefs, double a) {
        if (powers.size() != coefs.size() || powers.empty())
            throw std::invalid_argument("gauss_poly: powers/coefs mismatch");
        if (!(a > 0.0)) throw std::invalid_argument("gauss_poly: decay must be positive");
        Func1D f;
        f.kind_ = Kind::GaussPoly;
        f.gp_pow_ = std::move(powers);
        f.gp_coef_ = std::move(coefs);
        f.gp_a_ = a;
        f.even_ = true;
        for (int p : f.gp_pow_)
            if (p % 2 != 0) f.even_ = false;
        return f;
    }

    static Func1D sampled(std::vector<double> xs, std::vector<double> ys) {
        if (xs.size() != ys.size() || xs.size() < 2)
            throw std::invalid_argument("sampled: need >= 2 matching samples");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("sampled: xs must increase");
        Func1D f;
        f.kind_ = Kind::Sampled;
        f.sx_ = std::move(xs);
        f.sy_ = std::move(ys);
        return f;
    }

    Kind kind() const { return kind_; }
    bool even_in_x() const { return even_; }

    double eval(double x) const {
        switch (kind_) {
            case Kind::PiecewisePoly: {
                for (const auto& p : pieces_)
                    if (x >= p.lo && x <= p.hi) return p.eval(x);
                return 0.0;
            }
            case Kind::GaussPoly: {
                double s = 0.0;
                for (std::size_t k = 0; k < gp_pow_.size(); ++k)
                    s += gp_coef_[k] * std::pow(x, gp_pow_[k]);
                return s * std::exp(-gp_a_ * x * x);
            }
            case Kind::Sampled: {
                if (x <= sx_.front() || x >= sx_.back()) {
                    if (x == sx_.front()) return sy_.front();
                    if (x == sx_.back()) return sy_.back();
                    return 0.0;
                }
                const auto it = std::upper_bound(sx_.begin(), sx_.end(), x);
                const std::size_t i = static_cast<std::size_t>(it - sx_.begin());
                const double u = (x - sx_[i - 1]) / (sx_[i] - sx_[i - 1]);
                return (1.0 - u) * sy_[i - 1] + u * sy_[i];
            }
        }
        return 0.0;
    }

    // Smallest E with |f| negligible (< ~1e-18 of scale) outside [-E, E].
    double extent() const {
        switch (kind_) {
            case Kind::PiecewisePoly: {
                double e = 0.0;
                for (const auto& p : pieces_) e = std::max(e, std::max(std::abs(p.lo), std::abs(p.hi)));
                return e;
            }
            case Kind::GaussPoly: {
                int maxp = 0;
                for (int p : gp_pow_) maxp = std::max(maxp, p);
                // solve a x^2 - maxp log x = 42 crudely by expanding
                double x = std::sqrt(43.0 / gp_a_);
                for (int it = 0; it < 40; ++it) {
                    const double need = 42.0 + maxp * std::log(std::max(x, 1.0));
                    const double xn = std::sqrt(need / gp_a_);
                    if (std::abs(xn - x) < 1e-12 * x) { x = xn; break; }
                    x = xn;
                }
                return x;
            }
            case Kind::Sampled:
                return std::max(std::abs(sx_.front()), std::abs(sx_.back()));
        }
        return 0.0;
    }

    std::vector<double> breakpoints() const {
        std::vector<double> b;
        switch (kind_) {
            case Kind::PiecewisePoly:
                for (const auto& p : pieces_) {
                    b.push_back(p.lo);
                    b.push_back(p.hi);
                }
                break;
            case Kind::GaussPoly:
                break;
            case Kind::Sampled:
                b = sx_;
                break;
        }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return b;
    }

    int degree_hint() const {
        switch (kind_) {
            case Kind::PiecewisePoly: {
                std::size_t d = 1;
                for (const auto& p : pieces_) d = std::max(d, p.coef.size());
                return static_cast<int>(d - 1);
            }
            case Kind::GaussPoly: {
                int maxp = 0;
                for (int p : gp_pow_) maxp = std::max(maxp, p);
                return maxp;
            }
            case Kind::Sampled:
                return 1;
        }
        return 0;
    }

    // f(x / rho): support scales by rho, xi-coefficients are untouched for
    // polynomial pieces.
    Func1D rescaled(double rho) const {
        if (!(rho > 0.0)) throw std::invalid_argument("rescaled: rho must be positive");
        switch (kind_) {
            case Kind::PiecewisePoly: {
                Func1D f = *this;
                for (auto& p : f.pieces_) {
                    p.lo *= rho;
                    p.hi *= rho;
                }
                return f;
            }
            case Kind::GaussPoly: {
                Func1D f = *this;
                f.gp_a_ = gp_a_ / (rho * rho);
                for (std::size_t k = 0; k < f.gp_coef_.size(); ++k)
                    f.gp_coef_[k] = gp_coef_[k] * std::pow(rho, -gp_pow_[k]);
                return f;
            }
            case Kind::Sampled: {
                Func1D f = *this;
                for (auto& x : f.sx_) x *= rho;
                return f;
            }
        }
        return *this;
    }

    // Int f(x) e^{i mu x} dx over the support.
    std::complex<double> fourier(double mu, int base_order = 32) const;

    // Int f(x) g(x) dx with g arbitrary, split at the pieces.
    template <typename G>
    double integrate_against(G&& g, int order_per_piece = 48) const {
        const double E = extent();
        if (!(E > 0.0)) return 0.0;
        double lo = -E, hi = E;
        if (kind_ == Kind::PiecewisePoly) {
            lo = pieces_.front().lo;
            hi = pieces_.back().hi;
        } else if (kind_ == Kind::Sampled) {
            lo = sx_.front();
            hi = sx_.back();
        }
        auto f = [&](double x) { return eval(x) * g(x); };
        return integrate_piecewise(f, lo, hi, breakpoints(), order_per_piece);
    }

    const std::vector<PolyPiece>& pieces() const { return pieces_; }

  private:
    Kind kind_ = Kind::GaussPoly;
    bool even_ = false;
    std::vector<PolyPiece> pieces_;
    std::vector<int> gp_pow_;
    std::vector<double> gp_coef_;
    double gp_a_ = 1.0;
    std::vector<double> sx_, sy_;
};

namespace detail {

// Exact Int_lo^hi q(x) e^{i mu x} dx for one polynomial piece via the
// boundary-term series S(x) = sum_k (-1)^k q^(k)(x) / (i mu)^{k+1}.
inline std::complex<double> piece_fourier_exact(const PolyPiece& p, double mu) {
    const std::complex<double> imu(0.0, mu);
    const double dscale = 2.0 / p.width();  // d/dx = dscale * d/dxi
    auto boundary = [&](double x) {
        std::vector<double> c = p.coef;
        std::complex<double> s(0.0, 0.0);
        std::complex<double> denom = imu;
        double sign = 1.0;
        double der = 1.0;
        const double xi = p.xi(x);
        for (std::size_t k = 0;; ++k) {
            s += sign * der * poly::eval(c, xi) / denom;
            if (c.size() <= 1) break;
            c = poly::derivative(c);
            denom *= imu;
            sign = -sign;
            der *= dscale;
            (void)k;
        }
        return s;
    };
    const std::complex<double> phase_hi = std::polar(1.0, mu * p.hi);
    const std::complex<double> phase_lo = std::polar(1.0, mu * p.lo);
    return phase_hi * boundary(p.hi) - phase_lo * boundary(p.lo);
}

}  // namespace detail

inline std::complex<double> Func1D::fourier(double mu, int base_order) const {
    const double E = extent();
    if (!(E > 0.0)) return {0.0, 0.0};

    if (kind_ == Kind::PiecewisePoly) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& p : pieces_) {
            if (std::abs(mu) * p.width() > 3.0) {
                acc += detail::piece_fourier_exact(p, mu);
            } else {
                std::vector<double> x, w;
                gauss_legendre(base_order + 2 * degree_hint(), x, w);
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double t = 0.5 * p.width() * x[i] + 0.5 * (p.lo + p.hi);
                    acc += 0.5 * p.width() * w[i] * p.eval(t) * std::polar(1.0, mu * t);
                }
            }
        }
        return acc;
    }

    double lo = -E, hi = E;
    if (kind_ == Kind::Sampled) {
        lo = sx_.front();
        hi = sx_.back();
    }
    const int order = base_order + degree_hint() +
                      static_cast<int>(std::ceil(0.72 * std::abs(mu) * std::max(std::abs(lo), std::abs(hi))));
    auto f = [&](double x) { return eval(x) * std::polar(1.0, mu * x); };
    return integrate_piecewise(f, lo, hi, breakpoints(), std::min(order, 12000));
}

// Bump envelope (1 - (x/x0)^2)^pow on [-x0, x0] (or [0, x0] one-sided), as an
// exact polynomial piece, optionally multiplied by x^extra.
inline Func1D bump_poly(double x0, int pow, int extra_power, bool one_sided) {
    if (!(x0 > 0.0)) throw std::invalid_argument("bump_poly: x0 must be positive");
    const double lo = one_sided ? 0.0 : -x0;
    const double hi = x0;
    // x = alpha xi + beta on the piece
    const double alpha = 0.5 * (hi - lo), beta = 0.5 * (hi + lo);
    std::vector<double> base{1.0, 0.0, -1.0 / (x0 * x0)};  // 1 - (x/x0)^2, in x
    std::vector<double> q{1.0};
    for (int i = 0; i < pow; ++i) q = poly::multiply(q, base);
    for (int i = 0; i < extra_power; ++i) q = poly::multiply(q, {0.0, 1.0});
    PolyPiece piece;
    piece.lo = lo;
    piece.hi = hi;
    piece.coef = poly::compose_linear(q, alpha, beta);
    const bool even = !one_sided && (extra_power % 2 == 0);
    return Func1D::piecewise({piece}, one_sided ? (extra_power % 2 == 0) : even);
}

}  // namespace heis
