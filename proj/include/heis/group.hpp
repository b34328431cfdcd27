#pragma once

// Heisenberg group arithmetic and homogeneous geometry.
//
// Points live on H^n = C^n x R with the twisted product
//   (z,t) (z',t') = (z + z', t + t' + 2 Im(z . conj(z'))),
// anisotropic dilations rho_R(z,t) = (R z, R^2 t), homogeneous dimension
// Q = 2n+2, and gauge norm |(z,t)| = (|z|^4 + 4 t^2)^{1/4}.

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace heis {

using Complex = std::complex<double>;

struct GroupPoint {
    std::vector<Complex> z;
    double t = 0.0;

    GroupPoint() = default;
    GroupPoint(std::vector<Complex> z_, double t_) : z(std::move(z_)), t(t_) {}

    int dim() const { return static_cast<int>(z.size()); }

    static GroupPoint identity(int n) {
        return GroupPoint(std::vector<Complex>(static_cast<std::size_t>(n), Complex(0.0, 0.0)), 0.0);
    }
};

inline int homogeneous_dimension(int n) { return 2 * n + 2; }

inline void require_same_dim(const GroupPoint& u, const GroupPoint& v) {
    if (u.dim() != v.dim())
        throw std::invalid_argument("GroupPoint dimension mismatch");
}

inline GroupPoint multiply(const GroupPoint& u, const GroupPoint& v) {
    require_same_dim(u, v);
    GroupPoint w = u;
    double twist = 0.0;  // 2 Im(z . conj(z'))
    for (std::size_t k = 0; k < u.z.size(); ++k) {
        w.z[k] = u.z[k] + v.z[k];
        twist += std::imag(u.z[k] * std::conj(v.z[k]));
    }
    w.t = u.t + v.t + 2.0 * twist;
    return w;
}

inline GroupPoint inverse(const GroupPoint& u) {
    GroupPoint w = u;
    for (auto& zk : w.z) zk = -zk;
    w.t = -u.t;
    return w;
}

inline GroupPoint dilate(const GroupPoint& u, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("dilate: R must be positive");
    GroupPoint w = u;
    for (auto& zk : w.z) zk *= R;
    w.t = u.t * R * R;
    return w;
}

inline double homogeneous_norm(const GroupPoint& u) {
    double z2 = 0.0;
    for (const auto& zk : u.z) z2 += std::norm(zk);
    return std::pow(z2 * z2 + 4.0 * u.t * u.t, 0.25);
}

// Membership test for the ball B(center, R) = { v : |center v^{-1}| < R }.
inline bool in_ball(const GroupPoint& v, const GroupPoint& center, double R) {
    return homogeneous_norm(multiply(center, inverse(v))) < R;
}

// Volume of B(0,R) is C_Q R^Q.  C_Q is evaluated once per n by reducing the
// indicator integral to polar form,
//   C_Q = (2 pi^n / Gamma(n)) * (1/2) Int_0^{pi/2} sin^{n-1}(s) cos^2(s) ds,
// and integrating the smooth reduced form with Gauss-Legendre.
namespace detail {

// Nodes/weights of the N-point Gauss-Legendre rule on [-1,1] by Newton
// iteration on the Legendre recurrence.
inline void gauss_legendre_base(int N, std::vector<double>& x, std::vector<double>& w) {
    if (N < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    x.assign(static_cast<std::size_t>(N), 0.0);
    w.assign(static_cast<std::size_t>(N), 0.0);
    const int m = (N + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double xi = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < N; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
            }
            pp = N * (xi * p0 - p1) / (xi * xi - 1.0);
            double dx = p0 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[static_cast<std::size_t>(i)] = -xi;
        x[static_cast<std::size_t>(N - 1 - i)] = xi;
        double wi = 2.0 / ((1.0 - xi * xi) * pp * pp);
        w[static_cast<std::size_t>(i)] = wi;
        w[static_cast<std::size_t>(N - 1 - i)] = wi;
    }
}

inline double unit_ball_volume(int n) {
    std::vector<double> x, w;
    gauss_legendre_base(96, x, w);
    const double a = 0.0, b = std::numbers::pi / 2.0;
    double integral = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double s = 0.5 * (b - a) * x[i] + 0.5 * (a + b);
        const double c = std::cos(s);
        integral += 0.5 * (b - a) * w[i] * std::pow(std::sin(s), n - 1) * c * c;
    }
    const double sphere = 2.0 * std::pow(std::numbers::pi, n) / std::tgamma(static_cast<double>(n));
    return sphere * 0.5 * integral;
}

}  // namespace detail

inline double ball_volume(int n, double R) {
    if (n < 1) throw std::invalid_argument("ball_volume: n must be >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("ball_volume: R must be positive");
    static std::map<int, double> cache;
    static std::mutex mtx;
    double cq;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it == cache.end()) it = cache.emplace(n, detail::unit_ball_volume(n)).first;
        cq = it->second;
    }
    return cq * std::pow(R, homogeneous_dimension(n));
}

// Monomial exponents J = (j1, j2, j0) for (z,t)^J = z^{j1} conj(z)^{j2} t^{j0},
// graded by h(J) = |j1| + |j2| + 2 j0.
struct MultiIndex {
    std::vector<int> j1;
    std::vector<int> j2;
    int j0 = 0;

    int dim() const { return static_cast<int>(j1.size()); }

    int degree() const {
        int h = 2 * j0;
        for (int a : j1) h += a;
        for (int a : j2) h += a;
        return h;
    }
};

namespace detail {

inline void vectors_with_sum_at_most(int n, int cap, std::vector<int>& cur,
                                     std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int a : cur) used += a;
    for (int a = 0; a <= cap - used; ++a) {
        cur.push_back(a);
        vectors_with_sum_at_most(n, cap, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

// All J with h(J) <= s, ordered lexicographically by (j0, j1, j2).
inline std::vector<MultiIndex> enumerate_monomials(int n, int s) {
    if (n < 1) throw std::invalid_argument("enumerate_monomials: n must be >= 1");
    if (s < 0) throw std::invalid_argument("enumerate_monomials: s must be >= 0");
    std::vector<MultiIndex> out;
    for (int j0 = 0; 2 * j0 <= s; ++j0) {
        const int cap = s - 2 * j0;
        std::vector<std::vector<int>> firsts;
        std::vector<int> cur;
        detail::vectors_with_sum_at_most(n, cap, cur, firsts);
        for (const auto& j1 : firsts) {
            int s1 = 0;
            for (int a : j1) s1 += a;
            std::vector<std::vector<int>> seconds;
            cur.clear();
            detail::vectors_with_sum_at_most(n, cap - s1, cur, seconds);
            for (const auto& j2 : seconds) {
                MultiIndex J;
                J.j1 = j1;
                J.j2 = j2;
                J.j0 = j0;
                out.push_back(std::move(J));
            }
        }
    }
    return out;
}

inline Complex evaluate_monomial(const MultiIndex& J, const GroupPoint& u) {
    if (J.dim() != u.dim())
        throw std::invalid_argument("evaluate_monomial: dimension mismatch");
    Complex v(1.0, 0.0);
    for (std::size_t k = 0; k < u.z.size(); ++k) {
        for (int a = 0; a < J.j1[k]; ++a) v *= u.z[k];
        const Complex zc = std::conj(u.z[k]);
        for (int a = 0; a < J.j2[k]; ++a) v *= zc;
    }
    for (int a = 0; a < J.j0; ++a) v *= u.t;
    return v;
}

}  // namespace heis
