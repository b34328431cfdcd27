#pragma once

// Construction and validation of (p, infinity, s)-atoms centered at the
// origin: supported in B(0,R), sup-norm equal to |B(0,R)|^{-1/p}, and with
// every monomial moment of homogeneous degree <= s vanishing.
//
// Radial (m = 0) atoms are built from a separable bump basis
//   (1 - (r/r0)^2)^4 r^{2u}  x  (1 - (t/t0)^2)^4 t^v
// on a rectangle inscribed in the ball; the moment matrix over that basis is
// assembled exactly and a null-space direction gives the atom.  Only the
// j1 = j2 moments constrain a radial atom (the angular integral kills the
// rest), but validate_atom checks every enumerated monomial.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "heis/group.hpp"
#include "heis/polyradial.hpp"

namespace heis {

struct BumpBasis {
    enum class Kind { BumpCells, SignBump };
    Kind kind = Kind::BumpCells;
    double r0 = 0.0;
    double t0 = 0.0;
    std::vector<std::pair<int, int>> powers;  // (u, v): r^{2u}, t^v
};

struct AtomSpec {
    int n = 1;
    double p = 1.0;
    int s = 0;
    double R = 1.0;
    unsigned seed = 0;
    BumpBasis basis;
    std::vector<double> coeffs;  // final amplitudes, normalization included
    PolyradialSpec profile;      // radial, m = 0
};

inline int moment_order_floor(double p, int n) {
    return static_cast<int>(std::floor(homogeneous_dimension(n) * (1.0 / p - 1.0)));
}

namespace detail {

inline Func1D basis_rfac(const BumpBasis& b, int u) { return bump_poly(b.r0, 4, 2 * u, true); }

inline Func1D basis_tfac(const BumpBasis& b, int v) { return bump_poly(b.t0, 4, v, false); }

inline PolyradialSpec assemble_profile(const BumpBasis& b, const std::vector<double>& coeffs) {
    PolyradialSpec f;
    f.n = 1;
    if (b.kind == BumpBasis::Kind::SignBump) {
        // sign(t) (1 - (t/t0)^2)^4 (1 - (r/r0)^2)^4, one piecewise t-factor
        // with a genuine jump at t = 0
        Func1D tb = basis_tfac(b, 0);
        const auto& piece = tb.pieces().front();
        PolyPiece neg = piece, pos = piece;
        neg.hi = 0.0;
        pos.lo = 0.0;
        // re-express the full-interval polynomial on each half interval
        // q(xi_full(x)) with xi_full = x/t0 -> on [lo,hi']: xi' relation
        // xi_full = (x)/t0; for piece [a,b]: x = (b-a)/2 xi' + (a+b)/2
        auto rebase = [&](const PolyPiece& src, double lo, double hi) {
            PolyPiece out;
            out.lo = lo;
            out.hi = hi;
            // src covers [-t0, t0] with xi_src = x / t0
            const double alpha = 0.5 * (hi - lo) / b.t0;
            const double beta = 0.5 * (hi + lo) / b.t0;
            out.coef = poly::compose_linear(src.coef, alpha, beta);
            return out;
        };
        neg = rebase(piece, -b.t0, 0.0);
        pos = rebase(piece, 0.0, b.t0);
        for (auto& c : neg.coef) c = -c;
        SeparableTerm term;
        term.amp = coeffs.at(0);
        term.tfac = Func1D::piecewise({neg, pos}, false);
        term.rfac.push_back(basis_rfac(b, 0));
        f.terms[{0}].push_back(std::move(term));
        return f;
    }
    for (std::size_t k = 0; k < b.powers.size(); ++k) {
        if (coeffs[k] == 0.0) continue;
        SeparableTerm term;
        term.amp = coeffs[k];
        term.rfac.push_back(basis_rfac(b, b.powers[k].first));
        term.tfac = basis_tfac(b, b.powers[k].second);
        f.terms[{0}].push_back(std::move(term));
    }
    if (f.terms.empty()) f.terms[{0}] = {};
    return f;
}

// sup |F| over the support rectangle by coarse scan plus shrinking refinement.
inline double sup_norm_scan(const PolyradialSpec& f, double r0, double t0) {
    auto absF = [&](double r, double t) { return std::abs(f.profile_value({0}, {r}, t)); };
    const int N = 96;
    double best = 0.0, br = 0.0, bt = 0.0;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) {
            const double r = r0 * i / N;
            const double t = -t0 + 2.0 * t0 * j / N;
            const double v = absF(r, t);
            if (v > best) {
                best = v;
                br = r;
                bt = t;
            }
        }
    double wr = r0 / N, wt = 2.0 * t0 / N;
    for (int round = 0; round < 10; ++round) {
        double lbest = best, lbr = br, lbt = bt;
        for (int i = -4; i <= 4; ++i)
            for (int j = -4; j <= 4; ++j) {
                const double r = std::clamp(br + wr * i / 4.0, 0.0, r0);
                const double t = std::clamp(bt + wt * j / 4.0, -t0, t0);
                const double v = absF(r, t);
                if (v > lbest) {
                    lbest = v;
                    lbr = r;
                    lbt = t;
                }
            }
        best = lbest;
        br = lbr;
        bt = lbt;
        wr *= 0.35;
        wt *= 0.35;
    }
    return best;
}

}  // namespace detail

// Complex moment Int a(u) (z,t)^J dV for a radial (m = 0) atom profile, n = 1.
// The angular integral Int e^{i (j1 - j2) theta} dtheta is evaluated by an
// exact trigonometric rule rather than assumed zero.
inline Complex atom_moment(const PolyradialSpec& f, const MultiIndex& J, int order = 64) {
    if (f.n != 1) throw std::invalid_argument("atom_moment: implemented for n = 1");
    const int k = J.j1[0] - J.j2[0];
    const int M = 256;
    Complex angular(0.0, 0.0);
    for (int i = 0; i < M; ++i) {
        const double th = 2.0 * std::numbers::pi * i / M;
        angular += std::polar(1.0, k * th);
    }
    angular *= 2.0 * std::numbers::pi / M;

    const int rpow = J.j1[0] + J.j2[0];
    double radial = 0.0;
    auto it = f.terms.find({0});
    if (it != f.terms.end()) {
        for (const auto& term : it->second) {
            const auto& rf = term.rfac[0];
            const double rext = rf.extent();
            const double racc = integrate_piecewise(
                [&](double r) { return rf.eval(r) * std::pow(r, rpow) * r; }, 0.0, rext,
                rf.breakpoints(), order);
            const double text = term.tfac.extent();
            const double tacc = integrate_piecewise(
                [&](double t) { return term.tfac.eval(t) * std::pow(t, J.j0); }, -text, text,
                term.tfac.breakpoints(), order);
            radial += term.amp * racc * tacc;
        }
    }
    return angular * radial;
}

struct AtomValidation {
    double max_moment_residual = 0.0;      // absolute, over all h(J) <= s
    double max_moment_residual_rel = 0.0;  // scaled by sup |a| |B_R| R^{h(J)}
    double sup_defect = 0.0;               // | sup|a| - |B_R|^{-1/p} |
    double support_defect = 0.0;           // max |a| sampled outside B(0,R)
    bool degenerate = false;
    std::vector<double> moment_residuals;
};

inline AtomValidation validate_atom(const AtomSpec& atom, int order = 64) {
    AtomValidation rep;
    const double target = std::pow(ball_volume(atom.n, atom.R), -1.0 / atom.p);
    const double sup = detail::sup_norm_scan(atom.profile, atom.basis.r0, atom.basis.t0);
    rep.degenerate = !(sup > 1e-300);
    rep.sup_defect = std::abs(sup - target);

    const auto monomials = enumerate_monomials(atom.n, atom.s);
    for (const auto& J : monomials) {
        const double res = std::abs(atom_moment(atom.profile, J, order));
        rep.moment_residuals.push_back(res);
        rep.max_moment_residual = std::max(rep.max_moment_residual, res);
        const double scale =
            std::max(sup, 1e-300) * ball_volume(atom.n, atom.R) * std::pow(atom.R, J.degree());
        rep.max_moment_residual_rel = std::max(rep.max_moment_residual_rel, res / scale);
    }

    // sample the frame of the support rectangle scaled past the ball radius
    double outside = 0.0;
    const int N = 128;
    for (int i = 0; i <= N; ++i) {
        const double r = atom.R * 1.25 * i / N;
        for (int j = 0; j <= N; ++j) {
            const double t = (-0.625 + 1.25 * j / N) * atom.R * atom.R;
            const double nu = std::pow(r * r * r * r + 4.0 * t * t, 0.25);
            if (nu <= atom.R) continue;
            outside = std::max(outside, std::abs(atom.profile.profile_value({0}, {r}, t)));
        }
    }
    rep.support_defect = outside;
    return rep;
}

// Moment-matrix construction.  basis_size counts (u,v) bump pairs; the number
// of active constraints is the count of (j, j0) with 2j + 2j0 <= s.
inline AtomSpec build_atom(int n, double p, int s, double R, int basis_size = 0,
                           unsigned seed = 0, int moment_order = 48) {
    if (n != 1) throw std::invalid_argument("build_atom: implemented for n = 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("build_atom: p must lie in (0,1]");
    if (!(R > 0.0)) throw std::invalid_argument("build_atom: R must be positive");
    const int J_floor = moment_order_floor(p, n);
    if (s < J_floor) throw std::invalid_argument("build_atom: s below the admissible floor");

    std::vector<std::pair<int, int>> constraints;  // (j, j0)
    for (int j0 = 0; 2 * j0 <= s; ++j0)
        for (int j = 0; 2 * j + 2 * j0 <= s; ++j) constraints.emplace_back(j, j0);
    const int C = static_cast<int>(constraints.size());
    if (basis_size <= 0) basis_size = C + 4;
    if (basis_size <= C) throw std::invalid_argument("build_atom: basis too small for constraints");

    AtomSpec atom;
    atom.n = n;
    atom.p = p;
    atom.s = s;
    atom.R = R;
    atom.seed = seed;
    atom.basis.kind = BumpBasis::Kind::BumpCells;
    const double cr = 0.88;
    atom.basis.r0 = cr * R;
    atom.basis.t0 = 0.95 * R * R * std::sqrt(1.0 - cr * cr * cr * cr) / 2.0;
    for (int total = 0; static_cast<int>(atom.basis.powers.size()) < basis_size; ++total)
        for (int u = total; u >= 0 && static_cast<int>(atom.basis.powers.size()) < basis_size; --u)
            atom.basis.powers.emplace_back(u, total - u);

    Eigen::MatrixXd M(C, basis_size);
    for (int c = 0; c < C; ++c) {
        const auto [j, j0] = constraints[static_cast<std::size_t>(c)];
        for (int b = 0; b < basis_size; ++b) {
            const auto [u, v] = atom.basis.powers[static_cast<std::size_t>(b)];
            const Func1D rf = detail::basis_rfac(atom.basis, u);
            const Func1D tf = detail::basis_tfac(atom.basis, v);
            const double rint = integrate_piecewise(
                [&](double r) { return rf.eval(r) * std::pow(r, 2 * j) * r; }, 0.0, atom.basis.r0,
                rf.breakpoints(), moment_order);
            const double tint = integrate_piecewise(
                [&](double t) { return tf.eval(t) * std::pow(t, j0); }, -atom.basis.t0,
                atom.basis.t0, tf.breakpoints(), moment_order);
            M(c, b) = 2.0 * std::numbers::pi * rint * tint;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const int nullity = basis_size - C;
    // deterministic pseudo-random mix of the null-space basis so that higher
    // moments stay generically nonzero
    std::mt19937 rng(seed + 0x9e3779b9u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(basis_size);
    for (int k = 0; k < nullity; ++k) {
        const double w = (nullity == 1) ? 1.0 : gauss(rng);
        c += w * svd.matrixV().col(basis_size - 1 - k);
    }
    if (c.norm() < 1e-12) c = svd.matrixV().col(basis_size - 1);
    c.normalize();
    int imax = 0;
    for (int i = 1; i < basis_size; ++i)
        if (std::abs(c(i)) > std::abs(c(imax))) imax = i;
    if (c(imax) < 0.0) c = -c;

    const double resid = (M * c).cwiseAbs().maxCoeff();
    if (resid > 1e-10 * std::max(1.0, M.cwiseAbs().maxCoeff()))
        throw std::runtime_error("build_atom: null-space residual too large (rank deficiency?)");

    atom.coeffs.assign(c.data(), c.data() + basis_size);
    atom.profile = detail::assemble_profile(atom.basis, atom.coeffs);

    const double sup = detail::sup_norm_scan(atom.profile, atom.basis.r0, atom.basis.t0);
    if (!(sup > 0.0)) throw std::runtime_error("build_atom: degenerate null vector");
    const double target = std::pow(ball_volume(n, R), -1.0 / p);
    const double scale = target / sup;
    for (auto& ck : atom.coeffs) ck *= scale;
    atom.profile = detail::assemble_profile(atom.basis, atom.coeffs);
    return atom;
}

// Closed-form s = 0 atom: sign(t) times a separable bump, cancellation forced
// by t -> -t antisymmetry.
inline AtomSpec sign_atom(int n, double p, double R) {
    if (n != 1) throw std::invalid_argument("sign_atom: implemented for n = 1");
    const int J_floor = moment_order_floor(p, n);
    if (J_floor > 0) throw std::invalid_argument("sign_atom: oddness only covers s = 0");
    AtomSpec atom;
    atom.n = n;
    atom.p = p;
    atom.s = 0;
    atom.R = R;
    atom.basis.kind = BumpBasis::Kind::SignBump;
    const double cr = 0.88;
    atom.basis.r0 = cr * R;
    atom.basis.t0 = 0.95 * R * R * std::sqrt(1.0 - cr * cr * cr * cr) / 2.0;
    atom.basis.powers = {{0, 0}};
    atom.coeffs = {1.0};
    atom.profile = detail::assemble_profile(atom.basis, atom.coeffs);
    const double sup = detail::sup_norm_scan(atom.profile, atom.basis.r0, atom.basis.t0);
    atom.coeffs[0] = std::pow(ball_volume(n, R), -1.0 / p) / sup;
    atom.profile = detail::assemble_profile(atom.basis, atom.coeffs);
    return atom;
}

// L^p-normalized dilation: a_rho(u) = rho^{-Q/p} a(dilate(u, 1/rho)), a valid
// atom on B(0, rho R).
inline AtomSpec dilate_atom(const AtomSpec& atom, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("dilate_atom: rho must be positive");
    AtomSpec out = atom;
    out.R = rho * atom.R;
    out.basis.r0 = rho * atom.basis.r0;
    out.basis.t0 = rho * rho * atom.basis.t0;
    const double Q = homogeneous_dimension(atom.n);
    const double amp = std::pow(rho, -Q / atom.p);
    for (auto& c : out.coeffs) c *= amp;

    PolyradialSpec prof;
    prof.n = atom.n;
    for (const auto& [m, ts] : atom.profile.terms) {
        for (const auto& term : ts) {
            SeparableTerm nt;
            nt.amp = term.amp * amp;
            nt.tfac = term.tfac.rescaled(rho * rho);
            for (const auto& rf : term.rfac) nt.rfac.push_back(rf.rescaled(rho));
            prof.terms[m].push_back(std::move(nt));
        }
    }
    out.profile = std::move(prof);
    return out;
}

// Bookkeeping for finite atomic sums sum_k beta_k a_k.
struct AtomCombination {
    std::vector<AtomSpec> atoms;
    std::vector<Complex> betas;

    double quasi_norm(double p) const {
        double s = 0.0;
        for (const auto& b : betas) s += std::pow(std::abs(b), p);
        return std::pow(s, 1.0 / p);
    }

    PolyradialSpec combined_profile() const {
        if (atoms.empty()) throw std::invalid_argument("AtomCombination: empty");
        PolyradialSpec f;
        f.n = atoms.front().n;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            for (const auto& [m, ts] : atoms[k].profile.terms)
                for (auto t : ts) {
                    t.amp *= betas[k].real();  // real combinations in tests
                    f.terms[m].push_back(std::move(t));
                }
        }
        return f;
    }
};

}  // namespace heis
