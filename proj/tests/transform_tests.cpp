#include <catch_amalgamated.hpp>

#include "heis/serialize.hpp"
#include "heis/transform.hpp"
#include "oracles.hpp"

using namespace heis;

namespace {

SpectralCoefficients handmade_table(std::vector<Complex> entries) {
    SpectralCoefficients S;
    S.n = 1;
    S.lambda = {1.0};
    S.weight = {1.0};
    S.alpha_max = static_cast<int>(entries.size()) - 1;
    for (int a = 0; a < static_cast<int>(entries.size()); ++a) S.index_set.push_back({{0}, {a}});
    S.values.push_back(std::move(entries));
    return S;
}

}  // namespace

TEST_CASE("zero function gives the zero table") {
    PolyradialSpec zero;
    zero.n = 1;
    TransformConfig cfg;
    cfg.alpha_max = 6;
    const SpectralCoefficients S = spectral_table(zero, spectral_lattice(-1, 1, 4), cfg);
    REQUIRE(S.index_set.size() == 7);
    for (const auto& col : S.values)
        for (const auto& v : col) CHECK(v == Complex(0.0, 0.0));
    CHECK(S.tail_estimate == 0.0);
}

TEST_CASE("gaussian matches the generating-function closed form") {
    const PolyradialSpec g = gaussian_spec(1);
    TransformConfig cfg;  // defaults: 2 x 96 grid over 1e-3..1e3, alpha_max 48
    const SpectralCoefficients S = spectral_table(g, grid_from_config(cfg), cfg);
    REQUIRE(S.lambda.size() == 192);
    REQUIRE(S.index_set.size() == 49);

    for (std::size_t j = 0; j < S.lambda.size(); ++j)
        for (std::size_t i = 0; i < S.index_set.size(); ++i) {
            const double o = oracles::gaussian_coefficient(S.lambda[j], S.index_set[i].alpha[0]);
            const double d = std::abs(S.values[j][i] - Complex(o, 0.0));
            CHECK(d <= std::max(1e-6 * std::abs(o), 1e-8));
        }
}

TEST_CASE("coefficients vanish at lambda = 1 for alpha >= 1") {
    const PolyradialSpec g = gaussian_spec(1);
    TransformConfig cfg;
    cfg.alpha_max = 12;
    const TransformRules rules = default_rules(g, 1.0, cfg);
    for (int a = 1; a <= 12; ++a)
        CHECK(std::abs(spectral_coefficient(g, 1.0, {0}, {a}, rules, cfg)) < 1e-8);
    // alpha = 0: pi^{3/2}/2 e^{-1/4}
    const double expect = std::pow(std::numbers::pi, 1.5) / 2.0 * std::exp(-0.25);
    CHECK(spectral_coefficient(g, 1.0, {0}, {0}, rules, cfg).real() ==
          Catch::Approx(expect).epsilon(1e-9));
}

TEST_CASE("explicit-rule path agrees with the table pipeline") {
    const PolyradialSpec f = gauss_poly_radial({1.0, -0.3}, {0, 1}, {0, 2}, 1.0, 0.7);
    TransformConfig cfg;
    cfg.alpha_max = 10;
    const SpectralCoefficients S = spectral_table(f, spectral_lattice(-1, 1, 6), cfg);
    for (std::size_t j : {std::size_t(2), std::size_t(11), std::size_t(20)}) {
        const double lam = S.lambda[j];
        const TransformRules rules = default_rules(f, lam, cfg);
        for (int a : {0, 3, 9}) {
            const Complex direct = spectral_coefficient(f, lam, {0}, {a}, rules, cfg);
            const Complex tabled = S.values[j][static_cast<std::size_t>(a)];
            CHECK(std::abs(direct - tabled) <= 1e-8 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("precondition and support errors") {
    const PolyradialSpec g = gaussian_spec(1);
    TransformConfig cfg;
    const TransformRules rules = default_rules(g, 1.0, cfg);
    CHECK_THROWS_AS(spectral_coefficient(g, 0.0, {0}, {0}, rules, cfg), std::invalid_argument);
    CHECK_THROWS_AS(spectral_coefficient(g, 1.0, {0}, {-1}, rules, cfg), std::invalid_argument);

    TransformRules tight = rules;
    tight.radial = build_rule(QuadDomain::RadialTruncated, 32, 0.5);  // support ~6.6
    CHECK_THROWS_AS(spectral_coefficient(g, 1.0, {0}, {0}, tight, cfg), SupportError);
}

TEST_CASE("linearity of the table") {
    const PolyradialSpec f = gaussian_spec(1);
    const PolyradialSpec g = gauss_poly_radial({1.0}, {1}, {0}, 0.9, 1.1);
    const PolyradialSpec h = PolyradialSpec::linear_combination(f, g, 2.0, -0.5);
    TransformConfig cfg;
    cfg.alpha_max = 8;
    const SpectralGrid grid = spectral_lattice(-1, 1, 6);
    const SpectralCoefficients Sf = spectral_table(f, grid, cfg);
    const SpectralCoefficients Sg = spectral_table(g, grid, cfg);
    const SpectralCoefficients Sh = spectral_table(h, grid, cfg);
    for (std::size_t j = 0; j < Sh.lambda.size(); ++j)
        for (std::size_t i = 0; i < Sh.index_set.size(); ++i) {
            const Complex expect = 2.0 * Sf.values[j][i] - 0.5 * Sg.values[j][i];
            CHECK(std::abs(Sh.values[j][i] - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
        }
}

TEST_CASE("dilation covariance of the spectrum") {
    // f_rho(z,t) = rho^{-Q} f(z/rho, t/rho^2) has R_{f_rho}(lambda) = R_f(rho^2 lambda)
    const PolyradialSpec f = gaussian_spec(1);
    TransformConfig cfg;
    cfg.alpha_max = 16;
    for (double rho : {0.5, 2.0, 4.0}) {
        PolyradialSpec frho;
        frho.n = 1;
        const double Q = 4.0;
        for (const auto& [m, ts] : f.terms)
            for (const auto& term : ts) {
                SeparableTerm nt;
                nt.amp = term.amp * std::pow(rho, -Q);
                nt.tfac = term.tfac.rescaled(rho * rho);
                nt.rfac.push_back(term.rfac[0].rescaled(rho));
                frho.terms[m].push_back(std::move(nt));
            }
        for (double lam : {-3.0, 0.2, 1.0, 5.5})
            for (int a : {0, 2, 7}) {
                const Complex lhs = spectral_coefficient(frho, lam, {0}, {a},
                                                         default_rules(frho, lam, cfg), cfg);
                const double mapped = rho * rho * lam;
                const Complex rhs = spectral_coefficient(f, mapped, {0}, {a},
                                                         default_rules(f, mapped, cfg), cfg);
                CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1e-6, std::abs(rhs)));
            }
    }
}

TEST_CASE("hs_norm on handmade tables") {
    const SpectralCoefficients single = handmade_table({Complex(3.0, 0.0)});
    CHECK(hs_norm(single, 1.0) == Catch::Approx(3.0));
    const SpectralCoefficients pair = handmade_table({Complex(1.0, 0.0), Complex(0.0, 2.0)});
    CHECK(hs_norm(pair, 1.0) == Catch::Approx(std::sqrt(5.0)));
    CHECK_THROWS_AS(hs_norm(pair, 2.0), std::invalid_argument);
}

TEST_CASE("hs_norm grows with the index set") {
    const PolyradialSpec g = gaussian_spec(1);
    const SpectralGrid grid = spectral_lattice(-1, 1, 6);
    TransformConfig small, big;
    small.alpha_max = 16;
    big.alpha_max = 40;
    const SpectralCoefficients Ss = spectral_table(g, grid, small);
    const SpectralCoefficients Sb = spectral_table(g, grid, big);
    // enlarging the index set never decreases the norm; allow quadrature
    // noise from the re-evaluated shared entries
    for (std::size_t j = 0; j < grid.lambda.size(); ++j)
        CHECK(hs_norm_at(Sb, j) >= hs_norm_at(Ss, j) * (1.0 - 1e-12));
}

TEST_CASE("truncation tail estimate bounds the observed change") {
    const PolyradialSpec g = gaussian_spec(1);
    const SpectralGrid grid = spectral_lattice(-1.0, 0.7, 8);
    TransformConfig small, big;
    small.alpha_max = 24;
    big.alpha_max = 48;
    small.active_alpha_floor = 64;
    big.active_alpha_floor = 64;
    const SpectralCoefficients Ss = spectral_table(g, grid, small);
    const SpectralCoefficients Sb = spectral_table(g, grid, big);
    double observed = 0.0;
    for (std::size_t j = 0; j < grid.lambda.size(); ++j)
        observed = std::max(observed, hs_norm_at(Sb, j) - hs_norm_at(Ss, j));
    const double budget = Ss.tail_estimate * std::sqrt(25.0);
    CHECK(observed <= budget);
}

TEST_CASE("operator norm bound max|R| <= ||f||_1") {
    const PolyradialSpec g = gaussian_spec(1);
    TransformConfig cfg;
    const SpectralCoefficients S = spectral_table(g, grid_from_config(cfg), cfg);
    const double l1 = l1_norm_bound(g);
    double maxmag = 0.0;
    for (const auto& col : S.values)
        for (const auto& v : col) maxmag = std::max(maxmag, std::abs(v));
    CHECK(maxmag <= l1 * (1.0 + 1e-9));
    // the bound is essentially attained as lambda -> 0
    CHECK(maxmag > 0.9 * l1);
}

TEST_CASE("plancherel identity and calibration") {
    PolyradialSpec zero;
    zero.n = 1;
    TransformConfig zcfg;
    zcfg.alpha_max = 4;
    const SpectralCoefficients Z = spectral_table(zero, spectral_lattice(-1, 1, 4), zcfg);
    const PlancherelReport zrep = plancherel_check(zero, Z);
    CHECK(zrep.lhs == 0.0);
    CHECK(zrep.rhs == 0.0);
    CHECK(zrep.ratio == 1.0);

    const TransformConfig cc = check_config(2048);
    std::vector<PolyradialSpec> fs;
    fs.push_back(gaussian_spec(1));
    fs.push_back(gauss_poly_radial({1.0}, {1}, {0}, 1.0, 1.0));
    fs.push_back(gauss_poly_radial({1.0}, {0}, {1}, 1.0, 1.0));
    std::vector<double> ratios;
    for (const auto& f : fs) {
        const SpectralCoefficients S = spectral_table(f, grid_from_config(cc), cc);
        ratios.push_back(plancherel_check(f, S).ratio);
    }
    double lo = ratios[0], hi = ratios[0];
    for (double r : ratios) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo - 1.0 < 2e-4);  // f-independence of the ratio

    const CalibrationReport cal = calibrate_plancherel(1, cc);
    CHECK(cal.kappa_plancherel == Catch::Approx(1.0).margin(2e-4));
    CHECK(cal.kappa_inversion == Catch::Approx(1.0).margin(1e-3));
    TransformConfig calibrated = cc;
    calibrated.laguerre_scale = cal.scale;
    const SpectralCoefficients Sg =
        spectral_table(fs[0], grid_from_config(calibrated), calibrated);
    CHECK(plancherel_check(fs[0], Sg).ratio == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("inversion at the origin") {
    PolyradialSpec zero;
    zero.n = 1;
    TransformConfig zcfg;
    zcfg.alpha_max = 4;
    const SpectralCoefficients Z = spectral_table(zero, spectral_lattice(-1, 1, 4), zcfg);
    CHECK(std::abs(invert_at_origin(Z)) == 0.0);

    const TransformConfig cc = check_config(2048);
    const PolyradialSpec g = gaussian_spec(1);
    SpectralCoefficients S = spectral_table(g, grid_from_config(cc), cc);
    const Complex inv = invert_at_origin(S);
    CHECK(std::abs(inv - Complex(1.0, 0.0)) < 1e-3);

    // linearity under coefficient scaling
    SpectralCoefficients S3 = S;
    scale_table(S3, Complex(3.0, 0.0));
    CHECK(std::abs(invert_at_origin(S3) - 3.0 * inv) < 1e-12);

    // non-radial tables are rejected
    SpectralCoefficients bad = S;
    bad.index_set[0].m = {1};
    CHECK_THROWS_AS(invert_at_origin(bad), std::invalid_argument);
}

TEST_CASE("angular modes go through the type-|m| kernel") {
    // single m = 1 term: r e^{-r^2} radially, Gaussian in t
    PolyradialSpec f;
    f.n = 1;
    SeparableTerm term;
    term.amp = 1.0;
    term.tfac = Func1D::gauss_poly({0}, {1.0}, 1.0);
    term.rfac.push_back(Func1D::gauss_poly({1}, {1.0}, 1.0));
    f.terms[{1}].push_back(term);

    TransformConfig cfg;
    cfg.alpha_max = 8;
    cfg.m_max = 1;
    const SpectralCoefficients S = spectral_table(f, spectral_lattice(-1, 1, 6), cfg);
    bool any = false;
    for (std::size_t j = 0; j < S.lambda.size(); ++j)
        for (std::size_t i = 0; i < S.index_set.size(); ++i) {
            CHECK(std::isfinite(std::abs(S.values[j][i])));
            if (S.index_set[i].m == std::vector<int>{1} && std::abs(S.values[j][i]) > 1e-6)
                any = true;
            if (S.index_set[i].m == std::vector<int>{0})
                CHECK(std::abs(S.values[j][i]) == 0.0);  // no m=0 content
        }
    CHECK(any);
}

TEST_CASE("sampled profiles approximate callable ones") {
    // tabulated Gaussian on a fine grid, linear interpolation
    std::vector<double> rs, rv, ts, tv;
    for (int i = 0; i <= 600; ++i) {
        const double r = 7.0 * i / 600.0;
        rs.push_back(r);
        rv.push_back(std::exp(-r * r));
    }
    for (int i = 0; i <= 1200; ++i) {
        const double t = -7.0 + 14.0 * i / 1200.0;
        ts.push_back(t);
        tv.push_back(std::exp(-t * t));
    }
    PolyradialSpec f;
    f.n = 1;
    SeparableTerm term;
    term.amp = 1.0;
    term.tfac = Func1D::sampled(ts, tv);
    term.rfac.push_back(Func1D::sampled(rs, rv));
    f.terms[{0}].push_back(term);

    TransformConfig cfg;
    cfg.alpha_max = 4;
    for (double lam : {0.5, 2.0})
        for (int a : {0, 2}) {
            const Complex approx =
                spectral_coefficient(f, lam, {0}, {a}, default_rules(f, lam, cfg), cfg);
            const double exact = oracles::gaussian_coefficient(lam, a);
            CHECK(std::abs(approx - Complex(exact, 0.0)) < 5e-4 * std::max(1.0, std::abs(exact)));
        }
}

TEST_CASE("serialization round-trips at double precision") {
    const PolyradialSpec g = gaussian_spec(1);
    TransformConfig cfg;
    cfg.alpha_max = 12;
    const SpectralCoefficients S = spectral_table(g, spectral_lattice(-1, 1, 6), cfg);
    const json j = to_json(S);
    const std::string text = j.dump();
    const SpectralCoefficients back = spectral_from_json(json::parse(text));
    REQUIRE(back.lambda.size() == S.lambda.size());
    REQUIRE(back.index_set.size() == S.index_set.size());
    for (std::size_t j2 = 0; j2 < S.lambda.size(); ++j2) {
        CHECK(back.lambda[j2] == S.lambda[j2]);
        CHECK(back.weight[j2] == S.weight[j2]);
        for (std::size_t i = 0; i < S.index_set.size(); ++i) CHECK(back.values[j2][i] == S.values[j2][i]);
    }
}
