#include <catch_amalgamated.hpp>

#include "heis/quadrature.hpp"

using namespace heis;

TEST_CASE("rule invariants") {
    for (auto dom : {QuadDomain::RadialTruncated, QuadDomain::TimeTruncated, QuadDomain::Spectral}) {
        const QuadratureRule rule = build_rule(dom, 24, 5.0);
        for (std::size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        for (double w : rule.weights) CHECK(w > 0.0);
    }
    CHECK_THROWS_AS(build_rule(QuadDomain::RadialTruncated, 1, 1.0), std::invalid_argument);
}

TEST_CASE("constants integrate exactly") {
    for (int order : {2, 8, 33}) {
        const QuadratureRule r = build_rule(QuadDomain::RadialTruncated, order, 1.0);
        CHECK(r.integrate([](double) { return 1.0; }) == Catch::Approx(1.0).epsilon(1e-14));
        const QuadratureRule t = build_rule(QuadDomain::TimeTruncated, order, 2.0);
        CHECK(t.integrate([](double) { return 1.0; }) == Catch::Approx(4.0).epsilon(1e-14));
    }
}

TEST_CASE("gauss exactness degree") {
    // order-2 rule integrates x^3 on [0,1] exactly
    const QuadratureRule r = build_rule(QuadDomain::RadialTruncated, 2, 1.0);
    CHECK(r.integrate([](double x) { return x * x * x; }) == Catch::Approx(0.25).epsilon(1e-14));
    // but not x^4
    CHECK(std::abs(r.integrate([](double x) { return x * x * x * x; }) - 0.2) > 1e-4);

    // mirrored time rule keeps polynomial exactness on [-c, c]
    const QuadratureRule t = build_rule(QuadDomain::TimeTruncated, 3, 1.5);
    auto poly5 = [](double x) { return 1.0 + x - 2.0 * x * x + 0.5 * x * x * x * x * x; };
    const double exact = 2.0 * 1.5 - 2.0 * 2.0 * std::pow(1.5, 3) / 3.0;
    CHECK(t.integrate(poly5) == Catch::Approx(exact).epsilon(1e-13));
}

TEST_CASE("truncated exponential") {
    const QuadratureRule r = build_rule(QuadDomain::RadialTruncated, 64, 40.0);
    CHECK(std::abs(r.integrate([](double x) { return std::exp(-x); }) - 1.0) < 1e-12);
}

TEST_CASE("piecewise integration honors breakpoints") {
    auto f = [](double x) { return x < 1.0 ? x : 2.0 - x; };  // kink at 1
    const double v = integrate_piecewise(f, 0.0, 2.0, {1.0}, 16);
    CHECK(v == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("spectral lattice") {
    const SpectralGrid g = spectral_lattice(-3.0, 3.0, 16);
    CHECK(g.lambda.size() == 192);  // 2 x 96 over six decades
    for (std::size_t i = 1; i < g.lambda.size(); ++i) CHECK(g.lambda[i] > g.lambda[i - 1]);
    for (double l : g.lambda) CHECK(l != 0.0);
    for (double w : g.weight) CHECK(w > 0.0);

    // integrates smooth profiles over the covered window: both signs of
    // Int_{1e-3}^{1e3} lambda e^{-lambda^2/2} dlambda = e^{-5e-7} - e^{-5e5}.
    // The Gaussian rolloff is the stiffest decade; the per-decade rule
    // converges spectrally in the node count.
    const double exact = 2.0 * std::exp(-0.5e-6);
    auto lattice_integral = [&](int per_decade) {
        const SpectralGrid gg = spectral_lattice(-3.0, 3.0, per_decade);
        double acc = 0.0;
        for (std::size_t i = 0; i < gg.lambda.size(); ++i)
            acc += gg.weight[i] * std::abs(gg.lambda[i]) * std::exp(-0.5 * gg.lambda[i] * gg.lambda[i]);
        return acc;
    };
    CHECK(lattice_integral(16) == Catch::Approx(exact).epsilon(5e-8));
    CHECK(lattice_integral(40) == Catch::Approx(exact).epsilon(1e-12));
}
