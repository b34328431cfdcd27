#include <catch_amalgamated.hpp>

#include "heis/laguerre.hpp"
#include "heis/quadrature.hpp"
#include "oracles.hpp"

using namespace heis;

TEST_CASE("polynomial recurrence basics") {
    CHECK(laguerre_poly(0, 0, 3.1) == 1.0);
    CHECK(laguerre_poly(0, 5, 0.7) == 1.0);
    CHECK(laguerre_poly(1, 0, 1.0) == Catch::Approx(0.0).margin(1e-15));
    CHECK(laguerre_poly(1, 0, 0.25) == Catch::Approx(0.75));
    CHECK_THROWS_AS(laguerre_poly(-1, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(laguerre_poly(2, -1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(laguerre_poly(2, 0, -1.0), std::invalid_argument);
}

TEST_CASE("recurrence matches explicit series") {
    CHECK(laguerre_poly(5, 2, 3.7) ==
          Catch::Approx(oracles::laguerre_series(5, 2, 3.7)).epsilon(1e-10));
    for (int k = 0; k <= 15; ++k)
        for (int d = 0; d <= 6; ++d)
            for (double x : {0.0, 0.35, 1.0, 2.7, 6.5, 12.0, 25.0, 50.0}) {
                const double mine = laguerre_poly(k, d, x);
                const double ref = oracles::laguerre_series(k, d, x);
                CHECK(std::abs(mine - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
            }
}

TEST_CASE("normalized function values") {
    CHECK(laguerre_fn(0, 0, 0.0) == 1.0);
    CHECK(laguerre_fn(1, 0, 1.0) == Catch::Approx(0.0).margin(1e-14));
    // against the definition assembled from parts
    for (int k : {0, 1, 3, 9})
        for (int d : {0, 1, 4})
            for (double x : {0.2, 1.7, 8.0}) {
                const double direct = std::exp(0.5 * (std::lgamma(k + 1.0) - std::lgamma(k + d + 1.0))) *
                                      std::exp(-0.5 * x) * std::pow(x, 0.5 * d) *
                                      laguerre_poly(k, d, x);
                CHECK(laguerre_fn(k, d, x) == Catch::Approx(direct).epsilon(1e-12));
            }
}

TEST_CASE("row evaluation agrees with single evaluation") {
    std::vector<double> row(21);
    laguerre_fn_row(20, 3, 4.2, row);
    for (int k = 0; k <= 20; ++k)
        CHECK(row[static_cast<std::size_t>(k)] == Catch::Approx(laguerre_fn(k, 3, 4.2)).epsilon(1e-13));
}

TEST_CASE("orthonormality in L2(dx)") {
    // implementation-path rule: plain Gauss-Legendre on [0, cutoff]
    const int KMAX = 12;
    for (int d : {0, 1, 2, 4}) {
        const double cutoff = laguerre_decay_cutoff(KMAX, d);
        const QuadratureRule rule = build_rule(QuadDomain::RadialTruncated, 320, cutoff);
        double defect = 0.0;
        std::vector<double> row(KMAX + 1);
        std::vector<std::vector<double>> G(KMAX + 1, std::vector<double>(KMAX + 1, 0.0));
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            laguerre_fn_row(KMAX, d, rule.nodes[q], row);
            for (int i = 0; i <= KMAX; ++i)
                for (int j = 0; j <= KMAX; ++j)
                    G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        rule.weights[q] * row[static_cast<std::size_t>(i)] * row[static_cast<std::size_t>(j)];
        }
        for (int i = 0; i <= KMAX; ++i)
            for (int j = 0; j <= KMAX; ++j)
                defect = std::max(defect, std::abs(G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                                                   (i == j ? 1.0 : 0.0)));
        CHECK(defect < 1e-8);
    }

    // oracle route: classical weighted orthogonality with Gauss-Laguerre,
    // Int e^{-x} x^d L_j L_k = Gamma(k+d+1)/k! delta_jk
    std::vector<double> gx, gw;
    oracles::gauss_laguerre(40, gx, gw);
    for (int d : {0, 2, 4}) {
        for (int j = 0; j <= 12; ++j)
            for (int k = j; k <= 12; ++k) {
                double acc = 0.0;
                for (std::size_t q = 0; q < gx.size(); ++q)
                    acc += gw[q] * std::pow(gx[q], d) * laguerre_poly(j, d, gx[q]) *
                           laguerre_poly(k, d, gx[q]);
                const double expect = j == k ? std::exp(std::lgamma(k + d + 1.0) - std::lgamma(k + 1.0)) : 0.0;
                const double scale = std::exp(std::lgamma(k + d + 1.0) - std::lgamma(k + 1.0));
                CHECK(std::abs(acc - expect) < 1e-8 * scale);
            }
    }
}

TEST_CASE("decay beyond the cutoff") {
    for (int k : {0, 3, 12, 40, 64})
        for (int d : {0, 2, 4}) {
            const double cut = laguerre_decay_cutoff(k, d);
            for (double x : {cut * 1.0001, cut * 1.3, cut * 2.0})
                CHECK(std::abs(laguerre_fn(k, d, x)) < 1e-12);
        }
}

TEST_CASE("large order stays finite") {
    // normalized recurrence keeps everything O(1) even for k ~ thousands
    std::vector<double> row(4097);
    laguerre_fn_row(4096, 0, 0.37, row);
    for (double v : row) CHECK(std::isfinite(v));
    laguerre_fn_row(4096, 4, 900.0, row);
    for (double v : row) CHECK(std::isfinite(v));
}
