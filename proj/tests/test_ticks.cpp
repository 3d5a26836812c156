#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include "ticknoise/ticks.hpp"

using namespace ticknoise;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent oracle: composite-Simpson quadrature of the centered
// characteristic integral for a continuous density.
template <typename Density>
cdouble quadrature_centered(Density p, double lo, double hi, double mean, double omega,
                            int intervals = 40000) {
    const double step = (hi - lo) / intervals;
    cdouble acc = 0.0;
    for (int i = 0; i <= intervals; ++i) {
        const double t = lo + i * step;
        const double weight = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += weight * p(t) * std::polar(1.0, -omega * (t - mean));
    }
    return acc * (step / 3.0);
}

// Independent oracle: direct weighted sum over the comb atoms.
cdouble comb_direct_sum(int n, double rate, double omega) {
    cdouble acc = 0.0;
    for (int k = 0; k < n; ++k) {
        acc += std::polar(1.0, -omega * k / (n * rate));
    }
    return acc / static_cast<double>(n);
}

std::string write_temp_csv(const std::string& name, const std::string& content) {
    const std::string path = "ticks_test_" + name + ".csv";
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("moments per variant") {
    SUBCASE("gaussian parameters are its moments") {
        const auto [mean, var] = TickDistribution::gaussian(kPi, 0.1).moments();
        CHECK(mean == doctest::Approx(kPi).epsilon(1e-15));
        CHECK(var == doctest::Approx(0.01).epsilon(1e-15));
    }
    SUBCASE("dirac is a point mass") {
        const auto [mean, var] = TickDistribution::dirac(1.0).moments();
        CHECK(mean == 1.0);
        CHECK(var == 0.0);
    }
    SUBCASE("exponential has variance mean^2") {
        const auto [mean, var] = TickDistribution::exponential(0.7).moments();
        CHECK(mean == doctest::Approx(0.7).epsilon(1e-15));
        CHECK(var == doctest::Approx(0.49).epsilon(1e-15));
    }
    SUBCASE("comb closed-form moments match the atom sums") {
        for (int n : {1, 2, 4, 7}) {
            const double rate = 1.3;
            const auto dist = TickDistribution::comb(n, rate);
            double mean = 0.0, second = 0.0;
            for (int k = 0; k < n; ++k) {
                const double t = k / (n * rate);
                mean += t / n;
                second += t * t / n;
            }
            CHECK(dist.mean() == doctest::Approx(mean).epsilon(1e-13));
            CHECK(dist.variance() == doctest::Approx(second - mean * mean).epsilon(1e-12));
        }
    }
    SUBCASE("empirical weighted moments") {
        const auto dist = TickDistribution::empirical({1.0, 3.0}, {0.75, 0.25});
        CHECK(dist.mean() == doctest::Approx(1.5).epsilon(1e-15));
        CHECK(dist.variance() == doctest::Approx(0.75).epsilon(1e-13));
    }
}

TEST_CASE("clock accuracy") {
    CHECK(TickDistribution::gaussian(kPi, kPi).accuracy() == doctest::Approx(1.0));
    CHECK(TickDistribution::dirac(2.0).accuracy() == kInf);
    CHECK(TickDistribution::gaussian(1.0, 0.0).accuracy() == kInf);
    // 100 ns gate timed to 0.530 ns.
    const double n_acc = TickDistribution::gaussian(100e-9, 0.530e-9).accuracy();
    CHECK(n_acc == doctest::Approx(3.56e4).epsilon(0.01));
    // comb with n = 1 sits at t = 0, so accuracy is undefined
    CHECK_THROWS_AS(TickDistribution::comb(1, 1.0).accuracy(), std::invalid_argument);
}

TEST_CASE("centered characteristic closed forms vs quadrature oracle") {
    SUBCASE("gaussian") {
        const double tau = 1.1, sigma = 0.6;
        const auto dist = TickDistribution::gaussian(tau, sigma);
        auto pdf = [&](double t) {
            const double z = (t - tau) / sigma;
            return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
        };
        for (double omega : {0.0, 0.5, 1.0, 2.5, -1.7}) {
            const cdouble expected = quadrature_centered(pdf, tau - 12 * sigma, tau + 12 * sigma,
                                                         tau, omega);
            const cdouble got = dist.centered_characteristic(omega);
            CHECK(std::abs(got - expected) < 1e-10);
            CHECK(got.real() == doctest::Approx(std::exp(-0.5 * sigma * sigma * omega * omega))
                                    .epsilon(1e-12));
            CHECK(got.imag() == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    SUBCASE("exponential (asymmetric: complex phi0)") {
        const double mean = 0.8;
        const auto dist = TickDistribution::exponential(mean);
        auto pdf = [&](double t) { return std::exp(-t / mean) / mean; };
        for (double omega : {0.3, 1.0, 4.0, -2.0}) {
            const cdouble expected = quadrature_centered(pdf, 0.0, 60.0 * mean, mean, omega);
            CHECK(std::abs(dist.centered_characteristic(omega) - expected) < 1e-9);
        }
        CHECK(std::abs(dist.centered_characteristic(1.3).imag()) > 0.01);
    }
    SUBCASE("dirac is identically one") {
        const auto dist = TickDistribution::dirac(1.0);
        for (double omega : {0.0, 1.0, 100.0}) {
            CHECK(dist.centered_characteristic(omega) == cdouble{1.0, 0.0});
        }
    }
}

TEST_CASE("comb closed form equals the direct sum") {
    SUBCASE("generic points to 1e-12") {
        CHECK(std::abs(comb_characteristic_closed_form(5, 1.0, 3.7) -
                       comb_direct_sum(5, 1.0, 3.7)) < 1e-12);
        for (int n : {2, 3, 5, 9}) {
            for (int i = 1; i <= 50; ++i) {
                const double omega = 0.37 * i;
                CHECK(std::abs(comb_characteristic_closed_form(n, 0.8, omega) -
                               comb_direct_sum(n, 0.8, omega)) < 1e-12);
            }
        }
    }
    SUBCASE("normalization and single-atom trivials") {
        CHECK(comb_characteristic_closed_form(4, 2.0, 0.0) == cdouble{1.0, 0.0});
        for (double omega : {0.1, 3.0, 17.0}) {
            CHECK(std::abs(comb_characteristic_closed_form(1, 1.0, omega)) ==
                  doctest::Approx(1.0).epsilon(1e-15));
        }
    }
    SUBCASE("revivals reach unit magnitude exactly, midpoints stay below") {
        for (int n : {2, 3, 5}) {
            const double rate = 0.5;
            for (int k = 1; k <= 3; ++k) {
                const double omega = 2.0 * kPi * n * rate * k;
                CHECK(std::abs(comb_characteristic_closed_form(n, rate, omega)) == 1.0);
            }
            for (int k = 0; k < 3; ++k) {
                const double midpoint = 2.0 * kPi * n * rate * (k + 0.5);
                CHECK(std::abs(comb_characteristic_closed_form(n, rate, midpoint)) <
                      1.0 - 1e-6);
            }
        }
    }
    SUBCASE("unit magnitude occurs only at revivals (grid scan, n >= 2)") {
        for (int n : {2, 3, 5}) {
            const double rate = 0.7;
            const double period = 2.0 * kPi * n * rate;
            for (int i = 1; i <= 631; ++i) {
                const double omega = 0.0513 * i;  // step incommensurate with the period
                const double cycles = omega / period;
                const bool at_revival = std::abs(cycles - std::round(cycles)) < 1e-3;
                const double mag = std::abs(comb_characteristic_closed_form(n, rate, omega));
                if (!at_revival) CHECK(mag < 1.0);
            }
        }
    }
    SUBCASE("matches the empirical variant built from the same atoms") {
        const int n = 3;
        const double rate = 1.0;
        const auto comb = TickDistribution::comb(n, rate);
        const auto empirical = TickDistribution::empirical(comb.atom_times(),
                                                           comb.atom_weights());
        for (int i = 0; i < 50; ++i) {
            const double omega = -6.0 + 0.25 * i;
            CHECK(std::abs(comb.centered_characteristic(omega) -
                           empirical.centered_characteristic(omega)) < 1e-12);
        }
    }
}

TEST_CASE("dephasing rate") {
    SUBCASE("gaussian rate is sigma^2 omega^2 / 2") {
        const auto dist = TickDistribution::gaussian(2.0, 0.4);
        for (double omega : {0.5, 1.0, 3.0}) {
            CHECK(dist.dephasing_rate(omega) ==
                  doctest::Approx(0.5 * 0.16 * omega * omega).epsilon(1e-12));
        }
        // strictly increasing in |omega|
        CHECK(dist.dephasing_rate(2.0) > dist.dephasing_rate(1.0));
        CHECK(dist.dephasing_rate(-3.0) > dist.dephasing_rate(2.0));
    }
    SUBCASE("dirac never dephases") {
        CHECK(TickDistribution::dirac(5.0).dephasing_rate(11.0) == 0.0);
    }
    SUBCASE("comb revival frequency does not dephase despite sigma > 0") {
        const auto dist = TickDistribution::comb(4, 1.0);
        REQUIRE(dist.variance() > 0.0);
        CHECK(dist.dephasing_rate(2.0 * kPi * 4.0) < 1e-12);
        CHECK(dist.dephasing_rate(2.0 * kPi * 4.0 * 0.5) > 0.1);
    }
}

TEST_CASE("characteristic function properties") {
    const TickDistribution dists[] = {
        TickDistribution::gaussian(1.0, 0.3), TickDistribution::exponential(1.7),
        TickDistribution::comb(5, 0.9),
        TickDistribution::empirical({0.2, 0.9, 1.4, 3.0}, {0.1, 0.4, 0.3, 0.2})};
    SUBCASE("|phi0| <= 1 and phi0(-w) = conj(phi0(w))") {
        for (const auto& dist : dists) {
            for (int i = 0; i <= 60; ++i) {
                const double omega = -15.0 + 0.5 * i;
                const cdouble phi = dist.centered_characteristic(omega);
                CHECK(std::abs(phi) <= 1.0);
                CHECK(std::abs(phi - std::conj(dist.centered_characteristic(-omega))) < 1e-12);
            }
            CHECK(std::abs(dist.centered_characteristic(0.0) - cdouble{1.0}) < 1e-12);
        }
    }
    SUBCASE("small-omega expansion 1 - |phi0| ~ sigma^2 omega^2 / 2") {
        for (const auto& dist : dists) {
            const double sigma = std::sqrt(dist.variance());
            const double omega = 1e-3 / sigma;
            const double deficit = 1.0 - std::abs(dist.centered_characteristic(omega));
            const double expected = 0.5 * dist.variance() * omega * omega;
            CHECK(deficit / expected == doctest::Approx(1.0).epsilon(0.01));
        }
    }
}

TEST_CASE("sampling statistics match the moments") {
    Rng rng(4711);
    SUBCASE("dirac always returns tau") {
        const auto dist = TickDistribution::dirac(2.0);
        for (int i = 0; i < 100; ++i) CHECK(dist.sample(rng) == 2.0);
    }
    SUBCASE("gaussian mean within 5 standard errors") {
        const auto dist = TickDistribution::gaussian(kPi, 0.2);
        const int draws = 1000000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double t = dist.sample(rng);
            sum += t;
            sum_sq += t * t;
        }
        const double mean = sum / draws;
        const double var = sum_sq / draws - mean * mean;
        CHECK(std::abs(mean - kPi) < 5.0 * 0.2 / std::sqrt(draws));
        CHECK(var == doctest::Approx(0.04).epsilon(0.02));
    }
    SUBCASE("comb atoms drawn with equal frequency") {
        const auto dist = TickDistribution::comb(2, 1.0);
        const int draws = 1000000;
        int hits = 0;
        for (int i = 0; i < draws; ++i) hits += (dist.sample(rng) == 0.0) ? 1 : 0;
        CHECK(std::abs(hits / static_cast<double>(draws) - 0.5) < 0.002);
    }
    SUBCASE("exponential mean within 5 standard errors") {
        const auto dist = TickDistribution::exponential(0.9);
        const int draws = 500000;
        double sum = 0.0;
        for (int i = 0; i < draws; ++i) sum += dist.sample(rng);
        CHECK(std::abs(sum / draws - 0.9) < 5.0 * 0.9 / std::sqrt(draws));
    }
}

TEST_CASE("empirical CSV loading") {
    SUBCASE("header row accepted, weights renormalized") {
        const auto path = write_temp_csv("ok",
                                         "time_seconds,weight\n0.5,0.2500001\n1.5,0.75\n");
        const auto dist = TickDistribution::empirical_from_csv(path);
        CHECK(dist.atom_times().size() == 2);
        CHECK(dist.atom_weights()[0] + dist.atom_weights()[1] == doctest::Approx(1.0));
        std::remove(path.c_str());
    }
    SUBCASE("weight sum far from 1 rejected") {
        const auto path = write_temp_csv("badsum", "0.5,0.3\n1.5,0.3\n");
        CHECK_THROWS_AS(TickDistribution::empirical_from_csv(path), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("negative weight rejected") {
        const auto path = write_temp_csv("neg", "0.5,-0.5\n1.5,1.5\n");
        CHECK_THROWS_AS(TickDistribution::empirical_from_csv(path), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("missing file rejected") {
        CHECK_THROWS_AS(TickDistribution::empirical_from_csv("does_not_exist.csv"),
                        std::runtime_error);
    }
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(TickDistribution::dirac(0.0), std::invalid_argument);
    CHECK_THROWS_AS(TickDistribution::gaussian(1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(TickDistribution::exponential(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(TickDistribution::comb(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TickDistribution::comb(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TickDistribution::empirical({1.0}, {0.9}), std::invalid_argument);
    CHECK_THROWS_AS(TickDistribution::empirical({1.0, 2.0}, {1.5, -0.5}),
                    std::invalid_argument);
}
