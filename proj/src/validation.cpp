#include "ticknoise/validation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "ticknoise/channel_io.hpp"
#include "ticknoise/channels.hpp"
#include "ticknoise/cooling.hpp"
#include "ticknoise/gates.hpp"
#include "ticknoise/metrics.hpp"

namespace ticknoise::validation {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

void check(SuiteReport& report, const std::string& name, bool ok, const std::string& detail) {
    report.checks.push_back({name, ok, detail});
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
    ComplexMatrix h(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        h(r, r) = normal_draw(rng);
        for (std::size_t c = r + 1; c < dim; ++c) {
            h(r, c) = cdouble{normal_draw(rng), normal_draw(rng)};
            h(c, r) = std::conj(h(r, c));
        }
    }
    return h;
}

DensityMatrix random_density(std::size_t dim, Rng& rng) {
    return DensityMatrix::pure(haar_random_state(dim, rng));
}

// ---------------------------------------------------------------------------
// channels: Monte Carlo vs spectral filter, Kraus vs filter, CPTP
// ---------------------------------------------------------------------------
SuiteReport channels_suite(std::uint64_t seed, std::size_t mc_samples) {
    SuiteReport report{"channels", seed, {}};
    Rng rng(splitmix64(seed));

    double worst = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = (trial % 2 == 0) ? 2 : 4;
        const auto h = SpectralHamiltonian::from_matrix(random_hermitian(dim, rng));
        const double tau = 0.5 + 3.0 * uniform_unit(rng);
        const double sigma = 0.1 + 1.5 * uniform_unit(rng);
        const auto dist = TickDistribution::gaussian(tau, sigma);
        const auto rho = random_density(dim, rng);

        const auto analytic = apply_channel(build_channel(h, dist), rho);
        const auto sampled = monte_carlo_average(h, dist, rho, mc_samples, rng());
        worst = std::max(worst, trace_distance(sampled, analytic));
        ok = ok && worst < 0.01;
    }
    check(report, "gaussian_filter_identity_20cases", ok,
          "max trace distance " + fmt(worst) + " (tol 0.01, M=" + std::to_string(mc_samples) +
              ")");

    {
        // Asymmetric distribution pins the sign convention of the filter phase.
        const auto h = SpectralHamiltonian::from_matrix(random_hermitian(2, rng));
        const auto dist = TickDistribution::exponential(1.3);
        const auto rho = random_density(2, rng);
        const double dist_mc = trace_distance(
            monte_carlo_average(h, dist, rho, mc_samples, rng()),
            apply_channel(build_channel(h, dist), rho));
        check(report, "exponential_phase_convention", dist_mc < 0.01,
              "trace distance " + fmt(dist_mc) + " (tol 0.01)");
    }

    {
        const auto h = qubit_generator(1.0);
        const auto dist = TickDistribution::dirac(0.9);
        const auto rho = random_density(2, rng);
        const double diff = trace_distance(monte_carlo_average(h, dist, rho, 128, rng()),
                                           evolve_unitary(rho, h, 0.9));
        check(report, "dirac_reproduces_unitary", diff < 1e-12,
              "trace distance " + fmt(diff) + " (tol 1e-12)");
    }

    {
        double worst_gate = 0.0;
        const double sigma = 0.8, tau = kPi;
        const auto dist = TickDistribution::gaussian(tau, sigma);
        const double gamma = 0.5 * sigma * sigma;  // unit gap for all three gates
        const struct {
            const char* name;
            SpectralHamiltonian gen;
            std::vector<ComplexMatrix> kraus;
        } cases[] = {
            {"qubit", qubit_generator(1.0), qubit_dephasing_kraus(gamma)},
            {"cnot", cnot_generator(), cnot_dephasing_kraus(gamma)},
            {"swap", swap_generator(), swap_dephasing_kraus(gamma)},
        };
        for (const auto& c : cases) {
            const auto channel = build_channel(c.gen, dist);
            for (int k = 0; k < 5; ++k) {
                const auto rho = random_density(c.gen.dim(), rng);
                const double diff = trace_distance(apply_dephasing_only(channel, rho),
                                                   apply_kraus(c.kraus, rho));
                worst_gate = std::max(worst_gate, diff);
            }
        }
        check(report, "kraus_equals_spectral_filter", worst_gate < 1e-12,
              "max trace distance " + fmt(worst_gate) + " (tol 1e-12)");
    }

    {
        // Comb at a revival of the unit gap: no decoherence, pure unitary.
        const auto h = cnot_generator();
        const auto dist = TickDistribution::comb(3, 1.0 / (6.0 * kPi));  // mean 2*pi
        const auto rho = random_density(4, rng);
        const auto ideal = evolve_unitary(rho, h, dist.mean());
        const double diff_analytic = trace_distance(apply_channel(build_channel(h, dist), rho),
                                                    ideal);
        const double diff_mc = trace_distance(monte_carlo_average(h, dist, rho, 10000, rng()),
                                              ideal);
        check(report, "comb_revival_no_dephasing", diff_analytic < 1e-12 && diff_mc < 0.02,
              "analytic " + fmt(diff_analytic) + ", MC " + fmt(diff_mc));
    }

    {
        double min_eig = 0.0;
        const auto h4 = SpectralHamiltonian::from_matrix(random_hermitian(4, rng));
        const TickDistribution dists[] = {
            TickDistribution::gaussian(1.0, 0.7), TickDistribution::exponential(0.8),
            TickDistribution::comb(4, 0.6),
            TickDistribution::empirical({0.1, 0.5, 2.0}, {0.25, 0.5, 0.25})};
        for (const auto& dist : dists) {
            min_eig = std::min(min_eig, choi_min_eigenvalue(build_channel(h4, dist)));
        }
        check(report, "choi_positive_semidefinite", min_eig >= -1e-9,
              "min Choi eigenvalue " + fmt(min_eig) + " (tol -1e-9)");
    }

    {
        const auto channel = build_channel(cnot_generator(), TickDistribution::gaussian(kPi, 0.5));
        const auto reloaded = channel_from_json_text(channel_to_json_text(channel));
        bool round_trip = max_abs_diff(channel.filter, reloaded.filter) < 1e-15;
        try {
            validate_channel(reloaded);
        } catch (const std::exception&) {
            round_trip = false;
        }
        check(report, "channel_dump_round_trip", round_trip,
              round_trip ? "reloaded channel passes CPTP validation" : "round trip failed");
    }
    return report;
}

// ---------------------------------------------------------------------------
// fidelity: closed forms vs Kraus traces vs Haar Monte Carlo
// ---------------------------------------------------------------------------
SuiteReport fidelity_suite(std::uint64_t seed, std::size_t mc_samples) {
    SuiteReport report{"fidelity", seed, {}};
    Rng rng(splitmix64(seed ^ 0x5eedULL));

    {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double theta = 0.1 + 0.12 * i;
            const double accuracy = 1.0 + 40.0 * uniform_unit(rng);
            const double closed = single_gate_fidelity(theta, accuracy);
            const double traced =
                average_gate_fidelity_from_kraus(
                    qubit_dephasing_kraus(theta * theta / (2.0 * accuracy)), 2)
                    .value;
            worst = std::max(worst, std::abs(closed - traced));
        }
        check(report, "pulse_area_formula_vs_kraus_trace_grid", worst < 1e-14,
              "max |closed - kraus| " + fmt(worst) + " (tol 1e-14)");
    }

    {
        bool ok = true;
        std::string detail;
        const double gammas[] = {0.1, 0.5, 1.0, 2.0};
        const std::size_t samples = std::max<std::size_t>(mc_samples / 20, 10000);
        for (const double gamma : gammas) {
            const auto qubit = haar_average_fidelity_mc(qubit_dephasing_kraus(gamma), 2, samples,
                                                        rng());
            const double qubit_exact = (2.0 + std::exp(-gamma)) / 3.0;
            const auto cnot = haar_average_fidelity_mc(cnot_dephasing_kraus(gamma), 4, samples,
                                                       rng());
            const double cnot_exact = cnot_fullspace_fidelity(gamma);
            ok = ok && std::abs(qubit.value - qubit_exact) <= 3.0 * *qubit.standard_error;
            ok = ok && std::abs(cnot.value - cnot_exact) <= 3.0 * *cnot.standard_error;
        }
        check(report, "haar_mc_matches_closed_forms_3se", ok,
              "qubit and cnot channels at gamma in {0.1, 0.5, 1, 2}, " +
                  std::to_string(samples) + " samples");
    }

    {
        double worst = 0.0;
        for (const double gamma : {0.0, 0.1, 1.0, 10.0}) {
            const double traced =
                average_gate_fidelity_from_kraus(cnot_dephasing_kraus(gamma), 4).value;
            worst = std::max(worst, std::abs(traced - cnot_fullspace_fidelity(gamma)));
        }
        check(report, "cnot_fullspace_formula_vs_kraus_trace", worst < 1e-14,
              "max difference " + fmt(worst) + " (tol 1e-14)");
    }

    {
        const double identity = average_gate_fidelity_from_kraus({ComplexMatrix::identity(2)}, 2)
                                    .value;
        const double perfect_clock =
            single_gate_fidelity(kPi, std::numeric_limits<double>::infinity());
        check(report, "identity_channel_trivials",
              identity == 1.0 && perfect_clock == 1.0 && single_gate_fidelity(0.0, 5.0) == 1.0,
              "identity F " + fmt(identity) + ", N=inf F " + fmt(perfect_clock));
    }
    return report;
}

// ---------------------------------------------------------------------------
// unitarity: brute-force Kraus products vs the closed form
// ---------------------------------------------------------------------------
SuiteReport unitarity_suite(std::uint64_t seed, std::size_t /*mc_samples*/) {
    SuiteReport report{"unitarity", seed, {}};

    {
        double worst = 0.0;
        for (int cnots = 0; cnots <= 6; ++cnots) {
            for (const double accuracy : {5.0, 50.0, 500.0}) {
                const double brute = upsilon_squared_bruteforce(cnots, accuracy);
                const double closed = circuit_unitarity_gamma(cnots, accuracy);
                worst = std::max(worst, std::abs(brute - closed));
            }
        }
        check(report, "bruteforce_vs_closed_form_L_le_6", worst < 1e-12,
              "max |enumeration - closed| " + fmt(worst) + " (tol 1e-12)");
    }

    {
        double worst = 0.0;
        for (int cnots = 0; cnots <= 6; ++cnots) {
            for (const double accuracy : {5.0, 50.0, 500.0}) {
                const double upsilon = std::sqrt(upsilon_squared_bruteforce(cnots, accuracy));
                const double relation = (4.0 * upsilon + 1.0) / 5.0;
                worst = std::max(worst,
                                 std::abs(relation - circuit_fidelity_bound(2, cnots, accuracy)));
            }
        }
        check(report, "bound_follows_unitarity_relation", worst < 1e-12,
              "max |(d*Y+1)/(d+1) - bound| " + fmt(worst) + " (tol 1e-12)");
    }

    {
        const double inf = std::numeric_limits<double>::infinity();
        const double full_dephasing = unitarity_from_kraus(qubit_dephasing_kraus(inf), 2);
        check(report, "full_dephasing_unitarity_one_third",
              std::abs(full_dephasing - 1.0 / 3.0) < 1e-15, "u " + fmt(full_dephasing));
    }

    {
        double worst = 0.0;
        for (const double accuracy : {5.0, 50.0, 500.0}) {
            const double single = circuit_unitarity_gamma(1, accuracy);
            for (long cnots = 2; cnots <= 12; ++cnots) {
                worst = std::max(worst, std::abs(circuit_unitarity_gamma(cnots, accuracy) -
                                                 std::pow(single, cnots)));
            }
        }
        check(report, "multiplicative_over_gates", worst < 1e-12,
              "max deviation " + fmt(worst) + " (tol 1e-12)");
    }
    return report;
}

// ---------------------------------------------------------------------------
// cooling: full two-qubit simulation vs the closed-form recurrence
// ---------------------------------------------------------------------------
SuiteReport cooling_suite(std::uint64_t seed, std::size_t /*mc_samples*/) {
    SuiteReport report{"cooling", seed, {}};
    Rng rng(splitmix64(seed ^ 0xc001ULL));

    {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double r_s = 0.05 + 0.55 * uniform_unit(rng);
            const double z_v = 0.999 * uniform_unit(rng);
            const double r_v = 0.5 * (1.0 + z_v);
            if (r_v <= r_s) continue;
            const double p_v = 0.05 + 0.9 * uniform_unit(rng);
            const double sigma = 2.0 * uniform_unit(rng);
            const auto dist = TickDistribution::gaussian(kPi, sigma);

            CoolingConfig config{r_s, r_v, p_v, (kPi / std::max(sigma, 1e-12)) *
                                                    (kPi / std::max(sigma, 1e-12)),
                                 0.1};
            if (sigma == 0.0) config.accuracy_n = std::numeric_limits<double>::infinity();
            const ThermalQubit system{0.0, 1.0, 2.0 * r_s - 1.0, r_s};
            const double simulated = cooling_step_full_sim(system, z_v, p_v, dist);
            const double closed = ground_population_after_n(config, 1.0);
            worst = std::max(worst, std::abs(simulated - closed));
        }
        check(report, "one_step_full_sim_identity_sweep", worst < 1e-12,
              "max |sim - closed| " + fmt(worst) + " over 100 configs (tol 1e-12)");
    }

    {
        const double p_perfect = swap_error_probability(std::numeric_limits<double>::infinity());
        const double p_useless = swap_error_probability(1e-300);
        check(report, "swap_error_limits_exact", p_perfect == 0.0 && p_useless == 0.5,
              "p(N=inf) " + fmt(p_perfect) + ", p(N->0) " + fmt(p_useless));
    }

    {
        const CoolingConfig config{0.5, 0.999, 0.1, kPi * kPi / 2.0, 0.1};
        const double target_gap = 1e-6;
        const long steps = static_cast<long>(
            std::ceil(std::log(target_gap / (config.r_v - config.r_s)) /
                      std::log(1.0 - config.effective_pv())));
        const double reached = ground_population_after_n(config, static_cast<double>(steps));
        check(report, "convergence_step_count", std::abs(reached - config.r_v) < target_gap,
              "|r(n) - r_v| " + fmt(std::abs(reached - config.r_v)) + " at n=" +
                  std::to_string(steps));
    }

    {
        double worst = 0.0;
        const CoolingConfig config{0.5, 0.999, 0.1, 9.0, 0.1};
        for (int n = 5; n <= 40; n += 5) {
            const double direct = (ground_population_after_n(config, n + 0.05) -
                                   ground_population_after_n(config, n - 0.05)) /
                                  0.1;
            worst = std::max(worst, std::abs(direct - cooling_rate(config, n, 0.1)));
        }
        check(report, "rate_equals_central_difference", worst < 1e-12,
              "max |difference - formula| " + fmt(worst) + " (tol 1e-12)");
    }
    return report;
}

}  // namespace

int SuiteReport::passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.passed ? 1 : 0;
    return n;
}

int SuiteReport::failed() const { return static_cast<int>(checks.size()) - passed(); }

std::vector<std::string> suite_names() { return {"channels", "fidelity", "unitarity", "cooling"}; }

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t mc_samples) {
    if (name == "channels") return channels_suite(seed, mc_samples);
    if (name == "fidelity") return fidelity_suite(seed, mc_samples);
    if (name == "unitarity") return unitarity_suite(seed, mc_samples);
    if (name == "cooling") return cooling_suite(seed, mc_samples);
    throw std::invalid_argument("unknown validation suite: " + name);
}

std::string reports_to_json(const std::vector<SuiteReport>& reports) {
    nlohmann::ordered_json out;
    out["suites"] = nlohmann::ordered_json::array();
    int total_passed = 0, total_failed = 0;
    for (const auto& report : reports) {
        nlohmann::ordered_json js;
        js["suite"] = report.suite;
        js["seed"] = report.seed;
        js["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : report.checks) {
            js["checks"].push_back({{"name", c.name},
                                    {"status", c.passed ? "pass" : "fail"},
                                    {"detail", c.detail}});
        }
        js["passed"] = report.passed();
        js["failed"] = report.failed();
        total_passed += report.passed();
        total_failed += report.failed();
        out["suites"].push_back(std::move(js));
    }
    out["passed"] = total_passed;
    out["failed"] = total_failed;
    return out.dump(2);
}

}  // namespace ticknoise::validation
