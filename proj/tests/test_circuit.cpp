#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "ticknoise/channels.hpp"
#include "ticknoise/circuit.hpp"
#include "ticknoise/gates.hpp"

using namespace ticknoise;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

CircuitSpec single_cnot(int n = 2, int control = 0, int target = 1) {
    CircuitSpec spec;
    spec.n = n;
    spec.layers = {{{control, target}}};
    return spec;
}

}  // namespace

TEST_CASE("ideal circuit unitary") {
    SUBCASE("empty circuit is the identity") {
        CircuitSpec spec;
        spec.n = 3;
        CHECK(max_abs_diff(ideal_circuit_unitary(spec), ComplexMatrix::identity(8)) == 0.0);
    }
    SUBCASE("single gate reproduces the textbook matrix") {
        CHECK(max_abs_diff(ideal_circuit_unitary(single_cnot()), cnot_matrix()) == 0.0);
    }
    SUBCASE("two sequential CNOTs cancel") {
        CircuitSpec spec;
        spec.n = 2;
        spec.layers = {{{0, 1}}, {{0, 1}}};
        CHECK(max_abs_diff(ideal_circuit_unitary(spec), ComplexMatrix::identity(4)) == 0.0);
    }
    SUBCASE("result is unitary for a random layered circuit") {
        Rng rng(8);
        const auto spec = random_circuit(5, 6, 2, rng);
        CHECK(ideal_circuit_unitary(spec).is_unitary(1e-10));
    }
    SUBCASE("oversize register rejected") {
        CircuitSpec spec;
        spec.n = 11;
        CHECK_THROWS_AS(ideal_circuit_unitary(spec), std::invalid_argument);
    }
}

TEST_CASE("circuit spec validation") {
    CircuitSpec overlap;
    overlap.n = 3;
    overlap.layers = {{{0, 1}, {1, 2}}};  // qubit 1 reused in one layer
    CHECK_THROWS_AS(overlap.validate(), std::invalid_argument);

    CircuitSpec self_loop;
    self_loop.n = 2;
    self_loop.layers = {{{1, 1}}};
    CHECK_THROWS_AS(self_loop.validate(), std::invalid_argument);

    CircuitSpec out_of_range;
    out_of_range.n = 2;
    out_of_range.layers = {{{0, 2}}};
    CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);

    CircuitSpec across_layers;  // reuse across layers is allowed
    across_layers.n = 2;
    across_layers.layers = {{{0, 1}}, {{1, 0}}};
    CHECK_NOTHROW(across_layers.validate());
}

TEST_CASE("circuit spec json round trip") {
    const auto spec = CircuitSpec::from_json_text(
        R"({"n": 4, "layers": [[[0,1],[2,3]], [[1,2]]]})");
    CHECK(spec.n == 4);
    CHECK(spec.total_gates() == 3);
    const auto round = CircuitSpec::from_json_text(spec.to_json_text());
    CHECK(round.layers == spec.layers);

    CHECK_THROWS_AS(CircuitSpec::from_json_text("{\"n\": 2}"), std::invalid_argument);
    CHECK_THROWS_AS(CircuitSpec::from_json_text(R"({"n": 2, "layers": [[[0,0]]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(CircuitSpec::from_json_text("nonsense"), std::invalid_argument);
}

TEST_CASE("noisy simulation limits and oracles") {
    Rng rng(99);

    SUBCASE("infinite accuracy reproduces the ideal circuit") {
        const auto spec = random_circuit(4, 5, 2, rng);
        const auto rho = DensityMatrix::pure(haar_random_state(16, rng));
        const auto result = simulate_noisy_circuit(spec, kInf, rho);
        const auto ideal = conjugate_with(ideal_circuit_unitary(spec), rho.mat());
        CHECK(max_abs_diff(result.rho_out.mat(), ideal) < 1e-12);
        for (double tr : result.per_layer_trace_check) {
            CHECK(tr == doctest::Approx(1.0).epsilon(1e-10));
        }
    }

    SUBCASE("fast permutation path equals the dense kraus reference") {
        for (int trial = 0; trial < 3; ++trial) {
            const auto spec = random_circuit(3, 4, 1, rng);
            const auto rho = DensityMatrix::pure(haar_random_state(8, rng));
            const auto fast = simulate_noisy_circuit(spec, 15.0, rho);
            const auto dense = simulate_noisy_circuit_reference(spec, 15.0, rho);
            CHECK(max_abs_diff(fast.rho_out.mat(), dense.rho_out.mat()) < 1e-13);
        }
    }

    SUBCASE("single gate matches the dephasing channel built from the generator") {
        // Embedded per-gate noise equals apply_channel with a Gaussian whose
        // variance matches gamma = pi^2/2N at the unit gap.
        const double accuracy = kPi * kPi / 2.0;  // gamma = 1
        const double sigma = kPi / std::sqrt(accuracy);
        const auto dist = TickDistribution::gaussian(kPi, sigma);
        const auto channel = build_channel(cnot_generator(), dist);
        for (int trial = 0; trial < 4; ++trial) {
            const auto rho = DensityMatrix::pure(haar_random_state(4, rng));
            const auto sim = simulate_noisy_circuit(single_cnot(), accuracy, rho);
            CHECK(max_abs_diff(sim.rho_out.mat(), apply_channel(channel, rho).mat()) < 1e-12);
        }
    }

    SUBCASE("population input |10><10| mixes toward |11><11| by the kraus weights") {
        // D(U rho U) = a^2 |11><11| + b^2 |10><10|: the |1+>/|1-> coherence
        // in the rotated state is damped, so the transfer is not exact.
        const double accuracy = kPi * kPi / 2.0;  // gamma = 1
        const auto rho = DensityMatrix::pure(basis_state(4, 2));
        const auto sim = simulate_noisy_circuit(single_cnot(), accuracy, rho);
        const double keep = 0.5 * (1.0 + std::exp(-1.0));
        CHECK(sim.rho_out.mat()(3, 3).real() == doctest::Approx(keep).epsilon(1e-12));
        CHECK(sim.rho_out.mat()(2, 2).real() == doctest::Approx(1.0 - keep).epsilon(1e-12));
        // and the channels-module route agrees exactly
        const auto channel = build_channel(cnot_generator(),
                                           TickDistribution::gaussian(kPi, std::sqrt(2.0)));
        CHECK(max_abs_diff(sim.rho_out.mat(), apply_channel(channel, rho).mat()) < 1e-12);
    }

    SUBCASE("|+>|0> coherence between |00> and |11> scales per the channel") {
        const double accuracy = kPi * kPi / 2.0;
        const PureState plus_zero({kInvSqrt2, 0.0, kInvSqrt2, 0.0});
        const auto rho = DensityMatrix::pure(plus_zero);
        const auto sim = simulate_noisy_circuit(single_cnot(), accuracy, rho);
        const auto channel = build_channel(cnot_generator(),
                                           TickDistribution::gaussian(kPi, std::sqrt(2.0)));
        CHECK(max_abs_diff(sim.rho_out.mat(), apply_channel(channel, rho).mat()) < 1e-12);
        // |00><11| coherence survives with magnitude (1+e^-1)/4 (from the
        // half-weight |1-> component of |11>).
        CHECK(std::abs(sim.rho_out.mat()(0, 3)) ==
              doctest::Approx(0.25 * (1.0 + std::exp(-1.0))).epsilon(1e-12));
    }

    SUBCASE("gates within a layer commute: order is irrelevant") {
        CircuitSpec forward;
        forward.n = 4;
        forward.layers = {{{0, 1}, {2, 3}}};
        CircuitSpec reversed;
        reversed.n = 4;
        reversed.layers = {{{2, 3}, {0, 1}}};
        const auto rho = DensityMatrix::pure(haar_random_state(16, rng));
        const auto a = simulate_noisy_circuit(forward, 9.0, rho);
        const auto b = simulate_noisy_circuit(reversed, 9.0, rho);
        CHECK(trace_distance(a.rho_out, b.rho_out) < 1e-12);
    }

    SUBCASE("oversize and mismatched inputs rejected") {
        CircuitSpec big;
        big.n = 7;
        CHECK_THROWS_AS(simulate_noisy_circuit(big, 10.0, DensityMatrix::maximally_mixed(128)),
                        std::invalid_argument);
        CHECK_THROWS_AS(simulate_noisy_circuit(single_cnot(), 10.0,
                                               DensityMatrix::maximally_mixed(2)),
                        std::invalid_argument);
        CHECK_THROWS_AS(simulate_noisy_circuit(single_cnot(), 0.0,
                                               DensityMatrix::maximally_mixed(4)),
                        std::invalid_argument);
    }
}

TEST_CASE("empirical average fidelity") {
    Rng rng(17);

    SUBCASE("empty circuit scores exactly 1") {
        CircuitSpec spec;
        spec.n = 2;
        const auto report = empirical_average_fidelity(spec, 10.0, 200, 4);
        CHECK(report.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(*report.standard_error < 1e-12);
    }

    SUBCASE("single CNOT matches the whole-space closed form") {
        const double gamma = kPi * kPi / 20.0;
        const auto report = empirical_average_fidelity(single_cnot(), 10.0, 10000, 21);
        const double exact = (7.0 + 3.0 * std::exp(-gamma)) / 10.0;
        CHECK(std::abs(report.value - exact) <= 3.0 * *report.standard_error);
    }

    SUBCASE("estimator agrees with the exact branch enumeration") {
        for (int trial = 0; trial < 3; ++trial) {
            const auto spec = random_circuit(4, 4, 2, rng);
            for (double accuracy : {10.0, 50.0}) {
                const auto report = empirical_average_fidelity(spec, accuracy, 10000,
                                                               22 + trial);
                const double exact = exact_average_fidelity(spec, accuracy);
                CHECK(std::abs(report.value - exact) <= 3.0 * *report.standard_error);
            }
        }
    }

    SUBCASE("serial equals parallel bitwise") {
        const auto spec = random_circuit(3, 3, 1, rng);
        const auto a = empirical_average_fidelity(spec, 25.0, 5000, 77);
        const auto b = empirical_average_fidelity_serial(spec, 25.0, 5000, 77);
        CHECK(a.value == b.value);
        CHECK(*a.standard_error == *b.standard_error);
    }

    SUBCASE("sample floor enforced") {
        CHECK_THROWS_AS(empirical_average_fidelity(single_cnot(), 10.0, 50, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("random circuit generator") {
    Rng rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        const auto spec = random_circuit(6, 5, 3, rng);
        CHECK_NOTHROW(spec.validate());
        CHECK(spec.layers.size() == 5);
        for (const auto& layer : spec.layers) {
            CHECK(layer.size() >= 1);
            CHECK(layer.size() <= 3);
        }
    }
    // seeded determinism
    Rng a(7), b(7);
    CHECK(random_circuit(4, 3, 2, a).to_json_text() == random_circuit(4, 3, 2, b).to_json_text());
}

TEST_CASE("figure tables") {
    SUBCASE("bound rows start at 1 for L = 0") {
        const auto rows = fidelity_bound_table(20, 1, {10.0, 100.0}, 5);
        REQUIRE(rows.size() == 12);
        CHECK(rows[0].cnot_count == 0);
        CHECK(rows[0].bound == 1.0);
        CHECK(rows[6].cnot_count == 0);
        CHECK(rows[6].bound == 1.0);
        // monotone decreasing along each curve
        for (std::size_t i = 1; i < 6; ++i) CHECK(rows[i].bound <= rows[i - 1].bound);
    }
    SUBCASE("required N depends only on the product m * l_t") {
        const auto rows = accuracy_budget_table(20, {1, 4}, 400, 0.5, 3);
        // depth grid {1, 20, 400}: the (m=400, lt=1) and (m=100..) rows follow
        // required_accuracy; check the structural property directly.
        const double n_a = required_accuracy(20, 400 * 1, 0.5);
        const double n_b = required_accuracy(20, 100 * 4, 0.5);
        CHECK(n_a == doctest::Approx(n_b).epsilon(1e-12));
        for (const auto& row : rows) {
            CHECK(row.required_n ==
                  doctest::Approx(required_accuracy(20, row.depth * row.gates_per_layer, 0.5))
                      .epsilon(1e-12));
        }
    }
    SUBCASE("quadrupling l_t at fixed m equals quadrupling m at fixed l_t") {
        const double a = required_accuracy(20, 50 * 4, 0.5);
        const double b = required_accuracy(20, 200 * 1, 0.5);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("exact fidelity oracle") {
    SUBCASE("empty circuit and perfect clock give 1") {
        CircuitSpec spec;
        spec.n = 3;
        CHECK(exact_average_fidelity(spec, 7.0) == 1.0);
        Rng rng(1);
        CHECK(exact_average_fidelity(random_circuit(3, 4, 1, rng), kInf) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("single gate reduces to the d = 4 kraus-trace value") {
        for (double accuracy : {5.0, 10.0, 100.0}) {
            const double gamma = kPi * kPi / (2.0 * accuracy);
            CHECK(exact_average_fidelity(single_cnot(), accuracy) ==
                  doctest::Approx((7.0 + 3.0 * std::exp(-gamma)) / 10.0).epsilon(1e-14));
        }
    }
    SUBCASE("repeated same-pair gates compose to gamma_total = L * gamma") {
        CircuitSpec spec;
        spec.n = 2;
        spec.layers = {{{0, 1}}, {{0, 1}}, {{0, 1}}};
        const double accuracy = 8.0;
        const double gamma = kPi * kPi / (2.0 * accuracy);
        CHECK(exact_average_fidelity(spec, accuracy) ==
              doctest::Approx((7.0 + 3.0 * std::exp(-3.0 * gamma)) / 10.0).epsilon(1e-13));
    }
}

TEST_CASE("paper-style unitarity bound does not dominate the exact fidelity") {
    // The closed-form bound drops the |tr(K_i† K_j)|^2 cross terms of the
    // true unitarity, and the exact single-gate fidelity already exceeds it;
    // the acceptance suite reports this in full. Pinned here so any change
    // in behaviour is caught.
    const double exact = exact_average_fidelity(single_cnot(), 10.0);
    const double bound = circuit_fidelity_bound(2, 1, 10.0);
    CHECK(exact == doctest::Approx(0.883149).epsilon(1e-5));
    CHECK(bound == doctest::Approx(0.862772).epsilon(1e-5));
    CHECK(exact > bound);
}
