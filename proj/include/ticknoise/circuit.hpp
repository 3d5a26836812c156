#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ticknoise/metrics.hpp"
#include "ticknoise/qstate.hpp"

namespace ticknoise {

// Layered CNOT circuit. Within one layer the gate pairs must be disjoint
// (they commute and are timed in parallel); across layers qubits may repeat.
struct CircuitSpec {
    int n = 0;  // qubit count
    std::vector<std::vector<std::pair<int, int>>> layers;  // (control, target)

    long total_gates() const;
    void validate() const;  // throws std::invalid_argument on malformed specs

    static CircuitSpec from_json_text(const std::string& text);
    static CircuitSpec from_json_file(const std::string& path);
    std::string to_json_text() const;
};

struct SimulationResult {
    DensityMatrix rho_out;
    std::vector<double> per_layer_trace_check;
};

// Product of the layer unitaries (CNOTs are permutations, so this is exact).
// Supports n <= 10.
ComplexMatrix ideal_circuit_unitary(const CircuitSpec& spec);

// Density-matrix simulation with each gate followed by its timing-dephasing
// channel at gamma = pi^2 / 2N. The channel's reflection Kraus equals the
// CNOT itself, so each noisy gate reduces to
//   rho' = (1+e^-gamma)/2 * U rho U† + (1-e^-gamma)/2 * rho,
// applied via index permutations. Supports n <= 6.
SimulationResult simulate_noisy_circuit(const CircuitSpec& spec, double accuracy_n,
                                        const DensityMatrix& rho_in);

// Reference implementation via dense embedded Kraus operators and matrix
// products; kept for testing the permutation fast path against.
SimulationResult simulate_noisy_circuit_reference(const CircuitSpec& spec, double accuracy_n,
                                                  const DensityMatrix& rho_in);

// Haar Monte Carlo estimate of the circuit's average gate fidelity:
// mean over Haar inputs of <psi| U† E(|psi><psi|) U |psi>, with standard
// error. Sharded deterministically; parallel == serial bitwise.
FidelityReport empirical_average_fidelity(const CircuitSpec& spec, double accuracy_n,
                                          std::size_t samples, std::uint64_t seed);
FidelityReport empirical_average_fidelity_serial(const CircuitSpec& spec, double accuracy_n,
                                                 std::size_t samples, std::uint64_t seed);

// Exact average gate fidelity by enumerating all 2^L Kraus branches of the
// composite channel. Each noisy gate contributes {a U, b I}, so a branch is
// a scaled product of CNOT permutations and its trace is a fixed-point
// count. Supports L <= 20.
double exact_average_fidelity(const CircuitSpec& spec, double accuracy_n);

// Uniformly chosen disjoint pairs per layer; gate count per layer is drawn
// in [1, min(max_gates_per_layer, n/2)].
CircuitSpec random_circuit(int n, int layer_count, int max_gates_per_layer, Rng& rng);

// Figure-data rows: bound curves over the gate count, and required-accuracy
// curves over the depth at a fidelity threshold.
struct BoundRow {
    long cnot_count;
    double accuracy_n;
    double bound;
};
struct BudgetRow {
    long depth;
    int gates_per_layer;
    double required_n;
};

std::vector<BoundRow> fidelity_bound_table(int qubits, int gates_per_layer,
                                           const std::vector<double>& accuracies, long max_cnots);
std::vector<BudgetRow> accuracy_budget_table(int qubits, const std::vector<int>& gates_per_layer,
                                             long max_depth, double threshold, int points);

}  // namespace ticknoise
