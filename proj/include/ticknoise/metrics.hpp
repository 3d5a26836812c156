#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ticknoise/linalg.hpp"

namespace ticknoise {

struct FidelityReport {
    enum class Method { closed_form, kraus_trace, haar_monte_carlo };

    double value = 0.0;
    Method method = Method::closed_form;
    std::optional<double> standard_error;  // present iff haar_monte_carlo
};

std::string to_string(FidelityReport::Method method);

// Average gate fidelity of a noise channel from its Kraus operators:
// (sum_i |tr K_i|^2 + d) / (d^2 + d). Requires a complete Kraus set.
FidelityReport average_gate_fidelity_from_kraus(const std::vector<ComplexMatrix>& kraus,
                                                std::size_t d);

// (2 + e^{-theta^2 / 2N}) / 3 for a pulse of area theta timed at accuracy N.
double single_gate_fidelity(double theta, double accuracy_n);

// Whole-space (d = 4) fidelity of the ill-timed CNOT: (7 + 3 e^{-gamma}) / 10.
double cnot_fullspace_fidelity(double gamma);

// Upsilon^2 = sum_i (tr(K_i† K_i) / d)^2 and the unitarity
// u = (d^2 Upsilon^2 - 1) / (d^2 - 1).
double upsilon_squared_from_kraus(const std::vector<ComplexMatrix>& kraus, std::size_t d);
double unitarity_from_kraus(const std::vector<ComplexMatrix>& kraus, std::size_t d);

// Closed form Upsilon^2 = ((1 + e^{-pi^2/N}) / 2)^L for L CNOTs timed at
// accuracy N, and the exhaustive 2^L Kraus-product evaluation of the same
// quantity via explicit matrix products (oracle for the closed form).
double circuit_unitarity_gamma(long cnot_count, double accuracy_n);
double upsilon_squared_bruteforce(int cnot_count, double accuracy_n);

// Fidelity upper bound (2^n Upsilon + 1) / (2^n + 1) with Upsilon from the
// closed form above; monotone decreasing in L and increasing in N.
double circuit_fidelity_bound(int qubits, long cnot_count, double accuracy_n);

// Circuit-shape summary feeding the bound: qubit count, CNOTs per layer
// (2 l_t <= n each), and the accuracy shared by every gate clock.
struct CircuitNoiseProfile {
    int qubits;
    std::vector<int> layer_counts;
    double accuracy_n;

    long total_cnots() const;
    void validate() const;
    double fidelity_bound() const;
};

// Smallest clock accuracy whose bound reaches the threshold, by bisection to
// relative tolerance 1e-9. Throws if the threshold is outside (bound(0+), 1).
double required_accuracy(int qubits, long cnot_count, double fidelity_threshold);

// Large-n, large-N expansion L pi^2 / (4 ln 2) of the 0.5-threshold budget;
// cross-check only, the bisection solver is authoritative.
double required_accuracy_asymptotic(long cnot_count);

// sigma = tau / sqrt(N)
double timing_uncertainty(double tau, double accuracy_n);

// Accuracy ceiling N <= dS_tick / 2 from the entropy produced per tick.
double entropy_accuracy_bound(double entropy_per_tick);

// Haar Monte Carlo estimate of the average gate fidelity of a Kraus channel:
// mean over Haar states of sum_i |<psi|K_i|psi>|^2, with standard error.
// Sharded and reduced deterministically; parallel == serial bitwise.
FidelityReport haar_average_fidelity_mc(const std::vector<ComplexMatrix>& kraus, std::size_t d,
                                        std::size_t samples, std::uint64_t seed);
FidelityReport haar_average_fidelity_mc_serial(const std::vector<ComplexMatrix>& kraus,
                                               std::size_t d, std::size_t samples,
                                               std::uint64_t seed);

}  // namespace ticknoise
