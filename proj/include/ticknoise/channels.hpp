#pragma once

#include <cstdint>
#include <vector>

#include "ticknoise/qstate.hpp"
#include "ticknoise/spectral.hpp"
#include "ticknoise/ticks.hpp"

namespace ticknoise {

// CPTP map induced by timing a gate pulse with an imperfect tick: unitary
// phases times a dephasing filter, both diagonal in the generator eigenbasis.
// Stored in spectral-filter form, which is exact for arbitrary tick
// distributions; Kraus lists exist analytically only for the named gates.
struct DephasedGateChannel {
    SpectralHamiltonian generator;
    double target_duration;  // mean tick time tau
    ComplexMatrix filter;    // phi0(E_r - E_c), diagonal exactly 1
    std::vector<ComplexMatrix> kraus;  // optional, empty unless analytic

    std::size_t dim() const { return generator.dim(); }
};

// Filter entries phi0(E_r - E_c) from the tick distribution; the mean phase
// e^{-i (E_r - E_c) tau} is reapplied at application time.
DephasedGateChannel build_channel(const SpectralHamiltonian& h, const TickDistribution& dist);

// rho_rc <- e^{-i (E_r - E_c) tau} phi0(E_r - E_c) rho_rc in the eigenbasis.
DensityMatrix apply_channel(const DephasedGateChannel& ch, const DensityMatrix& rho);

// Filter only, ideal-unitary phase stripped: the pure noise component used by
// fidelity-to-target comparisons.
DensityMatrix apply_dephasing_only(const DephasedGateChannel& ch, const DensityMatrix& rho);

// Pulse parameters of a timed gate: dephasing magnitude, Rabi frequency, and
// pulse area theta = omega * tau.
struct GateNoiseParams {
    double gamma;  // >= 0
    double omega;
    double theta;  // omega * tau for a pulse of mean duration tau

    void validate() const;

    // Gamma from the distribution's coherence loss at the gap, theta from
    // its mean duration; theta = omega * tau holds by construction.
    static GateNoiseParams from_pulse(double omega, const TickDistribution& dist);
};

// Analytic two-element Kraus pairs for ill-timed gates with dephasing
// magnitude gamma >= 0 (gamma = +infinity is the full-dephasing limit).
std::vector<ComplexMatrix> qubit_dephasing_kraus(double gamma);  // {a I, b sigma_z}
std::vector<ComplexMatrix> cnot_dephasing_kraus(double gamma);   // {a I4, b (I4 - 2|1-><1-|)}
std::vector<ComplexMatrix> swap_dephasing_kraus(double gamma);   // {a I4, b (I4 - 2|Psi-><Psi-|)}

ComplexMatrix apply_kraus_raw(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& mat);
DensityMatrix apply_kraus(const std::vector<ComplexMatrix>& kraus, const DensityMatrix& rho);
bool kraus_complete(const std::vector<ComplexMatrix>& kraus, double tol = 1e-8);

// Monte Carlo estimate of the channel output: (1/M) sum_k e^{-iH t_k} rho
// e^{iH t_k} with t_k drawn from the tick distribution. Samples are split
// into fixed-size shards with independent seed-derived streams and reduced
// in shard order, so the result is bit-identical for any thread count and
// matches the serial reference exactly.
DensityMatrix monte_carlo_average(const SpectralHamiltonian& h, const TickDistribution& dist,
                                  const DensityMatrix& rho, std::size_t samples,
                                  std::uint64_t seed);
DensityMatrix monte_carlo_average_serial(const SpectralHamiltonian& h,
                                         const TickDistribution& dist, const DensityMatrix& rho,
                                         std::size_t samples, std::uint64_t seed);

// Choi matrix sum_ij |i><j| (x) Channel(|i><j|); PSD iff the map is
// completely positive. Eigenvalue check limited to dim <= 8 channels.
ComplexMatrix choi_matrix(const DephasedGateChannel& ch);
double choi_min_eigenvalue(const DephasedGateChannel& ch);

}  // namespace ticknoise
