#include "ticknoise/channels.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ticknoise/gates.hpp"

namespace ticknoise {

namespace {

// Shard size for the Monte Carlo kernels. Fixed so that the reduction order
// (and therefore the result bits) does not depend on the thread count.
constexpr std::size_t kShardSize = 4096;

struct KrausWeights {
    double keep;  // sqrt((1 + e^-gamma)/2)
    double flip;  // sqrt((1 - e^-gamma)/2)
};

KrausWeights kraus_weights(double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("dephasing kraus: gamma must be >= 0");
    const double decay = std::exp(-gamma);
    return {std::sqrt(0.5 * (1.0 + decay)), std::sqrt(0.5 * (1.0 - decay))};
}

ComplexMatrix reflection_about(const PureState& axis) {
    // I - 2 |axis><axis|
    ComplexMatrix m = ComplexMatrix::identity(axis.dim());
    m -= 2.0 * axis.projector();
    return m;
}

}  // namespace

DephasedGateChannel build_channel(const SpectralHamiltonian& h, const TickDistribution& dist) {
    const std::size_t n = h.dim();
    ComplexMatrix filter(n);
    for (std::size_t r = 0; r < n; ++r) {
        filter(r, r) = 1.0;
        for (std::size_t c = r + 1; c < n; ++c) {
            const double gap = h.energies()[r] - h.energies()[c];
            const cdouble phi = (gap == 0.0) ? cdouble{1.0, 0.0}
                                             : dist.centered_characteristic(gap);
            filter(r, c) = phi;
            filter(c, r) = std::conj(phi);
        }
    }
    return DephasedGateChannel{h, dist.mean(), std::move(filter), {}};
}

namespace {

DensityMatrix apply_filter(const DephasedGateChannel& ch, const DensityMatrix& rho,
                           bool include_phase) {
    if (rho.dim() != ch.dim()) throw std::invalid_argument("apply_channel: dimension mismatch");
    const std::size_t n = ch.dim();
    ComplexMatrix in_eig = ch.generator.to_eigenbasis(rho.mat());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            cdouble factor = ch.filter(r, c);
            if (include_phase) {
                const double gap = ch.generator.energies()[r] - ch.generator.energies()[c];
                factor *= std::polar(1.0, -gap * ch.target_duration);
            }
            in_eig(r, c) *= factor;
        }
    return DensityMatrix(ch.generator.from_eigenbasis(in_eig));
}

}  // namespace

DensityMatrix apply_channel(const DephasedGateChannel& ch, const DensityMatrix& rho) {
    return apply_filter(ch, rho, true);
}

DensityMatrix apply_dephasing_only(const DephasedGateChannel& ch, const DensityMatrix& rho) {
    return apply_filter(ch, rho, false);
}

void GateNoiseParams::validate() const {
    if (gamma < 0.0) throw std::invalid_argument("GateNoiseParams: gamma must be >= 0");
    if (!std::isfinite(omega) || !std::isfinite(theta)) {
        throw std::invalid_argument("GateNoiseParams: omega and theta must be finite");
    }
}

GateNoiseParams GateNoiseParams::from_pulse(double omega, const TickDistribution& dist) {
    GateNoiseParams params{dist.dephasing_rate(omega), omega, omega * dist.mean()};
    params.validate();
    return params;
}

std::vector<ComplexMatrix> qubit_dephasing_kraus(double gamma) {
    const auto w = kraus_weights(gamma);
    return {cdouble{w.keep} * ComplexMatrix::identity(2), cdouble{w.flip} * pauli_z()};
}

std::vector<ComplexMatrix> cnot_dephasing_kraus(double gamma) {
    const auto w = kraus_weights(gamma);
    const double s = 1.0 / std::sqrt(2.0);
    const PureState one_minus({0.0, 0.0, s, -s});
    return {cdouble{w.keep} * ComplexMatrix::identity(4),
            cdouble{w.flip} * reflection_about(one_minus)};
}

std::vector<ComplexMatrix> swap_dephasing_kraus(double gamma) {
    const auto w = kraus_weights(gamma);
    const double s = 1.0 / std::sqrt(2.0);
    const PureState psi_minus({0.0, s, -s, 0.0});
    return {cdouble{w.keep} * ComplexMatrix::identity(4),
            cdouble{w.flip} * reflection_about(psi_minus)};
}

ComplexMatrix apply_kraus_raw(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& mat) {
    if (kraus.empty()) throw std::invalid_argument("apply_kraus: empty operator list");
    ComplexMatrix out(mat.dim());
    for (const auto& k : kraus) out += k * mat * k.adjoint();
    return out;
}

DensityMatrix apply_kraus(const std::vector<ComplexMatrix>& kraus, const DensityMatrix& rho) {
    return DensityMatrix(apply_kraus_raw(kraus, rho.mat()));
}

bool kraus_complete(const std::vector<ComplexMatrix>& kraus, double tol) {
    if (kraus.empty()) return false;
    ComplexMatrix sum(kraus.front().dim());
    for (const auto& k : kraus) sum += k.adjoint() * k;
    return max_abs_diff(sum, ComplexMatrix::identity(sum.dim())) <= tol;
}

namespace {

// One shard of the Monte Carlo sum, in the generator eigenbasis.
ComplexMatrix mc_shard_sum(const ComplexMatrix& rho_eig, const std::vector<double>& energies,
                           const TickDistribution& dist, std::size_t count, std::uint64_t seed) {
    const std::size_t n = energies.size();
    Rng rng(seed);
    ComplexMatrix sum(n);
    std::vector<cdouble> row_phase(n);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = dist.sample(rng);
        for (std::size_t r = 0; r < n; ++r) row_phase[r] = std::polar(1.0, -energies[r] * t);
        for (std::size_t r = 0; r < n; ++r) {
            const cdouble pr = row_phase[r];
            for (std::size_t c = 0; c < n; ++c)
                sum(r, c) += rho_eig(r, c) * pr * std::conj(row_phase[c]);
        }
    }
    return sum;
}

DensityMatrix mc_average(const SpectralHamiltonian& h, const TickDistribution& dist,
                         const DensityMatrix& rho, std::size_t samples, std::uint64_t seed,
                         bool parallel) {
    if (samples == 0) throw std::invalid_argument("monte_carlo_average: samples must be >= 1");
    if (rho.dim() != h.dim()) throw std::invalid_argument("monte_carlo_average: dim mismatch");

    const ComplexMatrix rho_eig = h.to_eigenbasis(rho.mat());
    const std::size_t shards = (samples + kShardSize - 1) / kShardSize;
    std::vector<ComplexMatrix> partial(shards);

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long s = 0; s < static_cast<long long>(shards); ++s) {
            const std::size_t begin = static_cast<std::size_t>(s) * kShardSize;
            const std::size_t count = std::min(kShardSize, samples - begin);
            partial[s] = mc_shard_sum(rho_eig, h.energies(), dist, count,
                                      shard_seed(seed, static_cast<std::uint64_t>(s)));
        }
    } else {
        for (std::size_t s = 0; s < shards; ++s) {
            const std::size_t begin = s * kShardSize;
            const std::size_t count = std::min(kShardSize, samples - begin);
            partial[s] = mc_shard_sum(rho_eig, h.energies(), dist, count, shard_seed(seed, s));
        }
    }

    ComplexMatrix total(h.dim());
    for (const auto& p : partial) total += p;  // fixed order, thread-count independent
    total *= cdouble{1.0 / static_cast<double>(samples)};
    return DensityMatrix(h.from_eigenbasis(total));
}

}  // namespace

DensityMatrix monte_carlo_average(const SpectralHamiltonian& h, const TickDistribution& dist,
                                  const DensityMatrix& rho, std::size_t samples,
                                  std::uint64_t seed) {
    return mc_average(h, dist, rho, samples, seed, true);
}

DensityMatrix monte_carlo_average_serial(const SpectralHamiltonian& h,
                                         const TickDistribution& dist, const DensityMatrix& rho,
                                         std::size_t samples, std::uint64_t seed) {
    return mc_average(h, dist, rho, samples, seed, false);
}

ComplexMatrix choi_matrix(const DephasedGateChannel& ch) {
    const std::size_t d = ch.dim();
    ComplexMatrix choi(d * d);
    // Channel action on |i><j| without the DensityMatrix validity guard.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            ComplexMatrix basis_ij(d);
            basis_ij(i, j) = 1.0;
            ComplexMatrix in_eig = ch.generator.to_eigenbasis(basis_ij);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) {
                    const double gap = ch.generator.energies()[r] - ch.generator.energies()[c];
                    in_eig(r, c) *= ch.filter(r, c) * std::polar(1.0, -gap * ch.target_duration);
                }
            const ComplexMatrix out = ch.generator.from_eigenbasis(in_eig);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) choi(i * d + r, j * d + c) = out(r, c);
        }
    return choi;
}

double choi_min_eigenvalue(const DephasedGateChannel& ch) {
    if (ch.dim() > 8) {
        throw std::invalid_argument("choi_min_eigenvalue: supported for dim <= 8 channels");
    }
    const auto eig = hermitian_eigensystem(choi_matrix(ch));
    return eig.values.front();
}

}  // namespace ticknoise
