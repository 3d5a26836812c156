#include "ticknoise/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ticknoise/channels.hpp"
#include "ticknoise/qstate.hpp"
#include "ticknoise/rng.hpp"

namespace ticknoise {

namespace {

constexpr std::size_t kShardSize = 2048;

void require_complete(const std::vector<ComplexMatrix>& kraus, std::size_t d) {
    if (kraus.empty() || kraus.front().dim() != d) {
        throw std::invalid_argument("kraus set empty or dimension mismatch");
    }
    if (!kraus_complete(kraus, 1e-8)) {
        throw std::invalid_argument("kraus set is not complete (sum K†K != I)");
    }
}

double gate_upsilon_sq(double accuracy_n) {
    // Per-gate weights squared summed: ((1+x)/2)^2 + ((1-x)/2)^2 = (1+x^2)/2
    // with x = e^{-pi^2/2N}, i.e. (1 + e^{-pi^2/N})/2.
    const double pi_sq = std::numbers::pi * std::numbers::pi;
    return 0.5 * (1.0 + std::exp(-pi_sq / accuracy_n));
}

}  // namespace

std::string to_string(FidelityReport::Method method) {
    switch (method) {
        case FidelityReport::Method::closed_form: return "closed_form";
        case FidelityReport::Method::kraus_trace: return "kraus_trace";
        case FidelityReport::Method::haar_monte_carlo: return "haar_monte_carlo";
    }
    return "unknown";
}

FidelityReport average_gate_fidelity_from_kraus(const std::vector<ComplexMatrix>& kraus,
                                                std::size_t d) {
    require_complete(kraus, d);
    double trace_sq_sum = 0.0;
    for (const auto& k : kraus) trace_sq_sum += std::norm(k.trace());
    const double dd = static_cast<double>(d);
    return {(trace_sq_sum + dd) / (dd * dd + dd), FidelityReport::Method::kraus_trace, {}};
}

double single_gate_fidelity(double theta, double accuracy_n) {
    if (accuracy_n <= 0.0) throw std::invalid_argument("single_gate_fidelity: N must be > 0");
    return (2.0 + std::exp(-theta * theta / (2.0 * accuracy_n))) / 3.0;
}

double cnot_fullspace_fidelity(double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("cnot_fullspace_fidelity: gamma must be >= 0");
    return (7.0 + 3.0 * std::exp(-gamma)) / 10.0;
}

double upsilon_squared_from_kraus(const std::vector<ComplexMatrix>& kraus, std::size_t d) {
    require_complete(kraus, d);
    double sum = 0.0;
    for (const auto& k : kraus) {
        const double w = k.frobenius_norm_sq() / static_cast<double>(d);  // tr(K†K)/d
        sum += w * w;
    }
    return sum;
}

double unitarity_from_kraus(const std::vector<ComplexMatrix>& kraus, std::size_t d) {
    const double dd = static_cast<double>(d);
    return (dd * dd * upsilon_squared_from_kraus(kraus, d) - 1.0) / (dd * dd - 1.0);
}

double circuit_unitarity_gamma(long cnot_count, double accuracy_n) {
    if (cnot_count < 0) throw std::invalid_argument("circuit_unitarity_gamma: L must be >= 0");
    if (accuracy_n <= 0.0) throw std::invalid_argument("circuit_unitarity_gamma: N must be > 0");
    return std::pow(gate_upsilon_sq(accuracy_n), static_cast<double>(cnot_count));
}

double upsilon_squared_bruteforce(int cnot_count, double accuracy_n) {
    if (cnot_count < 0 || cnot_count > 16) {
        throw std::invalid_argument("upsilon_squared_bruteforce: L must be in [0, 16]");
    }
    const double pi_sq = std::numbers::pi * std::numbers::pi;
    const auto kraus = cnot_dephasing_kraus(pi_sq / (2.0 * accuracy_n));
    const std::size_t d = 4;
    double sum = 0.0;
    for (std::uint32_t pick = 0; pick < (1u << cnot_count); ++pick) {
        ComplexMatrix product = ComplexMatrix::identity(d);
        for (int g = 0; g < cnot_count; ++g) product = kraus[(pick >> g) & 1u] * product;
        const double w = product.frobenius_norm_sq() / static_cast<double>(d);
        sum += w * w;
    }
    return sum;
}

double circuit_fidelity_bound(int qubits, long cnot_count, double accuracy_n) {
    if (qubits < 1) throw std::invalid_argument("circuit_fidelity_bound: qubit count must be >= 1");
    if (cnot_count < 0) throw std::invalid_argument("circuit_fidelity_bound: L must be >= 0");
    if (accuracy_n <= 0.0) throw std::invalid_argument("circuit_fidelity_bound: N must be > 0");
    const double dim = std::pow(2.0, qubits);
    const double upsilon = std::pow(gate_upsilon_sq(accuracy_n),
                                    0.5 * static_cast<double>(cnot_count));
    return (dim * upsilon + 1.0) / (dim + 1.0);
}

long CircuitNoiseProfile::total_cnots() const {
    long total = 0;
    for (const int lt : layer_counts) total += lt;
    return total;
}

void CircuitNoiseProfile::validate() const {
    if (qubits < 1) throw std::invalid_argument("CircuitNoiseProfile: need >= 1 qubit");
    if (!(accuracy_n > 0.0)) throw std::invalid_argument("CircuitNoiseProfile: need N > 0");
    for (const int lt : layer_counts) {
        if (lt < 0 || 2 * lt > qubits) {
            throw std::invalid_argument("CircuitNoiseProfile: layer needs 2 l_t <= n");
        }
    }
}

double CircuitNoiseProfile::fidelity_bound() const {
    validate();
    return circuit_fidelity_bound(qubits, total_cnots(), accuracy_n);
}

double required_accuracy(int qubits, long cnot_count, double fidelity_threshold) {
    if (qubits < 1 || cnot_count < 0) throw std::invalid_argument("required_accuracy: bad args");
    const double dim = std::pow(2.0, qubits);
    // N -> 0+ limit: per-gate Upsilon^2 -> 1/2.
    const double floor_bound =
        (dim * std::pow(0.5, 0.5 * static_cast<double>(cnot_count)) + 1.0) / (dim + 1.0);
    if (!(fidelity_threshold < 1.0) || fidelity_threshold <= floor_bound) {
        throw std::invalid_argument("required_accuracy: threshold outside achievable range");
    }

    double lo = 1.0, hi = 1.0;
    while (circuit_fidelity_bound(qubits, cnot_count, hi) < fidelity_threshold) {
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("required_accuracy: no finite bracket");
    }
    while (circuit_fidelity_bound(qubits, cnot_count, lo) >= fidelity_threshold) {
        lo *= 0.5;
        if (lo < 1e-300) throw std::runtime_error("required_accuracy: no finite bracket");
    }
    while ((hi - lo) > 1e-9 * lo) {
        const double mid = 0.5 * (lo + hi);
        if (circuit_fidelity_bound(qubits, cnot_count, mid) < fidelity_threshold) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double required_accuracy_asymptotic(long cnot_count) {
    return static_cast<double>(cnot_count) * std::numbers::pi * std::numbers::pi /
           (4.0 * std::numbers::ln2);
}

double timing_uncertainty(double tau, double accuracy_n) {
    if (tau <= 0.0 || accuracy_n <= 0.0) {
        throw std::invalid_argument("timing_uncertainty: tau and N must be positive");
    }
    return tau / std::sqrt(accuracy_n);
}

double entropy_accuracy_bound(double entropy_per_tick) {
    if (entropy_per_tick < 0.0) {
        throw std::invalid_argument("entropy_accuracy_bound: entropy must be >= 0");
    }
    return 0.5 * entropy_per_tick;
}

namespace {

struct McMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

McMoments haar_fidelity_shard(const std::vector<ComplexMatrix>& kraus, std::size_t d,
                              std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    McMoments m;
    for (std::size_t k = 0; k < count; ++k) {
        const PureState psi = haar_random_state(d, rng);
        double fid = 0.0;
        for (const auto& op : kraus) {
            // <psi|K|psi>
            cdouble overlap = 0.0;
            for (std::size_t r = 0; r < d; ++r) {
                cdouble row = 0.0;
                for (std::size_t c = 0; c < d; ++c) row += op(r, c) * psi.amplitude(c);
                overlap += std::conj(psi.amplitude(r)) * row;
            }
            fid += std::norm(overlap);
        }
        m.sum += fid;
        m.sum_sq += fid * fid;
    }
    return m;
}

FidelityReport haar_fidelity(const std::vector<ComplexMatrix>& kraus, std::size_t d,
                             std::size_t samples, std::uint64_t seed, bool parallel) {
    require_complete(kraus, d);
    if (samples < 2) throw std::invalid_argument("haar_average_fidelity_mc: samples must be >= 2");

    const std::size_t shards = (samples + kShardSize - 1) / kShardSize;
    std::vector<McMoments> partial(shards);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long s = 0; s < static_cast<long long>(shards); ++s) {
            const std::size_t begin = static_cast<std::size_t>(s) * kShardSize;
            const std::size_t count = std::min(kShardSize, samples - begin);
            partial[s] = haar_fidelity_shard(kraus, d, count,
                                             shard_seed(seed, static_cast<std::uint64_t>(s)));
        }
    } else {
        for (std::size_t s = 0; s < shards; ++s) {
            const std::size_t begin = s * kShardSize;
            const std::size_t count = std::min(kShardSize, samples - begin);
            partial[s] = haar_fidelity_shard(kraus, d, count, shard_seed(seed, s));
        }
    }

    McMoments total;
    for (const auto& p : partial) {
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
    }
    const double n = static_cast<double>(samples);
    const double mean = total.sum / n;
    const double var = std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, FidelityReport::Method::haar_monte_carlo, std::sqrt(var / n)};
}

}  // namespace

FidelityReport haar_average_fidelity_mc(const std::vector<ComplexMatrix>& kraus, std::size_t d,
                                        std::size_t samples, std::uint64_t seed) {
    return haar_fidelity(kraus, d, samples, seed, true);
}

FidelityReport haar_average_fidelity_mc_serial(const std::vector<ComplexMatrix>& kraus,
                                               std::size_t d, std::size_t samples,
                                               std::uint64_t seed) {
    return haar_fidelity(kraus, d, samples, seed, false);
}

}  // namespace ticknoise
