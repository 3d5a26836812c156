#include "ticknoise/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ticknoise/channels.hpp"
#include "ticknoise/gates.hpp"

namespace ticknoise {

namespace {

constexpr std::size_t kShardSize = 512;

std::size_t circuit_dim(int n) { return std::size_t{1} << n; }

// CNOT as a basis permutation: flip the target bit when the control is set.
struct GatePermutation {
    std::size_t control_mask;
    std::size_t target_mask;

    std::size_t operator()(std::size_t index) const {
        return (index & control_mask) ? (index ^ target_mask) : index;
    }
};

GatePermutation gate_permutation(int n, std::pair<int, int> gate) {
    return {std::size_t{1} << (n - 1 - gate.first), std::size_t{1} << (n - 1 - gate.second)};
}

// rho' = keep_w * P rho P + flip_w * rho, with P the CNOT permutation.
void apply_noisy_gate(std::vector<cdouble>& rho, std::vector<cdouble>& scratch, std::size_t dim,
                      const GatePermutation& perm, double keep_w, double flip_w) {
    for (std::size_t r = 0; r < dim; ++r) {
        const std::size_t pr = perm(r);
        for (std::size_t c = 0; c < dim; ++c) {
            scratch[r * dim + c] = keep_w * rho[pr * dim + perm(c)] + flip_w * rho[r * dim + c];
        }
    }
    rho.swap(scratch);
}

double gamma_per_gate(double accuracy_n) {
    if (accuracy_n <= 0.0) throw std::invalid_argument("circuit: accuracy N must be > 0");
    return std::numbers::pi * std::numbers::pi / (2.0 * accuracy_n);
}

}  // namespace

long CircuitSpec::total_gates() const {
    long total = 0;
    for (const auto& layer : layers) total += static_cast<long>(layer.size());
    return total;
}

void CircuitSpec::validate() const {
    if (n < 1) throw std::invalid_argument("CircuitSpec: qubit count must be >= 1");
    for (const auto& layer : layers) {
        std::set<int> used;
        for (const auto& [control, target] : layer) {
            if (control < 0 || target < 0 || control >= n || target >= n) {
                throw std::invalid_argument("CircuitSpec: qubit index out of range");
            }
            if (control == target) {
                throw std::invalid_argument("CircuitSpec: control equals target");
            }
            if (!used.insert(control).second || !used.insert(target).second) {
                throw std::invalid_argument("CircuitSpec: qubit reused within a layer");
            }
        }
    }
}

CircuitSpec CircuitSpec::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("CircuitSpec: bad JSON: ") + e.what());
    }
    CircuitSpec spec;
    try {
        spec.n = j.at("n").get<int>();
        for (const auto& layer : j.at("layers")) {
            std::vector<std::pair<int, int>> gates;
            for (const auto& gate : layer) {
                if (!gate.is_array() || gate.size() != 2) {
                    throw std::invalid_argument("CircuitSpec: gate must be [control, target]");
                }
                gates.emplace_back(gate[0].get<int>(), gate[1].get<int>());
            }
            spec.layers.push_back(std::move(gates));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("CircuitSpec: bad schema: ") + e.what());
    }
    spec.validate();
    return spec;
}

CircuitSpec CircuitSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("CircuitSpec: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string CircuitSpec::to_json_text() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    auto& out_layers = j["layers"] = nlohmann::ordered_json::array();
    for (const auto& layer : layers) {
        nlohmann::ordered_json jl = nlohmann::ordered_json::array();
        for (const auto& [control, target] : layer) jl.push_back({control, target});
        out_layers.push_back(std::move(jl));
    }
    return j.dump();
}

ComplexMatrix ideal_circuit_unitary(const CircuitSpec& spec) {
    spec.validate();
    if (spec.n > 10) throw std::invalid_argument("ideal_circuit_unitary: n must be <= 10");
    const std::size_t dim = circuit_dim(spec.n);

    // Compose the basis permutation gate by gate: p[k] = pi_total(k).
    std::vector<std::size_t> p(dim);
    for (std::size_t k = 0; k < dim; ++k) p[k] = k;
    for (const auto& layer : spec.layers) {
        for (const auto& gate : layer) {
            const auto perm = gate_permutation(spec.n, gate);
            for (std::size_t k = 0; k < dim; ++k) p[k] = perm(p[k]);
        }
    }
    ComplexMatrix u(dim);
    for (std::size_t k = 0; k < dim; ++k) u(p[k], k) = 1.0;
    return u;
}

namespace {

SimulationResult simulate_fast(const CircuitSpec& spec, double accuracy_n,
                               const DensityMatrix& rho_in) {
    const std::size_t dim = circuit_dim(spec.n);
    const double gamma = gamma_per_gate(accuracy_n);
    const double decay = std::exp(-gamma);
    const double keep_w = 0.5 * (1.0 + decay);
    const double flip_w = 0.5 * (1.0 - decay);

    std::vector<cdouble> rho(rho_in.mat().data(), rho_in.mat().data() + dim * dim);
    std::vector<cdouble> scratch(dim * dim);
    std::vector<double> traces;
    traces.reserve(spec.layers.size());
    for (const auto& layer : spec.layers) {
        for (const auto& gate : layer) {
            apply_noisy_gate(rho, scratch, dim, gate_permutation(spec.n, gate), keep_w, flip_w);
        }
        double tr = 0.0;
        for (std::size_t i = 0; i < dim; ++i) tr += rho[i * dim + i].real();
        traces.push_back(tr);
    }
    ComplexMatrix out(dim);
    std::copy(rho.begin(), rho.end(), out.data());
    return {DensityMatrix(std::move(out)), std::move(traces)};
}

}  // namespace

SimulationResult simulate_noisy_circuit(const CircuitSpec& spec, double accuracy_n,
                                        const DensityMatrix& rho_in) {
    spec.validate();
    if (spec.n > 6) throw std::invalid_argument("simulate_noisy_circuit: n must be <= 6");
    if (rho_in.dim() != circuit_dim(spec.n)) {
        throw std::invalid_argument("simulate_noisy_circuit: state dimension mismatch");
    }
    return simulate_fast(spec, accuracy_n, rho_in);
}

SimulationResult simulate_noisy_circuit_reference(const CircuitSpec& spec, double accuracy_n,
                                                  const DensityMatrix& rho_in) {
    spec.validate();
    if (spec.n > 6) throw std::invalid_argument("simulate_noisy_circuit: n must be <= 6");
    if (rho_in.dim() != circuit_dim(spec.n)) {
        throw std::invalid_argument("simulate_noisy_circuit: state dimension mismatch");
    }
    const double gamma = gamma_per_gate(accuracy_n);
    const auto kraus_pair = cnot_dephasing_kraus(gamma);

    ComplexMatrix rho = rho_in.mat();
    std::vector<double> traces;
    traces.reserve(spec.layers.size());
    for (const auto& layer : spec.layers) {
        for (const auto& gate : layer) {
            const ComplexMatrix u =
                embed_two_qubit(cnot_matrix(), spec.n, gate.first, gate.second);
            const std::vector<ComplexMatrix> kraus = {
                embed_two_qubit(kraus_pair[0], spec.n, gate.first, gate.second),
                embed_two_qubit(kraus_pair[1], spec.n, gate.first, gate.second)};
            rho = apply_kraus_raw(kraus, conjugate_with(u, rho));
        }
        traces.push_back(rho.trace().real());
    }
    return {DensityMatrix(std::move(rho)), std::move(traces)};
}

namespace {

struct McMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

McMoments fidelity_shard(const CircuitSpec& spec, const std::vector<std::size_t>& ideal_perm,
                         double keep_w, double flip_w, std::size_t count, std::uint64_t seed) {
    const std::size_t dim = circuit_dim(spec.n);
    Rng rng(seed);
    McMoments m;
    std::vector<cdouble> rho(dim * dim), scratch(dim * dim), rotated(dim);
    for (std::size_t k = 0; k < count; ++k) {
        const PureState psi = haar_random_state(dim, rng);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                rho[r * dim + c] = psi.amplitude(r) * std::conj(psi.amplitude(c));

        for (const auto& layer : spec.layers) {
            for (const auto& gate : layer) {
                apply_noisy_gate(rho, scratch, dim, gate_permutation(spec.n, gate), keep_w,
                                 flip_w);
            }
        }
        // chi = U_ideal |psi>, then F = <chi| rho |chi>.
        for (std::size_t i = 0; i < dim; ++i) rotated[ideal_perm[i]] = psi.amplitude(i);
        cdouble fid = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
            cdouble row = 0.0;
            for (std::size_t c = 0; c < dim; ++c) row += rho[r * dim + c] * rotated[c];
            fid += std::conj(rotated[r]) * row;
        }
        m.sum += fid.real();
        m.sum_sq += fid.real() * fid.real();
    }
    return m;
}

FidelityReport empirical_fidelity(const CircuitSpec& spec, double accuracy_n,
                                  std::size_t samples, std::uint64_t seed, bool parallel) {
    spec.validate();
    if (spec.n > 6) throw std::invalid_argument("empirical_average_fidelity: n must be <= 6");
    if (samples < 100) {
        throw std::invalid_argument("empirical_average_fidelity: need at least 100 samples");
    }
    const std::size_t dim = circuit_dim(spec.n);
    const double gamma = gamma_per_gate(accuracy_n);
    const double decay = std::exp(-gamma);
    const double keep_w = 0.5 * (1.0 + decay);
    const double flip_w = 0.5 * (1.0 - decay);

    std::vector<std::size_t> ideal_perm(dim);
    for (std::size_t k = 0; k < dim; ++k) ideal_perm[k] = k;
    for (const auto& layer : spec.layers)
        for (const auto& gate : layer) {
            const auto perm = gate_permutation(spec.n, gate);
            for (std::size_t k = 0; k < dim; ++k) ideal_perm[k] = perm(ideal_perm[k]);
        }

    const std::size_t shards = (samples + kShardSize - 1) / kShardSize;
    std::vector<McMoments> partial(shards);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long s = 0; s < static_cast<long long>(shards); ++s) {
            const std::size_t begin = static_cast<std::size_t>(s) * kShardSize;
            const std::size_t count = std::min(kShardSize, samples - begin);
            partial[s] = fidelity_shard(spec, ideal_perm, keep_w, flip_w, count,
                                        shard_seed(seed, static_cast<std::uint64_t>(s)));
        }
    } else {
        for (std::size_t s = 0; s < shards; ++s) {
            const std::size_t begin = s * kShardSize;
            const std::size_t count = std::min(kShardSize, samples - begin);
            partial[s] = fidelity_shard(spec, ideal_perm, keep_w, flip_w, count,
                                        shard_seed(seed, s));
        }
    }

    McMoments total;
    for (const auto& p : partial) {
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
    }
    const double count = static_cast<double>(samples);
    const double mean = total.sum / count;
    const double var = std::max(0.0, (total.sum_sq - count * mean * mean) / (count - 1.0));
    return {mean, FidelityReport::Method::haar_monte_carlo, std::sqrt(var / count)};
}

}  // namespace

FidelityReport empirical_average_fidelity(const CircuitSpec& spec, double accuracy_n,
                                          std::size_t samples, std::uint64_t seed) {
    return empirical_fidelity(spec, accuracy_n, samples, seed, true);
}

FidelityReport empirical_average_fidelity_serial(const CircuitSpec& spec, double accuracy_n,
                                                 std::size_t samples, std::uint64_t seed) {
    return empirical_fidelity(spec, accuracy_n, samples, seed, false);
}

double exact_average_fidelity(const CircuitSpec& spec, double accuracy_n) {
    spec.validate();
    if (spec.n > 10) throw std::invalid_argument("exact_average_fidelity: n must be <= 10");
    const long gate_count = spec.total_gates();
    if (gate_count > 20) throw std::invalid_argument("exact_average_fidelity: L must be <= 20");
    const std::size_t dim = circuit_dim(spec.n);
    const double gamma = gamma_per_gate(accuracy_n);
    const double decay = std::exp(-gamma);
    const double keep_w = 0.5 * (1.0 + decay);  // weight of the a U branch
    const double flip_w = 0.5 * (1.0 - decay);  // weight of the b I branch

    std::vector<GatePermutation> gates;
    for (const auto& layer : spec.layers)
        for (const auto& gate : layer) gates.push_back(gate_permutation(spec.n, gate));

    // Ideal circuit permutation, for the relative-to-target conjugation.
    std::vector<std::size_t> ideal(dim), branch(dim);
    for (std::size_t k = 0; k < dim; ++k) ideal[k] = k;
    for (const auto& g : gates)
        for (std::size_t k = 0; k < dim; ++k) ideal[k] = g(ideal[k]);

    // F = (sum_S w_S |tr(U_ideal† prod_{g not in S} U_g)|^2 + d) / (d^2 + d);
    // the trace counts indices fixed by the branch permutation relative to
    // the ideal one.
    double trace_sq_sum = 0.0;
    for (std::uint32_t subset = 0; subset < (1u << gate_count); ++subset) {
        double weight = 1.0;
        for (std::size_t k = 0; k < dim; ++k) branch[k] = k;
        for (long g = 0; g < gate_count; ++g) {
            if ((subset >> g) & 1u) {
                weight *= flip_w;  // identity branch
            } else {
                weight *= keep_w;
                for (std::size_t k = 0; k < dim; ++k) branch[k] = gates[g](branch[k]);
            }
        }
        std::size_t fixed = 0;
        for (std::size_t k = 0; k < dim; ++k) fixed += (branch[k] == ideal[k]) ? 1 : 0;
        trace_sq_sum += weight * static_cast<double>(fixed) * static_cast<double>(fixed);
    }
    const double dd = static_cast<double>(dim);
    return (trace_sq_sum + dd) / (dd * dd + dd);
}

CircuitSpec random_circuit(int n, int layer_count, int max_gates_per_layer, Rng& rng) {
    if (n < 2) throw std::invalid_argument("random_circuit: need at least 2 qubits");
    const int cap = std::min(max_gates_per_layer, n / 2);
    if (cap < 1) throw std::invalid_argument("random_circuit: max gates per layer too small");

    CircuitSpec spec;
    spec.n = n;
    std::vector<int> order(n);
    for (int layer = 0; layer < layer_count; ++layer) {
        const int gates = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(cap));
        for (int i = 0; i < n; ++i) order[i] = i;
        // Partial Fisher-Yates: the first 2*gates entries become the pairs.
        for (int i = 0; i < 2 * gates; ++i) {
            const int j = i + static_cast<int>(rng() % static_cast<std::uint64_t>(n - i));
            std::swap(order[i], order[j]);
        }
        std::vector<std::pair<int, int>> gate_list;
        for (int g = 0; g < gates; ++g) gate_list.emplace_back(order[2 * g], order[2 * g + 1]);
        spec.layers.push_back(std::move(gate_list));
    }
    spec.validate();
    return spec;
}

std::vector<BoundRow> fidelity_bound_table(int qubits, int gates_per_layer,
                                           const std::vector<double>& accuracies,
                                           long max_cnots) {
    if (gates_per_layer < 1) throw std::invalid_argument("bound table: l_t must be >= 1");
    std::vector<BoundRow> rows;
    for (const double n_acc : accuracies) {
        for (long cnots = 0; cnots <= max_cnots; cnots += gates_per_layer) {
            rows.push_back({cnots, n_acc, circuit_fidelity_bound(qubits, cnots, n_acc)});
        }
    }
    return rows;
}

std::vector<BudgetRow> accuracy_budget_table(int qubits, const std::vector<int>& gates_per_layer,
                                             long max_depth, double threshold, int points) {
    if (max_depth < 1 || points < 1) throw std::invalid_argument("budget table: bad ranges");
    // Geometric depth grid, deduplicated after rounding to integers.
    std::vector<long> depths;
    for (int i = 0; i < points; ++i) {
        const double frac = (points == 1) ? 1.0 : static_cast<double>(i) / (points - 1);
        const long depth = std::lround(std::pow(static_cast<double>(max_depth), frac));
        if (depths.empty() || depth > depths.back()) depths.push_back(depth);
    }
    std::vector<BudgetRow> rows;
    const double dim = std::pow(2.0, qubits);
    for (const int lt : gates_per_layer) {
        if (lt < 1) throw std::invalid_argument("budget table: l_t must be >= 1");
        for (const long depth : depths) {
            // Shallow circuits whose bound never drops to the threshold need
            // no clock accuracy at all; skip those rows.
            const long cnots = depth * lt;
            const double floor_bound =
                (dim * std::pow(0.5, 0.5 * static_cast<double>(cnots)) + 1.0) / (dim + 1.0);
            if (threshold <= floor_bound) continue;
            rows.push_back({depth, lt, required_accuracy(qubits, cnots, threshold)});
        }
    }
    return rows;
}

}  // namespace ticknoise
