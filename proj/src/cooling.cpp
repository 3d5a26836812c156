#include "ticknoise/cooling.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ticknoise/channels.hpp"
#include "ticknoise/gates.hpp"

namespace ticknoise {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double accuracy_from_sigma(double sigma, double tau) {
    if (sigma < 0.0) throw std::invalid_argument("cooling: sigma must be >= 0");
    if (tau <= 0.0) throw std::invalid_argument("cooling: tau must be > 0");
    if (sigma == 0.0) return kInf;
    return (tau / sigma) * (tau / sigma);
}

}  // namespace

ThermalQubit thermal_qubit(double beta, double omega) {
    if (beta < 0.0) throw std::invalid_argument("thermal_qubit: beta must be >= 0");
    if (omega <= 0.0) throw std::invalid_argument("thermal_qubit: omega must be > 0");
    const double z = std::tanh(beta * omega);
    return {beta, omega, z, 0.5 * (1.0 + z)};
}

void CoolingConfig::validate() const {
    if (!(r_s >= 0.0 && r_v <= 1.0 && r_v > r_s)) {
        throw std::invalid_argument("CoolingConfig: need 1 >= r_v > r_s >= 0");
    }
    if (!(p_v > 0.0 && p_v < 1.0)) {
        throw std::invalid_argument("CoolingConfig: need 0 < P_v < 1");
    }
    if (!(accuracy_n > 0.0)) {
        throw std::invalid_argument("CoolingConfig: need N > 0");
    }
    if (!(h > 0.0)) {
        throw std::invalid_argument("CoolingConfig: need h > 0");
    }
}

double CoolingConfig::swap_error() const { return swap_error_probability(accuracy_n); }

double CoolingConfig::effective_pv() const { return p_v * (1.0 - swap_error()); }

CoolingConfig CoolingConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("CoolingConfig: bad JSON: ") + e.what());
    }
    CoolingConfig config{};
    try {
        config.r_s = j.at("r_s").get<double>();
        config.r_v = j.at("r_v").get<double>();
        config.p_v = j.at("P_v").get<double>();
        if (j.contains("N")) {
            config.accuracy_n = j.at("N").get<double>();
        } else if (j.contains("sigma")) {
            const double tau =
                j.contains("tau") ? j.at("tau").get<double>() : std::numbers::pi;
            config.accuracy_n = accuracy_from_sigma(j.at("sigma").get<double>(), tau);
        } else {
            throw std::invalid_argument("CoolingConfig: need either N or sigma");
        }
        config.h = j.contains("h") ? j.at("h").get<double>() : 0.1;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("CoolingConfig: bad schema: ") + e.what());
    }
    config.validate();
    return config;
}

CoolingConfig CoolingConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("CoolingConfig: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

double swap_error_probability(double accuracy_n) {
    if (!(accuracy_n > 0.0)) {
        throw std::invalid_argument("swap_error_probability: N must be > 0");
    }
    const double pi_sq = std::numbers::pi * std::numbers::pi;
    return 0.5 * (1.0 - std::exp(-pi_sq / (2.0 * accuracy_n)));
}

double ground_population_after_n(const CoolingConfig& config, double steps) {
    config.validate();
    if (steps < 0.0) throw std::invalid_argument("ground_population_after_n: steps must be >= 0");
    const double shrink = std::pow(1.0 - config.effective_pv(), steps);
    return config.r_v - (config.r_v - config.r_s) * shrink;
}

double cooling_step_full_sim(const ThermalQubit& system, double z_v, double p_v,
                             const TickDistribution& dist) {
    if (!(z_v >= 0.0 && z_v < 1.0)) {
        throw std::invalid_argument("cooling_step_full_sim: need 0 <= Z_v < 1");
    }
    if (!(p_v > 0.0 && p_v <= 1.0)) {
        throw std::invalid_argument("cooling_step_full_sim: need 0 < P_v <= 1");
    }

    // Dephasing magnitude at the SWAP subspace gap (unit gap, pulse area pi).
    const double gamma = dist.dephasing_rate(1.0);

    const DensityMatrix rho_s =
        DensityMatrix::diagonal({system.ground_population, 1.0 - system.ground_population});
    const DensityMatrix rho_v = DensityMatrix::diagonal({0.5 * (1.0 + z_v), 0.5 * (1.0 - z_v)});
    const ComplexMatrix joint = kron(rho_s.mat(), rho_v.mat());

    const ComplexMatrix swapped = conjugate_with(swap_matrix(), joint);
    const ComplexMatrix dephased = apply_kraus_raw(swap_dephasing_kraus(gamma), swapped);

    // The virtual-qubit subspace is hit with weight P_v; otherwise the
    // system is untouched.
    ComplexMatrix mixed = cdouble{p_v} * dephased;
    mixed += cdouble{1.0 - p_v} * joint;

    const ComplexMatrix reduced = partial_trace(mixed, {2, 2}, {0});
    return reduced(0, 0).real();
}

double cooling_rate(const CoolingConfig& config, double steps, double h) {
    config.validate();
    if (!(h > 0.0)) throw std::invalid_argument("cooling_rate: h must be > 0");
    const double geometric = 1.0 - config.effective_pv();
    return ((config.r_s - config.r_v) / h) *
           (std::pow(geometric, h) - 1.0) * std::pow(geometric, steps - 0.5 * h);
}

long swaps_to_target(const CoolingConfig& config, double r_target) {
    config.validate();
    if (r_target >= config.r_v) {
        throw std::invalid_argument("swaps_to_target: target not reachable (r_target >= r_v)");
    }
    if (r_target <= config.r_s) return 0;
    // (1 - Pv~)^n <= (r_v - r_target)/(r_v - r_s)
    const double ratio = (config.r_v - r_target) / (config.r_v - config.r_s);
    const double exact = std::log(ratio) / std::log(1.0 - config.effective_pv());
    long n = static_cast<long>(std::ceil(exact - 1e-12));
    if (n < 0) n = 0;
    // Guard against rounding on the closed-form boundary.
    while (ground_population_after_n(config, static_cast<double>(n)) < r_target) ++n;
    while (n > 0 && ground_population_after_n(config, static_cast<double>(n - 1)) >= r_target) --n;
    return n;
}

std::vector<CoolingTrajectoryRow> cooling_trajectory(const CoolingConfig& config,
                                                     long max_steps) {
    config.validate();
    if (max_steps < 0) throw std::invalid_argument("cooling_trajectory: max_steps must be >= 0");
    std::vector<CoolingTrajectoryRow> rows;
    rows.reserve(static_cast<std::size_t>(max_steps) + 1);
    for (long n = 0; n <= max_steps; ++n) {
        const double steps = static_cast<double>(n);
        rows.push_back({n, ground_population_after_n(config, steps),
                        cooling_rate(config, steps, config.h)});
    }
    return rows;
}

std::vector<CoolingRateRow> cooling_rate_sweep(const CoolingConfig& base,
                                               const std::vector<double>& sigmas,
                                               long max_steps) {
    std::vector<CoolingRateRow> rows;
    for (const double sigma : sigmas) {
        CoolingConfig config = base;
        config.accuracy_n = accuracy_from_sigma(sigma, std::numbers::pi);
        config.validate();
        for (long n = 0; n <= max_steps; ++n) {
            rows.push_back({sigma, n, cooling_rate(config, static_cast<double>(n), config.h)});
        }
    }
    return rows;
}

}  // namespace ticknoise
