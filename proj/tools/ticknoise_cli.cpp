// Command-line surface: channel dumps, gate fidelities, circuit fidelity
// bounds and clock budgets, noisy circuit simulation, the cooling protocol,
// and the oracle validation battery. All stochastic subcommands require an
// explicit --seed; identical seed and flags give byte-identical outputs.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ticknoise/channel_io.hpp"
#include "ticknoise/channels.hpp"
#include "ticknoise/circuit.hpp"
#include "ticknoise/cooling.hpp"
#include "ticknoise/gates.hpp"
#include "ticknoise/metrics.hpp"
#include "ticknoise/validation.hpp"

namespace {

using namespace ticknoise;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

std::string fmt_g(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
}

std::string rows_to_csv(const std::string& header,
                        const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    out << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

template <typename Row, typename ToJson>
std::string rows_to_json(const std::vector<Row>& rows, ToJson to_json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) arr.push_back(to_json(row));
    return arr.dump(2);
}

TickDistribution distribution_from_flags(const std::string& kind, double tau, double sigma,
                                         int comb_n, double comb_rate,
                                         const std::string& ticks_csv) {
    if (kind == "dirac") return TickDistribution::dirac(tau);
    if (kind == "gaussian") return TickDistribution::gaussian(tau, sigma);
    if (kind == "exponential") return TickDistribution::exponential(tau);
    if (kind == "comb") return TickDistribution::comb(comb_n, comb_rate);
    if (kind == "empirical") {
        if (ticks_csv.empty()) throw CLI::ValidationError("--ticks-csv required for empirical");
        return TickDistribution::empirical_from_csv(ticks_csv);
    }
    throw CLI::ValidationError("unknown distribution: " + kind);
}

SpectralHamiltonian generator_from_flags(const std::string& builtin, double omega,
                                         const std::string& hamiltonian_file) {
    if (!hamiltonian_file.empty()) {
        std::ifstream in(hamiltonian_file);
        if (!in) throw std::runtime_error("cannot open " + hamiltonian_file);
        std::stringstream buf;
        buf << in.rdbuf();
        const auto j = nlohmann::json::parse(buf.str());
        const auto dim = j.at("dim").get<std::size_t>();
        const auto& entries = j.at("matrix");
        if (!entries.is_array() || entries.size() != dim * dim) {
            throw std::runtime_error("hamiltonian file: matrix entry count mismatch");
        }
        ComplexMatrix h(dim);
        std::size_t i = 0;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c, ++i)
                h(r, c) = cdouble{entries[i][0].get<double>(), entries[i][1].get<double>()};
        return SpectralHamiltonian::from_matrix(h);
    }
    if (builtin == "qubit") return qubit_generator(omega);
    if (builtin == "cnot") return cnot_generator();
    if (builtin == "swap") return swap_generator();
    throw CLI::ValidationError("unknown builtin generator: " + builtin);
}

// ---------------------------------------------------------------------------

int run_channel(const std::string& builtin, double omega, const std::string& hamiltonian_file,
                const std::string& dist_kind, double tau, double sigma, int comb_n,
                double comb_rate, const std::string& ticks_csv, const std::string& out_path) {
    const auto generator = generator_from_flags(builtin, omega, hamiltonian_file);
    const auto dist = distribution_from_flags(dist_kind, tau, sigma, comb_n, comb_rate,
                                              ticks_csv);
    const auto channel = build_channel(generator, dist);
    validate_channel(channel);
    write_output(out_path, channel_to_json_text(channel));
    return kExitOk;
}

int run_fidelity(const std::string& gate, double theta, double accuracy,
                 std::optional<double> gamma_opt, std::size_t mc_samples, std::uint64_t seed,
                 const std::string& format, const std::string& out_path) {
    double gamma = 0.0;
    if (gamma_opt) {
        gamma = *gamma_opt;
        if (gamma < 0.0) throw CLI::ValidationError("--gamma must be >= 0");
    } else {
        const double area = (gate == "single") ? theta : std::numbers::pi;
        if (!(accuracy > 0.0)) throw CLI::ValidationError("--accuracy must be > 0");
        gamma = area * area / (2.0 * accuracy);
    }

    double value = 0.0;
    std::vector<ComplexMatrix> kraus;
    std::size_t dim = 2;
    if (gate == "single" || gate == "cnot-subspace") {
        value = (2.0 + std::exp(-gamma)) / 3.0;
        kraus = qubit_dephasing_kraus(gamma);
    } else if (gate == "cnot-full") {
        value = cnot_fullspace_fidelity(gamma);
        kraus = cnot_dephasing_kraus(gamma);
        dim = 4;
    } else {
        throw CLI::ValidationError("unknown gate: " + gate);
    }

    std::optional<FidelityReport> mc;
    if (mc_samples > 0) mc = haar_average_fidelity_mc(kraus, dim, mc_samples, seed);

    if (format == "json") {
        nlohmann::ordered_json j;
        j["gate"] = gate;
        j["gamma"] = gamma;
        j["fidelity"] = value;
        j["method"] = "closed_form";
        if (mc) {
            j["mc_estimate"] = mc->value;
            j["mc_standard_error"] = *mc->standard_error;
            j["mc_method"] = to_string(mc->method);
            j["mc_samples"] = mc_samples;
        }
        write_output(out_path, j.dump(2));
    } else {
        std::ostringstream out;
        out << "gate " << gate << "  gamma " << fmt_g(gamma) << "  fidelity " << fmt_g(value)
            << '\n';
        if (mc) {
            out << "haar_mc " << fmt_g(mc->value) << "  se " << fmt_g(*mc->standard_error)
                << "  samples " << mc_samples << '\n';
        }
        write_output(out_path, out.str());
    }
    return kExitOk;
}

int run_bound(int qubits, int gates_per_layer, const std::vector<double>& accuracies,
              long max_cnots, const std::string& format, const std::string& out_path) {
    const auto table = fidelity_bound_table(qubits, gates_per_layer, accuracies, max_cnots);
    if (format == "json") {
        write_output(out_path, rows_to_json(table, [](const BoundRow& r) {
                         return nlohmann::ordered_json{
                             {"L", r.cnot_count}, {"N", r.accuracy_n}, {"bound", r.bound}};
                     }));
    } else {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(table.size());
        for (const auto& r : table) {
            rows.push_back({std::to_string(r.cnot_count), fmt_g(r.accuracy_n), fmt_g(r.bound)});
        }
        write_output(out_path, rows_to_csv("L,N,bound", rows));
    }
    return kExitOk;
}

int run_budget(int qubits, const std::vector<int>& gates_per_layer, long max_depth,
               double threshold, int points, std::optional<double> tau,
               const std::string& format, const std::string& out_path) {
    const auto table = accuracy_budget_table(qubits, gates_per_layer, max_depth, threshold,
                                             points);
    if (format == "json") {
        write_output(out_path, rows_to_json(table, [](const BudgetRow& r) {
                         return nlohmann::ordered_json{{"m", r.depth},
                                                       {"l_t", r.gates_per_layer},
                                                       {"required_N", r.required_n}};
                     }));
    } else {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(table.size());
        for (const auto& r : table) {
            rows.push_back({std::to_string(r.depth), std::to_string(r.gates_per_layer),
                            fmt_g(r.required_n)});
        }
        write_output(out_path, rows_to_csv("m,l_t,required_N", rows));
    }
    if (tau) {
        // Timing budget at the deepest circuit of each family.
        for (const int lt : gates_per_layer) {
            const double required = required_accuracy(qubits, max_depth * lt, threshold);
            std::cerr << "l_t=" << lt << " m=" << max_depth << ": required N = "
                      << fmt_g(required) << ", sigma = " << fmt_g(timing_uncertainty(*tau,
                                                                                     required))
                      << " s (tau = " << fmt_g(*tau) << " s)\n";
        }
    }
    return kExitOk;
}

int run_circuit_sim(const std::string& spec_path, double accuracy, std::size_t samples,
                    std::uint64_t seed, const std::string& format,
                    const std::string& out_path) {
    const auto spec = CircuitSpec::from_json_file(spec_path);
    const auto report = empirical_average_fidelity(spec, accuracy, samples, seed);
    CircuitNoiseProfile profile{spec.n, {}, accuracy};
    for (const auto& layer : spec.layers) profile.layer_counts.push_back(
        static_cast<int>(layer.size()));
    const double bound = profile.fidelity_bound();
    const double se = *report.standard_error;
    const bool pass = report.value <= bound + 3.0 * se;

    if (format == "json") {
        nlohmann::ordered_json j;
        j["n"] = spec.n;
        j["L"] = spec.total_gates();
        j["N"] = accuracy;
        j["estimate"] = report.value;
        j["standard_error"] = se;
        j["method"] = to_string(report.method);
        j["bound"] = bound;
        j["within_bound"] = pass;
        write_output(out_path, j.dump(2));
    } else {
        std::ostringstream out;
        out << "n " << spec.n << "  L " << spec.total_gates() << "  N " << fmt_g(accuracy)
            << '\n'
            << "estimate " << fmt_g(report.value) << "  se " << fmt_g(se) << "  bound "
            << fmt_g(bound) << '\n'
            << (pass ? "PASS" : "FAIL") << " (estimate <= bound + 3*se)\n";
        write_output(out_path, out.str());
    }
    return pass ? kExitOk : kExitValidationFailure;
}

int run_cooling(const std::string& config_path, long max_steps, std::optional<double> rate_step,
                const std::vector<double>& sigmas, const std::string& format,
                const std::string& out_path) {
    CoolingConfig config = CoolingConfig::from_json_file(config_path);
    if (rate_step) {
        config.h = *rate_step;
        config.validate();
    }

    if (!sigmas.empty()) {
        const auto sweep = cooling_rate_sweep(config, sigmas, max_steps);
        if (format == "json") {
            write_output(out_path, rows_to_json(sweep, [](const CoolingRateRow& r) {
                             return nlohmann::ordered_json{
                                 {"sigma", r.sigma}, {"n", r.step}, {"rate", r.rate}};
                         }));
        } else {
            std::vector<std::vector<std::string>> rows;
            rows.reserve(sweep.size());
            for (const auto& r : sweep) {
                rows.push_back({fmt_g(r.sigma), std::to_string(r.step), fmt_g(r.rate)});
            }
            write_output(out_path, rows_to_csv("sigma,n,rate", rows));
        }
        return kExitOk;
    }

    const auto trajectory = cooling_trajectory(config, max_steps);
    if (format == "json") {
        write_output(out_path, rows_to_json(trajectory, [](const CoolingTrajectoryRow& r) {
                         return nlohmann::ordered_json{
                             {"n", r.step}, {"r", r.ground_population}, {"rate", r.rate}};
                     }));
    } else {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(trajectory.size());
        for (const auto& r : trajectory) {
            rows.push_back({std::to_string(r.step), fmt_g(r.ground_population), fmt_g(r.rate)});
        }
        write_output(out_path, rows_to_csv("n,r,rate", rows));
    }
    const double final_r = trajectory.back().ground_population;
    std::cerr << "final r = " << fmt_g(final_r) << " after " << max_steps
              << " swaps (r_v - r = " << fmt_g(config.r_v - final_r) << ")\n";
    return kExitOk;
}

int run_validate(const std::string& suite, std::uint64_t seed, std::size_t mc_samples,
                 const std::string& out_path) {
    std::vector<std::string> names;
    if (suite == "all") {
        names = validation::suite_names();
    } else {
        names = {suite};
    }
    std::vector<validation::SuiteReport> reports;
    reports.reserve(names.size());
    for (const auto& name : names) {
        reports.push_back(validation::run_suite(name, seed, mc_samples));
    }

    int failed = 0;
    for (const auto& report : reports) {
        for (const auto& c : report.checks) {
            std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << report.suite << '/' << c.name
                      << ": " << c.detail << '\n';
            failed += c.passed ? 0 : 1;
        }
    }
    const std::string json = validation::reports_to_json(reports);
    if (!out_path.empty()) write_output(out_path, json);
    std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed")
              << '\n';
    return failed == 0 ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"timing-noise dephasing channels, gate fidelity bounds, and cooling"};
    app.require_subcommand(1);

    // --- channel ---
    auto* channel_cmd = app.add_subcommand("channel", "build a dephasing channel and dump JSON");
    std::string builtin = "qubit", hamiltonian_file, dist_kind, ticks_csv, channel_out;
    double omega = 1.0, tau = std::numbers::pi, sigma = 0.0, comb_rate = 1.0;
    int comb_n = 2;
    channel_cmd->add_option("--builtin", builtin, "generator: qubit|cnot|swap");
    channel_cmd->add_option("--hamiltonian", hamiltonian_file,
                            "JSON file {dim, matrix:[[re,im],...]} (overrides --builtin)");
    channel_cmd->add_option("--omega", omega, "qubit generator gap");
    channel_cmd->add_option("--dist", dist_kind,
                            "dirac|gaussian|exponential|comb|empirical")->required();
    channel_cmd->add_option("--tau", tau, "mean tick time (dirac/gaussian/exponential)");
    channel_cmd->add_option("--sigma", sigma, "gaussian spread");
    channel_cmd->add_option("--comb-n", comb_n, "comb atom count");
    channel_cmd->add_option("--comb-rate", comb_rate, "comb rate parameter");
    channel_cmd->add_option("--ticks-csv", ticks_csv, "empirical atoms CSV (time,weight)");
    channel_cmd->add_option("--out", channel_out, "output path (default stdout)");

    // --- fidelity ---
    auto* fidelity_cmd = app.add_subcommand("fidelity", "average gate fidelity of a noisy gate");
    std::string gate, fidelity_format = "text", fidelity_out;
    double theta = std::numbers::pi, accuracy = 0.0;
    double gamma_flag = -1.0;
    std::size_t mc_samples = 0;
    std::uint64_t fidelity_seed = 0;
    fidelity_cmd->add_option("--gate", gate, "single|cnot-subspace|cnot-full")->required();
    fidelity_cmd->add_option("--theta", theta, "pulse area (single gate)");
    fidelity_cmd->add_option("--accuracy", accuracy, "clock accuracy N (inf allowed)");
    auto* gamma_opt = fidelity_cmd->add_option("--gamma", gamma_flag,
                                               "dephasing magnitude (overrides theta/accuracy)");
    auto* mc_opt = fidelity_cmd->add_option("--mc", mc_samples, "Haar Monte Carlo cross-check");
    auto* fidelity_seed_opt = fidelity_cmd->add_option("--seed", fidelity_seed, "RNG seed");
    mc_opt->needs(fidelity_seed_opt);
    fidelity_cmd->add_option("--format", fidelity_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    fidelity_cmd->add_option("--out", fidelity_out, "output path (default stdout)");

    // --- bound ---
    auto* bound_cmd = app.add_subcommand("bound", "fidelity bound vs CNOT count");
    int bound_qubits = 20, bound_lt = 1;
    std::vector<double> bound_accuracies;
    long bound_lmax = 100;
    std::string bound_format = "csv", bound_out;
    bound_cmd->add_option("--qubits", bound_qubits, "register size n");
    bound_cmd->add_option("--lt", bound_lt, "CNOTs per layer (L column step)");
    bound_cmd->add_option("--accuracy", bound_accuracies, "clock accuracies N")->required();
    bound_cmd->add_option("--l-max", bound_lmax, "largest CNOT count");
    bound_cmd->add_option("--format", bound_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    bound_cmd->add_option("--out", bound_out, "output path (default stdout)");

    // --- budget ---
    auto* budget_cmd = app.add_subcommand("budget", "required clock accuracy vs depth");
    int budget_qubits = 20, budget_points = 25;
    std::vector<int> budget_lt;
    long budget_mmax = 10000;
    double budget_threshold = 0.5;
    double budget_tau = 0.0;
    std::string budget_format = "csv", budget_out;
    budget_cmd->add_option("--qubits", budget_qubits, "register size n");
    budget_cmd->add_option("--lt", budget_lt, "CNOTs per layer (default 1 5 25 100)");
    budget_cmd->add_option("--m-max", budget_mmax, "largest depth m");
    budget_cmd->add_option("--threshold", budget_threshold, "fidelity threshold");
    budget_cmd->add_option("--points", budget_points, "depth grid size");
    auto* budget_tau_opt =
        budget_cmd->add_option("--tau", budget_tau, "gate duration for the sigma budget line");
    budget_cmd->add_option("--format", budget_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    budget_cmd->add_option("--out", budget_out, "output path (default stdout)");

    // --- circuit-sim ---
    auto* sim_cmd = app.add_subcommand("circuit-sim", "Haar fidelity of a noisy circuit");
    std::string sim_spec, sim_format = "text", sim_out;
    double sim_accuracy = 0.0;
    std::size_t sim_samples = 10000;
    std::uint64_t sim_seed = 0;
    sim_cmd->add_option("spec", sim_spec, "circuit spec JSON")->required();
    sim_cmd->add_option("--accuracy", sim_accuracy, "clock accuracy N")->required();
    sim_cmd->add_option("--samples", sim_samples, "Haar sample count");
    sim_cmd->add_option("--seed", sim_seed, "RNG seed")->required();
    sim_cmd->add_option("--format", sim_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    sim_cmd->add_option("--out", sim_out, "output path (default stdout)");

    // --- cooling ---
    auto* cooling_cmd = app.add_subcommand("cooling", "swap cooling trajectory and rate");
    std::string cooling_config, cooling_format = "csv", cooling_out;
    long cooling_nmax = 100;
    double cooling_h = 0.0;
    std::vector<double> cooling_sigmas;
    cooling_cmd->add_option("config", cooling_config, "cooling config JSON")->required();
    cooling_cmd->add_option("--n-max", cooling_nmax, "number of swap steps");
    auto* cooling_h_opt = cooling_cmd->add_option("--rate-step", cooling_h,
                                                  "central-difference step h");
    cooling_cmd->add_option("--sigmas", cooling_sigmas,
                            "emit rate curves for these timer spreads instead");
    cooling_cmd->add_option("--format", cooling_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cooling_cmd->add_option("--out", cooling_out, "output path (default stdout)");

    // --- validate ---
    auto* validate_cmd = app.add_subcommand("validate", "run the oracle comparison battery");
    std::string validate_suite = "all", validate_out;
    std::uint64_t validate_seed = 0;
    std::size_t validate_mc = 200000;
    validate_cmd->add_option("--suite", validate_suite,
                             "channels|fidelity|unitarity|cooling|all");
    validate_cmd->add_option("--seed", validate_seed, "RNG seed")->required();
    validate_cmd->add_option("--mc-samples", validate_mc, "Monte Carlo sample count");
    validate_cmd->add_option("--out", validate_out, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (channel_cmd->parsed()) {
            return run_channel(builtin, omega, hamiltonian_file, dist_kind, tau, sigma, comb_n,
                               comb_rate, ticks_csv, channel_out);
        }
        if (fidelity_cmd->parsed()) {
            std::optional<double> gamma;
            if (gamma_opt->count() > 0) gamma = gamma_flag;
            return run_fidelity(gate, theta, accuracy, gamma, mc_samples, fidelity_seed,
                                fidelity_format, fidelity_out);
        }
        if (bound_cmd->parsed()) {
            return run_bound(bound_qubits, bound_lt, bound_accuracies, bound_lmax, bound_format,
                             bound_out);
        }
        if (budget_cmd->parsed()) {
            if (budget_lt.empty()) budget_lt = {1, 5, 25, 100};
            std::optional<double> tau_budget;
            if (budget_tau_opt->count() > 0) tau_budget = budget_tau;
            return run_budget(budget_qubits, budget_lt, budget_mmax, budget_threshold,
                              budget_points, tau_budget, budget_format, budget_out);
        }
        if (sim_cmd->parsed()) {
            return run_circuit_sim(sim_spec, sim_accuracy, sim_samples, sim_seed, sim_format,
                                   sim_out);
        }
        if (cooling_cmd->parsed()) {
            std::optional<double> h;
            if (cooling_h_opt->count() > 0) h = cooling_h;
            return run_cooling(cooling_config, cooling_nmax, h, cooling_sigmas, cooling_format,
                               cooling_out);
        }
        if (validate_cmd->parsed()) {
            return run_validate(validate_suite, validate_seed, validate_mc, validate_out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidationFailure;
    }
    return kExitUsage;
}
