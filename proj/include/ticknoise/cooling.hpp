#pragma once

#include <string>
#include <vector>

#include "ticknoise/ticks.hpp"

namespace ticknoise {

// Two-level thermal state data: Z = tanh(beta * omega), ground population
// r = (1 + Z) / 2.
struct ThermalQubit {
    double beta;
    double omega;
    double z;
    double ground_population;
};

ThermalQubit thermal_qubit(double beta, double omega);

// Swap-with-virtual-qubit cooling protocol under an imperfect timer.
struct CoolingConfig {
    double r_s;         // initial system ground population
    double r_v;         // virtual qubit ground population, r_v > r_s
    double p_v;         // virtual qubit occupation, in (0, 1)
    double accuracy_n;  // clock accuracy, may be +infinity
    double h = 0.1;     // finite-difference step for the cooling rate

    void validate() const;
    double swap_error() const;    // p
    double effective_pv() const;  // P_v (1 - p)

    // Accepts {"r_s", "r_v", "P_v"} plus either "N" or {"sigma"[, "tau"]}
    // (tau defaults to pi); optional "h".
    static CoolingConfig from_json_text(const std::string& text);
    static CoolingConfig from_json_file(const std::string& path);
};

// p = (1 - e^{-pi^2 / 2N}) / 2, the fraction of the virtual-qubit population
// the ill-timed SWAP fails to transfer. Requires N > 0; N = +inf gives 0.
double swap_error_probability(double accuracy_n);

// r^(n) = r_v - (r_v - r_s)(1 - P_v(1-p))^n, extended to real n so the
// central-difference rate is defined everywhere.
double ground_population_after_n(const CoolingConfig& config, double steps);

// One protocol step by explicit two-qubit simulation: system (x) virtual
// qubit, dephased SWAP channel, convex mix with the untouched branch,
// partial trace. Must reproduce the one-step recurrence exactly.
double cooling_step_full_sim(const ThermalQubit& system, double z_v, double p_v,
                             const TickDistribution& dist);

// R_h = ((r_s - r_v)/h) [((1-Pv~)^h - 1)(1-Pv~)^{n - h/2}]
double cooling_rate(const CoolingConfig& config, double steps, double h);

// Smallest integer n with r^(n) >= r_target; throws if r_target >= r_v.
long swaps_to_target(const CoolingConfig& config, double r_target);

struct CoolingTrajectoryRow {
    long step;
    double ground_population;
    double rate;
};
std::vector<CoolingTrajectoryRow> cooling_trajectory(const CoolingConfig& config, long max_steps);

// Rate curves for several timer spreads sigma (tau = pi pulse area); rows
// ordered by sigma then step.
struct CoolingRateRow {
    double sigma;
    long step;
    double rate;
};
std::vector<CoolingRateRow> cooling_rate_sweep(const CoolingConfig& base,
                                               const std::vector<double>& sigmas, long max_steps);

}  // namespace ticknoise
