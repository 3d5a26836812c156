#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ticknoise/linalg.hpp"
#include "ticknoise/rng.hpp"

namespace ticknoise {

enum class TickKind { dirac, gaussian, exponential, comb, empirical };

// Probability density of the instant a control timer fires. The quantities
// that matter downstream are the first two moments and the mean-centered
// characteristic function phi0(omega) = E[exp(-i omega (T - tau))]; the
// magnitude |phi0| at an energy gap is the coherence that survives the gate.
class TickDistribution {
public:
    static TickDistribution dirac(double tau);
    static TickDistribution gaussian(double tau, double sigma);
    static TickDistribution exponential(double mean);
    // Atoms at k/(n*rate) for k = 0..n-1, all with weight 1/n.
    static TickDistribution comb(int n, double rate);
    static TickDistribution empirical(std::vector<double> times, std::vector<double> weights);
    // Two-column CSV (time_seconds, weight); weights must sum to 1 within
    // 1e-6 and are renormalized, otherwise the file is rejected.
    static TickDistribution empirical_from_csv(const std::string& path);

    TickKind kind() const { return kind_; }

    double mean() const { return mean_; }
    double variance() const { return variance_; }
    std::pair<double, double> moments() const { return {mean_, variance_}; }

    // Clock accuracy N = tau^2 / sigma^2; infinite for zero variance.
    // Requires tau > 0.
    double accuracy() const;

    cdouble centered_characteristic(double omega) const;

    // Gamma = -log|phi0(omega)|; zero iff no coherence is lost at this gap.
    double dephasing_rate(double omega) const;

    double sample(Rng& rng) const;

    // Atom representation (comb and empirical kinds only).
    const std::vector<double>& atom_times() const { return atom_times_; }
    const std::vector<double>& atom_weights() const { return atom_weights_; }

private:
    TickDistribution() = default;

    TickKind kind_ = TickKind::dirac;
    double mean_ = 0.0;
    double variance_ = 0.0;
    double sigma_ = 0.0;            // gaussian only
    int comb_n_ = 0;                // comb only
    double comb_rate_ = 0.0;        // comb only
    std::vector<double> atom_times_;
    std::vector<double> atom_weights_;
    std::vector<double> atom_cdf_;
};

// Characteristic function phi(omega) = (1/n) sum_k exp(-i omega k / (n rate))
// of the n-atom comb, evaluated in closed form with the removable
// singularities at the revival frequencies omega = 2 pi n rate k replaced by
// their limit value (exactly 1).
cdouble comb_characteristic_closed_form(int n, double rate, double omega);

}  // namespace ticknoise
