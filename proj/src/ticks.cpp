#include "ticknoise/ticks.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ticknoise {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void build_cdf(const std::vector<double>& weights, std::vector<double>& cdf) {
    cdf.resize(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;  // guard against rounding in the final bin
}

}  // namespace

TickDistribution TickDistribution::dirac(double tau) {
    if (tau <= 0.0) throw std::invalid_argument("TickDistribution: tau must be positive");
    TickDistribution d;
    d.kind_ = TickKind::dirac;
    d.mean_ = tau;
    d.variance_ = 0.0;
    return d;
}

TickDistribution TickDistribution::gaussian(double tau, double sigma) {
    if (tau <= 0.0) throw std::invalid_argument("TickDistribution: tau must be positive");
    if (sigma < 0.0) throw std::invalid_argument("TickDistribution: sigma must be nonnegative");
    TickDistribution d;
    d.kind_ = TickKind::gaussian;
    d.mean_ = tau;
    d.sigma_ = sigma;
    d.variance_ = sigma * sigma;
    return d;
}

TickDistribution TickDistribution::exponential(double mean) {
    if (mean <= 0.0) throw std::invalid_argument("TickDistribution: mean must be positive");
    TickDistribution d;
    d.kind_ = TickKind::exponential;
    d.mean_ = mean;
    d.variance_ = mean * mean;
    return d;
}

TickDistribution TickDistribution::comb(int n, double rate) {
    if (n < 1) throw std::invalid_argument("TickDistribution: comb needs n >= 1");
    if (rate <= 0.0) throw std::invalid_argument("TickDistribution: comb rate must be positive");
    TickDistribution d;
    d.kind_ = TickKind::comb;
    d.comb_n_ = n;
    d.comb_rate_ = rate;
    const double nn = static_cast<double>(n);
    d.mean_ = (nn - 1.0) / (2.0 * nn * rate);
    d.variance_ = (nn * nn - 1.0) / (12.0 * nn * nn * rate * rate);
    d.atom_times_.resize(n);
    d.atom_weights_.assign(n, 1.0 / nn);
    for (int k = 0; k < n; ++k) d.atom_times_[k] = static_cast<double>(k) / (nn * rate);
    build_cdf(d.atom_weights_, d.atom_cdf_);
    return d;
}

TickDistribution TickDistribution::empirical(std::vector<double> times,
                                             std::vector<double> weights) {
    if (times.empty() || times.size() != weights.size()) {
        throw std::invalid_argument("TickDistribution: empirical atoms/weights mismatch");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("TickDistribution: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("TickDistribution: weights must sum to 1");
    }
    TickDistribution d;
    d.kind_ = TickKind::empirical;
    d.atom_times_ = std::move(times);
    d.atom_weights_ = std::move(weights);
    double mean = 0.0;
    for (std::size_t i = 0; i < d.atom_times_.size(); ++i)
        mean += d.atom_weights_[i] * d.atom_times_[i];
    double var = 0.0;
    for (std::size_t i = 0; i < d.atom_times_.size(); ++i) {
        const double dt = d.atom_times_[i] - mean;
        var += d.atom_weights_[i] * dt * dt;
    }
    d.mean_ = mean;
    d.variance_ = var;
    build_cdf(d.atom_weights_, d.atom_cdf_);
    return d;
}

TickDistribution TickDistribution::empirical_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("empirical_from_csv: cannot open " + path);
    std::vector<double> times, weights;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string t_field, w_field;
        if (!std::getline(ls, t_field, ',') || !std::getline(ls, w_field)) {
            throw std::runtime_error("empirical_from_csv: expected two columns in " + path);
        }
        double t_val = 0.0, w_val = 0.0;
        try {
            t_val = std::stod(t_field);
            w_val = std::stod(w_field);
        } catch (const std::exception&) {
            if (first) {  // header row
                first = false;
                continue;
            }
            throw std::runtime_error("empirical_from_csv: non-numeric row in " + path);
        }
        times.push_back(t_val);
        weights.push_back(w_val);
        first = false;
    }
    if (times.empty()) throw std::runtime_error("empirical_from_csv: no atoms in " + path);
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::runtime_error("empirical_from_csv: negative weight in " + path);
        sum += w;
    }
    if (sum < 1.0 - 1e-6 || sum > 1.0 + 1e-6) {
        throw std::runtime_error("empirical_from_csv: weights sum to " + std::to_string(sum) +
                                 ", expected 1 within 1e-6");
    }
    for (double& w : weights) w /= sum;
    return empirical(std::move(times), std::move(weights));
}

double TickDistribution::accuracy() const {
    if (mean_ <= 0.0) {
        throw std::invalid_argument("TickDistribution: accuracy requires positive mean");
    }
    if (variance_ == 0.0) return kInf;
    return mean_ * mean_ / variance_;
}

cdouble TickDistribution::centered_characteristic(double omega) const {
    cdouble phi;
    switch (kind_) {
        case TickKind::dirac:
            return {1.0, 0.0};
        case TickKind::gaussian:
            return {std::exp(-0.5 * variance_ * omega * omega), 0.0};
        case TickKind::exponential:
            // E[e^{-i w T}] = 1/(1 + i w tau); recenter by e^{i w tau}.
            phi = std::polar(1.0, omega * mean_) / cdouble{1.0, omega * mean_};
            break;
        case TickKind::comb:
            phi = std::polar(1.0, omega * mean_) *
                  comb_characteristic_closed_form(comb_n_, comb_rate_, omega);
            break;
        case TickKind::empirical: {
            cdouble sum = 0.0;
            for (std::size_t i = 0; i < atom_times_.size(); ++i)
                sum += atom_weights_[i] * std::polar(1.0, -omega * (atom_times_[i] - mean_));
            phi = sum;
            break;
        }
        default:
            throw std::logic_error("TickDistribution: unknown kind");
    }
    // Rounding can push the magnitude a hair above 1; clamp it back.
    const double mag = std::abs(phi);
    if (mag > 1.0) phi /= mag;
    return phi;
}

double TickDistribution::dephasing_rate(double omega) const {
    const double mag = std::abs(centered_characteristic(omega));
    if (mag <= 0.0) return kInf;
    const double rate = -std::log(mag);
    return rate < 0.0 ? 0.0 : rate;
}

double TickDistribution::sample(Rng& rng) const {
    switch (kind_) {
        case TickKind::dirac:
            return mean_;
        case TickKind::gaussian:
            return mean_ + sigma_ * normal_draw(rng);
        case TickKind::exponential:
            return -mean_ * std::log(1.0 - uniform_unit(rng));
        case TickKind::comb:
        case TickKind::empirical: {
            const double u = uniform_unit(rng);
            for (std::size_t i = 0; i < atom_cdf_.size(); ++i)
                if (u < atom_cdf_[i]) return atom_times_[i];
            return atom_times_.back();
        }
    }
    throw std::logic_error("TickDistribution: unknown kind");
}

cdouble comb_characteristic_closed_form(int n, double rate, double omega) {
    if (n < 1) throw std::invalid_argument("comb_characteristic_closed_form: n >= 1");
    if (rate <= 0.0) throw std::invalid_argument("comb_characteristic_closed_form: rate > 0");
    if (n == 1) return {1.0, 0.0};  // single atom at t = 0

    const double nn = static_cast<double>(n);
    // Revival frequencies: omega = 2 pi n rate k, where every atom phase is a
    // multiple of 2 pi and the sum collapses to exactly 1.
    const double cycles = omega / (2.0 * std::numbers::pi * nn * rate);
    if (std::abs(cycles - std::round(cycles)) < 1e-9 * std::max(1.0, std::abs(cycles))) {
        return {1.0, 0.0};
    }

    const double x = omega / (2.0 * nn * rate);  // half-phase between atoms
    const double phase = -(omega / rate) * 0.5 * (1.0 - 1.0 / nn);
    return std::polar(1.0, phase) * (std::sin(nn * x) / (nn * std::sin(x)));
}

}  // namespace ticknoise
