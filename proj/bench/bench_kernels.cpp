// Times the OpenMP Monte Carlo kernels against their serial references and
// checks that the sharded reductions make both produce identical bits.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "ticknoise/channels.hpp"
#include "ticknoise/circuit.hpp"
#include "ticknoise/gates.hpp"
#include "ticknoise/metrics.hpp"

using namespace ticknoise;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, double serial_s, double parallel_s, double max_diff) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   max|diff| %g\n",
                name, serial_s, parallel_s, serial_s / parallel_s, max_diff);
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t mc_samples = 1000000;
    std::size_t haar_samples = 200000;
    std::size_t circuit_samples = 20000;
    if (argc > 1 && std::strcmp(argv[1], "--quick") == 0) {
        mc_samples = 100000;
        haar_samples = 20000;
        circuit_samples = 2000;
    }

    const std::uint64_t seed = 42;

    {
        const auto h = cnot_generator();
        const auto dist = TickDistribution::gaussian(3.14159, 0.4);
        const auto rho = DensityMatrix::pure(basis_state(4, 2));

        auto t0 = std::chrono::steady_clock::now();
        const auto serial = monte_carlo_average_serial(h, dist, rho, mc_samples, seed);
        const double serial_s = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        const auto parallel = monte_carlo_average(h, dist, rho, mc_samples, seed);
        const double parallel_s = seconds_since(t0);

        report("monte_carlo_average", serial_s, parallel_s,
               max_abs_diff(serial.mat(), parallel.mat()));
    }

    {
        const auto kraus = cnot_dephasing_kraus(0.7);

        auto t0 = std::chrono::steady_clock::now();
        const auto serial = haar_average_fidelity_mc_serial(kraus, 4, haar_samples, seed);
        const double serial_s = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        const auto parallel = haar_average_fidelity_mc(kraus, 4, haar_samples, seed);
        const double parallel_s = seconds_since(t0);

        report("haar_average_fidelity_mc", serial_s, parallel_s,
               std::abs(serial.value - parallel.value));
    }

    {
        Rng rng(7);
        const auto spec = random_circuit(4, 8, 2, rng);

        auto t0 = std::chrono::steady_clock::now();
        const auto serial = empirical_average_fidelity_serial(spec, 50.0, circuit_samples, seed);
        const double serial_s = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        const auto parallel = empirical_average_fidelity(spec, 50.0, circuit_samples, seed);
        const double parallel_s = seconds_since(t0);

        report("empirical_average_fidelity", serial_s, parallel_s,
               std::abs(serial.value - parallel.value));
    }
    return 0;
}
