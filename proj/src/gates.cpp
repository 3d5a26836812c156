#include "ticknoise/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace ticknoise {

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

ComplexMatrix pauli_y() {
    return ComplexMatrix(2, {0.0, cdouble{0.0, -1.0}, cdouble{0.0, 1.0}, 0.0});
}

ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix cnot_matrix() {
    ComplexMatrix m(4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

ComplexMatrix swap_matrix() {
    ComplexMatrix m(4);
    m(0, 0) = 1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 3) = 1.0;
    return m;
}

PureState basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("basis_state: index out of range");
    std::vector<cdouble> amps(dim);
    amps[index] = 1.0;
    return PureState(std::move(amps));
}

SpectralHamiltonian qubit_generator(double omega) {
    if (omega <= 0.0) throw std::invalid_argument("qubit_generator: gap must be positive");
    return SpectralHamiltonian({0.0, omega}, ComplexMatrix::identity(2));
}

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

SpectralHamiltonian cnot_generator() {
    // Eigenbasis {|00>, |01>, |1+>, |1->}; only |1-> carries energy.
    ComplexMatrix basis(4);
    basis(0, 0) = 1.0;
    basis(1, 1) = 1.0;
    basis(2, 2) = kInvSqrt2;
    basis(3, 2) = kInvSqrt2;
    basis(2, 3) = kInvSqrt2;
    basis(3, 3) = -kInvSqrt2;
    return SpectralHamiltonian({0.0, 0.0, 0.0, 1.0}, std::move(basis));
}

SpectralHamiltonian swap_generator() {
    // Eigenbasis {|00>, |Psi+>, |11>, |Psi->}; only |Psi-> carries energy.
    ComplexMatrix basis(4);
    basis(0, 0) = 1.0;
    basis(1, 1) = kInvSqrt2;
    basis(2, 1) = kInvSqrt2;
    basis(3, 2) = 1.0;
    basis(1, 3) = kInvSqrt2;
    basis(2, 3) = -kInvSqrt2;
    return SpectralHamiltonian({0.0, 0.0, 0.0, 1.0}, std::move(basis));
}

ComplexMatrix embed_two_qubit(const ComplexMatrix& op4, int n_qubits, int q1, int q2) {
    if (op4.dim() != 4) throw std::invalid_argument("embed_two_qubit: operator must be 4x4");
    if (n_qubits < 2 || n_qubits > 10) {
        throw std::invalid_argument("embed_two_qubit: qubit count out of range");
    }
    if (q1 == q2 || q1 < 0 || q2 < 0 || q1 >= n_qubits || q2 >= n_qubits) {
        throw std::invalid_argument("embed_two_qubit: invalid qubit indices");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t m1 = std::size_t{1} << (n_qubits - 1 - q1);
    const std::size_t m2 = std::size_t{1} << (n_qubits - 1 - q2);
    const std::size_t rest_mask = (dim - 1) & ~(m1 | m2);

    auto pair_bits = [&](std::size_t i) {
        return (((i & m1) != 0) ? 2u : 0u) | (((i & m2) != 0) ? 1u : 0u);
    };
    auto with_pair = [&](std::size_t rest, unsigned pair) {
        return rest | ((pair & 2u) ? m1 : 0u) | ((pair & 1u) ? m2 : 0u);
    };

    ComplexMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const std::size_t rest = r & rest_mask;
        const unsigned a = pair_bits(r);
        for (unsigned b = 0; b < 4; ++b) {
            const cdouble v = op4(a, b);
            if (v == cdouble{}) continue;
            out(r, with_pair(rest, b)) = v;
        }
    }
    return out;
}

}  // namespace ticknoise
