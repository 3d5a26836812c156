#pragma once

#include "ticknoise/spectral.hpp"

namespace ticknoise {

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix cnot_matrix();  // control = first factor
ComplexMatrix swap_matrix();

// Computational basis state |index> of the given dimension.
PureState basis_state(std::size_t dim, std::size_t index);

// Generators of the gates as pulses of duration pi: gate = exp(-i H pi).
// Built from exact analytic eigenbases so channel comparisons stay at 1e-12.
SpectralHamiltonian qubit_generator(double omega);  // diag(0, omega), gap omega
SpectralHamiltonian cnot_generator();               // |1-><1-|
SpectralHamiltonian swap_generator();               // |Psi-><Psi-|

// Place a two-qubit operator on qubits (q1, q2) of an n-qubit register,
// identity elsewhere. Qubit 0 is the leftmost (most significant) factor;
// q1 indexes the operator's first factor.
ComplexMatrix embed_two_qubit(const ComplexMatrix& op4, int n_qubits, int q1, int q2);

}  // namespace ticknoise
