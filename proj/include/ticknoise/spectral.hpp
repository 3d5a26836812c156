#pragma once

#include <vector>

#include "ticknoise/linalg.hpp"
#include "ticknoise/qstate.hpp"

namespace ticknoise {

// Hermitian generator stored as eigenvalues plus an orthonormal eigenbasis,
// H = sum_n E_n |n><n|. Everything downstream only consumes energy gaps and
// basis rotations, so degenerate eigenvalues are benign.
class SpectralHamiltonian {
public:
    // From explicit spectral data; basis columns must be orthonormal.
    SpectralHamiltonian(std::vector<double> energies, ComplexMatrix basis);

    // Hermitian matrix input; diagonalized with the Jacobi solver.
    static SpectralHamiltonian from_matrix(const ComplexMatrix& hamiltonian);

    std::size_t dim() const { return energies_.size(); }
    const std::vector<double>& energies() const { return energies_; }
    const ComplexMatrix& basis() const { return basis_; }

    ComplexMatrix matrix() const;  // sum_n E_n |n><n|

    ComplexMatrix to_eigenbasis(const ComplexMatrix& mat) const;    // V† M V
    ComplexMatrix from_eigenbasis(const ComplexMatrix& mat) const;  // V M V†

private:
    std::vector<double> energies_;
    ComplexMatrix basis_;
};

// e^{-iHt} rho e^{iHt}
DensityMatrix evolve_unitary(const DensityMatrix& rho, const SpectralHamiltonian& h, double t);

}  // namespace ticknoise
