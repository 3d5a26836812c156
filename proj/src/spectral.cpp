#include "ticknoise/spectral.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace ticknoise {

SpectralHamiltonian::SpectralHamiltonian(std::vector<double> energies, ComplexMatrix basis)
    : energies_(std::move(energies)), basis_(std::move(basis)) {
    if (energies_.empty() || energies_.size() != basis_.dim()) {
        throw std::invalid_argument("SpectralHamiltonian: energies/basis size mismatch");
    }
    if (!basis_.is_unitary(kExactTol)) {
        throw std::invalid_argument("SpectralHamiltonian: eigenbasis is not orthonormal");
    }
}

SpectralHamiltonian SpectralHamiltonian::from_matrix(const ComplexMatrix& hamiltonian) {
    auto eig = hermitian_eigensystem(hamiltonian);
    return SpectralHamiltonian(std::move(eig.values), std::move(eig.vectors));
}

ComplexMatrix SpectralHamiltonian::matrix() const {
    const std::size_t n = dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            cdouble sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                sum += energies_[k] * basis_(r, k) * std::conj(basis_(c, k));
            out(r, c) = sum;
        }
    return out;
}

ComplexMatrix SpectralHamiltonian::to_eigenbasis(const ComplexMatrix& mat) const {
    return basis_.adjoint() * mat * basis_;
}

ComplexMatrix SpectralHamiltonian::from_eigenbasis(const ComplexMatrix& mat) const {
    return basis_ * mat * basis_.adjoint();
}

DensityMatrix evolve_unitary(const DensityMatrix& rho, const SpectralHamiltonian& h, double t) {
    if (rho.dim() != h.dim()) throw std::invalid_argument("evolve_unitary: dimension mismatch");
    const std::size_t n = h.dim();
    ComplexMatrix in_eig = h.to_eigenbasis(rho.mat());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            in_eig(r, c) *= std::polar(1.0, -(h.energies()[r] - h.energies()[c]) * t);
    return DensityMatrix(h.from_eigenbasis(in_eig));
}

}  // namespace ticknoise
