#pragma once

#include <cstddef>
#include <vector>

#include "ticknoise/linalg.hpp"
#include "ticknoise/rng.hpp"

namespace ticknoise {

// Normalized pure state |psi>.
class PureState {
public:
    explicit PureState(std::vector<cdouble> amplitudes);

    std::size_t dim() const { return amps_.size(); }
    const std::vector<cdouble>& amplitudes() const { return amps_; }
    cdouble amplitude(std::size_t i) const { return amps_[i]; }

    ComplexMatrix projector() const;  // |psi><psi|

private:
    std::vector<cdouble> amps_;
};

// Trace-one Hermitian PSD matrix; construction validates all three invariants
// (hermiticity and trace to 1e-10, eigenvalues >= -1e-10).
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix mat);

    static DensityMatrix pure(const PureState& psi);
    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix diagonal(const std::vector<double>& populations);

    std::size_t dim() const { return mat_.dim(); }
    const ComplexMatrix& mat() const { return mat_; }

    double purity() const;  // tr(rho^2)

private:
    ComplexMatrix mat_;
};

// Unitarily invariant random pure state (Gaussian vector, normalized).
PureState haar_random_state(std::size_t dim, Rng& rng);

// Trace out every subsystem not listed in `keep`. `dims` are the subsystem
// dimensions in tensor order (leftmost factor first); their product must
// equal the matrix dimension. `keep` must be strictly ascending.
ComplexMatrix partial_trace(const ComplexMatrix& mat, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

// Sum of |eigenvalues| of a Hermitian matrix (Schatten 1-norm).
double trace_norm(const ComplexMatrix& hermitian);

// (1/2) || a - b ||_1, in [0, 1] for density matrices.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace ticknoise
