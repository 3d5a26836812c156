#include "ticknoise/qstate.hpp"

#include <cmath>
#include <stdexcept>

namespace ticknoise {

PureState::PureState(std::vector<cdouble> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) throw std::invalid_argument("PureState: empty amplitude vector");
    double norm_sq = 0.0;
    for (const auto& a : amps_) norm_sq += std::norm(a);
    if (std::abs(norm_sq - 1.0) > 1e-12) {
        throw std::invalid_argument("PureState: amplitudes are not unit norm");
    }
}

ComplexMatrix PureState::projector() const {
    ComplexMatrix out(dim());
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t c = 0; c < dim(); ++c) out(r, c) = amps_[r] * std::conj(amps_[c]);
    return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
    if (mat_.dim() == 0) throw std::invalid_argument("DensityMatrix: empty matrix");
    if (!mat_.is_hermitian(kExactTol)) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(mat_.trace() - cdouble{1.0}) > kExactTol) {
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
    const auto eig = hermitian_eigensystem(mat_);
    if (eig.values.front() < -kExactTol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / static_cast<double>(dim);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& populations) {
    ComplexMatrix m(populations.size());
    for (std::size_t i = 0; i < populations.size(); ++i) m(i, i) = populations[i];
    return DensityMatrix(std::move(m));
}

double DensityMatrix::purity() const {
    // tr(rho^2) = ||rho||_F^2 for Hermitian rho.
    return mat_.frobenius_norm_sq();
}

PureState haar_random_state(std::size_t dim, Rng& rng) {
    if (dim == 0) throw std::invalid_argument("haar_random_state: dim must be >= 1");
    std::vector<cdouble> amps(dim);
    double norm_sq = 0.0;
    for (auto& a : amps) {
        a = cdouble{normal_draw(rng), normal_draw(rng)};
        norm_sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= inv;
    return PureState(std::move(amps));
}

namespace {

std::size_t product(const std::vector<std::size_t>& v) {
    std::size_t p = 1;
    for (auto d : v) p *= d;
    return p;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& mat, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
    if (product(dims) != mat.dim()) {
        throw std::invalid_argument("partial_trace: subsystem dims do not factor the matrix");
    }
    if (keep.empty()) throw std::invalid_argument("partial_trace: nothing kept");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= dims.size() || (i > 0 && keep[i] <= keep[i - 1])) {
            throw std::invalid_argument("partial_trace: keep must be ascending subsystem indices");
        }
    }

    std::vector<std::size_t> traced;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        bool kept = false;
        for (auto k : keep) kept |= (k == s);
        if (!kept) traced.push_back(s);
    }

    // Stride of each subsystem in the flattened index.
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t s = dims.size(); s-- > 1;) stride[s - 1] = stride[s] * dims[s];

    std::vector<std::size_t> kept_dims;
    for (auto k : keep) kept_dims.push_back(dims[k]);
    const std::size_t out_dim = product(kept_dims);

    std::vector<std::size_t> traced_dims;
    for (auto t : traced) traced_dims.push_back(dims[t]);
    const std::size_t traced_count = product(traced_dims);

    auto compose = [&](std::size_t kept_index, std::size_t traced_index) {
        std::size_t flat = 0;
        for (std::size_t i = keep.size(); i-- > 0;) {
            flat += (kept_index % kept_dims[i]) * stride[keep[i]];
            kept_index /= kept_dims[i];
        }
        for (std::size_t i = traced.size(); i-- > 0;) {
            flat += (traced_index % traced_dims[i]) * stride[traced[i]];
            traced_index /= traced_dims[i];
        }
        return flat;
    };

    ComplexMatrix out(out_dim);
    for (std::size_t r = 0; r < out_dim; ++r)
        for (std::size_t c = 0; c < out_dim; ++c) {
            cdouble sum = 0.0;
            for (std::size_t t = 0; t < traced_count; ++t) sum += mat(compose(r, t), compose(c, t));
            out(r, c) = sum;
        }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
    return DensityMatrix(partial_trace(rho.mat(), dims, keep));
}

double trace_norm(const ComplexMatrix& hermitian) {
    const auto eig = hermitian_eigensystem(hermitian);
    double sum = 0.0;
    for (double v : eig.values) sum += std::abs(v);
    return sum;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    return 0.5 * trace_norm(a.mat() - b.mat());
}

}  // namespace ticknoise
