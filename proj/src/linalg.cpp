#include "ticknoise/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ticknoise {

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<cdouble> entries)
    : dim_(dim), entries_(entries) {
    if (entries_.size() != dim * dim) {
        throw std::invalid_argument("ComplexMatrix: initializer size does not match dim*dim");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (dim_ != other.dim_) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (dim_ != other.dim_) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble scale) {
    for (auto& e : entries_) e *= scale;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

cdouble ComplexMatrix::trace() const {
    cdouble t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

double ComplexMatrix::frobenius_norm_sq() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e);
    return s;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    const ComplexMatrix gram = adjoint() * (*this);
    return max_abs_diff(gram, identity(dim_)) <= tol;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(cdouble scale, ComplexMatrix mat) { return mat *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.dim() != rhs.dim()) throw std::invalid_argument("matrix dimension mismatch");
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const cdouble l = lhs(r, k);
            if (l == cdouble{}) continue;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += l * rhs(k, c);
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    const std::size_t a = lhs.dim(), b = rhs.dim();
    ComplexMatrix out(a * b);
    for (std::size_t r1 = 0; r1 < a; ++r1)
        for (std::size_t c1 = 0; c1 < a; ++c1) {
            const cdouble l = lhs(r1, c1);
            if (l == cdouble{}) continue;
            for (std::size_t r2 = 0; r2 < b; ++r2)
                for (std::size_t c2 = 0; c2 < b; ++c2)
                    out(r1 * b + r2, c1 * b + c2) = l * rhs(r2, c2);
        }
    return out;
}

ComplexMatrix conjugate_with(const ComplexMatrix& u, const ComplexMatrix& a) {
    return u * a * u.adjoint();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    double m = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = r + 1; c < a.dim(); ++c) s += std::norm(a(r, c));
    return std::sqrt(2.0 * s);
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& mat, double hermitian_tol, int max_sweeps) {
    const std::size_t n = mat.dim();
    if (n == 0 || n > kMaxDim) {
        throw std::invalid_argument("hermitian_eigensystem: dimension must be in [1, 64]");
    }
    if (!mat.is_hermitian(hermitian_tol)) {
        throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");
    }

    // Symmetrize so rounding in the input cannot bias the rotations.
    ComplexMatrix a(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a(r, c) = 0.5 * (mat(r, c) + std::conj(mat(c, r)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.max_abs());
    const double target = 1e-14 * scale * static_cast<double>(n);

    bool converged = (n == 1) || off_diagonal_norm(a) <= target;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) continue;

                // Factor the rotation as a phase on column q followed by a
                // real Jacobi rotation that annihilates the (p, q) entry.
                const cdouble phase = apq / mag;  // e^{i arg(apq)}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Column rotation J: col p <- c*p - s*conj(phase)... expressed
                // with J_pp = c, J_pq = s, J_qp = -s*conj(phase), J_qq = c*conj(phase).
                const cdouble jqp = -s * std::conj(phase);
                const cdouble jqq = c * std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) {
                    const cdouble aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip + jqp * aiq;
                    a(i, q) = s * aip + jqq * aiq;
                    const cdouble vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + jqp * viq;
                    v(i, q) = s * vip + jqq * viq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cdouble apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(jqp) * aqj;
                    a(q, j) = s * apj + std::conj(jqq) * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
        converged = off_diagonal_norm(a) <= target;
    }
    if (!converged) {
        throw std::runtime_error("hermitian_eigensystem: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return a(l, l).real() < a(r, r).real(); });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = a(src, src).real();
        // Fix the global phase: largest-magnitude component real positive.
        std::size_t imax = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(v(i, src));
            if (m > best) {
                best = m;
                imax = i;
            }
        }
        const cdouble ref = v(imax, src);
        const cdouble rot = (std::abs(ref) > 0.0) ? std::conj(ref) / std::abs(ref) : cdouble{1.0};
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = rot * v(i, src);
    }
    return out;
}

}  // namespace ticknoise
