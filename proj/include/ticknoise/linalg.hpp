#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ticknoise {

using cdouble = std::complex<double>;

// Tolerances shared by the exactness checks across the library.
constexpr double kExactTol = 1e-10;        // hermiticity / trace / unitarity
constexpr double kReconstructTol = 1e-9;   // eigendecomposition round trip
constexpr std::size_t kMaxDim = 64;        // dense eigensolver limit

// Dense square complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
    ComplexMatrix(std::size_t dim, std::initializer_list<cdouble> entries);

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

    cdouble* data() { return entries_.data(); }
    const cdouble* data() const { return entries_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cdouble scale);

    ComplexMatrix adjoint() const;
    cdouble trace() const;
    double max_abs() const;
    double frobenius_norm_sq() const;  // tr(A† A)
    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

private:
    std::size_t dim_ = 0;
    std::vector<cdouble> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cdouble scale, ComplexMatrix mat);

// Kronecker product, lhs indexes the slow (left) factor.
ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

// U A U†
ComplexMatrix conjugate_with(const ComplexMatrix& u, const ComplexMatrix& a);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // eigenvectors as columns, phase-fixed
};

// Cyclic Jacobi eigensolver for Hermitian matrices up to kMaxDim.
// Each eigenvector's largest-magnitude component is made real positive.
// Throws std::invalid_argument for non-Hermitian or oversize input and
// std::runtime_error if the sweep cap is hit before convergence.
EigenSystem hermitian_eigensystem(const ComplexMatrix& mat, double hermitian_tol = 1e-8,
                                  int max_sweeps = 100);

}  // namespace ticknoise
