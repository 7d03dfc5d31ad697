// numerics.hpp — self-contained dense complex linear algebra:
// Hermitian eigendecomposition, Kronecker products, commutators,
// finite-difference derivatives.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qptsim/error.hpp"

namespace qptsim::num {

using cx = std::complex<double>;

// Dense complex matrix, row-major. Energies are dimensionless (units of
// omega_r) unless a caller says otherwise; the class itself is unit-agnostic.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    cx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cx* data() { return data_.data(); }
    const cx* data() const { return data_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cx s);

    ComplexMatrix adjoint() const;
    cx trace() const;
    double max_abs() const;

    // Largest |M(i,j) - conj(M(j,i))| over all entries.
    double max_asymmetry() const;
    bool is_hermitian(double rel_tol = 1e-12) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cx s);
ComplexMatrix operator-(ComplexMatrix a);

// max |A(i,j) - B(i,j)|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigDecomposition {
    std::vector<double> eigenvalues; // ascending
    ComplexMatrix eigenvectors;      // orthonormal columns
};

// Householder tridiagonalization + implicit-shift QL. Input must be square
// and Hermitian within 1e-12 * max|H|.
EigDecomposition eigh(const ComplexMatrix& h);

// Matrix exponential via scaling and squaring (Taylor core). Intended for
// the anti-Hermitian generators of module swt; works for any square input.
ComplexMatrix expm(const ComplexMatrix& a);

// (f_minus - 2 f0 + f_plus) / h^2, h > 0.
double second_derivative(double f_minus, double f0, double f_plus, double h);

} // namespace qptsim::num
