#pragma once

#include <complex>
#include <vector>

#include "gentleq/errors.hpp"

namespace gentleq {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major, sized for small dimensions
/// (the library targets d <= 16).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {}
    ComplexMatrix(int dim, std::vector<Complex> entries);

    static ComplexMatrix identity(int dim);

    int dim() const noexcept { return dim_; }

    Complex& operator()(int row, int col) noexcept { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }
    const Complex& operator()(int row, int col) const noexcept { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }

    const std::vector<Complex>& entries() const noexcept { return entries_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    /// Largest entry magnitude (max norm).
    double max_abs() const;
    double frobenius_norm() const;

    /// Max-entry deviation |H - H*|.
    double hermiticity_defect() const;
    bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

    /// (H + H*) / 2.
    ComplexMatrix symmetrized() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    static ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int dim_ = 0;
    std::vector<Complex> entries_;
};

/// Eigensystem of a hermitian matrix: eigenvalues ascending, eigenvector
/// k stored as column k of `eigenvectors`.
struct HermitianEigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi eigensolver for hermitian matrices. Inputs within the
/// hermiticity tolerance are symmetrized before iterating, which makes the
/// result deterministic and platform-reproducible.
///
/// Throws NotHermitian if |H - H*| exceeds `hermitian_tol` (max entry),
/// NoConvergence if 100 sweeps do not reach the off-diagonal target.
HermitianEigenDecomposition hermitian_eig(const ComplexMatrix& matrix, double hermitian_tol = 1e-9);

/// (1/2) sum |lambda_i(A - B)|.
double trace_norm_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Projector onto the span of eigenvectors with eigenvalue >= 0; zero
/// eigenvalues count as positive so the output is deterministic.
ComplexMatrix positive_part_projector(const ComplexMatrix& matrix);

/// True iff lambda_min(H) >= -tol.
bool is_psd(const ComplexMatrix& matrix, double tol);

} // namespace gentleq
