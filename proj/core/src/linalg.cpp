#include "gentleq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gentleq {

ComplexMatrix::ComplexMatrix(int dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ < 1 || entries_.size() != static_cast<std::size_t>(dim_) * dim_) {
        throw DimensionMismatch("entry count does not match a square matrix of the given dim");
    }
    for (const Complex& value : entries_) {
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw InvalidInput("matrix entries must be finite");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex sum = 0.0;
    for (int i = 0; i < dim_; ++i) sum += (*this)(i, i);
    return sum;
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const Complex& value : entries_) best = std::max(best, std::abs(value));
    return best;
}

double ComplexMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const Complex& value : entries_) sum += std::norm(value);
    return std::sqrt(sum);
}

double ComplexMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = r; c < dim_; ++c)
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
}

ComplexMatrix ComplexMatrix::symmetrized() const {
    ComplexMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            out(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (dim_ != other.dim_) throw DimensionMismatch("matrix addition requires equal dims");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (dim_ != other.dim_) throw DimensionMismatch("matrix subtraction requires equal dims");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (Complex& value : entries_) value *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("matrix product requires equal dims");
    const int d = a.dim_;
    ComplexMatrix out(d);
    for (int r = 0; r < d; ++r) {
        for (int k = 0; k < d; ++k) {
            const Complex lhs = a(r, k);
            if (lhs == Complex{}) continue;
            for (int c = 0; c < d; ++c) out(r, c) += lhs * b(k, c);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (int ra = 0; ra < da; ++ra)
        for (int ca = 0; ca < da; ++ca) {
            const Complex factor = a(ra, ca);
            for (int rb = 0; rb < db; ++rb)
                for (int cb = 0; cb < db; ++cb)
                    out(ra * db + rb, ca * db + cb) = factor * b(rb, cb);
        }
    return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    const int d = m.dim();
    for (int r = 0; r < d; ++r)
        for (int c = r + 1; c < d; ++c) sum += std::norm(m(r, c));
    return std::sqrt(2.0 * sum);
}

} // namespace

HermitianEigenDecomposition hermitian_eig(const ComplexMatrix& matrix, double hermitian_tol) {
    const int d = matrix.dim();
    if (d < 1) throw DimensionMismatch("empty matrix");
    if (!matrix.is_hermitian(hermitian_tol)) {
        throw NotHermitian("hermiticity defect exceeds tolerance");
    }

    ComplexMatrix a = matrix.symmetrized();
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    const double target = 1e-15 * scale;
    constexpr int kMaxSweeps = 100;

    bool converged = (d == 1) || off_diagonal_norm(a) <= target;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const Complex apq = a(p, q);
                const double b = std::abs(apq);
                if (b <= 1e-300) continue;
                const Complex phase = apq / b; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // tan(2 theta) = 2 b / (aqq - app); smaller-magnitude root
                const double tau = (aqq - app) / (2.0 * b);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex s_phase = s * phase;
                const Complex s_phase_conj = std::conj(s_phase);

                for (int k = 0; k < d; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s_phase_conj * akq;
                    a(k, q) = s_phase * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s_phase * aqk;
                    a(q, k) = s_phase_conj * apk + c * aqk;
                }
                // rotation cancels the (p,q) entry exactly
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);

                for (int k = 0; k < d; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s_phase_conj * vkq;
                    v(k, q) = s_phase * vkp + c * vkq;
                }
            }
        }
        converged = off_diagonal_norm(a) <= target;
    }
    if (!converged) throw NoConvergence("Jacobi sweep cap exceeded");

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&a](int lhs, int rhs) { return a(lhs, lhs).real() < a(rhs, rhs).real(); });

    HermitianEigenDecomposition out;
    out.eigenvalues.resize(static_cast<std::size_t>(d));
    out.eigenvectors = ComplexMatrix(d);
    for (int k = 0; k < d; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        out.eigenvalues[static_cast<std::size_t>(k)] = a(src, src).real();
        for (int r = 0; r < d; ++r) out.eigenvectors(r, k) = v(r, src);
    }
    return out;
}

double trace_norm_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("trace_norm_distance requires equal dims");
    const auto eig = hermitian_eig(a - b);
    double sum = 0.0;
    for (double lambda : eig.eigenvalues) sum += std::abs(lambda);
    return 0.5 * sum;
}

ComplexMatrix positive_part_projector(const ComplexMatrix& matrix) {
    const auto eig = hermitian_eig(matrix);
    const int d = matrix.dim();
    ComplexMatrix projector(d);
    for (int k = 0; k < d; ++k) {
        if (eig.eigenvalues[static_cast<std::size_t>(k)] < 0.0) continue;
        for (int r = 0; r < d; ++r) {
            const Complex vr = eig.eigenvectors(r, k);
            for (int c = 0; c < d; ++c) projector(r, c) += vr * std::conj(eig.eigenvectors(c, k));
        }
    }
    return projector;
}

bool is_psd(const ComplexMatrix& matrix, double tol) {
    const auto eig = hermitian_eig(matrix);
    return eig.eigenvalues.front() >= -tol;
}

} // namespace gentleq
