#include "gentleq/states.hpp"

#include <cmath>

namespace gentleq {

namespace {
constexpr double kStateTol = 1e-9;
constexpr double kBallTol = 1e-12;
} // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix::DensityMatrix(const ComplexMatrix& matrix) : matrix_(matrix.symmetrized()) {
    if (!matrix.is_hermitian(kStateTol)) throw InvalidState("density matrix is not hermitian");
    if (std::abs(matrix_.trace().real() - 1.0) > kStateTol) throw InvalidState("density matrix trace is not 1");
    if (!is_psd(matrix_, kStateTol)) throw InvalidState("density matrix is not PSD");
}

PureState::PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) throw InvalidState("pure state needs at least one amplitude");
    double norm_sq = 0.0;
    for (const Complex& amp : amplitudes_) norm_sq += std::norm(amp);
    if (std::abs(norm_sq - 1.0) > 1e-12) throw InvalidState("pure state amplitudes are not normalized");
    // canonical global phase
    for (const Complex& amp : amplitudes_) {
        const double mag = std::abs(amp);
        if (mag > 1e-12) {
            const Complex rotation = std::conj(amp) / mag;
            for (Complex& value : amplitudes_) value *= rotation;
            break;
        }
    }
}

DensityMatrix PureState::density() const {
    const int d = dim();
    ComplexMatrix m(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = amplitudes_[static_cast<std::size_t>(r)] * std::conj(amplitudes_[static_cast<std::size_t>(c)]);
    return DensityMatrix(m);
}

Complex inner_product(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("inner product of unequal dims");
    Complex sum = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        sum += std::conj(a.amplitudes()[static_cast<std::size_t>(i)]) * b.amplitudes()[static_cast<std::size_t>(i)];
    return sum;
}

const ComplexMatrix& sigma_x() {
    static const ComplexMatrix m(2, {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)});
    return m;
}

const ComplexMatrix& sigma_y() {
    static const ComplexMatrix m(2, {Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)});
    return m;
}

const ComplexMatrix& sigma_z() {
    static const ComplexMatrix m(2, {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0)});
    return m;
}

PureState axis_ket(Axis axis, bool plus) {
    const double inv_sqrt2 = 0.70710678118654752440;
    switch (axis) {
        case Axis::X:
            return PureState({Complex(inv_sqrt2, 0), Complex(plus ? inv_sqrt2 : -inv_sqrt2, 0)});
        case Axis::Y:
            return PureState({Complex(inv_sqrt2, 0), Complex(0, plus ? inv_sqrt2 : -inv_sqrt2)});
        case Axis::Z:
        default:
            return plus ? PureState({Complex(1, 0), Complex(0, 0)})
                        : PureState({Complex(0, 0), Complex(1, 0)});
    }
}

DensityMatrix bloch_to_density(const BlochVector& r) {
    if (r.norm() > 1.0 + kBallTol) throw OutsideBall("Bloch vector lies outside the unit ball");
    ComplexMatrix m(2);
    m(0, 0) = Complex(0.5 * (1.0 + r.z), 0.0);
    m(1, 1) = Complex(0.5 * (1.0 - r.z), 0.0);
    m(0, 1) = Complex(0.5 * r.x, -0.5 * r.y);
    m(1, 0) = Complex(0.5 * r.x, 0.5 * r.y);
    return DensityMatrix(m);
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw WrongDimension("Bloch coordinates are defined for qubits only");
    const ComplexMatrix& m = rho.matrix();
    BlochVector r;
    r.x = 2.0 * m(1, 0).real();
    r.y = 2.0 * m(1, 0).imag();
    r.z = (m(0, 0) - m(1, 1)).real();
    return r;
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) throw DimensionMismatch("trace_distance requires equal dims");
    return trace_norm_distance(rho1.matrix(), rho2.matrix());
}

double trace_distance_pure(const PureState& psi1, const PureState& psi2, int n_copies) {
    if (n_copies < 1) throw InvalidInput("n_copies must be >= 1");
    const double overlap_sq = std::norm(inner_product(psi1, psi2));
    double power = 1.0;
    for (int i = 0; i < n_copies; ++i) power *= overlap_sq;
    return std::sqrt(std::max(0.0, 1.0 - power));
}

PureState sample_haar_pure(int dim, RandomStream& rng) {
    if (dim < 2) throw InvalidInput("sample_haar_pure requires dim >= 2");
    std::vector<Complex> amps(static_cast<std::size_t>(dim));
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (Complex& amp : amps) {
            amp = Complex(rng.gaussian(), rng.gaussian());
            norm_sq += std::norm(amp);
        }
    } while (norm_sq < 1e-12);
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (Complex& amp : amps) amp *= scale;
    return PureState(std::move(amps));
}

BlochVector sample_bloch(RandomStream& rng, BlochSampleMode mode) {
    if (mode == BlochSampleMode::Surface) {
        double gx = 0, gy = 0, gz = 0, norm = 0;
        do {
            gx = rng.gaussian();
            gy = rng.gaussian();
            gz = rng.gaussian();
            norm = std::sqrt(gx * gx + gy * gy + gz * gz);
        } while (norm < 1e-12);
        return {gx / norm, gy / norm, gz / norm};
    }
    // rejection from the cube keeps the ball distribution exactly uniform
    while (true) {
        const double x = 2.0 * rng.uniform01() - 1.0;
        const double y = 2.0 * rng.uniform01() - 1.0;
        const double z = 2.0 * rng.uniform01() - 1.0;
        if (x * x + y * y + z * z <= 1.0) return {x, y, z};
    }
}

} // namespace gentleq
