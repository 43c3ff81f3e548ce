#pragma once

#include <array>
#include <vector>

#include "gentleq/linalg.hpp"
#include "gentleq/rng.hpp"

namespace gentleq {

/// Qubit parametrization rho(r) = (1 + r.sigma)/2 with ||r||_2 <= 1.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
};

/// Hermitian, unit-trace, positive semi-definite operator. Validated on
/// construction (tolerances 1e-9).
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix& matrix);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    int dim() const noexcept { return matrix_.dim(); }

private:
    ComplexMatrix matrix_;
};

/// Unit vector of amplitudes with a canonical global phase: the first
/// amplitude of non-negligible magnitude is real and positive, so equal
/// states compare and serialize identically.
class PureState {
public:
    PureState() : amplitudes_{Complex(1.0, 0.0)} {}
    explicit PureState(std::vector<Complex> amplitudes);

    const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }
    int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }

    DensityMatrix density() const;

private:
    std::vector<Complex> amplitudes_;
};

Complex inner_product(const PureState& a, const PureState& b);

// Pauli basis and qubit axis kets.
const ComplexMatrix& sigma_x();
const ComplexMatrix& sigma_y();
const ComplexMatrix& sigma_z();

enum class Axis { X, Y, Z };

/// |a+> or |a-> for the given axis.
PureState axis_ket(Axis axis, bool plus);

DensityMatrix bloch_to_density(const BlochVector& r);
BlochVector density_to_bloch(const DensityMatrix& rho);

/// Trace-norm distance of two states; reduces to ||r1 - r2||/2 for qubits.
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// sqrt(1 - |<psi1|psi2>|^(2n)) for n-fold pure product states.
double trace_distance_pure(const PureState& psi1, const PureState& psi2, int n_copies = 1);

PureState sample_haar_pure(int dim, RandomStream& rng);

enum class BlochSampleMode { Surface, Ball };
BlochVector sample_bloch(RandomStream& rng, BlochSampleMode mode);

} // namespace gentleq
