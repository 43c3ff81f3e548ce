#pragma once

#include <array>

#include "gentleq/gentle.hpp"

namespace gentleq {

struct AxisCounts {
    long plus = 0;
    long minus = 0;
};

/// Scaled-direct-inversion estimate from per-axis qLS measurements.
/// `raw_r` is the unprojected, unbiased estimator; `r_hat` is scaled back
/// into the Bloch ball whenever the raw vector is too long. Both are kept
/// so bias studies can bypass the projection.
struct TomographyEstimate {
    std::array<double, 3> raw_r{};       // x, y, z
    BlochVector r_hat;
    std::array<AxisCounts, 3> counts{};  // x, y, z
    double alpha = 0.0;
    long n_total = 0;                    // 3 * per-axis copies
};

enum class Hypothesis { H0, H1 };

struct CertificationDecision {
    Hypothesis decision;
    double statistic;  // ||rho_hat - rho_0||_Tr
    double threshold;  // epsilon / 2
    TomographyEstimate estimate;
};

/// Measure `copies_per_axis` fresh copies with the qLS along each of the
/// x, y, z axes (3 * copies_per_axis copies in total) and invert the
/// outcome frequencies with the bias factor (1+a^2)/(2a).
TomographyEstimate tomography(const DensityMatrix& rho_true, long copies_per_axis, double alpha,
                              RandomStream& rng);

/// Decide H0 iff ||rho_hat - rho_0||_Tr <= epsilon/2, with rho_hat from
/// `tomography` run on the true state.
CertificationDecision certify(const DensityMatrix& rho_true, const DensityMatrix& rho0, double epsilon,
                              long copies_per_axis, double alpha, RandomStream& rng);

/// Smallest per-axis n with 3(1+a^2)^2 / (16 a^2 n) <= eps^2.
long required_copies_tomography(double epsilon, double alpha);

/// Smallest per-axis n with 3(1+a^2)^2 / (2 n eps^2 a^2) <= error_budget.
long required_copies_certification(double epsilon, double alpha, double error_budget = 1.0 / 3.0);

/// Necessity threshold ((1-2a)^2/12)^2 / (eps^2 a^2) for certification
/// under local gentleness (real-valued, not rounded).
double certification_lower_bound_copies(double epsilon, double alpha);

/// Minimax tomography risk lower bound min{1/8, (1-2a)^4 / (864 n a^2)}.
double tomography_minimax_lower(long n, double alpha);

} // namespace gentleq
