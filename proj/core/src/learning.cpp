#include "gentleq/learning.hpp"

#include <cmath>

namespace gentleq {

namespace {

long ceil_with_float_guard(double value) {
    // guards against 18.000000000000004-style float residue before ceil
    return static_cast<long>(std::ceil(value * (1.0 - 1e-12)));
}

void check_unit_interval(double value, const char* name) {
    if (!(value > 0.0 && value <= 1.0)) {
        throw InvalidInput(std::string(name) + " must lie in (0, 1]");
    }
}

} // namespace

TomographyEstimate tomography(const DensityMatrix& rho_true, long copies_per_axis, double alpha,
                              RandomStream& rng) {
    if (rho_true.dim() != 2) throw WrongDimension("tomography is qubit-specific");
    if (alpha == 0.0) throw InvalidAlpha("alpha = 0 is the identity measurement and carries no information");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidAlpha("alpha must lie in (0, 1]");
    if (copies_per_axis < 3) throw TooFewCopies("need at least 3 copies per axis");

    const double bias_factor = (1.0 + alpha * alpha) / (2.0 * alpha);
    constexpr Axis kAxes[3] = {Axis::X, Axis::Y, Axis::Z};

    TomographyEstimate estimate;
    estimate.alpha = alpha;
    estimate.n_total = 3 * copies_per_axis;
    for (int a = 0; a < 3; ++a) {
        const Measurement qls = qls_qubit(kAxes[a], alpha);
        const double p_plus = outcome_distribution(qls, rho_true).p[0];
        long plus = 0;
        for (long i = 0; i < copies_per_axis; ++i) plus += (rng.uniform01() < p_plus);
        estimate.counts[static_cast<std::size_t>(a)] = {plus, copies_per_axis - plus};
        estimate.raw_r[static_cast<std::size_t>(a)] =
            bias_factor * static_cast<double>(2 * plus - copies_per_axis) / static_cast<double>(copies_per_axis);
    }

    const double raw_norm = std::sqrt(estimate.raw_r[0] * estimate.raw_r[0] +
                                      estimate.raw_r[1] * estimate.raw_r[1] +
                                      estimate.raw_r[2] * estimate.raw_r[2]);
    const double scale = 1.0 / std::max(raw_norm, 1.0);
    estimate.r_hat = {estimate.raw_r[0] * scale, estimate.raw_r[1] * scale, estimate.raw_r[2] * scale};
    return estimate;
}

CertificationDecision certify(const DensityMatrix& rho_true, const DensityMatrix& rho0, double epsilon,
                              long copies_per_axis, double alpha, RandomStream& rng) {
    check_unit_interval(epsilon, "epsilon");
    if (rho0.dim() != 2) throw WrongDimension("certification is qubit-specific");

    TomographyEstimate estimate = tomography(rho_true, copies_per_axis, alpha, rng);
    const BlochVector r0 = density_to_bloch(rho0);
    const double dx = estimate.r_hat.x - r0.x;
    const double dy = estimate.r_hat.y - r0.y;
    const double dz = estimate.r_hat.z - r0.z;
    const double statistic = 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz);
    const double threshold = 0.5 * epsilon;
    return {statistic > threshold ? Hypothesis::H1 : Hypothesis::H0, statistic, threshold,
            std::move(estimate)};
}

long required_copies_tomography(double epsilon, double alpha) {
    check_unit_interval(epsilon, "epsilon");
    check_unit_interval(alpha, "alpha");
    const double one_plus = 1.0 + alpha * alpha;
    return ceil_with_float_guard(3.0 * one_plus * one_plus / (16.0 * alpha * alpha * epsilon * epsilon));
}

long required_copies_certification(double epsilon, double alpha, double error_budget) {
    check_unit_interval(epsilon, "epsilon");
    check_unit_interval(alpha, "alpha");
    check_unit_interval(error_budget, "error_budget");
    const double one_plus = 1.0 + alpha * alpha;
    return ceil_with_float_guard(3.0 * one_plus * one_plus /
                                 (2.0 * error_budget * epsilon * epsilon * alpha * alpha));
}

double certification_lower_bound_copies(double epsilon, double alpha) {
    check_unit_interval(epsilon, "epsilon");
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw AlphaOutOfRange("the qDPI constant degenerates at alpha >= 1/2");
    }
    const double numerator = (1.0 - 2.0 * alpha) * (1.0 - 2.0 * alpha) / 12.0;
    return numerator * numerator / (epsilon * epsilon * alpha * alpha);
}

double tomography_minimax_lower(long n, double alpha) {
    if (n < 1) throw InvalidInput("n must be >= 1");
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw AlphaOutOfRange("the minimax bound requires alpha in (0, 1/2)");
    }
    const double one_minus = 1.0 - 2.0 * alpha;
    const double fourth = one_minus * one_minus * one_minus * one_minus;
    return std::min(0.125, fourth / (864.0 * static_cast<double>(n) * alpha * alpha));
}

} // namespace gentleq
