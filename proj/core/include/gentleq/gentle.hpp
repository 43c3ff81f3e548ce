#pragma once

#include <string>

#include "gentleq/measurement.hpp"

namespace gentleq {

/// Gentleness level alpha together with the derived privacy parameter
/// delta = 4 arctanh(alpha) and the label-switch probabilities.
/// alpha = 1 is the projective limit (delta infinite, keep probability 1).
struct GentlenessParams {
    double alpha;
    double delta;         // +inf at alpha = 1
    double exp_half_delta; // (1+alpha)/(1-alpha)
    double keep_prob;      // e^delta / (e^delta + 1)
    double switch_prob;    // 1 / (e^delta + 1)

    static GentlenessParams from_alpha(double alpha);

    bool is_projective() const noexcept { return alpha == 1.0; }
};

/// Result of an empirical worst-case gentleness scan. `worst_disturbance`
/// is a lower bound on the true supremum: sampling cannot certify more.
struct GentlenessReport {
    double worst_disturbance = 0.0;
    PureState witness_state;
    std::string witness_outcome;
    double qdp_delta_observed = 0.0; // +inf when some E_y is singular
    long samples_used = 0;
};

/// Label switch applied to a two-outcome PVM (P_a, P_b):
///   M_a = sqrt(keep) P_a + sqrt(switch) P_b,   M_b symmetric.
/// The result is alpha-gentle on all states; operators are positive-definite
/// for alpha < 1. alpha = 1 returns the PVM itself, alpha = 0 the
/// uninformative pair (1/sqrt2, 1/sqrt2). Labels are preserved.
Measurement gentleize_two_outcome(const Measurement& pvm, double alpha);

/// Quantum Label Switch along a qubit axis; labels ("+", "-").
Measurement qls_qubit(Axis axis, double alpha);

/// Post-measurement Bloch vector of the qLS in closed form, e.g. for the
/// z axis and outcome "+":
///   [2 e^{d/2} rx, 2 e^{d/2} ry, rz(e^d + 1) + e^d - 1] / (e^d + 1 + rz(e^d - 1)).
/// Other axes permute coordinates.
BlochVector qls_post_state_closed_form(const BlochVector& r, double alpha, Axis axis, bool plus_outcome);

/// Trace distance between a pure state and its conditioned post-state for
/// one outcome; throws ZeroProbabilityOutcome below the probability floor.
double pure_state_disturbance(const Measurement& m, const PureState& psi, std::size_t outcome);

/// Haar sampling plus coordinate-wise golden-section polish around the
/// incumbent. Reports the empirically worst pure-state disturbance.
GentlenessReport worst_case_disturbance(const Measurement& m, long n_samples, int refine_steps,
                                        RandomStream& rng);

/// delta for which alpha-gentleness implies delta-qDP:
/// 2 log((1+2a)/(1-2a)) in general (a < 1/2), 2 log((1+a)/(1-a)) for
/// positive-definite operators (a < 1).
double qdp_delta_bound(double alpha, bool positive_ops);

/// max_y log(lambda_max(E_y) / lambda_min(E_y)); +inf iff some E_y is singular.
double qdp_delta_of_measurement(const Measurement& m);

/// Gentle-ized Helstrom measurement built from the positive-part projector
/// of rho0 - rho1. Outcome "1" carries the P+ weight and so favors rho0;
/// the Neyman-Pearson test accepts H0 on it.
Measurement gentle_np_measurement(const DensityMatrix& rho0, const DensityMatrix& rho1, double alpha);

/// Analytic total error of the gentle Neyman-Pearson test:
/// 1 - (2a/(1+a^2)) ||rho0 - rho1||_Tr.
double np_total_error(const DensityMatrix& rho0, const DensityMatrix& rho1, double alpha);

} // namespace gentleq
