#include "gentleq/gentle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gentleq {

namespace {
constexpr double kProbabilityFloor = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

GentlenessParams GentlenessParams::from_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidAlpha("alpha must lie in [0, 1]");
    GentlenessParams params;
    params.alpha = alpha;
    if (alpha == 1.0) {
        params.delta = kInf;
        params.exp_half_delta = kInf;
        params.keep_prob = 1.0;
        params.switch_prob = 0.0;
        return params;
    }
    params.delta = 4.0 * std::atanh(alpha);
    params.exp_half_delta = (1.0 + alpha) / (1.0 - alpha);
    const double exp_delta = params.exp_half_delta * params.exp_half_delta;
    params.keep_prob = exp_delta / (exp_delta + 1.0);
    params.switch_prob = 1.0 / (exp_delta + 1.0);
    return params;
}

Measurement gentleize_two_outcome(const Measurement& pvm, double alpha) {
    const GentlenessParams params = GentlenessParams::from_alpha(alpha);
    if (pvm.outcome_count() != 2) throw NotAProjectorPVM("gentle-ization needs exactly two outcomes");
    const int d = pvm.dim();
    for (std::size_t i = 0; i < 2; ++i) {
        const ComplexMatrix& p = pvm.op(i);
        if (!p.is_hermitian(1e-9) || (p * p - p).max_abs() > 1e-9) {
            throw NotAProjectorPVM("outcome operators must be orthogonal projectors");
        }
    }
    if ((pvm.op(0) + pvm.op(1) - ComplexMatrix::identity(d)).max_abs() > 1e-9) {
        throw NotAProjectorPVM("projectors must resolve the identity");
    }
    if (params.is_projective()) return pvm;

    const double keep_amp = std::sqrt(params.keep_prob);
    const double switch_amp = std::sqrt(params.switch_prob);
    ComplexMatrix m_first = Complex(keep_amp, 0) * pvm.op(0) + Complex(switch_amp, 0) * pvm.op(1);
    ComplexMatrix m_second = Complex(switch_amp, 0) * pvm.op(0) + Complex(keep_amp, 0) * pvm.op(1);
    return Measurement({pvm.label(0), pvm.label(1)}, {std::move(m_first), std::move(m_second)});
}

Measurement qls_qubit(Axis axis, double alpha) {
    const PureState plus = axis_ket(axis, true);
    const PureState minus = axis_ket(axis, false);
    const Measurement axis_pvm({"+", "-"}, {plus.density().matrix(), minus.density().matrix()});
    return gentleize_two_outcome(axis_pvm, alpha);
}

BlochVector qls_post_state_closed_form(const BlochVector& r, double alpha, Axis axis, bool plus_outcome) {
    const GentlenessParams params = GentlenessParams::from_alpha(alpha);
    double axial = 0.0, trans1 = 0.0, trans2 = 0.0;
    switch (axis) {
        case Axis::X: axial = r.x; trans1 = r.y; trans2 = r.z; break;
        case Axis::Y: axial = r.y; trans1 = r.x; trans2 = r.z; break;
        case Axis::Z: axial = r.z; trans1 = r.x; trans2 = r.y; break;
    }
    const double sign = plus_outcome ? 1.0 : -1.0;

    double new_axial, scale;
    if (params.is_projective()) {
        // delta -> inf limit: collapse onto the axis pole
        const double prob = 0.5 * (1.0 + sign * axial);
        if (prob < kProbabilityFloor) throw ZeroProbabilityOutcome("outcome probability below floor");
        new_axial = sign;
        scale = 0.0;
    } else {
        const double ehd = params.exp_half_delta;
        const double ed = ehd * ehd;
        const double denom = ed + 1.0 + sign * axial * (ed - 1.0);
        // denom = (e^delta + 1) * 2 p(outcome)
        if (denom < kProbabilityFloor * (ed + 1.0) * 2.0) {
            throw ZeroProbabilityOutcome("outcome probability below floor");
        }
        new_axial = (axial * (ed + 1.0) + sign * (ed - 1.0)) / denom;
        scale = 2.0 * ehd / denom;
    }

    BlochVector out;
    switch (axis) {
        case Axis::X: out.x = new_axial; out.y = scale * trans1; out.z = scale * trans2; break;
        case Axis::Y: out.y = new_axial; out.x = scale * trans1; out.z = scale * trans2; break;
        case Axis::Z: out.z = new_axial; out.x = scale * trans1; out.y = scale * trans2; break;
    }
    return out;
}

double pure_state_disturbance(const Measurement& m, const PureState& psi, std::size_t outcome) {
    const int d = m.dim();
    if (psi.dim() != d) throw DimensionMismatch("state and measurement dims differ");
    const ComplexMatrix& op = m.op(outcome);
    // phi = M_y psi; the distance is ||phi_perp|| / ||phi|| where phi_perp is
    // the component of phi orthogonal to psi. The residual form avoids the
    // cancellation in 1 - |<psi|phi>|^2/p that sqrt would amplify near zero.
    std::vector<Complex> phi(static_cast<std::size_t>(d));
    Complex overlap = 0.0;
    double psi_norm_sq = 0.0;
    double prob = 0.0;
    for (int r = 0; r < d; ++r) {
        Complex phi_r = 0.0;
        for (int c = 0; c < d; ++c) phi_r += op(r, c) * psi.amplitudes()[static_cast<std::size_t>(c)];
        phi[static_cast<std::size_t>(r)] = phi_r;
        overlap += std::conj(psi.amplitudes()[static_cast<std::size_t>(r)]) * phi_r;
        psi_norm_sq += std::norm(psi.amplitudes()[static_cast<std::size_t>(r)]);
        prob += std::norm(phi_r);
    }
    if (prob < kProbabilityFloor) throw ZeroProbabilityOutcome("outcome probability below floor");
    const Complex projection = overlap / psi_norm_sq;
    double residual_sq = 0.0;
    for (int r = 0; r < d; ++r) {
        residual_sq += std::norm(phi[static_cast<std::size_t>(r)] -
                                 projection * psi.amplitudes()[static_cast<std::size_t>(r)]);
    }
    return std::sqrt(std::min(residual_sq / prob, 1.0));
}

namespace {

double max_disturbance_over_outcomes(const Measurement& m, const PureState& psi, std::size_t* arg_out) {
    double worst = -1.0;
    std::size_t arg = 0;
    for (std::size_t y = 0; y < m.outcome_count(); ++y) {
        double value;
        try {
            value = pure_state_disturbance(m, psi, y);
        } catch (const ZeroProbabilityOutcome&) {
            continue; // post-state undefined on this outcome for this state
        }
        if (value > worst) {
            worst = value;
            arg = y;
        }
    }
    if (arg_out != nullptr) *arg_out = arg;
    return std::max(worst, 0.0);
}

PureState state_from_coords(const std::vector<double>& coords) {
    const std::size_t d = coords.size() / 2;
    std::vector<Complex> amps(d);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        amps[i] = Complex(coords[2 * i], coords[2 * i + 1]);
        norm_sq += std::norm(amps[i]);
    }
    if (norm_sq < 1e-12) {
        amps[0] = 1.0;
        norm_sq = 1.0;
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (Complex& amp : amps) amp *= scale;
    return PureState(std::move(amps));
}

} // namespace

GentlenessReport worst_case_disturbance(const Measurement& m, long n_samples, int refine_steps,
                                        RandomStream& rng) {
    const int d = m.dim();
    GentlenessReport report{0.0, axis_ket(Axis::Z, true), m.label(0), qdp_delta_of_measurement(m), 0};

    std::vector<double> best_coords(2 * static_cast<std::size_t>(d));
    double best_value = -1.0;
    std::size_t best_outcome = 0;
    PureState best_state = sample_haar_pure(d, rng);
    {
        std::size_t arg = 0;
        best_value = max_disturbance_over_outcomes(m, best_state, &arg);
        best_outcome = arg;
        report.samples_used = 1;
    }
    for (long i = 1; i < n_samples; ++i) {
        const PureState psi = sample_haar_pure(d, rng);
        std::size_t arg = 0;
        const double value = max_disturbance_over_outcomes(m, psi, &arg);
        ++report.samples_used;
        if (value > best_value) {
            best_value = value;
            best_outcome = arg;
            best_state = psi;
        }
    }

    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) {
        best_coords[2 * i] = best_state.amplitudes()[i].real();
        best_coords[2 * i + 1] = best_state.amplitudes()[i].imag();
    }

    // coordinate-wise golden-section polish on the sphere chart
    const double golden = 0.6180339887498949;
    double width = 0.3;
    for (int pass = 0; pass < refine_steps; ++pass, width *= 0.5) {
        for (std::size_t coord = 0; coord < best_coords.size(); ++coord) {
            double lo = best_coords[coord] - width;
            double hi = best_coords[coord] + width;
            auto eval = [&](double value) {
                std::vector<double> coords = best_coords;
                coords[coord] = value;
                ++report.samples_used;
                return max_disturbance_over_outcomes(m, state_from_coords(coords), nullptr);
            };
            double x1 = hi - golden * (hi - lo);
            double x2 = lo + golden * (hi - lo);
            double f1 = eval(x1);
            double f2 = eval(x2);
            for (int it = 0; it < 40; ++it) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + golden * (hi - lo);
                    f2 = eval(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - golden * (hi - lo);
                    f1 = eval(x1);
                }
            }
            const double candidate = f1 > f2 ? x1 : x2;
            const double candidate_value = std::max(f1, f2);
            if (candidate_value > best_value) {
                best_value = candidate_value;
                best_coords[coord] = candidate;
            }
        }
    }

    best_state = state_from_coords(best_coords);
    best_value = max_disturbance_over_outcomes(m, best_state, &best_outcome);

    report.worst_disturbance = best_value;
    report.witness_state = best_state;
    report.witness_outcome = m.label(best_outcome);
    return report;
}

double qdp_delta_bound(double alpha, bool positive_ops) {
    if (alpha < 0.0) throw AlphaOutOfRange("alpha must be nonnegative");
    if (positive_ops) {
        if (alpha >= 1.0) throw AlphaOutOfRange("positive-operator bound requires alpha < 1");
        return 2.0 * std::log((1.0 + alpha) / (1.0 - alpha));
    }
    if (alpha >= 0.5) throw AlphaOutOfRange("general bound requires alpha < 1/2");
    return 2.0 * std::log((1.0 + 2.0 * alpha) / (1.0 - 2.0 * alpha));
}

double qdp_delta_of_measurement(const Measurement& m) {
    double worst = 0.0;
    for (std::size_t y = 0; y < m.outcome_count(); ++y) {
        const auto eig = hermitian_eig(m.effect(y));
        const double lambda_min = eig.eigenvalues.front();
        const double lambda_max = eig.eigenvalues.back();
        if (lambda_min <= 1e-12 * std::max(lambda_max, 1.0)) return kInf;
        worst = std::max(worst, std::log(lambda_max / lambda_min));
    }
    return worst;
}

Measurement gentle_np_measurement(const DensityMatrix& rho0, const DensityMatrix& rho1, double alpha) {
    if (rho0.dim() != rho1.dim()) throw DimensionMismatch("hypothesis states differ in dim");
    const ComplexMatrix p_plus = positive_part_projector(rho0.matrix() - rho1.matrix());
    return gentleize_two_outcome(two_outcome_pvm(p_plus), alpha);
}

double np_total_error(const DensityMatrix& rho0, const DensityMatrix& rho1, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidAlpha("alpha must lie in [0, 1]");
    const double t = trace_distance(rho0, rho1);
    return 1.0 - (2.0 * alpha / (1.0 + alpha * alpha)) * t;
}

} // namespace gentleq
