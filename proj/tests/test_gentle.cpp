#include <gtest/gtest.h>

#include <cmath>

#include "gentleq/gentle.hpp"
#include "test_util.hpp"

using namespace gentleq;

TEST(Gentle, ParamsInvertDelta) {
    for (double alpha : {0.0, 0.05, 0.1, 0.3, 0.5, 0.9, 0.999}) {
        const GentlenessParams params = GentlenessParams::from_alpha(alpha);
        EXPECT_NEAR(std::tanh(params.delta / 4.0), alpha, 1e-12);
        EXPECT_NEAR(params.keep_prob + params.switch_prob, 1.0, 1e-14);
    }
    const GentlenessParams projective = GentlenessParams::from_alpha(1.0);
    EXPECT_TRUE(projective.is_projective());
    EXPECT_TRUE(std::isinf(projective.delta));
    EXPECT_EQ(projective.keep_prob, 1.0);
    EXPECT_THROW(GentlenessParams::from_alpha(-0.1), InvalidAlpha);
    EXPECT_THROW(GentlenessParams::from_alpha(1.1), InvalidAlpha);
}

TEST(Gentle, KeepProbabilityAtHalfAlpha) {
    // e^delta = ((1+a)/(1-a))^2 = 9 at alpha = 1/2
    const GentlenessParams params = GentlenessParams::from_alpha(0.5);
    EXPECT_NEAR(params.keep_prob, 0.9, 1e-14);
    EXPECT_NEAR(params.switch_prob, 0.1, 1e-14);
    EXPECT_NEAR(params.exp_half_delta, 3.0, 1e-14);
}

TEST(Gentle, GentleizeAlphaZeroIsUninformative) {
    RandomStream rng(97, 0);
    const Measurement m = qls_qubit(Axis::Z, 0.0);
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix rho = bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
        const OutcomeDistribution pmf = outcome_distribution(m, rho);
        ASSERT_NEAR(pmf.p[0], 0.5, 1e-12);
        ASSERT_NEAR(pmf.p[1], 0.5, 1e-12);
        for (const std::string& label : pmf.labels) {
            ASSERT_NEAR(trace_distance(rho, post_measurement_state(m, rho, label)), 0.0, 1e-12);
        }
    }
}

TEST(Gentle, GentleizeAlphaOneReturnsPvm) {
    const Measurement pvm = two_outcome_pvm(axis_ket(Axis::Z, true).density().matrix());
    const Measurement same = gentleize_two_outcome(pvm, 1.0);
    EXPECT_NEAR((same.op(0) - pvm.op(0)).max_abs(), 0.0, 0.0);
    EXPECT_NEAR((same.op(1) - pvm.op(1)).max_abs(), 0.0, 0.0);
}

TEST(Gentle, GentleizeRejectsNonProjectorPvm) {
    const Measurement soft = qls_qubit(Axis::Z, 0.5); // operators are not projectors
    EXPECT_THROW(gentleize_two_outcome(soft, 0.3), NotAProjectorPVM);
    EXPECT_THROW(gentleize_two_outcome(Measurement::identity(2), 0.3), NotAProjectorPVM);
    EXPECT_THROW(qls_qubit(Axis::Z, 1.5), InvalidAlpha);
}

TEST(Gentle, QlsOutcomeProbabilityClosedForm) {
    RandomStream rng(101, 0);
    for (int i = 0; i < 500; ++i) {
        const double alpha = 0.02 + 0.96 * rng.uniform01();
        const BlochVector r = sample_bloch(rng, BlochSampleMode::Ball);
        const double coefficient = alpha / (1.0 + alpha * alpha);
        const double expected[] = {0.5 + coefficient * r.x, 0.5 + coefficient * r.y,
                                   0.5 + coefficient * r.z};
        const Axis axes[] = {Axis::X, Axis::Y, Axis::Z};
        for (int a = 0; a < 3; ++a) {
            const OutcomeDistribution pmf =
                outcome_distribution(qls_qubit(axes[a], alpha), bloch_to_density(r));
            ASSERT_NEAR(pmf.prob_of("+"), expected[a], 1e-12);
        }
    }
    EXPECT_NEAR(outcome_distribution(qls_qubit(Axis::X, 0.5), bloch_to_density({1, 0, 0})).prob_of("+"),
                0.9, 1e-12);
    const OutcomeDistribution mixed =
        outcome_distribution(qls_qubit(Axis::Y, 0.77), bloch_to_density({0, 0, 0}));
    EXPECT_NEAR(mixed.p[0], 0.5, 1e-12);
    EXPECT_NEAR(mixed.p[1], 0.5, 1e-12);
}

TEST(Gentle, QlsPostStateClosedFormExamples) {
    const BlochVector from_origin = qls_post_state_closed_form({0, 0, 0}, 0.5, Axis::Z, true);
    EXPECT_NEAR(from_origin.x, 0.0, 1e-14);
    EXPECT_NEAR(from_origin.y, 0.0, 1e-14);
    EXPECT_NEAR(from_origin.z, 0.8, 1e-14); // 2a/(1+a^2) at a = 1/2

    const BlochVector fixed_point = qls_post_state_closed_form({0, 0, 1}, 0.5, Axis::Z, true);
    EXPECT_NEAR(fixed_point.z, 1.0, 1e-14);

    const BlochVector rotated = qls_post_state_closed_form({1, 0, 0}, 0.5, Axis::Z, true);
    EXPECT_NEAR(rotated.x, 0.6, 1e-14);
    EXPECT_NEAR(rotated.y, 0.0, 1e-14);
    EXPECT_NEAR(rotated.z, 0.8, 1e-14);
    EXPECT_NEAR(rotated.norm(), 1.0, 1e-14);
}

TEST(Gentle, QlsClosedFormMatchesGenericRule) {
    RandomStream rng(103, 0);
    const Axis axes[] = {Axis::X, Axis::Y, Axis::Z};
    for (int i = 0; i < 1000; ++i) {
        const double alpha = 0.02 + 0.96 * rng.uniform01();
        const BlochVector r = sample_bloch(rng, BlochSampleMode::Ball);
        const Axis axis = axes[i % 3];
        const bool plus = (i % 2) == 0;
        const Measurement qls = qls_qubit(axis, alpha);
        const DensityMatrix rho = bloch_to_density(r);
        const std::string label = plus ? "+" : "-";
        if (outcome_distribution(qls, rho).prob_of(label) < 1e-9) continue;
        const BlochVector closed = qls_post_state_closed_form(r, alpha, axis, plus);
        const BlochVector generic = density_to_bloch(post_measurement_state(qls, rho, label));
        ASSERT_NEAR(closed.x, generic.x, 1e-10);
        ASSERT_NEAR(closed.y, generic.y, 1e-10);
        ASSERT_NEAR(closed.z, generic.z, 1e-10);
    }
}

TEST(Gentle, QlsClosedFormKeepsPureStatesPure) {
    RandomStream rng(107, 0);
    for (int i = 0; i < 500; ++i) {
        const BlochVector r = sample_bloch(rng, BlochSampleMode::Surface);
        const double alpha = 0.05 + 0.9 * rng.uniform01();
        const BlochVector post = qls_post_state_closed_form(r, alpha, Axis::X, (i % 2) == 0);
        ASSERT_NEAR(post.norm(), 1.0, 1e-12);
    }
}

TEST(Gentle, QlsClosedFormZeroProbability) {
    EXPECT_THROW(qls_post_state_closed_form({0, 0, -1}, 1.0, Axis::Z, true), ZeroProbabilityOutcome);
}

TEST(Gentle, WorstCaseDisturbanceIdentity) {
    RandomStream rng(109, 0);
    const GentlenessReport report = worst_case_disturbance(Measurement::identity(2), 200, 5, rng);
    EXPECT_NEAR(report.worst_disturbance, 0.0, 1e-9);
    EXPECT_EQ(report.qdp_delta_observed, 0.0);
}

TEST(Gentle, WorstCaseDisturbancePvmApproachesOne) {
    RandomStream rng(113, 0);
    const Measurement pvm = two_outcome_pvm(axis_ket(Axis::Z, true).density().matrix());
    const GentlenessReport report = worst_case_disturbance(pvm, 2000, 25, rng);
    EXPECT_GE(report.worst_disturbance, 0.99);
    EXPECT_TRUE(std::isinf(report.qdp_delta_observed));
}

TEST(Gentle, WorstCaseDisturbanceQlsAttainsAlpha) {
    RandomStream rng(127, 0);
    const double alpha = 0.3;
    const GentlenessReport report = worst_case_disturbance(qls_qubit(Axis::Z, alpha), 10000, 20, rng);
    EXPECT_GE(report.worst_disturbance, alpha - 1e-6);
    EXPECT_LE(report.worst_disturbance, alpha + 1e-9);

    // the maximizer sits at gamma+ = 1/(e^{delta/2}+1) for one outcome and at
    // the mirrored weight for the other
    const GentlenessParams params = GentlenessParams::from_alpha(alpha);
    const double gamma_max = 1.0 / (params.exp_half_delta + 1.0);
    const double gamma_witness = std::norm(report.witness_state.amplitudes()[0]);
    const double gap = std::min(std::abs(gamma_witness - gamma_max),
                                std::abs(gamma_witness - (1.0 - gamma_max)));
    EXPECT_LE(gap, 1e-3);
}

TEST(Gentle, GentleizationIsDimensionGeneric) {
    // label switch of a rank-2 projector PVM on d = 4; the disturbance
    // maximum alpha is dimension-independent
    ComplexMatrix p1(4);
    p1(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const double alpha = 0.4;
    const Measurement gentle = gentleize_two_outcome(two_outcome_pvm(p1), alpha);
    RandomStream rng(211, 1);
    const GentlenessReport report = worst_case_disturbance(gentle, 20000, 20, rng);
    EXPECT_GE(report.worst_disturbance, alpha - 1e-4);
    EXPECT_LE(report.worst_disturbance, alpha + 1e-9);
    EXPECT_NEAR(report.qdp_delta_observed, 4.0 * std::atanh(alpha), 1e-10);
}

TEST(Gentle, MixedStatesAreNoWorseThanPure) {
    // positive-operator measurements are gentle on all states once they are
    // gentle on pure states; sampled mixed states must stay below alpha
    RandomStream rng(131, 0);
    const double alpha = 0.4;
    const Measurement qls = qls_qubit(Axis::Z, alpha);
    for (int i = 0; i < 500; ++i) {
        BlochVector r = sample_bloch(rng, BlochSampleMode::Ball);
        const DensityMatrix rho = bloch_to_density(r);
        const OutcomeDistribution pmf = outcome_distribution(qls, rho);
        for (const std::string& label : pmf.labels) {
            const DensityMatrix post = post_measurement_state(qls, rho, label);
            ASSERT_LE(trace_distance(rho, post), alpha + 1e-9);
        }
    }
}

TEST(Gentle, QdpDeltaBoundValues) {
    EXPECT_NEAR(qdp_delta_bound(0.0, false), 0.0, 1e-15);
    EXPECT_NEAR(qdp_delta_bound(0.0, true), 0.0, 1e-15);
    EXPECT_NEAR(qdp_delta_bound(0.25, false), 2.1972245773362196, 1e-12); // 2 log 3
    EXPECT_NEAR(qdp_delta_bound(0.5, true), 2.1972245773362196, 1e-12);
    EXPECT_THROW(qdp_delta_bound(0.5, false), AlphaOutOfRange);
    EXPECT_THROW(qdp_delta_bound(1.0, true), AlphaOutOfRange);
}

TEST(Gentle, QdpDeltaOfMeasurement) {
    EXPECT_EQ(qdp_delta_of_measurement(Measurement::identity(3)), 0.0);
    EXPECT_TRUE(std::isinf(
        qdp_delta_of_measurement(two_outcome_pvm(axis_ket(Axis::Z, true).density().matrix()))));
    for (double alpha : {0.1, 0.3, 0.6, 0.9}) {
        for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
            const double observed = qdp_delta_of_measurement(qls_qubit(axis, alpha));
            ASSERT_NEAR(observed, 4.0 * std::atanh(alpha), 1e-12 * (1.0 + observed));
        }
    }
}

TEST(Gentle, QlsAttainsThePositiveOperatorBound) {
    // the qLS eigenvalue ratio gives 4 arctanh(a), identical to the
    // positive-operator conversion constant 2 log((1+a)/(1-a))
    for (double alpha : {1e-1, 1e-2, 1e-3}) {
        const double measurement_delta = qdp_delta_of_measurement(qls_qubit(Axis::Z, alpha));
        const double bound_delta = qdp_delta_bound(alpha, true);
        EXPECT_LE(measurement_delta, bound_delta + 1e-12);
        EXPECT_NEAR(measurement_delta / bound_delta, 1.0, 1e-9);
    }
}

TEST(Gentle, NpMeasurementDiagonalCase) {
    // rho0 = |0><0|, rho1 = |1><1| reduces to the z-axis label switch
    const double alpha = 0.35;
    const Measurement np =
        gentle_np_measurement(axis_ket(Axis::Z, true).density(), axis_ket(Axis::Z, false).density(), alpha);
    const Measurement qls = qls_qubit(Axis::Z, alpha);
    EXPECT_NEAR((np.op(0) - qls.op(0)).max_abs(), 0.0, 1e-12);
    EXPECT_NEAR((np.op(1) - qls.op(1)).max_abs(), 0.0, 1e-12);
    EXPECT_EQ(np.label(0), "1");
}

TEST(Gentle, NpMeasurementAlphaOneIsHelstrom) {
    RandomStream rng(137, 0);
    const DensityMatrix rho0 = bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
    const DensityMatrix rho1 = bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
    const Measurement np = gentle_np_measurement(rho0, rho1, 1.0);
    const ComplexMatrix p_plus = positive_part_projector(rho0.matrix() - rho1.matrix());
    EXPECT_NEAR((np.op(0) - p_plus).max_abs(), 0.0, 1e-12);
}

TEST(Gentle, NpMeasurementOperatorsPositiveDefinite) {
    RandomStream rng(139, 0);
    for (int i = 0; i < 200; ++i) {
        const double alpha = 0.02 + 0.95 * rng.uniform01();
        const DensityMatrix rho0 = testutil::random_density(2 + (i % 2), rng);
        const DensityMatrix rho1 = testutil::random_density(rho0.dim(), rng);
        const Measurement np = gentle_np_measurement(rho0, rho1, alpha);
        const GentlenessParams params = GentlenessParams::from_alpha(alpha);
        for (std::size_t y = 0; y < 2; ++y) {
            const auto eig = hermitian_eig(np.op(y));
            ASSERT_GT(eig.eigenvalues.front(), 0.0);
            ASSERT_NEAR(eig.eigenvalues.back() / eig.eigenvalues.front(), params.exp_half_delta,
                        1e-9 * params.exp_half_delta);
        }
    }
}

TEST(Gentle, NpMeasurementDegenerateInput) {
    const DensityMatrix rho = bloch_to_density({0.1, 0.2, -0.3});
    const Measurement np = gentle_np_measurement(rho, rho, 0.4);
    const OutcomeDistribution pmf = outcome_distribution(np, bloch_to_density({0, 1, 0}));
    const GentlenessParams params = GentlenessParams::from_alpha(0.4);
    EXPECT_NEAR(pmf.prob_of("1"), params.keep_prob, 1e-12);
    EXPECT_NEAR(pmf.prob_of("0"), params.switch_prob, 1e-12);
}

TEST(Gentle, NpTotalErrorValues) {
    const DensityMatrix rho = bloch_to_density({0.3, -0.2, 0.1});
    EXPECT_NEAR(np_total_error(rho, rho, 0.7), 1.0, 1e-12);

    const DensityMatrix z0 = axis_ket(Axis::Z, true).density();
    const DensityMatrix z1 = axis_ket(Axis::Z, false).density();
    EXPECT_NEAR(np_total_error(z0, z1, 1.0), 0.0, 1e-12);
    EXPECT_NEAR(np_total_error(z0, z1, 0.5), 0.2, 1e-12);
}

TEST(Gentle, NpAnalyticErrorMatchesOutcomeProbabilities) {
    // P0(outcome "0") + P1(outcome "1") telescopes to 1 - (2a/(1+a^2)) t
    RandomStream rng(149, 0);
    for (int i = 0; i < 300; ++i) {
        const double alpha = 0.05 + 0.9 * rng.uniform01();
        const DensityMatrix rho0 = bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
        const DensityMatrix rho1 = bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
        const Measurement np = gentle_np_measurement(rho0, rho1, alpha);
        const double exact = outcome_distribution(np, rho0).prob_of("0") +
                             outcome_distribution(np, rho1).prob_of("1");
        ASSERT_NEAR(exact, np_total_error(rho0, rho1, alpha), 1e-10);
    }
}
