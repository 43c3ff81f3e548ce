#include <gtest/gtest.h>

#include "gentleq/serialization.hpp"
#include "test_util.hpp"

using namespace gentleq;

TEST(Serialization, StateFromBlochJson) {
    const nlohmann::json j = {{"bloch", {0.6, 0.0, 0.8}}};
    const DensityMatrix rho = state_from_json(j);
    const BlochVector r = density_to_bloch(rho);
    EXPECT_NEAR(r.x, 0.6, 1e-14);
    EXPECT_NEAR(r.z, 0.8, 1e-14);
}

TEST(Serialization, StateFromMatrixJson) {
    const nlohmann::json j = {
        {"matrix", {{"dim", 2}, {"re", {1.0, 0.0, 0.0, 0.0}}, {"im", {0.0, 0.0, 0.0, 0.0}}}}};
    const DensityMatrix rho = state_from_json(j);
    EXPECT_NEAR(trace_distance(rho, axis_ket(Axis::Z, true).density()), 0.0, 1e-14);
}

TEST(Serialization, StateJsonRejectsMalformed) {
    EXPECT_THROW(state_from_json({{"bloch", {1.0, 0.0}}}), ConfigInvalid);
    EXPECT_THROW(state_from_json({{"foo", 1}}), ConfigInvalid);
    EXPECT_THROW(state_from_json({{"bloch", {2.0, 0.0, 0.0}}}), OutsideBall);
    // matrix path re-validates the density matrix invariants
    const nlohmann::json bad = {
        {"matrix", {{"dim", 2}, {"re", {1.0, 0.0, 0.0, 1.0}}, {"im", {0.0, 0.0, 0.0, 0.0}}}}};
    EXPECT_THROW(state_from_json(bad), InvalidState);
}

TEST(Serialization, StateRoundTrip) {
    RandomStream rng(211, 0);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix rho = bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
        const DensityMatrix back = state_from_json(state_to_json(rho));
        ASSERT_NEAR(trace_distance(rho, back), 0.0, 1e-12);
    }
    const DensityMatrix qutrit = testutil::random_density(3, rng);
    const DensityMatrix back = state_from_json(state_to_json(qutrit));
    EXPECT_NEAR(trace_norm_distance(qutrit.matrix(), back.matrix()), 0.0, 1e-12);
}

TEST(Serialization, MeasurementRoundTripAndValidation) {
    RandomStream rng(223, 0);
    const Measurement m = testutil::random_measurement(3, 3, rng);
    const Measurement back = measurement_from_json(measurement_to_json(m));
    EXPECT_EQ(back.outcome_count(), m.outcome_count());
    for (std::size_t y = 0; y < m.outcome_count(); ++y) {
        EXPECT_EQ(back.label(y), m.label(y));
        EXPECT_LE((back.op(y) - m.op(y)).max_abs(), 1e-15);
    }

    // loading enforces completeness
    nlohmann::json broken = measurement_to_json(m);
    broken["outcomes"][0]["re"][0] = 5.0;
    EXPECT_THROW(measurement_from_json(broken), CompletenessViolation);
}

TEST(Serialization, PmfRoundTrip) {
    RandomStream rng(227, 0);
    const OutcomeDistribution pmf = testutil::random_pmf(5, rng);
    const OutcomeDistribution back = pmf_from_json(pmf_to_json(pmf));
    EXPECT_EQ(back.labels, pmf.labels);
    for (std::size_t i = 0; i < pmf.p.size(); ++i) EXPECT_EQ(back.p[i], pmf.p[i]);
}

TEST(Serialization, GentlenessReportJson) {
    RandomStream rng(229, 0);
    const GentlenessReport report = worst_case_disturbance(qls_qubit(Axis::Z, 0.3), 500, 5, rng);
    const nlohmann::json j = gentleness_report_to_json(report);
    EXPECT_TRUE(j.contains("worst_disturbance"));
    EXPECT_TRUE(j.contains("witness_state"));
    EXPECT_TRUE(j.contains("witness_outcome"));
    EXPECT_TRUE(j.contains("qdp_delta_observed"));
    EXPECT_TRUE(j.contains("samples_used"));
    EXPECT_NEAR(j["worst_disturbance"].get<double>(), report.worst_disturbance, 0.0);

    const GentlenessReport pvm_report =
        worst_case_disturbance(two_outcome_pvm(axis_ket(Axis::Z, true).density().matrix()), 100, 2, rng);
    EXPECT_EQ(gentleness_report_to_json(pvm_report)["qdp_delta_observed"], "inf");
}
