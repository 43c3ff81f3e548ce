#include <gtest/gtest.h>

#include <cmath>

#include "gentleq/divergences.hpp"
#include "gentleq/gentle.hpp"
#include "test_util.hpp"

using namespace gentleq;

namespace {

OutcomeDistribution binary(double p) { return {{"1", "0"}, {p, 1.0 - p}}; }

OutcomeDistribution tensor_pmf(const OutcomeDistribution& a, const OutcomeDistribution& b) {
    OutcomeDistribution out;
    for (std::size_t i = 0; i < a.p.size(); ++i)
        for (std::size_t j = 0; j < b.p.size(); ++j) {
            out.labels.push_back(a.labels[i] + "," + b.labels[j]);
            out.p.push_back(a.p[i] * b.p[j]);
        }
    return out;
}

} // namespace

TEST(Divergences, KlExamples) {
    const OutcomeDistribution p = binary(0.9);
    EXPECT_NEAR(kl_divergence(p, p), 0.0, 1e-15);
    EXPECT_NEAR(kl_divergence(p, binary(0.5)), 0.3680642071684971, 1e-12);
}

TEST(Divergences, KlZeroTimesLogZeroConvention) {
    const OutcomeDistribution p{{"a", "b"}, {1.0, 0.0}};
    const OutcomeDistribution q{{"a", "b"}, {0.7, 0.3}};
    EXPECT_NEAR(kl_divergence(p, q), std::log(1.0 / 0.7), 1e-12);
    EXPECT_THROW(kl_divergence(q, p), SupportMismatch);
}

TEST(Divergences, KlLabelMismatch) {
    const OutcomeDistribution p{{"a", "b"}, {0.5, 0.5}};
    const OutcomeDistribution q{{"a", "c"}, {0.5, 0.5}};
    EXPECT_THROW(kl_divergence(p, q), DimensionMismatch);
}

TEST(Divergences, SymKlExamples) {
    const OutcomeDistribution p = binary(0.9);
    const OutcomeDistribution q = binary(0.1);
    EXPECT_NEAR(sym_kl(p, p), 0.0, 1e-15);
    EXPECT_NEAR(sym_kl(p, q), 1.6 * std::log(9.0), 1e-12);
    EXPECT_NEAR(sym_kl(p, q), sym_kl(q, p), 1e-15);
}

TEST(Divergences, SymKlDominatesBothOrders) {
    RandomStream rng(151, 0);
    for (int i = 0; i < 1000; ++i) {
        const OutcomeDistribution p = testutil::random_pmf(4, rng);
        const OutcomeDistribution q = testutil::random_pmf(4, rng);
        const double sym = sym_kl(p, q);
        ASSERT_GE(sym + 1e-15, kl_divergence(p, q));
        ASSERT_GE(sym + 1e-15, kl_divergence(q, p));
    }
}

TEST(Divergences, TotalVariationExamples) {
    EXPECT_NEAR(total_variation(binary(0.4), binary(0.4)), 0.0, 1e-15);
    EXPECT_NEAR(total_variation(binary(1.0), binary(0.0)), 1.0, 1e-15);
    EXPECT_NEAR(total_variation(binary(0.9), binary(0.5)), 0.4, 1e-15);
}

TEST(Divergences, PinskerOnRandomPairs) {
    RandomStream rng(157, 0);
    for (int i = 0; i < 10000; ++i) {
        const int size = 2 + (i % 4);
        const OutcomeDistribution p = testutil::random_pmf(size, rng);
        const OutcomeDistribution q = testutil::random_pmf(size, rng);
        ASSERT_LE(total_variation(p, q), std::sqrt(0.5 * kl_divergence(p, q)) + 1e-12);
    }
}

TEST(Divergences, KlTensorAdditivity) {
    RandomStream rng(163, 0);
    for (int i = 0; i < 1000; ++i) {
        const OutcomeDistribution p = testutil::random_pmf(2 + (i % 3), rng);
        const OutcomeDistribution q = testutil::random_pmf(static_cast<int>(p.p.size()), rng);
        const OutcomeDistribution p2 = testutil::random_pmf(2 + ((i + 1) % 3), rng);
        const OutcomeDistribution q2 = testutil::random_pmf(static_cast<int>(p2.p.size()), rng);
        const double joint = kl_divergence(tensor_pmf(p, p2), tensor_pmf(q, q2));
        ASSERT_NEAR(joint, kl_divergence(p, q) + kl_divergence(p2, q2), 1e-12);
    }
}

TEST(Divergences, QdpiBoundValues) {
    EXPECT_NEAR(qdpi_upper_bound(0.0, 1.0, false), 0.0, 1e-15);
    EXPECT_NEAR(qdpi_upper_bound(0.0, 1.0, true), 0.0, 1e-15);
    // (8a/(1-2a)^2)^2 = (0.8/0.64)^2 at a = 0.1
    EXPECT_NEAR(qdpi_upper_bound(0.1, 1.0, false), 1.5624999999999996, 1e-12);
    EXPECT_NEAR(qdpi_upper_bound(0.1, 1.0, true), 0.2438652644413961, 1e-12);
    EXPECT_NEAR(qdpi_lower_bound(0.0, 1.0), 0.0, 1e-15);
    EXPECT_NEAR(qdpi_lower_bound(0.1, 1.0), 0.15684736790510737, 1e-12);
    EXPECT_NEAR(qdpi_lower_bound(0.5, 0.5), 0.64, 1e-12);
    EXPECT_THROW(qdpi_upper_bound(0.5, 1.0, false), AlphaOutOfRange);
    EXPECT_THROW(qdpi_upper_bound(1.0, 1.0, true), AlphaOutOfRange);
}

TEST(Divergences, QdpiLowerStaysBelowPositiveUpper) {
    for (double alpha : {0.01, 0.05, 0.1, 0.3, 0.6, 0.9}) {
        EXPECT_LE(qdpi_lower_bound(alpha, 1.0), qdpi_upper_bound(alpha, 1.0, true) + 1e-15);
    }
    // the two coefficients merge as alpha -> 0
    const double ratio = qdpi_lower_bound(1e-3, 1.0) / qdpi_upper_bound(1e-3, 1.0, true);
    EXPECT_NEAR(ratio, 1.0, 5e-3);
}

TEST(Divergences, QdpiSandwichOnNpOutcomes) {
    RandomStream rng(167, 0);
    for (double alpha : {0.05, 0.2}) {
        for (int i = 0; i < 200; ++i) {
            const DensityMatrix rho0 = bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
            const DensityMatrix rho1 = bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
            const double t = trace_distance(rho0, rho1);
            const Measurement np = gentle_np_measurement(rho0, rho1, alpha);
            const double divergence =
                sym_kl(outcome_distribution(np, rho0), outcome_distribution(np, rho1));
            ASSERT_GE(divergence, qdpi_lower_bound(alpha, t) - 1e-12);
            ASSERT_LE(divergence, qdpi_upper_bound(alpha, t, true) + 1e-12);
            ASSERT_LE(divergence, qdpi_upper_bound(alpha, t, false) + 1e-12);
        }
    }
}
