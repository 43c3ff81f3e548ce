#include "gentleq/divergences.hpp"

#include <cmath>

namespace gentleq {

namespace {

constexpr double kFloor = 1e-300;

void check_same_labels(const OutcomeDistribution& p, const OutcomeDistribution& q) {
    if (p.labels != q.labels) throw DimensionMismatch("distributions carry different label sets");
}

} // namespace

double kl_divergence(const OutcomeDistribution& p, const OutcomeDistribution& q) {
    check_same_labels(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.p.size(); ++i) {
        const double pi = p.p[i];
        const double qi = q.p[i];
        if (pi <= kFloor) continue;
        if (qi <= kFloor) throw SupportMismatch("p has mass where q vanishes: '" + p.labels[i] + "'");
        sum += pi * std::log(pi / qi);
    }
    return std::max(sum, 0.0);
}

double sym_kl(const OutcomeDistribution& p, const OutcomeDistribution& q) {
    return kl_divergence(p, q) + kl_divergence(q, p);
}

double total_variation(const OutcomeDistribution& p, const OutcomeDistribution& q) {
    check_same_labels(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.p.size(); ++i) sum += std::abs(p.p[i] - q.p[i]);
    return 0.5 * sum;
}

double qdpi_upper_bound(double alpha, double trace_dist, bool positive_ops) {
    if (alpha < 0.0) throw AlphaOutOfRange("alpha must be nonnegative");
    double coefficient;
    if (positive_ops) {
        if (alpha >= 1.0) throw AlphaOutOfRange("positive-operator bound requires alpha < 1");
        const double base = 4.0 * alpha / ((1.0 - alpha) * (1.0 - alpha));
        coefficient = base * base;
    } else {
        if (alpha >= 0.5) throw AlphaOutOfRange("general bound requires alpha < 1/2");
        const double base = 8.0 * alpha / ((1.0 - 2.0 * alpha) * (1.0 - 2.0 * alpha));
        coefficient = base * base;
    }
    return coefficient * trace_dist * trace_dist;
}

double qdpi_lower_bound(double alpha, double trace_dist) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw AlphaOutOfRange("alpha must lie in [0, 1]");
    const double base = 4.0 * alpha / (1.0 + alpha * alpha);
    return base * base * trace_dist * trace_dist;
}

} // namespace gentleq
