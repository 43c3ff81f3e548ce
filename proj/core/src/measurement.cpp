#include "gentleq/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gentleq {

namespace {
constexpr double kCompletenessTol = 1e-9;
constexpr double kProbabilityFloor = 1e-12;
} // namespace

Measurement::Measurement(std::vector<std::string> labels, std::vector<ComplexMatrix> operators)
    : labels_(std::move(labels)), operators_(std::move(operators)) {
    if (operators_.empty()) throw InvalidInput("a measurement needs at least one outcome");
    if (labels_.size() != operators_.size()) throw InvalidInput("labels and operators differ in count");
    const int d = operators_.front().dim();
    for (const ComplexMatrix& op : operators_) {
        if (op.dim() != d) throw DimensionMismatch("measurement operators differ in dim");
    }
    std::set<std::string> unique(labels_.begin(), labels_.end());
    if (unique.size() != labels_.size()) throw InvalidInput("measurement labels must be unique");

    ComplexMatrix sum(d);
    for (const ComplexMatrix& op : operators_) sum += op.adjoint() * op;
    sum -= ComplexMatrix::identity(d);
    if (sum.max_abs() > kCompletenessTol) {
        throw CompletenessViolation("sum of M_y* M_y deviates from the identity");
    }
}

Measurement Measurement::identity(int dim) {
    return Measurement({"id"}, {ComplexMatrix::identity(dim)});
}

std::size_t Measurement::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw UnknownLabel("no outcome labeled '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

ComplexMatrix Measurement::effect(std::size_t i) const {
    const ComplexMatrix& op = operators_.at(i);
    return op.adjoint() * op;
}

double OutcomeDistribution::prob_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return p[i];
    throw UnknownLabel("no outcome labeled '" + label + "'");
}

OutcomeDistribution outcome_distribution(const Measurement& m, const DensityMatrix& rho) {
    if (m.dim() != rho.dim()) throw DimensionMismatch("measurement and state dims differ");
    const int d = m.dim();
    OutcomeDistribution dist;
    dist.labels = m.labels();
    dist.p.resize(m.outcome_count());
    double total = 0.0;
    for (std::size_t y = 0; y < m.outcome_count(); ++y) {
        const ComplexMatrix effect = m.effect(y);
        double prob = 0.0;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) prob += (rho.matrix()(r, c) * effect(c, r)).real();
        if (prob < -kProbabilityFloor || prob > 1.0 + kProbabilityFloor) {
            throw InvalidState("outcome probability outside [0,1] beyond tolerance");
        }
        dist.p[y] = std::clamp(prob, 0.0, 1.0);
        total += dist.p[y];
    }
    if (std::abs(total - 1.0) > 1e-9) throw InvalidState("outcome probabilities do not sum to 1");
    return dist;
}

namespace {

DensityMatrix conditioned_state(const Measurement& m, const DensityMatrix& rho, std::size_t y, double prob) {
    if (prob < kProbabilityFloor) {
        throw ZeroProbabilityOutcome("post-measurement state undefined below probability 1e-12");
    }
    const ComplexMatrix& op = m.op(y);
    ComplexMatrix post = op * rho.matrix() * op.adjoint();
    post *= Complex(1.0 / prob, 0.0);
    // renormalize the float remainder so the unit-trace check is exact
    const double trace = post.trace().real();
    post *= Complex(1.0 / trace, 0.0);
    return DensityMatrix(post);
}

} // namespace

DensityMatrix post_measurement_state(const Measurement& m, const DensityMatrix& rho, const std::string& label) {
    if (m.dim() != rho.dim()) throw DimensionMismatch("measurement and state dims differ");
    const std::size_t y = m.index_of(label);
    const OutcomeDistribution dist = outcome_distribution(m, rho);
    return conditioned_state(m, rho, y, dist.p[y]);
}

std::pair<std::string, DensityMatrix> sample_outcome(const Measurement& m, const DensityMatrix& rho,
                                                     RandomStream& rng) {
    const OutcomeDistribution dist = outcome_distribution(m, rho);
    const double u = rng.uniform01();
    double cumulative = 0.0;
    std::size_t y = dist.p.size() - 1; // the last bin absorbs float remainder
    for (std::size_t i = 0; i < dist.p.size(); ++i) {
        cumulative += dist.p[i];
        if (u < cumulative) {
            y = i;
            break;
        }
    }
    return {dist.labels[y], conditioned_state(m, rho, y, dist.p[y])};
}

Measurement tensor_product(const Measurement& m1, const Measurement& m2) {
    std::vector<std::string> labels;
    std::vector<ComplexMatrix> operators;
    labels.reserve(m1.outcome_count() * m2.outcome_count());
    operators.reserve(labels.capacity());
    for (std::size_t y1 = 0; y1 < m1.outcome_count(); ++y1) {
        for (std::size_t y2 = 0; y2 < m2.outcome_count(); ++y2) {
            labels.push_back(m1.label(y1) + "," + m2.label(y2));
            operators.push_back(ComplexMatrix::kron(m1.op(y1), m2.op(y2)));
        }
    }
    return Measurement(std::move(labels), std::move(operators));
}

Measurement two_outcome_pvm(const ComplexMatrix& p1) {
    if (!p1.is_hermitian(1e-9)) throw NotAProjector("projector must be hermitian");
    ComplexMatrix defect = p1 * p1 - p1;
    if (defect.max_abs() > 1e-9) throw NotAProjector("operator is not idempotent");
    ComplexMatrix p0 = ComplexMatrix::identity(p1.dim()) - p1;
    return Measurement({"1", "0"}, {p1, std::move(p0)});
}

} // namespace gentleq
