#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gentleq/states.hpp"

namespace gentleq {

/// Finite labeled family of measurement operators M_y satisfying the
/// completeness relation sum_y M_y* M_y = 1 (checked on construction,
/// max-entry tolerance 1e-9).
class Measurement {
public:
    Measurement(std::vector<std::string> labels, std::vector<ComplexMatrix> operators);

    static Measurement identity(int dim);

    int dim() const noexcept { return operators_.front().dim(); }
    std::size_t outcome_count() const noexcept { return operators_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const ComplexMatrix& op(std::size_t i) const { return operators_.at(i); }

    /// Index of a label; throws UnknownLabel.
    std::size_t index_of(const std::string& label) const;

    /// E_y = M_y* M_y.
    ComplexMatrix effect(std::size_t i) const;

private:
    std::vector<std::string> labels_;
    std::vector<ComplexMatrix> operators_;
};

/// Probability mass function over measurement labels, in outcome order.
struct OutcomeDistribution {
    std::vector<std::string> labels;
    std::vector<double> p;

    double prob_of(const std::string& label) const;
};

/// p(y) = Tr(rho M_y* M_y), clamped to [0, 1].
OutcomeDistribution outcome_distribution(const Measurement& m, const DensityMatrix& rho);

/// rho_{M->y} = M_y rho M_y* / p(y); undefined below probability 1e-12.
DensityMatrix post_measurement_state(const Measurement& m, const DensityMatrix& rho, const std::string& label);

/// Draw one outcome and the conditioned post-measurement state.
std::pair<std::string, DensityMatrix> sample_outcome(const Measurement& m, const DensityMatrix& rho,
                                                     RandomStream& rng);

/// Product measurement with operators M_{y1} (x) M_{y2}; labels join as "y1,y2".
Measurement tensor_product(const Measurement& m1, const Measurement& m2);

/// PVM (P1, 1 - P1) with labels ("1", "0"). P1 must be an orthogonal projector.
Measurement two_outcome_pvm(const ComplexMatrix& p1);

} // namespace gentleq
