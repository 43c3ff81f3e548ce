#pragma once

#include "gentleq/measurement.hpp"

namespace gentleq {

/// Kullback-Leibler divergence sum p log(p/q), natural log, with
/// 0 log(0/q) := 0. Entries below the 1e-300 floor on one side only raise
/// SupportMismatch: gentle measurements have full-rank effects, so a true
/// support mismatch indicates a caller bug rather than a value.
double kl_divergence(const OutcomeDistribution& p, const OutcomeDistribution& q);

/// D_KL(P||Q) + D_KL(Q||P).
double sym_kl(const OutcomeDistribution& p, const OutcomeDistribution& q);

/// (1/2) sum |p - q|.
double total_variation(const OutcomeDistribution& p, const OutcomeDistribution& q);

/// qDPI upper bound on sym-KL of the outcome pmfs of an alpha-gentle
/// measurement: (8a/(1-2a)^2)^2 t^2 in general (a < 1/2),
/// (4a/(1-a)^2)^2 t^2 for positive-definite operators (a < 1).
double qdpi_upper_bound(double alpha, double trace_dist, bool positive_ops);

/// Attained lower bound (4a/(1+a^2))^2 t^2 of the gentle Neyman-Pearson
/// measurement.
double qdpi_lower_bound(double alpha, double trace_dist);

} // namespace gentleq
