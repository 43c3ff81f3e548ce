#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gentleq/learning.hpp"

namespace gentleq {

/// Declarative Monte Carlo run description. `alphas` x `ns` span the grid;
/// trials use substreams derived from (seed, flat job index), so results do
/// not depend on worker scheduling.
struct ExperimentConfig {
    std::string kind; // tomography | certify | qdpi-scan | gentleness-scan | np-error
    std::vector<double> alphas;
    std::vector<long> ns;
    std::optional<double> epsilon;
    long reps = 1;
    std::uint64_t seed = 0;
    nlohmann::json state = "random";  // state JSON object or "random"
    nlohmann::json state2 = "random"; // second hypothesis state (np-error)
    std::string out_path;
    std::string format = "csv";

    static ExperimentConfig from_json(const nlohmann::json& j);

    /// Throws ConfigInvalid with field-level messages.
    void validate() const;
};

struct TrialRecord {
    std::string kind;
    double alpha = 0.0;
    long n = 0;
    std::optional<double> epsilon;
    long trial_index = 0;
    std::string metric_name;
    double metric_value = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Aggregates for one grid point. Whenever an analytic bound is involved, the
/// stats carry both the bound value and the empirical value.
struct GridSummary {
    double alpha = 0.0;
    long n = 0;
    std::optional<double> epsilon;
    std::map<std::string, double> stats;
    bool bounds_ok = true;
};

struct ExperimentResult {
    std::vector<TrialRecord> records;
    std::vector<GridSummary> summaries;
    bool all_bounds_ok = true;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// CSV: fixed header kind,alpha,n,epsilon,trial_index,metric_name,
/// metric_value,seed; one row per record; trailing newline; UTF-8.
/// JSON mirrors the record fields and adds the summaries.
void write_records(const std::vector<TrialRecord>& records, const std::vector<GridSummary>& summaries,
                   const std::string& path, const std::string& format);

std::string records_to_csv(const std::vector<TrialRecord>& records);
nlohmann::json result_to_json(const std::vector<TrialRecord>& records,
                              const std::vector<GridSummary>& summaries);
std::vector<TrialRecord> records_from_json(const nlohmann::json& j);

std::string summary_to_string(const GridSummary& summary);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

/// Worker cap: GENTLEQ_THREADS when set, hardware concurrency otherwise.
unsigned worker_count();

/// Runs fn(0..count-1) on a worker pool. Each index must own its work;
/// results are then independent of the thread count.
void parallel_trials(long count, const std::function<void(long)>& fn);

} // namespace gentleq
