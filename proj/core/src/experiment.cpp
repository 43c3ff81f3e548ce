#include "gentleq/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "gentleq/divergences.hpp"
#include "gentleq/serialization.hpp"

namespace gentleq {

namespace {

// High stream ids reserved for grid-level randomness (reference states,
// alternative directions); trial substreams use the flat job index.
constexpr std::uint64_t kAuxStreamBase = 0x8000000000000000ull;

bool is_random_state(const nlohmann::json& j) {
    return j.is_string() && j.get<std::string>() == "random";
}

struct GridPoint {
    double alpha;
    long n;
};

std::vector<GridPoint> make_grid(const ExperimentConfig& config) {
    std::vector<GridPoint> grid;
    const std::vector<long> ns = config.ns.empty() ? std::vector<long>{0} : config.ns;
    for (double alpha : config.alphas)
        for (long n : ns) grid.push_back({alpha, n});
    return grid;
}

double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

double variance_of(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += (v - mean) * (v - mean);
    return sum / static_cast<double>(values.size() - 1);
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    std::vector<std::string> issues;
    const auto fail = [&issues](const std::string& message) { issues.push_back(message); };

    for (const auto& [key, value] : j.items()) {
        (void)value;
        static const std::vector<std::string> known = {"kind", "alpha", "n",     "epsilon", "reps",
                                                       "seed", "state", "state2", "out",    "format"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            fail("unknown config field '" + key + "'");
        }
    }

    try {
        if (j.contains("kind")) config.kind = j.at("kind").get<std::string>();
        if (j.contains("alpha")) {
            if (j.at("alpha").is_array()) {
                config.alphas = j.at("alpha").get<std::vector<double>>();
            } else {
                config.alphas = {j.at("alpha").get<double>()};
            }
        }
        if (j.contains("n")) {
            if (j.at("n").is_array()) {
                config.ns = j.at("n").get<std::vector<long>>();
            } else {
                config.ns = {j.at("n").get<long>()};
            }
        }
        if (j.contains("epsilon")) config.epsilon = j.at("epsilon").get<double>();
        if (j.contains("reps")) config.reps = j.at("reps").get<long>();
        if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("state")) config.state = j.at("state");
        if (j.contains("state2")) config.state2 = j.at("state2");
        if (j.contains("out")) config.out_path = j.at("out").get<std::string>();
        if (j.contains("format")) config.format = j.at("format").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("malformed field: ") + e.what());
    }

    if (!issues.empty()) {
        std::string joined;
        for (const std::string& issue : issues) joined += (joined.empty() ? "" : "; ") + issue;
        throw ConfigInvalid(joined);
    }
    return config;
}

void ExperimentConfig::validate() const {
    std::vector<std::string> issues;
    const auto fail = [&issues](const std::string& message) { issues.push_back(message); };

    static const std::vector<std::string> kinds = {"tomography", "certify", "qdpi-scan",
                                                   "gentleness-scan", "np-error"};
    const bool known_kind = std::find(kinds.begin(), kinds.end(), kind) != kinds.end();
    if (!known_kind) fail("kind: expected one of tomography|certify|qdpi-scan|gentleness-scan|np-error");

    if (reps < 1) fail("reps: must be >= 1");
    if (format != "csv" && format != "json") fail("format: must be csv or json");
    if (alphas.empty()) fail("alpha: at least one value required");

    if (known_kind) {
        for (double alpha : alphas) {
            const bool ok = (kind == "tomography" || kind == "certify")
                                ? (alpha > 0.0 && alpha <= 1.0)
                                : (kind == "qdpi-scan" ? (alpha > 0.0 && alpha < 1.0)
                                                       : (alpha >= 0.0 && alpha <= 1.0));
            if (!ok) fail("alpha: " + format_double(alpha) + " invalid for kind " + kind);
        }
        if (kind == "tomography" || kind == "certify") {
            if (ns.empty() && kind == "tomography") fail("n: required for tomography");
            for (long n : ns)
                if (n < 3) fail("n: must be >= 3 for " + kind);
        } else if (kind == "gentleness-scan") {
            if (ns.empty()) fail("n: sample count required for gentleness-scan");
            for (long n : ns)
                if (n < 1) fail("n: must be >= 1 for gentleness-scan");
        }
        if (kind == "certify") {
            if (!epsilon.has_value()) {
                fail("epsilon: required for certify");
            } else if (!(*epsilon > 0.0 && *epsilon <= 1.0)) {
                fail("epsilon: must lie in (0, 1]");
            }
        }
        if (!is_random_state(state) && !state.is_object()) fail("state: must be a state object or \"random\"");
        if (kind == "np-error" && !is_random_state(state2) && !state2.is_object()) {
            fail("state2: must be a state object or \"random\"");
        }
        if (!is_random_state(state) && state.is_object()) {
            try {
                (void)state_from_json(state);
            } catch (const Error& e) {
                fail(std::string("state: ") + e.what());
            }
        }
        if (kind == "np-error" && !is_random_state(state2) && state2.is_object()) {
            try {
                (void)state_from_json(state2);
            } catch (const Error& e) {
                fail(std::string("state2: ") + e.what());
            }
        }
    }

    if (!issues.empty()) {
        std::string joined;
        for (const std::string& issue : issues) joined += (joined.empty() ? "" : "; ") + issue;
        throw ConfigInvalid(joined);
    }
}

namespace {

DensityMatrix resolve_state(const nlohmann::json& state_json, std::uint64_t seed, std::uint64_t aux_stream) {
    if (is_random_state(state_json)) {
        RandomStream rng(seed, kAuxStreamBase + aux_stream);
        return bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
    }
    return state_from_json(state_json);
}

struct KindRunner {
    const ExperimentConfig& config;
    std::vector<GridPoint> grid;
    long records_per_job;
    std::vector<TrialRecord> records;

    KindRunner(const ExperimentConfig& cfg, long per_job)
        : config(cfg), grid(make_grid(cfg)), records_per_job(per_job) {
        records.resize(grid.size() * static_cast<std::size_t>(cfg.reps) *
                       static_cast<std::size_t>(per_job));
    }

    TrialRecord& slot(std::size_t g, long trial, long offset) {
        const std::size_t job = g * static_cast<std::size_t>(config.reps) + static_cast<std::size_t>(trial);
        return records[job * static_cast<std::size_t>(records_per_job) + static_cast<std::size_t>(offset)];
    }

    std::uint64_t stream_of(std::size_t g, long trial) const {
        return static_cast<std::uint64_t>(g) * static_cast<std::uint64_t>(config.reps) +
               static_cast<std::uint64_t>(trial);
    }

    void fill(std::size_t g, long trial, long offset, const std::string& metric, double value,
              std::optional<double> eps = std::nullopt) {
        if (!std::isfinite(value)) throw InvalidState("metric value must be finite: " + metric);
        TrialRecord& record = slot(g, trial, offset);
        record.kind = config.kind;
        record.alpha = grid[g].alpha;
        record.n = grid[g].n;
        record.epsilon = eps;
        record.trial_index = trial;
        record.metric_name = metric;
        record.metric_value = value;
        record.seed = config.seed;
    }

    std::vector<double> metric_values(std::size_t g, const std::string& metric) const {
        std::vector<double> values;
        for (long t = 0; t < config.reps; ++t) {
            for (long k = 0; k < records_per_job; ++k) {
                const std::size_t job = g * static_cast<std::size_t>(config.reps) + static_cast<std::size_t>(t);
                const TrialRecord& record =
                    records[job * static_cast<std::size_t>(records_per_job) + static_cast<std::size_t>(k)];
                if (record.metric_name == metric) values.push_back(record.metric_value);
            }
        }
        return values;
    }
};

ExperimentResult run_tomography(const ExperimentConfig& config) {
    KindRunner runner(config, 1);
    const bool random_state = is_random_state(config.state);
    const DensityMatrix fixed_state =
        random_state ? bloch_to_density({0, 0, 0}) : state_from_json(config.state);

    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        const auto [alpha, n] = runner.grid[g];
        parallel_trials(config.reps, [&, g, alpha, n](long trial) {
            RandomStream rng = derive_trial_rng(config.seed, runner.stream_of(g, trial));
            const BlochVector r_true = random_state ? sample_bloch(rng, BlochSampleMode::Ball)
                                                    : density_to_bloch(fixed_state);
            const TomographyEstimate estimate =
                tomography(bloch_to_density(r_true), n, alpha, rng);
            const double dx = estimate.r_hat.x - r_true.x;
            const double dy = estimate.r_hat.y - r_true.y;
            const double dz = estimate.r_hat.z - r_true.z;
            const double err = 0.25 * (dx * dx + dy * dy + dz * dz);
            runner.fill(g, trial, 0, "sq_trace_err", err);
        });
    }

    ExperimentResult result;
    result.records = std::move(runner.records);
    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        const auto [alpha, n] = runner.grid[g];
        std::vector<double> errs;
        for (long t = 0; t < config.reps; ++t)
            errs.push_back(result.records[(g * config.reps + t)].metric_value);
        const double mean = mean_of(errs);
        const double one_plus = 1.0 + alpha * alpha;
        const double bound = 3.0 * one_plus * one_plus / (16.0 * alpha * alpha * static_cast<double>(n));
        GridSummary summary;
        summary.alpha = alpha;
        summary.n = n;
        summary.stats["mean_sq_trace_err"] = mean;
        summary.stats["var_sq_trace_err"] = variance_of(errs, mean);
        summary.stats["mse_bound"] = bound;
        summary.bounds_ok = mean <= bound;
        result.all_bounds_ok = result.all_bounds_ok && summary.bounds_ok;
        result.summaries.push_back(std::move(summary));
    }
    return result;
}

ExperimentResult run_certify(const ExperimentConfig& config) {
    ExperimentConfig expanded = config;
    const double eps = *config.epsilon;
    // empty n list asks for the sufficient per-alpha count at budget 1/3
    if (expanded.ns.empty()) expanded.ns = {0};

    KindRunner runner(expanded, 2);
    for (auto& point : runner.grid) {
        if (point.n == 0) point.n = required_copies_certification(eps, point.alpha);
    }

    const DensityMatrix rho0 = resolve_state(config.state, config.seed, 0);
    const BlochVector r0 = density_to_bloch(rho0);

    // eight alternatives at trace distance exactly eps, drawn per grid point
    std::vector<std::array<BlochVector, 8>> alternatives(runner.grid.size());
    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        RandomStream dir_rng(config.seed, kAuxStreamBase + 0x1000 + g);
        for (int k = 0; k < 8; ++k) {
            BlochVector alt{};
            bool found = false;
            for (int attempt = 0; attempt < 256 && !found; ++attempt) {
                const BlochVector dir = sample_bloch(dir_rng, BlochSampleMode::Surface);
                for (double sign : {1.0, -1.0}) {
                    alt = {r0.x + sign * 2.0 * eps * dir.x, r0.y + sign * 2.0 * eps * dir.y,
                           r0.z + sign * 2.0 * eps * dir.z};
                    if (alt.norm() <= 1.0) {
                        found = true;
                        break;
                    }
                }
            }
            if (!found) {
                throw ConfigInvalid("epsilon: no state at distance epsilon fits inside the Bloch ball");
            }
            alternatives[g][static_cast<std::size_t>(k)] = alt;
        }
    }

    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        const auto [alpha, n] = runner.grid[g];
        parallel_trials(config.reps, [&, g, alpha, n](long trial) {
            RandomStream rng = derive_trial_rng(config.seed, runner.stream_of(g, trial));
            const CertificationDecision null_run = certify(rho0, rho0, eps, n, alpha, rng);
            const BlochVector alt = alternatives[g][static_cast<std::size_t>(trial % 8)];
            const CertificationDecision alt_run =
                certify(bloch_to_density(alt), rho0, eps, n, alpha, rng);
            runner.fill(g, trial, 0, "type1_err", null_run.decision == Hypothesis::H1 ? 1.0 : 0.0, eps);
            runner.fill(g, trial, 1, "type2_err", alt_run.decision == Hypothesis::H0 ? 1.0 : 0.0, eps);
        });
    }

    ExperimentResult result;
    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        const auto [alpha, n] = runner.grid[g];
        double type1_sum = 0.0;
        std::array<double, 8> type2_sum{};
        std::array<long, 8> type2_count{};
        for (long t = 0; t < config.reps; ++t) {
            type1_sum += runner.slot(g, t, 0).metric_value;
            type2_sum[static_cast<std::size_t>(t % 8)] += runner.slot(g, t, 1).metric_value;
            ++type2_count[static_cast<std::size_t>(t % 8)];
        }
        const double type1_rate = type1_sum / static_cast<double>(config.reps);
        double worst_type2 = 0.0;
        long worst_count = config.reps;
        for (int k = 0; k < 8; ++k) {
            if (type2_count[static_cast<std::size_t>(k)] == 0) continue;
            const double rate = type2_sum[static_cast<std::size_t>(k)] /
                                static_cast<double>(type2_count[static_cast<std::size_t>(k)]);
            if (rate >= worst_type2) {
                worst_type2 = rate;
                worst_count = type2_count[static_cast<std::size_t>(k)];
            }
        }
        const double total = type1_rate + worst_type2;
        const double sigma = std::sqrt(type1_rate * (1.0 - type1_rate) / static_cast<double>(config.reps) +
                                       worst_type2 * (1.0 - worst_type2) / static_cast<double>(worst_count));
        GridSummary summary;
        summary.alpha = alpha;
        summary.n = n;
        summary.epsilon = eps;
        summary.stats["type1_rate"] = type1_rate;
        summary.stats["worst_type2_rate"] = worst_type2;
        summary.stats["total_error"] = total;
        summary.stats["error_budget"] = 1.0 / 3.0;
        summary.stats["three_sigma"] = 3.0 * sigma;
        summary.bounds_ok = total <= 1.0 / 3.0 + 3.0 * sigma;
        result.all_bounds_ok = result.all_bounds_ok && summary.bounds_ok;
        result.summaries.push_back(std::move(summary));
    }
    result.records = std::move(runner.records);
    return result;
}

ExperimentResult run_qdpi_scan(const ExperimentConfig& config) {
    KindRunner runner(config, 2);
    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        const double alpha = runner.grid[g].alpha;
        parallel_trials(config.reps, [&, g, alpha](long trial) {
            RandomStream rng = derive_trial_rng(config.seed, runner.stream_of(g, trial));
            const DensityMatrix rho0 = bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
            const DensityMatrix rho1 = bloch_to_density(sample_bloch(rng, BlochSampleMode::Ball));
            const double t = trace_distance(rho0, rho1);
            const Measurement m = gentle_np_measurement(rho0, rho1, alpha);
            const double divergence =
                sym_kl(outcome_distribution(m, rho0), outcome_distribution(m, rho1));
            runner.fill(g, trial, 0, "sym_kl", divergence);
            runner.fill(g, trial, 1, "trace_dist", t);
        });
    }

    ExperimentResult result;
    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        const double alpha = runner.grid[g].alpha;
        long violations = 0;
        double max_ratio_upper = 0.0;
        double min_ratio_lower = std::numeric_limits<double>::infinity();
        for (long t = 0; t < config.reps; ++t) {
            const double divergence = runner.slot(g, t, 0).metric_value;
            const double dist = runner.slot(g, t, 1).metric_value;
            const double lower = qdpi_lower_bound(alpha, dist);
            const double upper = qdpi_upper_bound(alpha, dist, true);
            if (divergence < lower - 1e-12 || divergence > upper + 1e-12) ++violations;
            if (alpha < 0.5 && divergence > qdpi_upper_bound(alpha, dist, false) + 1e-12) ++violations;
            if (upper > 0.0) max_ratio_upper = std::max(max_ratio_upper, divergence / upper);
            if (lower > 0.0) min_ratio_lower = std::min(min_ratio_lower, divergence / lower);
        }
        GridSummary summary;
        summary.alpha = alpha;
        summary.n = runner.grid[g].n;
        summary.stats["violations"] = static_cast<double>(violations);
        summary.stats["lower_coeff"] = qdpi_lower_bound(alpha, 1.0);
        summary.stats["upper_coeff_positive"] = qdpi_upper_bound(alpha, 1.0, true);
        if (alpha < 0.5) summary.stats["upper_coeff_general"] = qdpi_upper_bound(alpha, 1.0, false);
        if (config.reps > 0 && std::isfinite(min_ratio_lower)) {
            summary.stats["max_ratio_vs_upper"] = max_ratio_upper;
            summary.stats["min_ratio_vs_lower"] = min_ratio_lower;
        }
        summary.bounds_ok = violations == 0;
        result.all_bounds_ok = result.all_bounds_ok && summary.bounds_ok;
        result.summaries.push_back(std::move(summary));
    }
    result.records = std::move(runner.records);
    return result;
}

ExperimentResult run_gentleness_scan(const ExperimentConfig& config) {
    KindRunner runner(config, 1);
    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        const auto [alpha, n] = runner.grid[g];
        parallel_trials(config.reps, [&, g, alpha, n](long trial) {
            RandomStream rng = derive_trial_rng(config.seed, runner.stream_of(g, trial));
            const Measurement qls = qls_qubit(Axis::Z, alpha);
            const GentlenessReport report = worst_case_disturbance(qls, n, 20, rng);
            runner.fill(g, trial, 0, "worst_disturbance", report.worst_disturbance);
        });
    }

    ExperimentResult result;
    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        const auto [alpha, n] = runner.grid[g];
        const std::vector<double> values = runner.metric_values(g, "worst_disturbance");
        const double worst = *std::max_element(values.begin(), values.end());
        GridSummary summary;
        summary.alpha = alpha;
        summary.n = n;
        summary.stats["worst_disturbance"] = worst;
        summary.stats["analytic_alpha"] = alpha;
        summary.bounds_ok = worst >= alpha - 1e-6 && worst <= alpha + 1e-9;
        result.all_bounds_ok = result.all_bounds_ok && summary.bounds_ok;
        result.summaries.push_back(std::move(summary));
    }
    result.records = std::move(runner.records);
    return result;
}

ExperimentResult run_np_error(const ExperimentConfig& config) {
    KindRunner runner(config, 2);
    const DensityMatrix rho0 = resolve_state(config.state, config.seed, 0);
    const DensityMatrix rho1 = resolve_state(config.state2, config.seed, 1);

    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        const double alpha = runner.grid[g].alpha;
        const Measurement m = gentle_np_measurement(rho0, rho1, alpha);
        // outcome "1" carries the P+ weight of rho0 - rho1, so it accepts H0
        const double p_err_h0 = outcome_distribution(m, rho0).prob_of("0");
        const double p_err_h1 = outcome_distribution(m, rho1).prob_of("1");
        parallel_trials(config.reps, [&, g](long trial) {
            RandomStream rng = derive_trial_rng(config.seed, runner.stream_of(g, trial));
            runner.fill(g, trial, 0, "err_h0", rng.uniform01() < p_err_h0 ? 1.0 : 0.0);
            runner.fill(g, trial, 1, "err_h1", rng.uniform01() < p_err_h1 ? 1.0 : 0.0);
        });
    }

    ExperimentResult result;
    for (std::size_t g = 0; g < runner.grid.size(); ++g) {
        const double alpha = runner.grid[g].alpha;
        double err0 = 0.0, err1 = 0.0;
        for (long t = 0; t < config.reps; ++t) {
            err0 += runner.slot(g, t, 0).metric_value;
            err1 += runner.slot(g, t, 1).metric_value;
        }
        const double reps = static_cast<double>(config.reps);
        const double empirical = err0 / reps + err1 / reps;
        const double analytic = np_total_error(rho0, rho1, alpha);
        const Measurement m = gentle_np_measurement(rho0, rho1, alpha);
        const double p0 = outcome_distribution(m, rho0).prob_of("0");
        const double p1 = outcome_distribution(m, rho1).prob_of("1");
        const double sigma = std::sqrt(p0 * (1.0 - p0) / reps + p1 * (1.0 - p1) / reps);
        GridSummary summary;
        summary.alpha = alpha;
        summary.n = runner.grid[g].n;
        summary.stats["empirical_total_error"] = empirical;
        summary.stats["analytic_total_error"] = analytic;
        summary.stats["three_sigma"] = 3.0 * sigma;
        summary.bounds_ok = std::abs(empirical - analytic) <= 3.0 * sigma;
        result.all_bounds_ok = result.all_bounds_ok && summary.bounds_ok;
        result.summaries.push_back(std::move(summary));
    }
    result.records = std::move(runner.records);
    return result;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    if (config.kind == "tomography") return run_tomography(config);
    if (config.kind == "certify") return run_certify(config);
    if (config.kind == "qdpi-scan") return run_qdpi_scan(config);
    if (config.kind == "gentleness-scan") return run_gentleness_scan(config);
    return run_np_error(config);
}

std::string format_double(double value) {
    char buffer[64];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
        if (std::strtod(buffer, nullptr) == value) break;
    }
    return buffer;
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
    std::string out = "kind,alpha,n,epsilon,trial_index,metric_name,metric_value,seed\n";
    for (const TrialRecord& record : records) {
        out += record.kind;
        out += ',';
        out += format_double(record.alpha);
        out += ',';
        out += std::to_string(record.n);
        out += ',';
        if (record.epsilon.has_value()) out += format_double(*record.epsilon);
        out += ',';
        out += std::to_string(record.trial_index);
        out += ',';
        out += record.metric_name;
        out += ',';
        out += format_double(record.metric_value);
        out += ',';
        out += std::to_string(record.seed);
        out += '\n';
    }
    return out;
}

nlohmann::json result_to_json(const std::vector<TrialRecord>& records,
                              const std::vector<GridSummary>& summaries) {
    nlohmann::json record_array = nlohmann::json::array();
    for (const TrialRecord& record : records) {
        nlohmann::json entry = {
            {"kind", record.kind},           {"alpha", record.alpha},
            {"n", record.n},                 {"trial_index", record.trial_index},
            {"metric_name", record.metric_name}, {"metric_value", record.metric_value},
            {"seed", record.seed},
        };
        if (record.epsilon.has_value()) entry["epsilon"] = *record.epsilon;
        record_array.push_back(std::move(entry));
    }
    nlohmann::json summary_array = nlohmann::json::array();
    for (const GridSummary& summary : summaries) {
        nlohmann::json entry = {
            {"alpha", summary.alpha},
            {"n", summary.n},
            {"stats", summary.stats},
            {"bounds_ok", summary.bounds_ok},
        };
        if (summary.epsilon.has_value()) entry["epsilon"] = *summary.epsilon;
        summary_array.push_back(std::move(entry));
    }
    return {{"records", std::move(record_array)}, {"summaries", std::move(summary_array)}};
}

std::vector<TrialRecord> records_from_json(const nlohmann::json& j) {
    std::vector<TrialRecord> records;
    for (const nlohmann::json& entry : j.at("records")) {
        TrialRecord record;
        record.kind = entry.at("kind").get<std::string>();
        record.alpha = entry.at("alpha").get<double>();
        record.n = entry.at("n").get<long>();
        if (entry.contains("epsilon")) record.epsilon = entry.at("epsilon").get<double>();
        record.trial_index = entry.at("trial_index").get<long>();
        record.metric_name = entry.at("metric_name").get<std::string>();
        record.metric_value = entry.at("metric_value").get<double>();
        record.seed = entry.at("seed").get<std::uint64_t>();
        records.push_back(std::move(record));
    }
    return records;
}

void write_records(const std::vector<TrialRecord>& records, const std::vector<GridSummary>& summaries,
                   const std::string& path, const std::string& format) {
    std::string payload;
    if (format == "csv") {
        payload = records_to_csv(records);
    } else if (format == "json") {
        payload = result_to_json(records, summaries).dump(2);
        payload += '\n';
    } else {
        throw ConfigInvalid("format: must be csv or json");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::string summary_to_string(const GridSummary& summary) {
    std::ostringstream out;
    out << "alpha=" << format_double(summary.alpha) << " n=" << summary.n;
    if (summary.epsilon.has_value()) out << " epsilon=" << format_double(*summary.epsilon);
    for (const auto& [key, value] : summary.stats) out << ' ' << key << '=' << format_double(value);
    out << " bounds_ok=" << (summary.bounds_ok ? "yes" : "no");
    return out.str();
}

unsigned worker_count() {
    if (const char* env = std::getenv("GENTLEQ_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_trials(long count, const std::function<void(long)>& fn) {
    const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<long>(count, 1)));
    if (workers <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const long index = next.fetch_add(1, std::memory_order_relaxed);
                if (index >= count) return;
                try {
                    fn(index);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& worker : pool) worker.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace gentleq
