#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gentleq/experiment.hpp"

namespace {

struct CliOverrides {
    std::vector<double> alphas;
    std::vector<long> ns;
    std::optional<double> epsilon;
    std::optional<long> reps;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

int run_kind(const std::string& kind, const std::string& config_path, const CliOverrides& overrides,
             bool check) {
    nlohmann::json raw = nlohmann::json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot read config file '" << config_path << "'\n";
            return 2;
        }
        try {
            in >> raw;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
            return 1;
        }
    }

    gentleq::ExperimentConfig config;
    try {
        config = gentleq::ExperimentConfig::from_json(raw);
        if (!config.kind.empty() && config.kind != kind) {
            throw gentleq::ConfigInvalid("kind: config says '" + config.kind +
                                         "' but the subcommand is '" + kind + "'");
        }
        config.kind = kind;
        if (!overrides.alphas.empty()) config.alphas = overrides.alphas;
        if (!overrides.ns.empty()) config.ns = overrides.ns;
        if (overrides.epsilon) config.epsilon = overrides.epsilon;
        if (overrides.reps) config.reps = *overrides.reps;
        if (overrides.seed) config.seed = *overrides.seed;
        if (overrides.out) config.out_path = *overrides.out;
        if (overrides.format) config.format = *overrides.format;
        config.validate();
    } catch (const gentleq::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    gentleq::ExperimentResult result;
    try {
        result = gentleq::run_experiment(config);
    } catch (const gentleq::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gentleq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (!config.out_path.empty()) {
            gentleq::write_records(result.records, result.summaries, config.out_path, config.format);
        }
    } catch (const gentleq::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    }

    for (const gentleq::GridSummary& summary : result.summaries) {
        std::cout << kind << " " << gentleq::summary_to_string(summary) << "\n";
    }
    std::cout << "records=" << result.records.size();
    if (!config.out_path.empty()) std::cout << " written_to=" << config.out_path;
    std::cout << "\n";

    if (check && !result.all_bounds_ok) {
        std::cerr << "check failed: at least one summary violates its bound\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gentle quantum measurement simulations: label-switch measurements, "
                 "gentle Neyman-Pearson tests, qubit tomography and certification"};
    app.require_subcommand(1);

    std::string config_path;
    CliOverrides overrides;
    bool check = false;

    app.add_option("--config", config_path, "JSON experiment configuration file")->expected(1);
    app.add_option("--alpha", overrides.alphas, "gentleness level(s), overrides the config")
        ->delimiter(',');
    app.add_option("--n", overrides.ns, "copies per axis / sample count, overrides the config")
        ->delimiter(',');
    double epsilon_value = 0.0;
    auto* epsilon_opt = app.add_option("--epsilon", epsilon_value, "certification radius");
    long reps_value = 0;
    auto* reps_opt = app.add_option("--reps", reps_value, "Monte Carlo repetitions");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "master seed");
    std::string out_value;
    auto* out_opt = app.add_option("--out", out_value, "output path");
    std::string format_value;
    auto* format_opt = app.add_option("--format", format_value, "csv or json")
                           ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--check", check, "exit 3 when a summary violates its bound");

    static const std::vector<std::string> kinds = {"tomography", "certify", "qdpi-scan",
                                                   "gentleness-scan", "np-error"};
    for (const std::string& kind : kinds) {
        app.add_subcommand(kind, "run the " + kind + " experiment kind")->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    if (epsilon_opt->count() > 0) overrides.epsilon = epsilon_value;
    if (reps_opt->count() > 0) overrides.reps = reps_value;
    if (seed_opt->count() > 0) overrides.seed = seed_value;
    if (out_opt->count() > 0) overrides.out = out_value;
    if (format_opt->count() > 0) overrides.format = format_value;

    const std::string kind = app.get_subcommands().front()->get_name();
    return run_kind(kind, config_path, overrides, check);
}
