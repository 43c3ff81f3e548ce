#include "gentleq/serialization.hpp"

#include <cmath>

namespace gentleq {

namespace {

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.contains("dim") || !j.contains("re") || !j.contains("im")) {
        throw ConfigInvalid("matrix object needs dim, re, im");
    }
    const int d = j.at("dim").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (d < 1 || re.size() != static_cast<std::size_t>(d) * d || im.size() != re.size()) {
        throw ConfigInvalid("matrix re/im arrays must hold dim*dim entries");
    }
    std::vector<Complex> entries(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) entries[i] = Complex(re[i], im[i]);
    return ComplexMatrix(d, std::move(entries));
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    std::vector<double> re, im;
    re.reserve(m.entries().size());
    im.reserve(m.entries().size());
    for (const Complex& value : m.entries()) {
        re.push_back(value.real());
        im.push_back(value.imag());
    }
    return {{"dim", m.dim()}, {"re", re}, {"im", im}};
}

} // namespace

DensityMatrix state_from_json(const nlohmann::json& j) {
    if (j.contains("bloch")) {
        const auto coords = j.at("bloch").get<std::vector<double>>();
        if (coords.size() != 3) throw ConfigInvalid("bloch state needs exactly 3 coordinates");
        return bloch_to_density({coords[0], coords[1], coords[2]});
    }
    if (j.contains("matrix")) return DensityMatrix(matrix_from_json(j.at("matrix")));
    throw ConfigInvalid("state object needs either 'bloch' or 'matrix'");
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
    if (rho.dim() == 2) {
        const BlochVector r = density_to_bloch(rho);
        return {{"bloch", {r.x, r.y, r.z}}};
    }
    return {{"matrix", matrix_to_json(rho.matrix())}};
}

Measurement measurement_from_json(const nlohmann::json& j) {
    if (!j.contains("dim") || !j.contains("outcomes")) {
        throw ConfigInvalid("measurement object needs dim and outcomes");
    }
    const int d = j.at("dim").get<int>();
    std::vector<std::string> labels;
    std::vector<ComplexMatrix> operators;
    for (const nlohmann::json& outcome : j.at("outcomes")) {
        labels.push_back(outcome.at("label").get<std::string>());
        nlohmann::json m = outcome;
        m["dim"] = d;
        operators.push_back(matrix_from_json(m));
    }
    return Measurement(std::move(labels), std::move(operators));
}

nlohmann::json measurement_to_json(const Measurement& m) {
    nlohmann::json outcomes = nlohmann::json::array();
    for (std::size_t y = 0; y < m.outcome_count(); ++y) {
        nlohmann::json entry = matrix_to_json(m.op(y));
        entry.erase("dim");
        entry["label"] = m.label(y);
        outcomes.push_back(std::move(entry));
    }
    return {{"dim", m.dim()}, {"outcomes", std::move(outcomes)}};
}

OutcomeDistribution pmf_from_json(const nlohmann::json& j) {
    OutcomeDistribution dist;
    dist.labels = j.at("labels").get<std::vector<std::string>>();
    dist.p = j.at("p").get<std::vector<double>>();
    if (dist.labels.size() != dist.p.size()) throw ConfigInvalid("pmf labels and p differ in length");
    return dist;
}

nlohmann::json pmf_to_json(const OutcomeDistribution& dist) {
    return {{"labels", dist.labels}, {"p", dist.p}};
}

nlohmann::json gentleness_report_to_json(const GentlenessReport& report) {
    std::vector<double> re, im;
    for (const Complex& amp : report.witness_state.amplitudes()) {
        re.push_back(amp.real());
        im.push_back(amp.imag());
    }
    nlohmann::json j = {
        {"worst_disturbance", report.worst_disturbance},
        {"witness_state", {{"re", re}, {"im", im}}},
        {"witness_outcome", report.witness_outcome},
        {"samples_used", report.samples_used},
    };
    if (std::isinf(report.qdp_delta_observed)) {
        j["qdp_delta_observed"] = "inf";
    } else {
        j["qdp_delta_observed"] = report.qdp_delta_observed;
    }
    return j;
}

} // namespace gentleq
