#include "hpmax/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hpmax {

namespace {

using nlohmann::ordered_json;

const char* method_name(EstimateMethod method) {
    switch (method) {
        case EstimateMethod::quadrature: return "quadrature";
        case EstimateMethod::monte_carlo: return "monte_carlo";
        case EstimateMethod::analytic: return "analytic";
    }
    return "?";
}

/// NaN/inf are not valid JSON numbers; encode them as strings.
ordered_json number(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

ordered_json axis_json(const GridAxis& axis) {
    return {{"lo", axis.lo},
            {"hi", axis.hi},
            {"count", axis.count},
            {"spacing", axis.log_spaced ? "log" : "linear"}};
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ordered_json to_json(const MeasureEstimate& est) {
    return {{"value", number(est.value)},
            {"err", number(est.err)},
            {"method", method_name(est.method)},
            {"effort", est.effort},
            {"converged", est.converged}};
}

ordered_json to_json(const MaximalValue& value) {
    return {{"value", number(value.value)},
            {"achieving_radius", number(value.achieving_radius)},
            {"relative_err", number(value.err)},
            {"infinite", value.infinite},
            {"converged", value.converged},
            {"effort", value.effort}};
}

ordered_json to_json(const InequalityCheck& check) {
    return {{"id", check.id},
            {"description", check.description},
            {"R", number(check.R)},
            {"lhs", number(check.lhs)},
            {"rhs", number(check.rhs)},
            {"margin", number(check.margin)},
            {"num_err", number(check.num_err)},
            {"pass", check.pass},
            {"samples", check.samples},
            {"structural_violations", check.structural_violations},
            {"note", check.note}};
}

ordered_json to_json(const StripSample& sample) {
    return {{"index", sample.index},
            {"x", sample.x},
            {"y", sample.y},
            {"r", sample.r},
            {"witness_measure", sample.witness_measure},
            {"witness_err", sample.witness_err},
            {"maximal_lower_bound", sample.maximal_lower_bound}};
}

ordered_json to_json(const WeakTypeReport& report) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "weaktype";
    j["config"] = {{"R", report.params.R},
                   {"samples", report.params.samples},
                   {"tol", report.params.tol},
                   {"seed", report.params.seed}};
    j["lambda"] = report.lambda;
    j["strip_lower_bound"] = report.strip_lower_bound;
    j["inv_two_R"] = report.inv_two_R;
    j["reference_measure"] = report.reference_measure;
    j["reference_err"] = report.reference_err;
    j["min_maximal_over_samples"] = number(report.min_maximal_over_samples);
    j["max_witness_measure"] = report.max_witness_measure;
    j["violations"] = ordered_json::array();
    for (const StripSample& v : report.violations) j["violations"].push_back(to_json(v));
    j["witness_dominance_violations"] = ordered_json::array();
    for (const StripSample& v : report.witness_dominance_violations)
        j["witness_dominance_violations"].push_back(to_json(v));
    j["structural_violations"] = report.structural_violations;
    j["weak_constant_lower_bound"] = report.weak_constant_lower_bound;
    j["checks"] = ordered_json::array();
    for (const InequalityCheck& c : report.checks) j["checks"].push_back(to_json(c));
    j["effort"] = report.effort;
    j["pass"] = report.pass;
    return j;
}

ordered_json to_json(const VariantProbeReport& report) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "weaktype-finite-variant";
    j["config"] = {{"R", report.R},
                   {"samples", report.samples},
                   {"tol", report.tol},
                   {"seed", report.seed}};
    j["strip_measure"] = report.strip_measure;
    j["min_maximal_over_samples"] = number(report.min_maximal_over_samples);
    j["max_witness_measure"] = report.max_witness_measure;
    j["structural_violations"] = report.structural_violations;
    j["weak_constant_lower_bound"] = report.weak_constant_lower_bound;
    j["effort"] = report.effort;
    return j;
}

ordered_json to_json(const LevelSetEstimate& estimate) {
    return {{"R", estimate.R},
            {"lambda", estimate.lambda},
            {"cells_x", estimate.cells_x},
            {"cells_y", estimate.cells_y},
            {"cells_above", estimate.cells_above},
            {"cells_total", estimate.cells_total},
            {"mass_above", estimate.mass_above},
            {"strip_mass_analytic", estimate.strip_mass_analytic},
            {"effort", estimate.effort}};
}

ordered_json to_json(const GrowthReport& report) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "growth-scan";
    j["config"] = {{"x", axis_json(report.params.x)},
                   {"b", axis_json(report.params.b)},
                   {"s", axis_json(report.params.s)},
                   {"tol", report.params.tol},
                   {"refine_check", report.params.refine_check}};
    j["sup_ratio"] = report.sup_ratio;
    j["argmax"] = {{"x", report.argmax.x},
                   {"b", report.argmax.b},
                   {"s", report.argmax.s},
                   {"value", report.argmax.value},
                   {"err", report.argmax.err},
                   {"ratio", report.argmax.ratio}};
    j["refined_sups"] = report.refined_sups;
    j["stability_delta"] = report.stability_delta;
    j["cells"] = static_cast<long long>(report.cells.size());
    j["failures"] = report.failures;
    j["effort"] = report.effort;
    return j;
}

ordered_json to_json(const SuiteReport& report) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "suite";
    j["config"] = {{"R_values", report.params.R_values},
                   {"samples", report.params.samples},
                   {"tol", report.params.tol},
                   {"seed", report.params.seed}};
    j["checks"] = ordered_json::array();
    for (const InequalityCheck& c : report.checks) j["checks"].push_back(to_json(c));
    j["empirical_R0"] = report.empirical_R0;
    j["effort"] = report.effort;
    j["all_pass"] = report.all_pass;
    return j;
}

std::string canonical_json(const ordered_json& j) {
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << bytes;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string growth_csv(const GrowthReport& report) {
    std::string out = "x,b,s,value,err,ratio\n";
    for (const GrowthCell& cell : report.cells) {
        out += format_g17(cell.x);
        out += ',';
        out += format_g17(cell.b);
        out += ',';
        out += format_g17(cell.s);
        out += ',';
        out += format_g17(cell.value);
        out += ',';
        out += format_g17(cell.err);
        out += ',';
        out += format_g17(cell.ratio);
        out += '\n';
    }
    return out;
}

std::vector<GrowthCell> parse_growth_csv(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string line;
    if (!std::getline(in, line) || line != "x,b,s,value,err,ratio")
        throw std::runtime_error("growth CSV: bad header");
    std::vector<GrowthCell> cells;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        GrowthCell cell;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &cell.x, &cell.b, &cell.s,
                        &cell.value, &cell.err, &cell.ratio) != 6)
            throw std::runtime_error("growth CSV: bad row: " + line);
        cells.push_back(cell);
    }
    return cells;
}

} // namespace hpmax
