// hpmax: measures with linear growth on the hyperbolic upper half-plane and
// the centered maximal operator that defeats weak type (1,1).
//
// Subcommands: convert, measure, maximal, weaktype, growth-scan, suite.
// Every run writes a JSON report; grid runs also write a CSV table.
// Exit codes: 0 pass, 1 check failure, 2 usage or numeric error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hpmax/geometry.hpp"
#include "hpmax/maximal.hpp"
#include "hpmax/measure.hpp"
#include "hpmax/report.hpp"
#include "hpmax/verify.hpp"

namespace {

using hpmax::GridAxis;
using nlohmann::ordered_json;

std::vector<double> parse_doubles(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, sep)) {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad number: " + item);
    }
    return out;
}

hpmax::Point parse_point(const std::string& text) {
    auto v = parse_doubles(text, ',');
    if (v.size() != 2) throw std::invalid_argument("expected x,y: " + text);
    return hpmax::Point(v[0], v[1]);
}

hpmax::EuclideanBall parse_euclid_ball(const std::string& text) {
    auto v = parse_doubles(text, ',');
    if (v.size() != 3) throw std::invalid_argument("expected a,b,r: " + text);
    return hpmax::EuclideanBall(hpmax::Point(v[0], v[1]), v[2]);
}

hpmax::HyperbolicBall parse_hyp_ball(const std::string& text) {
    auto v = parse_doubles(text, ',');
    if (v.size() != 3) throw std::invalid_argument("expected x,y,s: " + text);
    return hpmax::HyperbolicBall(hpmax::Point(v[0], v[1]), v[2]);
}

GridAxis parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ':')) parts.push_back(item);
    if (parts.size() != 3 && parts.size() != 4)
        throw std::invalid_argument("expected lo:hi:count[:lin|log]: " + text);
    GridAxis axis;
    axis.lo = std::stod(parts[0]);
    axis.hi = std::stod(parts[1]);
    axis.count = std::stoi(parts[2]);
    axis.log_spaced = parts.size() == 4 ? parts[3] == "log" : false;
    if (parts.size() == 4 && parts[3] != "log" && parts[3] != "lin")
        throw std::invalid_argument("axis spacing must be lin or log: " + text);
    return axis;
}

hpmax::MeasureSpec resolve_spec(const std::string& name, const std::string& file) {
    if (!file.empty()) {
        return hpmax::measure_spec_from_json(nlohmann::json::parse(hpmax::read_text_file(file)));
    }
    return hpmax::measure_spec_by_name(name);
}

ordered_json ball_json(const hpmax::EuclideanBall& e) {
    return {{"a", e.center.x}, {"b", e.center.y}, {"r", e.radius}};
}

ordered_json ball_json(const hpmax::HyperbolicBall& h) {
    return {{"x", h.center.x}, {"y", h.center.y}, {"s", h.radius}};
}

void emit(const std::string& path, const ordered_json& j) {
    hpmax::write_text_file(path, hpmax::canonical_json(j));
}

int default_threads() {
    if (const char* env = std::getenv("HPMAX_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 0; // auto
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hpmax: measures and centered maximal averages on the hyperbolic half-plane"};
    app.require_subcommand(1);

    // convert -----------------------------------------------------------
    auto* convert = app.add_subcommand("convert", "euclidean <-> hyperbolic ball conversion");
    std::string cv_euclid, cv_hyp, cv_out = "convert_report.json";
    convert->add_option("--euclid", cv_euclid, "euclidean ball a,b,r");
    convert->add_option("--hyp", cv_hyp, "hyperbolic ball x,y,s");
    convert->add_option("--out", cv_out, "JSON report path");

    // measure -----------------------------------------------------------
    auto* measure = app.add_subcommand("measure", "measure of a ball by adaptive quadrature");
    std::string ms_name = "paper", ms_spec_file, ms_ball, ms_hyp_ball, ms_out = "measure_report.json";
    double ms_tol = 1e-9;
    long long ms_mc = 0;
    std::uint64_t ms_seed = 42;
    measure->add_option("--measure", ms_name, "built-in measure: paper | finite-variant");
    measure->add_option("--spec", ms_spec_file, "measure spec JSON file");
    measure->add_option("--ball", ms_ball, "euclidean ball a,b,r");
    measure->add_option("--hyp-ball", ms_hyp_ball, "hyperbolic ball x,y,s");
    measure->add_option("--tol", ms_tol, "absolute quadrature tolerance");
    measure->add_option("--mc", ms_mc, "Monte Carlo cross-check sample count (0 = off)");
    measure->add_option("--seed", ms_seed, "Monte Carlo seed");
    measure->add_option("--out", ms_out, "JSON report path");

    // maximal -----------------------------------------------------------
    auto* maximal = app.add_subcommand("maximal", "centered maximal function of Dirac atoms");
    std::string mx_name = "paper", mx_spec_file, mx_point, mx_grid = "1e-3:1e2:200",
                mx_out = "maximal_report.json";
    std::vector<std::string> mx_atoms;
    double mx_tol = 1e-6;
    int mx_refine = 3;
    maximal->add_option("--measure", mx_name, "built-in measure: paper | finite-variant");
    maximal->add_option("--spec", mx_spec_file, "measure spec JSON file");
    maximal->add_option("--point", mx_point, "evaluation point x,y")->required();
    maximal->add_option("--atom", mx_atoms, "atom x,y[,mass]; repeat for several atoms")
        ->required();
    maximal->add_option("--tol", mx_tol, "relative error target");
    maximal->add_option("--grid", mx_grid, "radius grid lo:hi:count (several atoms)");
    maximal->add_option("--refine", mx_refine, "local refinement passes (several atoms)");
    maximal->add_option("--out", mx_out, "JSON report path");

    // weaktype ----------------------------------------------------------
    auto* weaktype = app.add_subcommand("weaktype", "weak-type (1,1) failure probe");
    std::string wt_name = "paper", wt_out = "weaktype_report.json", wt_level_grid;
    double wt_R = 10.0, wt_tol = 1e-10;
    int wt_samples = 200;
    std::uint64_t wt_seed = 1;
    weaktype->add_option("--R", wt_R, "atom parameter R (> 2)")->required();
    weaktype->add_option("--samples", wt_samples, "strip sample count");
    weaktype->add_option("--tol", wt_tol, "witness quadrature tolerance");
    weaktype->add_option("--seed", wt_seed, "sampling seed");
    weaktype->add_option("--measure", wt_name, "paper | finite-variant");
    weaktype->add_option("--level-set-grid", wt_level_grid,
                         "optional NX,NY grid for the direct level-set cross-check");
    weaktype->add_option("--out", wt_out, "JSON report path");

    // growth-scan -------------------------------------------------------
    auto* growth = app.add_subcommand("growth-scan", "sup of mu(B_h(w,s))/s over a grid");
    std::string gs_name = "paper", gs_spec_file, gs_x = "-20:20:40:lin", gs_b = "1e-3:20:40:log",
                gs_s = "1e-3:10:40:log", gs_out = "growth_scan_report.json",
                gs_csv = "growth_scan_table.csv";
    double gs_tol = 1e-8;
    bool gs_no_refine = false;
    int gs_threads = default_threads();
    growth->add_option("--measure", gs_name, "built-in measure: paper | finite-variant");
    growth->add_option("--spec", gs_spec_file, "measure spec JSON file");
    growth->add_option("--x", gs_x, "center x axis lo:hi:count[:lin|log]");
    growth->add_option("--b", gs_b, "center height axis lo:hi:count[:lin|log]");
    growth->add_option("--s", gs_s, "radius axis lo:hi:count[:lin|log]");
    growth->add_option("--tol", gs_tol, "per-ball quadrature tolerance");
    growth->add_flag("--no-refine-check", gs_no_refine, "skip the 2x grid stability rerun");
    growth->add_option("--threads", gs_threads, "worker threads (default HPMAX_THREADS or auto)");
    growth->add_option("--out", gs_out, "JSON report path");
    growth->add_option("--csv", gs_csv, "CSV table path");

    // suite ---------------------------------------------------------------
    auto* suite = app.add_subcommand("suite", "verify every displayed inequality (I1..I10)");
    std::string st_R = "10,100", st_out = "suite_report.json";
    int st_samples = 1000;
    double st_tol = 1e-10;
    std::uint64_t st_seed = 1;
    suite->add_option("--R", st_R, "comma-separated R values (> 2)");
    suite->add_option("--samples", st_samples, "samples per sampled check");
    suite->add_option("--tol", st_tol, "quadrature tolerance for R-level checks");
    suite->add_option("--seed", st_seed, "sampling seed");
    suite->add_option("--out", st_out, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (convert->parsed()) {
            if (cv_euclid.empty() == cv_hyp.empty())
                throw std::invalid_argument("convert: give exactly one of --euclid / --hyp");
            ordered_json j;
            j["schema_version"] = hpmax::kReportSchemaVersion;
            j["kind"] = "convert";
            if (!cv_euclid.empty()) {
                const auto ball = parse_euclid_ball(cv_euclid);
                const auto hyp = hpmax::euclid_to_hyp(ball);
                j["config"] = {{"euclid", cv_euclid}};
                j["euclidean"] = ball_json(ball);
                j["hyperbolic"] = ball_json(hyp);
                std::printf("euclidean (%.17g, %.17g) r=%.17g  ->  hyperbolic (%.17g, %.17g) s=%.17g\n",
                            ball.center.x, ball.center.y, ball.radius, hyp.center.x, hyp.center.y,
                            hyp.radius);
            } else {
                const auto ball = parse_hyp_ball(cv_hyp);
                const auto euc = hpmax::hyp_to_euclid(ball);
                j["config"] = {{"hyp", cv_hyp}};
                j["euclidean"] = ball_json(euc);
                j["hyperbolic"] = ball_json(ball);
                std::printf("hyperbolic (%.17g, %.17g) s=%.17g  ->  euclidean (%.17g, %.17g) r=%.17g\n",
                            ball.center.x, ball.center.y, ball.radius, euc.center.x, euc.center.y,
                            euc.radius);
            }
            emit(cv_out, j);
            return 0;
        }

        if (measure->parsed()) {
            if (ms_ball.empty() == ms_hyp_ball.empty())
                throw std::invalid_argument("measure: give exactly one of --ball / --hyp-ball");
            const auto spec = resolve_spec(ms_name, ms_spec_file);
            ordered_json j;
            j["schema_version"] = hpmax::kReportSchemaVersion;
            j["kind"] = "measure";
            j["config"] = {{"measure", ms_spec_file.empty() ? ms_name : ms_spec_file},
                           {"ball", ms_ball.empty() ? ms_hyp_ball : ms_ball},
                           {"ball_kind", ms_ball.empty() ? "hyperbolic" : "euclidean"},
                           {"tol", ms_tol},
                           {"mc", ms_mc},
                           {"seed", ms_seed}};
            j["spec"] = hpmax::measure_spec_to_json(spec);

            // hyperbolic input goes through the hyperbolic overload, which
            // keeps the lower gap b - r exact for large radii
            std::optional<hpmax::HyperbolicBall> hyp;
            std::optional<hpmax::EuclideanBall> euc;
            if (ms_ball.empty())
                hyp = parse_hyp_ball(ms_hyp_ball);
            else
                euc = parse_euclid_ball(ms_ball);
            auto measure_with = [&](const hpmax::MeasureSpec& s) {
                return hyp ? hpmax::ball_measure(s, *hyp, ms_tol)
                           : hpmax::ball_measure(s, *euc, ms_tol);
            };
            const auto est = measure_with(spec);
            j["estimate"] = to_json(est);
            j["components"] = ordered_json::array();
            for (const auto& comp : spec.components)
                j["components"].push_back(to_json(measure_with(hpmax::MeasureSpec({comp}))));
            bool mc_consistent = true;
            if (ms_mc > 0) {
                const auto ball = euc ? *euc : hpmax::hyp_to_euclid(*hyp);
                const auto mc = hpmax::mc_ball_measure(spec, ball, ms_mc, ms_seed);
                j["mc"] = to_json(mc);
                mc_consistent = std::abs(mc.value - est.value) <= 3.0 * (mc.err + est.err);
                j["mc_within_3_sigma"] = mc_consistent;
            }
            emit(ms_out, j);
            std::printf("measure = %.17g (err %.3g, %s)\n", est.value, est.err,
                        est.converged ? "converged" : "budget exhausted");
            if (!est.converged) return 2;
            return mc_consistent ? 0 : 1;
        }

        if (maximal->parsed()) {
            const auto spec = resolve_spec(mx_name, mx_spec_file);
            const auto w = parse_point(mx_point);
            std::vector<hpmax::DiracAtom> atoms;
            for (const std::string& text : mx_atoms) {
                auto v = parse_doubles(text, ',');
                if (v.size() != 2 && v.size() != 3)
                    throw std::invalid_argument("atom: expected x,y[,mass]: " + text);
                atoms.emplace_back(hpmax::Point(v[0], v[1]), v.size() == 3 ? v[2] : 1.0);
            }
            ordered_json j;
            j["schema_version"] = hpmax::kReportSchemaVersion;
            j["kind"] = "maximal";
            j["config"] = {{"measure", mx_spec_file.empty() ? mx_name : mx_spec_file},
                           {"point", mx_point},
                           {"atoms", mx_atoms},
                           {"tol", mx_tol},
                           {"grid", mx_grid},
                           {"refine", mx_refine}};
            hpmax::MaximalValue value;
            if (atoms.size() == 1) {
                value = hpmax::maximal_dirac(spec, w, atoms.front(), mx_tol);
            } else {
                auto axis = parse_axis(mx_grid);
                hpmax::RadiusGrid grid{axis.lo, axis.hi, axis.count};
                value = hpmax::maximal_atoms(spec, w, atoms, grid, mx_refine, mx_tol);
            }
            j["result"] = to_json(value);
            emit(mx_out, j);
            if (value.infinite)
                std::printf("maximal = +inf (evaluation point carries an atom)\n");
            else
                std::printf("maximal %s %.17g at s = %.17g (rel err %.3g)\n",
                            atoms.size() == 1 ? "=" : ">=", value.value, value.achieving_radius,
                            value.err);
            return value.converged || value.infinite ? 0 : 2;
        }

        if (weaktype->parsed()) {
            const auto spec = hpmax::measure_spec_by_name(wt_name);
            if (wt_name == "paper") {
                hpmax::WeakTypeParams params{wt_R, wt_samples, wt_tol, wt_seed};
                const auto rep = hpmax::weak_type_probe(spec, params);
                auto j = to_json(rep);
                j["config"]["measure"] = wt_name;
                if (!wt_level_grid.empty()) {
                    const auto grid = parse_doubles(wt_level_grid, ',');
                    if (grid.size() != 2)
                        throw std::invalid_argument("level-set-grid: expected NX,NY");
                    const auto level = hpmax::level_set_estimate(
                        spec, wt_R, static_cast<int>(grid[0]), static_cast<int>(grid[1]), wt_tol);
                    j["level_set_cross_check"] = to_json(level);
                }
                emit(wt_out, j);
                std::printf(
                    "weaktype R=%g: lambda=%.6g, min M >= %.6g, strip=%.6g > %.6g, "
                    "violations=%zu, weak constant > %.6g  [%s]\n",
                    wt_R, rep.lambda, rep.min_maximal_over_samples, rep.strip_lower_bound,
                    rep.inv_two_R, rep.violations.size(), rep.weak_constant_lower_bound,
                    rep.pass ? "PASS" : "FAIL");
                return rep.pass ? 0 : 1;
            }
            const auto rep = hpmax::variant_probe(spec, wt_R, wt_samples, wt_tol, wt_seed);
            auto j = to_json(rep);
            j["config"]["measure"] = wt_name;
            emit(wt_out, j);
            std::printf(
                "weaktype (finite variant) R=%g: strip=%.6g, min M >= %.6g, weak constant > %.6g\n",
                wt_R, rep.strip_measure, rep.min_maximal_over_samples,
                rep.weak_constant_lower_bound);
            return rep.structural_violations == 0 ? 0 : 1;
        }

        if (growth->parsed()) {
            const auto spec = resolve_spec(gs_name, gs_spec_file);
            hpmax::GrowthScanParams params;
            params.x = parse_axis(gs_x);
            params.b = parse_axis(gs_b);
            params.s = parse_axis(gs_s);
            params.tol = gs_tol;
            params.refine_check = !gs_no_refine;
            params.threads = gs_threads;
            const auto rep = hpmax::growth_scan(spec, params);
            auto j = to_json(rep);
            j["config"]["measure"] = gs_spec_file.empty() ? gs_name : gs_spec_file;
            emit(gs_out, j);
            hpmax::write_text_file(gs_csv, hpmax::growth_csv(rep));
            std::printf(
                "growth scan: sup mu(B_h(w,s))/s = %.8g at (x=%.6g, b=%.6g, s=%.6g); "
                "stability delta %.3g; failures %d\n",
                rep.sup_ratio, rep.argmax.x, rep.argmax.b, rep.argmax.s, rep.stability_delta,
                rep.failures);
            return 0;
        }

        if (suite->parsed()) {
            const auto spec = hpmax::MeasureSpec::paper();
            hpmax::SuiteParams params;
            params.R_values = parse_doubles(st_R, ',');
            params.samples = st_samples;
            params.tol = st_tol;
            params.seed = st_seed;
            const auto rep = hpmax::proof_step_suite(spec, params);
            auto j = to_json(rep);
            j["config"]["measure"] = "paper";
            emit(st_out, j);
            int passed = 0;
            for (const auto& c : rep.checks) passed += c.pass ? 1 : 0;
            std::printf("suite: %d/%zu checks passed, empirical R0 = %.6g  [%s]\n", passed,
                        rep.checks.size(), rep.empirical_R0, rep.all_pass ? "PASS" : "FAIL");
            return rep.all_pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
