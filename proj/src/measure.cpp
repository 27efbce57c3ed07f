#include "hpmax/measure.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hpmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInv2Pi = 0.15915494309189535;        // 1/(2 pi)
constexpr double kInvSqrt2 = 0.7071067811865476;       // 1/sqrt(2)
constexpr double kHalfInvSqrt2Pi = 0.19947114020071635; // 1/(2 sqrt(2 pi))

// e^{-x^2/2} underflows to exactly 0 beyond |x| = 39, so clipping there is free.
constexpr double kGaussSupport = 39.0;

} // namespace

double Region::x_min() const {
    switch (kind) {
        case RegionKind::upper_half_plane: return -kInf;
        case RegionKind::hyperbola_tail: return 1.0;
        case RegionKind::exp_tail: return 0.0;
    }
    return -kInf;
}

double Region::section_top(double x) const {
    switch (kind) {
        case RegionKind::upper_half_plane: return kInf;
        case RegionKind::hyperbola_tail: return x > 1.0 ? 1.0 / x : 0.0;
        case RegionKind::exp_tail: return x > 0.0 ? std::exp(-x) : 0.0;
    }
    return 0.0;
}

bool Region::contains(double x, double y) const {
    return y > 0.0 && y < section_top(x);
}

double Density::value_at(double x, double y) const {
    switch (kind) {
        case DensityKind::gaussian2d: return kInv2Pi * std::exp(-0.5 * (x * x + y * y));
        case DensityKind::lebesgue_unit: return 1.0;
    }
    return 0.0;
}

double Density::section_integral(double x, double y0, double y1) const {
    if (!(y1 > y0)) return 0.0;
    switch (kind) {
        case DensityKind::lebesgue_unit:
            return y1 - y0;
        case DensityKind::gaussian2d: {
            const double ex = std::exp(-0.5 * x * x);
            if (ex == 0.0) return 0.0;
            const double s0 = y0 * kInvSqrt2;
            const double s1 = y1 * kInvSqrt2;
            double delta;
            if (s0 > 1.0) // erfc keeps relative accuracy on the tail
                delta = std::erfc(s0) - std::erfc(s1);
            else
                delta = std::erf(s1) - std::erf(s0);
            return kHalfInvSqrt2Pi * ex * std::max(delta, 0.0);
        }
    }
    return 0.0;
}

double Density::support_half_width() const {
    return kind == DensityKind::gaussian2d ? kGaussSupport : kInf;
}

MeasureSpec::MeasureSpec(std::vector<MeasureComponent> components_)
    : components(std::move(components_)) {
    if (components.empty())
        throw std::invalid_argument("MeasureSpec: component list must be nonempty");
}

MeasureSpec MeasureSpec::paper() {
    return MeasureSpec({
        {Region{RegionKind::upper_half_plane}, Density{DensityKind::gaussian2d}},
        {Region{RegionKind::hyperbola_tail}, Density{DensityKind::lebesgue_unit}},
    });
}

MeasureSpec MeasureSpec::gaussian_part() {
    return MeasureSpec({{Region{RegionKind::upper_half_plane}, Density{DensityKind::gaussian2d}}});
}

MeasureSpec MeasureSpec::tail_part() {
    return MeasureSpec({{Region{RegionKind::hyperbola_tail}, Density{DensityKind::lebesgue_unit}}});
}

MeasureSpec MeasureSpec::finite_variant() {
    return MeasureSpec({
        {Region{RegionKind::upper_half_plane}, Density{DensityKind::gaussian2d}},
        {Region{RegionKind::exp_tail}, Density{DensityKind::lebesgue_unit}},
    });
}

double density_at(const MeasureSpec& spec, const Point& q) {
    double total = 0.0;
    for (const MeasureComponent& comp : spec.components)
        if (comp.region.contains(q.x, q.y)) total += comp.density.value_at(q.x, q.y);
    return total;
}

namespace {

MeasureEstimate sum_components(const MeasureSpec& spec, const Disk& disk, double tol) {
    const double per_component = tol / static_cast<double>(spec.components.size());
    MeasureEstimate total;
    total.method = EstimateMethod::quadrature;
    for (const MeasureComponent& comp : spec.components) {
        MeasureEstimate part = integrate_disk_region(comp.density, comp.region, disk, per_component);
        total.value += part.value;
        total.err += part.err;
        total.effort += part.effort;
        total.converged = total.converged && part.converged;
    }
    return total;
}

} // namespace

MeasureEstimate ball_measure(const MeasureSpec& spec, const EuclideanBall& ball, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("ball_measure: tol must be > 0");
    return sum_components(spec, to_disk(ball), tol);
}

MeasureEstimate ball_measure(const MeasureSpec& spec, const HyperbolicBall& ball, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("ball_measure: tol must be > 0");
    return sum_components(spec, to_disk(ball), tol);
}

namespace {

MeasureEstimate measure_rel(const MeasureSpec& spec, const Disk& disk, double rel_tol) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("ball_measure_rel: rel_tol must be > 0");
    MeasureEstimate est = sum_components(spec, disk, 1e-12);
    const double target = rel_tol * est.value;
    if (est.value > 0.0 && est.err > target) {
        MeasureEstimate fine = sum_components(spec, disk, std::max(target, 1e-300));
        fine.effort += est.effort;
        return fine;
    }
    return est;
}

} // namespace

MeasureEstimate ball_measure_rel(const MeasureSpec& spec, const EuclideanBall& ball,
                                 double rel_tol) {
    return measure_rel(spec, to_disk(ball), rel_tol);
}

MeasureEstimate ball_measure_rel(const MeasureSpec& spec, const HyperbolicBall& ball,
                                 double rel_tol) {
    return measure_rel(spec, to_disk(ball), rel_tol);
}

MeasureEstimate rect_measure(const MeasureSpec& spec, double x0, double x1, double y0, double y1,
                             double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("rect_measure: tol must be > 0");
    const double per_component = tol / static_cast<double>(spec.components.size());
    MeasureEstimate total;
    total.method = EstimateMethod::quadrature;
    for (const MeasureComponent& comp : spec.components) {
        MeasureEstimate part =
            integrate_rect_region(comp.density, comp.region, x0, x1, y0, y1, per_component);
        total.value += part.value;
        total.err += part.err;
        total.effort += part.effort;
        total.converged = total.converged && part.converged;
    }
    return total;
}

double strip_measure_m2(double R) {
    if (!(R > 1.0))
        throw std::invalid_argument("strip_measure_m2: R must be > 1 (strip inside the tail)");
    return std::log1p(1.0 / R);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

const char* region_name(RegionKind kind) {
    switch (kind) {
        case RegionKind::upper_half_plane: return "upper-half-plane";
        case RegionKind::hyperbola_tail: return "hyperbola-tail";
        case RegionKind::exp_tail: return "exp-tail";
    }
    return "?";
}

const char* density_name(DensityKind kind) {
    switch (kind) {
        case DensityKind::gaussian2d: return "gaussian2d";
        case DensityKind::lebesgue_unit: return "lebesgue";
    }
    return "?";
}

RegionKind region_from_name(const std::string& name) {
    if (name == "upper-half-plane") return RegionKind::upper_half_plane;
    if (name == "hyperbola-tail") return RegionKind::hyperbola_tail;
    if (name == "exp-tail") return RegionKind::exp_tail;
    throw std::invalid_argument("unknown region kind: " + name);
}

DensityKind density_from_name(const std::string& name) {
    if (name == "gaussian2d") return DensityKind::gaussian2d;
    if (name == "lebesgue") return DensityKind::lebesgue_unit;
    throw std::invalid_argument("unknown density kind: " + name);
}

} // namespace

nlohmann::ordered_json measure_spec_to_json(const MeasureSpec& spec) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["components"] = nlohmann::ordered_json::array();
    for (const MeasureComponent& comp : spec.components)
        j["components"].push_back({{"region", region_name(comp.region.kind)},
                                   {"density", density_name(comp.density.kind)}});
    return j;
}

MeasureSpec measure_spec_from_json(const nlohmann::json& j) {
    if (!j.contains("components") || !j["components"].is_array())
        throw std::invalid_argument("measure spec JSON: missing \"components\" array");
    std::vector<MeasureComponent> comps;
    for (const auto& item : j["components"]) {
        MeasureComponent comp;
        comp.region.kind = region_from_name(item.at("region").get<std::string>());
        comp.density.kind = density_from_name(item.at("density").get<std::string>());
        comps.push_back(comp);
    }
    return MeasureSpec(std::move(comps));
}

MeasureSpec measure_spec_by_name(const std::string& name) {
    if (name == "paper") return MeasureSpec::paper();
    if (name == "finite-variant") return MeasureSpec::finite_variant();
    throw std::invalid_argument("unknown measure name: " + name +
                                " (expected \"paper\" or \"finite-variant\")");
}

} // namespace hpmax
