#pragma once

#include <string>
#include <vector>

#include "hpmax/geometry.hpp"
#include "hpmax/integrate.hpp"

#include <json.hpp>

namespace hpmax {

// ---------------------------------------------------------------------------
// Regions: y-section graphs {(x, y) : x in domain, 0 < y < g(x)}
// ---------------------------------------------------------------------------

enum class RegionKind {
    upper_half_plane, // g = +inf
    hyperbola_tail,   // x > 1, g(x) = 1/x
    exp_tail,         // x > 0, g(x) = e^{-x}
};

struct Region {
    RegionKind kind = RegionKind::upper_half_plane;

    /// Left edge of the x-domain (-inf for the full half-plane).
    double x_min() const;

    /// Section top g(x); 0 outside the x-domain (empty section).
    double section_top(double x) const;

    bool contains(double x, double y) const;
};

// ---------------------------------------------------------------------------
// Densities
// ---------------------------------------------------------------------------

enum class DensityKind {
    gaussian2d,    // (1/2pi) e^{-(x^2+y^2)/2}
    lebesgue_unit, // 1
};

struct Density {
    DensityKind kind = DensityKind::lebesgue_unit;

    double value_at(double x, double y) const;

    /// Integral over the vertical segment {x} x [y0, y1] (closed form:
    /// interval length, or the Gaussian column via erf/erfc). y1 may be +inf
    /// for the Gaussian.
    double section_integral(double x, double y0, double y1) const;

    /// Half-width X such that the density vanishes (at double precision)
    /// outside |x| <= X or y > X; +inf when unbounded.
    double support_half_width() const;
};

// ---------------------------------------------------------------------------
// Measures as sums of (region, density) components
// ---------------------------------------------------------------------------

struct MeasureComponent {
    Region region;
    Density density;
};

struct MeasureSpec {
    std::vector<MeasureComponent> components;

    explicit MeasureSpec(std::vector<MeasureComponent> components_);

    /// mu = m1 + m2: the half-plane Gaussian plus Lebesgue measure on
    /// {x > 1, 0 < y < 1/x}.
    static MeasureSpec paper();
    /// m1 alone (Gaussian restricted to y > 0).
    static MeasureSpec gaussian_part();
    /// m2 alone (Lebesgue on the hyperbola tail).
    static MeasureSpec tail_part();
    /// Finite-mass variant: m2 replaced by Lebesgue on {x > 0, 0 < y < e^{-x}}.
    static MeasureSpec finite_variant();
};

/// Pointwise density of the absolutely continuous spec at q.
double density_at(const MeasureSpec& spec, const Point& q);

/// Measure of a ball, one quadrature per component; tol is the absolute
/// error target for the total. Hyperbolic balls are converted first (the
/// stable b - r gap is kept, so arbitrarily large s is fine).
MeasureEstimate ball_measure(const MeasureSpec& spec, const EuclideanBall& ball, double tol);
MeasureEstimate ball_measure(const MeasureSpec& spec, const HyperbolicBall& ball, double tol);

/// Ball measure with the absolute tolerance tied to the value itself: a
/// first pass fixes the scale, a second pass (when needed) brings the error
/// below rel_tol * value. Useful when ball measures span many decades.
MeasureEstimate ball_measure_rel(const MeasureSpec& spec, const EuclideanBall& ball,
                                 double rel_tol);
MeasureEstimate ball_measure_rel(const MeasureSpec& spec, const HyperbolicBall& ball,
                                 double rel_tol);

/// Measure of a rectangle [x0,x1] x [y0,y1] (y1 may be +inf where sections
/// stay integrable).
MeasureEstimate rect_measure(const MeasureSpec& spec, double x0, double x1, double y0,
                             double y1, double tol);

/// m2 of the strip {R < x < R+1, 0 < y < 1/x} = log(1 + 1/R). Requires R > 1
/// so the strip lies inside the hyperbola-tail region.
double strip_measure_m2(double R);

// ---------------------------------------------------------------------------
// JSON (config files; component list with kind tags)
// ---------------------------------------------------------------------------

nlohmann::ordered_json measure_spec_to_json(const MeasureSpec& spec);
MeasureSpec measure_spec_from_json(const nlohmann::json& j);

/// "paper" or "finite-variant"; anything else is rejected.
MeasureSpec measure_spec_by_name(const std::string& name);

} // namespace hpmax
