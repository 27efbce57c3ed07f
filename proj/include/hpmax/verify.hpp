#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hpmax/maximal.hpp"
#include "hpmax/measure.hpp"

namespace hpmax {

// ---------------------------------------------------------------------------
// Named inequality checks
// ---------------------------------------------------------------------------

/// One verified display: both sides evaluated (analytically where the source
/// is analytic, by quadrature otherwise), an oriented margin, and the
/// combined numerical error the margin has to beat.
struct InequalityCheck {
    std::string id;
    std::string description;
    double R = std::numeric_limits<double>::quiet_NaN(); // NaN when not tied to an R
    double lhs = 0.0;    // at the worst sample
    double rhs = 0.0;
    double margin = 0.0; // oriented slack (positive = inequality holds)
    double num_err = 0.0;
    bool pass = false;
    int samples = 0;
    int structural_violations = 0;
    std::string note;
};

// ---------------------------------------------------------------------------
// Weak-type failure probe
// ---------------------------------------------------------------------------

struct WeakTypeParams {
    double R = 10.0;   // must be > 2 (the estimates need R - 1 > 1)
    int samples = 200; // must be >= 10
    double tol = 1e-10;
    std::uint64_t seed = 1;
};

struct StripSample {
    int index = 0;
    double x = 0.0;
    double y = 0.0;
    double r = 0.0;
    double witness_measure = 0.0;
    double witness_err = 0.0;
    double maximal_lower_bound = 0.0;
};

/// Result of the superlevel-set experiment at one R: every sampled strip
/// point must satisfy M_mu delta > lambda = (R-1)^{3/2}/3 via the witness
/// ball B_e((x,1), sqrt(1-y^2)), and the strip carries m2-measure
/// log(1+1/R) > 1/(2R). Together: the weak-type constant exceeds
/// lambda/(2R), which grows without bound in R.
struct WeakTypeReport {
    WeakTypeParams params;
    double lambda = 0.0;
    double strip_lower_bound = 0.0; // log(1 + 1/R)
    double inv_two_R = 0.0;
    double reference_measure = 0.0; // mu(B_e((R,1),1))
    double reference_err = 0.0;
    double min_maximal_over_samples = 0.0;
    double max_witness_measure = 0.0;
    std::vector<StripSample> violations; // samples with M lower bound <= lambda
    /// Samples where mu(witness) > mu(B_e((R,1),1)) beyond combined error.
    /// The paper's chain uses this comparison; it is checked, not assumed.
    std::vector<StripSample> witness_dominance_violations;
    int structural_violations = 0; // r outside [1/2,1) or atom outside the witness ball
    double weak_constant_lower_bound = 0.0; // lambda/(2R)
    std::vector<InequalityCheck> checks;    // strip bound + atom membership at this R
    bool pass = false;
    long long effort = 0;
};

WeakTypeReport weak_type_probe(const MeasureSpec& spec, const WeakTypeParams& params);

/// The Remark's finite-measure analogue: strip {R < x < R+1, 0 < y < e^{-x}}
/// with analytic m2-measure e^{-R}(1 - e^{-1}). The paper displays no level
/// constants here, so the certified level is the sampled minimum of the
/// witness lower bounds, and the weak-constant lower bound is that level
/// times the strip measure.
struct VariantProbeReport {
    double R = 0.0;
    int samples = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    double strip_measure = 0.0;
    double min_maximal_over_samples = 0.0;
    double max_witness_measure = 0.0;
    int structural_violations = 0;
    double weak_constant_lower_bound = 0.0;
    long long effort = 0;
};

VariantProbeReport variant_probe(const MeasureSpec& spec, double R, int samples, double tol,
                                 std::uint64_t seed);

/// Optional cross-check for the probe: a direct grid estimate of the mass of
/// {M_mu delta > lambda} inside the strip window. Cells qualify when the
/// witness lower bound clears lambda at their corners and center; their
/// measures are summed. Grid-resolution accuracy, not a certificate; the
/// probe's strip-inclusion argument remains the certified route.
struct LevelSetEstimate {
    double R = 0.0;
    double lambda = 0.0;
    int cells_x = 0, cells_y = 0;
    int cells_above = 0, cells_total = 0;
    double mass_above = 0.0; // summed measure of qualifying cells
    double strip_mass_analytic = 0.0;
    long long effort = 0;
};

LevelSetEstimate level_set_estimate(const MeasureSpec& spec, double R, int cells_x, int cells_y,
                                    double tol);

// ---------------------------------------------------------------------------
// Growth scan
// ---------------------------------------------------------------------------

struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    bool log_spaced = false;
};

std::vector<double> grid_points(const GridAxis& axis);

struct GrowthScanParams {
    GridAxis x{-20.0, 20.0, 40, false};
    GridAxis b{1e-3, 20.0, 40, true};
    GridAxis s{1e-3, 10.0, 40, true};
    double tol = 1e-8;
    bool refine_check = true; // rerun with each axis doubled and report the sup drift
    int threads = 0;          // 0 = hardware count (capped)
};

struct GrowthCell {
    double x = 0.0, b = 0.0, s = 0.0;
    double value = 0.0, err = 0.0, ratio = 0.0;
};

struct GrowthReport {
    GrowthScanParams params;
    double sup_ratio = 0.0; // empirical growth constant over the grid
    GrowthCell argmax;
    std::vector<double> refined_sups; // sup with x-, b-, s-axis doubled
    double stability_delta = 0.0;     // max relative sup change under refinement
    std::vector<GrowthCell> cells;    // base grid, row-major (x outer, s inner)
    int failures = 0;                 // cells whose quadrature hit its budget
    long long effort = 0;
};

/// Evaluates mu(B_h((x,b), s))/s over the grid. For the measures built here
/// this ratio is bounded; the scan reports the empirical constant and how
/// stable it is under grid refinement.
GrowthReport growth_scan(const MeasureSpec& spec, const GrowthScanParams& params);

// ---------------------------------------------------------------------------
// Proof-step suite: every displayed inequality, I1..I10
// ---------------------------------------------------------------------------

struct SuiteParams {
    std::vector<double> R_values{10.0, 100.0};
    int samples = 1000; // per growth case / per sampled check
    double tol = 1e-10;
    std::uint64_t seed = 1;
};

struct SuiteReport {
    SuiteParams params;
    std::vector<InequalityCheck> checks;
    double empirical_R0 = 0.0; // smallest scanned R with mu(B_e((R,1),1)) < 3/(R-1)^{3/2}
    bool all_pass = false;
    long long effort = 0;
};

SuiteReport proof_step_suite(const MeasureSpec& spec, const SuiteParams& params);

} // namespace hpmax
