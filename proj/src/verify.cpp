#include "hpmax/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace hpmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfLog2 = 0.34657359027997264; // log(2)/2

double open01(RandomStream& rng) {
    double u = rng.next();
    while (u == 0.0) u = rng.next();
    return u;
}

std::string format_note(const char* fmt, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

/// Strip points (x, y) with R < x < R+1, 0 < y < top(x). Draws are rejected
/// while 1 - y^2 rounds to 1: the witness radius sqrt(1 - y^2) would equal 1
/// and the ball would not be representable strictly inside the half-plane.
class StripSampler {
public:
    StripSampler(double R, RandomStream& rng) : R_(R), rng_(rng) {}

    template <typename TopFn>
    void draw(const TopFn& top, double& x, double& y) {
        for (int tries = 0; tries < 100000; ++tries) {
            x = R_ + rng_.next();
            y = open01(rng_) * top(x);
            if (y * y >= 2.1e-12) return;
        }
        throw std::domain_error(
            "strip sampling: witness radii at this R are not representable in double "
            "precision (1 - y^2 rounds to 1)");
    }

private:
    double R_;
    RandomStream& rng_;
};

InequalityCheck strip_bound_check(double R, double tol) {
    InequalityCheck c;
    c.id = "I1";
    c.R = R;
    c.description = "m2(strip_R) = log(1+1/R) > 1/(2R)";
    const double analytic = strip_measure_m2(R);
    MeasureEstimate quad = rect_measure(MeasureSpec::tail_part(), R, R + 1.0, 0.0, 1.0, tol);
    c.lhs = 0.5 / R;
    c.rhs = analytic;
    c.margin = c.rhs - c.lhs;
    c.num_err = std::abs(quad.value - analytic) + quad.err;
    c.pass = c.margin > c.num_err;
    c.note = format_note("quadrature %.17g vs analytic %.17g", quad.value, analytic);
    return c;
}

} // namespace

// ---------------------------------------------------------------------------
// Weak-type probe
// ---------------------------------------------------------------------------

WeakTypeReport weak_type_probe(const MeasureSpec& spec, const WeakTypeParams& params) {
    if (!(params.R > 2.0))
        throw std::invalid_argument("weak_type_probe: R must be > 2 (the estimates need R-1 > 1)");
    if (params.samples < 10)
        throw std::invalid_argument("weak_type_probe: samples must be >= 10");
    if (!(params.tol > 0.0)) throw std::invalid_argument("weak_type_probe: tol must be > 0");

    WeakTypeReport rep;
    rep.params = params;
    const double R = params.R;
    rep.lambda = std::pow(R - 1.0, 1.5) / 3.0;
    rep.strip_lower_bound = strip_measure_m2(R);
    rep.inv_two_R = 0.5 / R;
    rep.weak_constant_lower_bound = rep.lambda * rep.inv_two_R;

    MeasureEstimate ref = ball_measure(spec, EuclideanBall(Point(R, 1.0), 1.0), params.tol);
    rep.reference_measure = ref.value;
    rep.reference_err = ref.err;
    rep.effort += ref.effort;

    const Point atom_location(R + 0.5, 1.0);
    RandomStream rng(params.seed);
    StripSampler sampler(R, rng);
    rep.min_maximal_over_samples = kInf;
    double min_slack = kInf;
    double worst_x = 0.0;

    for (int i = 0; i < params.samples; ++i) {
        double x, y;
        sampler.draw([](double xx) { return 1.0 / xx; }, x, y);
        const double r = std::sqrt((1.0 - y) * (1.0 + y));

        // The witness ball B_e((x,1), r) has hyperbolic center exactly (x, y).
        const double slack = r - std::abs(x - atom_location.x);
        if (!(r >= 0.5) || !(r < 1.0) || !(slack > 0.0)) {
            ++rep.structural_violations;
            continue;
        }
        if (slack < min_slack) {
            min_slack = slack;
            worst_x = x;
        }

        const EuclideanBall witness(Point(x, 1.0), r);
        MeasureEstimate mu = ball_measure(spec, witness, params.tol);
        rep.effort += mu.effort;
        StripSample sample{i, x, y, r, mu.value, mu.err, 1.0 / mu.value};

        if (!(sample.maximal_lower_bound > rep.lambda)) rep.violations.push_back(sample);
        if (mu.value > ref.value + (mu.err + ref.err))
            rep.witness_dominance_violations.push_back(sample);

        rep.min_maximal_over_samples =
            std::min(rep.min_maximal_over_samples, sample.maximal_lower_bound);
        rep.max_witness_measure = std::max(rep.max_witness_measure, mu.value);
    }

    rep.checks.push_back(strip_bound_check(R, params.tol));
    {
        InequalityCheck c;
        c.id = "I2";
        c.R = R;
        c.description = "(R+1/2, 1) lies inside every witness ball B_e((x,1), sqrt(1-y^2))";
        c.lhs = 0.0; // oriented as slack > 0
        c.rhs = min_slack;
        c.margin = min_slack;
        c.num_err = 1e-14;
        c.samples = params.samples;
        c.structural_violations = rep.structural_violations;
        c.pass = rep.structural_violations == 0 && c.margin > c.num_err;
        c.note = format_note("min slack r - |x-R-1/2| = %.6g at x = %.10g", min_slack, worst_x);
        rep.checks.push_back(c);
    }

    rep.pass = rep.violations.empty() && rep.structural_violations == 0 &&
               rep.strip_lower_bound > rep.inv_two_R;
    return rep;
}

VariantProbeReport variant_probe(const MeasureSpec& spec, double R, int samples, double tol,
                                 std::uint64_t seed) {
    if (!(R > 2.0)) throw std::invalid_argument("variant_probe: R must be > 2");
    if (samples < 10) throw std::invalid_argument("variant_probe: samples must be >= 10");
    if (!(tol > 0.0)) throw std::invalid_argument("variant_probe: tol must be > 0");

    VariantProbeReport rep;
    rep.R = R;
    rep.samples = samples;
    rep.tol = tol;
    rep.seed = seed;
    rep.strip_measure = std::exp(-R) * (1.0 - std::exp(-1.0));

    const Point atom_location(R + 0.5, 1.0);
    RandomStream rng(seed);
    StripSampler sampler(R, rng);
    rep.min_maximal_over_samples = kInf;

    for (int i = 0; i < samples; ++i) {
        double x, y;
        sampler.draw([](double xx) { return std::exp(-xx); }, x, y);
        const double r = std::sqrt((1.0 - y) * (1.0 + y));
        if (!(r >= 0.5) || !(r < 1.0) || !(r > std::abs(x - atom_location.x))) {
            ++rep.structural_violations;
            continue;
        }
        MeasureEstimate mu = ball_measure(spec, EuclideanBall(Point(x, 1.0), r), tol);
        rep.effort += mu.effort;
        rep.min_maximal_over_samples = std::min(rep.min_maximal_over_samples, 1.0 / mu.value);
        rep.max_witness_measure = std::max(rep.max_witness_measure, mu.value);
    }

    rep.weak_constant_lower_bound = rep.min_maximal_over_samples * rep.strip_measure;
    return rep;
}

LevelSetEstimate level_set_estimate(const MeasureSpec& spec, double R, int cells_x, int cells_y,
                                    double tol) {
    if (!(R > 2.0)) throw std::invalid_argument("level_set_estimate: R must be > 2");
    if (cells_x < 2 || cells_y < 2)
        throw std::invalid_argument("level_set_estimate: need at least a 2x2 grid");
    if (!(tol > 0.0)) throw std::invalid_argument("level_set_estimate: tol must be > 0");

    LevelSetEstimate est;
    est.R = R;
    est.lambda = std::pow(R - 1.0, 1.5) / 3.0;
    est.cells_x = cells_x;
    est.cells_y = cells_y;
    est.strip_mass_analytic = strip_measure_m2(R);

    // The witness lower bound at a strip point (x, y).
    auto witness_bound = [&](double x, double y) {
        const double r = std::sqrt((1.0 - y) * (1.0 + y));
        if (!(r >= 0.5) || !(r < 1.0)) return 0.0;
        MeasureEstimate mu = ball_measure(spec, EuclideanBall(Point(x, 1.0), r), tol);
        est.effort += mu.effort;
        return 1.0 / mu.value;
    };

    const double y_cap = 1.0 / (R + 1.0); // rows fully below the hyperbola
    for (int i = 0; i < cells_x; ++i) {
        const double x0 = R + static_cast<double>(i) / cells_x;
        const double x1 = R + static_cast<double>(i + 1) / cells_x;
        for (int j = 0; j < cells_y; ++j) {
            const double y0 = y_cap * (static_cast<double>(j) / cells_y);
            const double y1 = y_cap * (static_cast<double>(j + 1) / cells_y);
            ++est.cells_total;
            const double y_lo = std::max(y0, 1e-7); // witness radii need 1 - y^2 < 1
            bool above = true;
            for (const auto& [px, py] : {std::pair{x0, y_lo}, std::pair{x0, y1},
                                         std::pair{x1, y_lo}, std::pair{x1, y1},
                                         std::pair{0.5 * (x0 + x1), 0.5 * (y_lo + y1)}})
                above = above && witness_bound(px, py) > est.lambda;
            if (!above) continue;
            ++est.cells_above;
            MeasureEstimate cell = rect_measure(spec, x0, x1, y0, y1, tol);
            est.effort += cell.effort;
            est.mass_above += cell.value;
        }
    }
    return est;
}

// ---------------------------------------------------------------------------
// Growth scan
// ---------------------------------------------------------------------------

std::vector<double> grid_points(const GridAxis& axis) {
    if (axis.count < 2) throw std::invalid_argument("grid axis needs at least 2 points");
    if (!(axis.hi > axis.lo)) throw std::invalid_argument("grid axis needs lo < hi");
    if (axis.log_spaced && !(axis.lo > 0.0))
        throw std::invalid_argument("log-spaced axis needs lo > 0");
    std::vector<double> pts(axis.count);
    if (axis.log_spaced) {
        const double step = std::log(axis.hi / axis.lo) / (axis.count - 1);
        for (int i = 0; i < axis.count; ++i) pts[i] = axis.lo * std::exp(step * i);
    } else {
        const double step = (axis.hi - axis.lo) / (axis.count - 1);
        for (int i = 0; i < axis.count; ++i) pts[i] = axis.lo + step * i;
    }
    pts.back() = axis.hi;
    return pts;
}

namespace {

struct ScanOutcome {
    double sup = 0.0;
    GrowthCell argmax;
    std::vector<GrowthCell> cells;
    int failures = 0;
    long long effort = 0;
};

ScanOutcome run_scan(const MeasureSpec& spec, const std::vector<double>& xs,
                     const std::vector<double>& bs, const std::vector<double>& ss, double tol,
                     int threads) {
    const std::size_t nx = xs.size(), nb = bs.size(), ns = ss.size();
    const std::size_t total = nx * nb * ns;
    ScanOutcome out;
    out.cells.resize(total);
    std::vector<long long> effort_per_thread(static_cast<std::size_t>(threads), 0);

    auto worker = [&](int t) {
        long long effort = 0;
        for (std::size_t idx = static_cast<std::size_t>(t); idx < total;
             idx += static_cast<std::size_t>(threads)) {
            const std::size_t i = idx / (nb * ns);
            const std::size_t j = (idx / ns) % nb;
            const std::size_t k = idx % ns;
            GrowthCell& cell = out.cells[idx];
            cell.x = xs[i];
            cell.b = bs[j];
            cell.s = ss[k];
            MeasureEstimate est =
                ball_measure(spec, HyperbolicBall(Point(cell.x, cell.b), cell.s), tol);
            cell.value = est.value;
            cell.err = est.err;
            cell.ratio = est.value / cell.s;
            if (!est.converged) cell.err = -cell.err; // flag; sign restored in the reduce step
            effort += est.effort;
        }
        effort_per_thread[static_cast<std::size_t>(t)] = effort;
    };

    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (std::thread& th : pool) th.join();
    }

    // Deterministic reduction in index order.
    for (std::size_t idx = 0; idx < total; ++idx) {
        GrowthCell& cell = out.cells[idx];
        if (cell.err < 0.0) {
            cell.err = -cell.err;
            ++out.failures;
        }
        if (cell.ratio > out.sup) {
            out.sup = cell.ratio;
            out.argmax = cell;
        }
    }
    for (long long e : effort_per_thread) out.effort += e;
    return out;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

} // namespace

GrowthReport growth_scan(const MeasureSpec& spec, const GrowthScanParams& params) {
    if (!(params.tol > 0.0)) throw std::invalid_argument("growth_scan: tol must be > 0");
    const int threads = resolve_threads(params.threads);

    GrowthReport rep;
    rep.params = params;

    const std::vector<double> xs = grid_points(params.x);
    const std::vector<double> bs = grid_points(params.b);
    const std::vector<double> ss = grid_points(params.s);

    ScanOutcome base = run_scan(spec, xs, bs, ss, params.tol, threads);
    rep.sup_ratio = base.sup;
    rep.argmax = base.argmax;
    rep.cells = std::move(base.cells);
    rep.failures = base.failures;
    rep.effort = base.effort;

    if (params.refine_check) {
        auto doubled = [](GridAxis axis) {
            axis.count *= 2;
            return axis;
        };
        for (int which = 0; which < 3; ++which) {
            std::vector<double> rx = which == 0 ? grid_points(doubled(params.x)) : xs;
            std::vector<double> rb = which == 1 ? grid_points(doubled(params.b)) : bs;
            std::vector<double> rs = which == 2 ? grid_points(doubled(params.s)) : ss;
            ScanOutcome refined = run_scan(spec, rx, rb, rs, params.tol, threads);
            rep.refined_sups.push_back(refined.sup);
            rep.failures += refined.failures;
            rep.effort += refined.effort;
            rep.stability_delta = std::max(
                rep.stability_delta, std::abs(refined.sup - rep.sup_ratio) /
                                         std::max(rep.sup_ratio, 1e-300));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Proof-step suite
// ---------------------------------------------------------------------------

namespace {

struct WorstTracker {
    double margin = kInf;
    double lhs = 0.0, rhs = 0.0, num_err = 0.0;
    std::string where;

    void update(double margin_, double lhs_, double rhs_, double num_err_, std::string where_) {
        if (margin_ < margin) {
            margin = margin_;
            lhs = lhs_;
            rhs = rhs_;
            num_err = num_err_;
            where = std::move(where_);
        }
    }

    void fill(InequalityCheck& c) const {
        c.lhs = lhs;
        c.rhs = rhs;
        c.margin = margin;
        c.num_err = num_err;
        c.pass = margin > num_err;
        if (!where.empty()) c.note = where;
    }
};

std::string coords_note(const char* fmt, double a, double b, double c) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return buf;
}

InequalityCheck membership_check(double R, int samples, RandomStream& rng) {
    InequalityCheck c;
    c.id = "I2";
    c.R = R;
    c.description = "(R+1/2, 1) lies inside B_e((x,1), sqrt(1-y^2)) for strip points (x,y)";
    WorstTracker worst;
    for (int i = 0; i < samples; ++i) {
        const double x = R + rng.next();
        const double y = open01(rng) / x;
        const double r = std::sqrt((1.0 - y) * (1.0 + y));
        const double dist = std::abs(x - (R + 0.5));
        worst.update(r - dist, dist, r, 1e-14, coords_note("x=%.8g y=%.4g r=%.8g", x, y, r));
        if (!(r >= 0.5) || !(r < 1.0)) ++c.structural_violations;
    }
    c.samples = samples;
    worst.fill(c);
    c.pass = c.pass && c.structural_violations == 0;
    return c;
}

InequalityCheck gaussian_tail_check(double R, double tol, long long& effort) {
    InequalityCheck c;
    c.id = "I3";
    c.R = R;
    c.description = "m1(B_e((R,1),1)) < e^{-(R-1)^2/2}/(R-1)";
    // Both sides carry the factor e^{-(R-1)^2/2}, which underflows for
    // R > ~39. Pull it out and integrate the scaled column profile, so the
    // comparison stays representable at every R.
    const double t0 = R - 1.0;
    auto scaled_column = [&](double x) {
        const double h2 = 1.0 - (x - R) * (x - R);
        if (h2 <= 0.0) return 0.0;
        const double h = std::sqrt(h2);
        constexpr double kInvSqrt2 = 0.7071067811865476;
        const double col = std::erf((1.0 + h) * kInvSqrt2) - std::erf((1.0 - h) * kInvSqrt2);
        const double u = x - t0; // e^{-x^2/2} = e^{-t0^2/2} e^{-t0 u - u^2/2}
        // (1/2pi) sqrt(pi/2) = 1/(2 sqrt(2 pi))
        return 0.19947114020071635 * std::exp(-t0 * u - 0.5 * u * u) * col;
    };
    QuadResult q = adaptive_integrate(scaled_column, t0, R + 1.0,
                                      QuadOptions{std::min(tol, 1e-10), 4000}, {});
    effort += q.evals;
    const double factor = std::exp(-0.5 * t0 * t0);
    if (factor > 0.0) {
        c.lhs = q.value * factor;
        c.rhs = gauss_tail_bound(t0);
        c.num_err = q.err * factor;
    } else {
        c.lhs = q.value;
        c.rhs = 1.0 / t0;
        c.num_err = q.err;
        c.note = "common factor e^{-(R-1)^2/2} underflows; both sides reported scaled by its inverse";
    }
    c.margin = c.rhs - c.lhs;
    // middle link of the chain: m1(B) < tail integral < tail majorant,
    // all in the scaled frame so it holds up at every R
    const double scaled_mid = gauss_tail_scaled(t0);
    if (!(q.value + q.err < scaled_mid) || !(scaled_mid < 1.0 / t0)) ++c.structural_violations;
    if (!c.note.empty()) c.note += " | ";
    c.note += format_note("scaled chain: m1 %.6g < tail %.6g", q.value, scaled_mid) +
              format_note(" < majorant %.6g", 1.0 / t0, 0.0);
    c.pass = c.margin > c.num_err && c.structural_violations == 0;
    return c;
}

InequalityCheck rectangle_inclusion_check(double R, int samples, RandomStream& rng) {
    InequalityCheck c;
    c.id = "I4";
    c.R = R;
    c.description =
        "B_e((R,1),1) ∩ {y < 1/x} ⊂ [R-sqrt(2/(R-1)), R+sqrt(2/(R-1))] x (0, 1/(R-1))";
    const double half_width = std::sqrt(2.0 / (R - 1.0));
    const double y_cap = 1.0 / (R - 1.0);
    WorstTracker worst;
    int accepted = 0;
    long long draws = 0;
    const long long max_draws = 4000000;
    while (accepted < samples && draws < max_draws) {
        ++draws;
        const double x = (R - 1.0) + 2.0 * rng.next();
        const double y = open01(rng) * y_cap;
        const double u = (x - R) * (x - R);
        if (!(u + (y - 1.0) * (y - 1.0) < 1.0) || !(y < 1.0 / x)) continue;
        ++accepted;
        // The paper's chain: (x-R)^2/2 < 1 - sqrt(1-(x-R)^2) < y.
        const double disk_bottom = 1.0 - std::sqrt(1.0 - u);
        if (0.5 * u > disk_bottom + 1e-12 || disk_bottom > y) ++c.structural_violations;
        const double sx = half_width - std::abs(x - R);
        const double sy = y_cap - y;
        if (sx < sy)
            worst.update(sx, std::abs(x - R), half_width, 1e-14,
                         coords_note("x-slack binds at x=%.8g y=%.6g (u=%.3g)", x, y, u));
        else
            worst.update(sy, y, y_cap, 1e-14,
                         coords_note("y-slack binds at x=%.8g y=%.6g (u=%.3g)", x, y, u));
    }
    c.samples = accepted;
    worst.fill(c);
    c.pass = c.pass && c.structural_violations == 0 && accepted == samples;
    return c;
}

InequalityCheck tail_area_check(double R, double tol, long long& effort) {
    InequalityCheck c;
    c.id = "I5";
    c.R = R;
    c.description = "m2(B_e((R,1),1)) < 2*sqrt(2)/(R-1)^{3/2}";
    MeasureEstimate m2 =
        ball_measure(MeasureSpec::tail_part(), EuclideanBall(Point(R, 1.0), 1.0), tol);
    effort += m2.effort;
    c.lhs = m2.value;
    c.rhs = 2.0 * std::sqrt(2.0) / std::pow(R - 1.0, 1.5);
    c.margin = c.rhs - c.lhs;
    c.num_err = m2.err;
    c.pass = c.margin > c.num_err;
    return c;
}

InequalityCheck combined_bound_check(const MeasureSpec& spec, double R, double tol,
                                     long long& effort) {
    InequalityCheck c;
    c.id = "I6";
    c.R = R;
    c.description = "mu(B_e((R,1),1)) < 3/(R-1)^{3/2}";
    MeasureEstimate mu = ball_measure(spec, EuclideanBall(Point(R, 1.0), 1.0), tol);
    effort += mu.effort;
    c.lhs = mu.value;
    c.rhs = 3.0 / std::pow(R - 1.0, 1.5);
    c.margin = c.rhs - c.lhs;
    c.num_err = mu.err;
    c.pass = c.margin > c.num_err;
    return c;
}

InequalityCheck small_b_check(int samples, RandomStream& rng) {
    InequalityCheck c;
    c.id = "I7";
    c.description = "b <= 3 implies s >= r/3 (brute-force inf of s/r is 1/3 at b=3, r->0)";
    WorstTracker worst;
    for (int i = 0; i < samples; ++i) {
        const double b = 3.0 * open01(rng);
        const double r = open01(rng) * b;
        const double s = 0.5 * std::log1p(2.0 * r / (b - r));
        worst.update(s - r / 3.0, r / 3.0, s, 1e-15 * (1.0 + s),
                     coords_note("b=%.8g r=%.8g s=%.8g", b, r, s));
    }
    c.samples = samples;
    worst.fill(c);
    return c;
}

InequalityCheck large_b_tail_check(int samples, RandomStream& rng, double qtol,
                                   long long& effort) {
    InequalityCheck c;
    c.id = "I8";
    c.description = "b > 3, r > b-1: m2(B_e((a,b),r)) <= log(1+2r) <= 2s";
    WorstTracker worst;
    for (int i = 0; i < samples; ++i) {
        const double b = 3.0 + 17.0 * open01(rng);
        const double r = (b - 1.0) + open01(rng);
        const double a = 2.0 * b * rng.next();
        MeasureEstimate m2 =
            ball_measure(MeasureSpec::tail_part(), EuclideanBall(Point(a, b), r), qtol);
        effort += m2.effort;
        const double log_bound = std::log1p(2.0 * r);
        const double two_s = std::log1p(2.0 * r / (b - r));
        worst.update(log_bound - m2.value, m2.value, log_bound, m2.err,
                     coords_note("measure link binds at a=%.6g b=%.6g r=%.8g", a, b, r));
        worst.update(two_s - log_bound, log_bound, two_s, 1e-15 * (1.0 + two_s),
                     coords_note("radius link binds at a=%.6g b=%.6g r=%.8g", a, b, r));
    }
    c.samples = samples;
    worst.fill(c);
    return c;
}

InequalityCheck comparable_case_check(int samples, RandomStream& rng, double qtol,
                                      long long& effort) {
    InequalityCheck c;
    c.id = "I9";
    c.description = "b > 3, b/3 <= r < b: m1(B) <= 1/2 and s >= log(2)/2";
    WorstTracker worst;
    for (int i = 0; i < samples; ++i) {
        const double b = 3.0 + 17.0 * open01(rng);
        const double f = 1.0 / 3.0 + (2.0 / 3.0 - 1e-4) * rng.next();
        const double r = f * b;
        const double a = -10.0 + 20.0 * rng.next();
        MeasureEstimate m1 =
            ball_measure(MeasureSpec::gaussian_part(), EuclideanBall(Point(a, b), r), qtol);
        effort += m1.effort;
        const double s = 0.5 * std::log1p(2.0 * r / (b - r));
        worst.update(0.5 - m1.value, m1.value, 0.5, m1.err,
                     coords_note("mass link binds at a=%.6g b=%.6g r=%.8g", a, b, r));
        worst.update(s - kHalfLog2, kHalfLog2, s, 1e-15,
                     coords_note("radius link binds at a=%.6g b=%.6g r=%.8g", a, b, r));
    }
    c.samples = samples;
    worst.fill(c);
    return c;
}

InequalityCheck far_gaussian_chain_check(int samples, RandomStream& rng, long long& effort) {
    InequalityCheck c;
    c.id = "I10";
    c.description =
        "b > 3, 0 < r < b/3: m1(B_e((a,b),r)) <= m1(B_e((0,b),r)) <= rectangle bound "
        "<= (e^{-(b-r)^2/2}/(b-r)) min{1,2r}; closing constants against s reported";
    constexpr double kSqrtPiOver2 = 1.2533141373155003;
    constexpr double kInvSqrt2 = 0.7071067811865476;
    constexpr double kInv2Pi = 0.15915494309189535;
    WorstTracker worst;
    double c_small_r = 0.0, c_mid_r = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double b = 3.0 + 27.0 * open01(rng);
        const double r = open01(rng) * b / 3.0;
        const double sign = rng.next() < 0.5 ? -1.0 : 1.0;
        const double a = sign * (0.1 + 9.9 * rng.next());

        // These masses range down to e^{-450}; the quadrature error has to be
        // tied to the value or the margins drown in reported error.
        MeasureEstimate off =
            ball_measure_rel(MeasureSpec::gaussian_part(), EuclideanBall(Point(a, b), r), 1e-8);
        MeasureEstimate centered =
            ball_measure_rel(MeasureSpec::gaussian_part(), EuclideanBall(Point(0.0, b), r), 1e-8);
        effort += off.effort + centered.effort;

        // (1/2pi) int_{-r}^{r} e^{-x^2/2} dx * int_{b-r}^{inf} e^{-y^2/2} dy
        const double x_part = 2.0 * kSqrtPiOver2 * std::erf(r * kInvSqrt2);
        const double rect_bound = kInv2Pi * x_part * gauss_tail(b - r);
        const double majorant = gauss_tail_bound(b - r) * std::min(1.0, 2.0 * r);

        worst.update(centered.value - off.value, off.value, centered.value,
                     off.err + centered.err,
                     coords_note("centering link binds at a=%.6g b=%.6g r=%.8g", a, b, r));
        worst.update(rect_bound - centered.value, centered.value, rect_bound, centered.err,
                     coords_note("rectangle link binds at a=%.6g b=%.6g r=%.8g", a, b, r));
        worst.update(majorant - off.value, off.value, majorant, off.err,
                     coords_note("majorant link binds at a=%.6g b=%.6g r=%.8g", a, b, r));

        if (r < 0.5)
            c_small_r = std::max(c_small_r, majorant / (0.5 * std::log1p(2.0 * r / b)));
        else
            c_mid_r = std::max(c_mid_r, majorant / (0.5 * std::log1p(1.0 / b)));
    }
    c.samples = samples;
    worst.fill(c);
    c.note += format_note(" | empirical closing constants: c(r<1/2)=%.6g, c(1/2<=r<b/3)=%.6g",
                          c_small_r, c_mid_r);
    return c;
}

double empirical_r0(const MeasureSpec& spec, double tol, long long& effort) {
    // Descending sweep over a 0.05 grid on [2.05, 20]; report the smallest R
    // from which mu(B_e((R,1),1)) < 3/(R-1)^{3/2} holds through the grid end.
    double last_fail = -kInf;
    for (int i = 0; i <= 359; ++i) {
        const double R = 2.05 + 0.05 * i;
        MeasureEstimate mu = ball_measure(spec, EuclideanBall(Point(R, 1.0), 1.0), tol);
        effort += mu.effort;
        const double rhs = 3.0 / std::pow(R - 1.0, 1.5);
        if (!(mu.value + mu.err < rhs)) last_fail = R;
    }
    return last_fail < 0.0 ? 2.05 : last_fail + 0.05;
}

} // namespace

SuiteReport proof_step_suite(const MeasureSpec& spec, const SuiteParams& params) {
    if (params.R_values.empty())
        throw std::invalid_argument("proof_step_suite: R_values must be nonempty");
    for (double R : params.R_values)
        if (!(R > 2.0)) throw std::invalid_argument("proof_step_suite: every R must be > 2");
    if (params.samples < 10) throw std::invalid_argument("proof_step_suite: samples must be >= 10");
    if (!(params.tol > 0.0)) throw std::invalid_argument("proof_step_suite: tol must be > 0");

    SuiteReport rep;
    rep.params = params;
    RandomStream rng(params.seed);
    const double qtol = 1e-12; // per-sample quadratures: tight, values span many scales

    for (double R : params.R_values) {
        rep.checks.push_back(strip_bound_check(R, params.tol));
        rep.checks.push_back(membership_check(R, params.samples, rng));
        rep.checks.push_back(gaussian_tail_check(R, params.tol, rep.effort));
        rep.checks.push_back(rectangle_inclusion_check(R, params.samples, rng));
        rep.checks.push_back(tail_area_check(R, params.tol, rep.effort));
        rep.checks.push_back(combined_bound_check(spec, R, params.tol, rep.effort));
    }

    rep.checks.push_back(small_b_check(params.samples, rng));
    rep.checks.push_back(large_b_tail_check(params.samples, rng, qtol, rep.effort));
    rep.checks.push_back(comparable_case_check(params.samples, rng, qtol, rep.effort));
    rep.checks.push_back(far_gaussian_chain_check(params.samples, rng, rep.effort));

    rep.empirical_R0 = empirical_r0(spec, params.tol, rep.effort);
    rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const InequalityCheck& c) { return c.pass; });
    return rep;
}

} // namespace hpmax
