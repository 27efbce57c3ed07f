#include "hpmax/integrate.hpp"
#include "hpmax/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace hpmax {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0,
};
constexpr double kWgk[8] = {
    0.2293532201052922e-1, 0.6309209262997855e-1, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679,    0.1903505780647854,    0.2044329400752989, 0.2094821410847278,
};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694,
};

struct Panel {
    double lo, hi;
    double value;
    double err;
    long long seq;
};

struct PanelWorse {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.err != b.err) return a.err < b.err;
        return a.seq > b.seq;
    }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi, long long seq,
           long long& evals) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv[15];
    // index layout: 0..6 pairs (+/- kXgk[i]), 14 center
    const double fc = f(center);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[2 * i] = f1;
        fv[2 * i + 1] = f2;
        resk += kWgk[i] * (f1 + f2);
        resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2); // Gauss nodes are xgk[1,3,5]
    }
    evals += 15;

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[2 * i] - reskh) + std::abs(fv[2 * i + 1] - reskh));

    const double scaled = resk * half;
    resabs *= half;
    resasc *= half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(50.0 * kEps * resabs, err);
    return Panel{lo, hi, scaled, err, seq};
}

bool too_narrow(double lo, double hi) {
    return (hi - lo) <= 64.0 * kEps * (std::abs(lo) + std::abs(hi) + 1e-300);
}

/// Root of phi on [lo, hi] given phi(lo), phi(hi) of opposite sign.
double bisect_root(const std::function<double(double)>& phi, double lo, double hi, double flo) {
    for (int i = 0; i < 120 && !too_narrow(lo, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = phi(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Sign-change scan + bisection; appends roots to out.
void find_crossings(const std::function<double(double)>& phi, double lo, double hi, int samples,
                    std::vector<double>& out) {
    if (!(hi > lo)) return;
    double prev_t = lo;
    double prev_v = phi(lo);
    for (int i = 1; i <= samples; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / samples;
        const double v = phi(t);
        if ((prev_v > 0.0 && v < 0.0) || (prev_v < 0.0 && v > 0.0))
            out.push_back(bisect_root(phi, prev_t, t, prev_v));
        prev_t = t;
        prev_v = v;
    }
}

double clamp01sym(double u) { return std::min(1.0, std::max(-1.0, u)); }

MeasureEstimate exact_zero() {
    MeasureEstimate est;
    est.value = 0.0;
    est.err = 0.0;
    est.method = EstimateMethod::quadrature;
    est.converged = true;
    return est;
}

} // namespace

QuadResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                              const QuadOptions& opts, std::span<const double> breakpoints) {
    if (!(b > a)) return QuadResult{0.0, 0.0, 0, true};
    if (!(opts.abs_tol > 0.0)) throw std::invalid_argument("adaptive_integrate: abs_tol must be > 0");

    std::vector<double> edges;
    edges.push_back(a);
    for (double t : breakpoints)
        if (t > a && t < b) edges.push_back(t);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    long long evals = 0;
    long long seq = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> active;
    std::vector<Panel> finished; // panels too narrow to split further
    double total_err = 0.0;

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gk15(f, edges[i], edges[i + 1], seq++, evals);
        total_err += p.err;
        active.push(p);
    }

    int panels = static_cast<int>(edges.size()) - 1;
    while (total_err > opts.abs_tol && !active.empty() && panels < opts.max_panels) {
        Panel worst = active.top();
        if (worst.err <= 0.0) break;
        active.pop();
        if (too_narrow(worst.lo, worst.hi)) {
            finished.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.lo + worst.hi);
        Panel left = gk15(f, worst.lo, mid, seq++, evals);
        Panel right = gk15(f, mid, worst.hi, seq++, evals);
        total_err += left.err + right.err - worst.err;
        active.push(left);
        active.push(right);
        ++panels;
    }

    while (!active.empty()) {
        finished.push_back(active.top());
        active.pop();
    }
    std::sort(finished.begin(), finished.end(),
              [](const Panel& p, const Panel& q) { return p.lo < q.lo; });
    double value = 0.0, err = 0.0;
    for (const Panel& p : finished) {
        value += p.value;
        err += p.err;
    }
    return QuadResult{value, err, evals, err <= opts.abs_tol * (1.0 + 1e-9) + 1e-300};
}

Disk to_disk(const EuclideanBall& ball) {
    return Disk{ball.center.x, ball.center.y, ball.radius, ball.center.y - ball.radius};
}

Disk to_disk(const HyperbolicBall& ball) {
    const double py = ball.center.y;
    const double s = ball.radius;
    const double r = py * std::sinh(s);
    const double gap = py * std::exp(-s);
    return Disk{ball.center.x, r + gap, r, gap};
}

MeasureEstimate integrate_disk_region(const Density& density, const Region& region,
                                      const Disk& disk, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_disk_region: tol must be > 0");

    const double support = density.support_half_width();
    double xlo = std::max(disk.a - disk.r, region.x_min());
    double xhi = disk.a + disk.r;
    if (std::isfinite(support)) {
        xlo = std::max(xlo, -support);
        xhi = std::min(xhi, support);
    }
    if (!(xlo < xhi)) return exact_zero();

    // Chord angle: x = a + r sin t. The lower disk boundary is written as
    // gap + 2 r sin^2(t/2) so it stays positive for balls with b - r << b.
    const double tlo = std::asin(clamp01sym((xlo - disk.a) / disk.r));
    const double thi = std::asin(clamp01sym((xhi - disk.a) / disk.r));
    if (!(tlo < thi)) return exact_zero();

    auto section_lo = [&](double t) {
        const double sh = std::sin(0.5 * t);
        return disk.gap + 2.0 * disk.r * sh * sh;
    };
    auto section_hi = [&](double t) { return disk.b + disk.r * std::cos(t); };

    auto integrand = [&](double t) {
        const double x = disk.a + disk.r * std::sin(t);
        const double top = region.section_top(x);
        const double lo = section_lo(t);
        const double hi = std::min(section_hi(t), top);
        if (!(hi > lo)) return 0.0;
        return density.section_integral(x, lo, hi) * disk.r * std::cos(t);
    };

    std::vector<double> breaks;
    breaks.push_back(0.0);
    if (std::isfinite(region.x_min()))
        breaks.push_back(std::asin(clamp01sym((region.x_min() - disk.a) / disk.r)));
    if (density.kind == DensityKind::gaussian2d) {
        // The outer integrand peaks sharply where the disk passes closest to
        // the origin; give the adaptive pass an edge there and at x = 0.
        const double center_norm = std::hypot(disk.a, disk.b);
        if (center_norm > 0.0)
            breaks.push_back(
                std::asin(clamp01sym((disk.a * (1.0 - disk.r / center_norm) - disk.a) / disk.r)));
        breaks.push_back(std::asin(clamp01sym((0.0 - disk.a) / disk.r)));
    }
    if (region.kind != RegionKind::upper_half_plane) {
        auto vs_hi = [&](double t) { return region.section_top(disk.a + disk.r * std::sin(t)) - section_hi(t); };
        auto vs_lo = [&](double t) { return region.section_top(disk.a + disk.r * std::sin(t)) - section_lo(t); };
        find_crossings(vs_hi, tlo, thi, 128, breaks);
        find_crossings(vs_lo, tlo, thi, 128, breaks);
        // For disks much wider than the region, the sections live in a sliver
        // of the chord angle near the domain edge that uniform nodes never
        // sample. A log ladder of panel edges in x keeps the adaptive pass
        // anchored there.
        double x = std::max(region.x_min(), std::max(xlo, 0x1.0p-20));
        for (int k = 0; k < 400 && x < xhi; ++k, x *= 2.0)
            breaks.push_back(std::asin(clamp01sym((x - disk.a) / disk.r)));
    }

    QuadOptions opts;
    opts.abs_tol = tol;
    QuadResult q = adaptive_integrate(integrand, tlo, thi, opts, breaks);

    MeasureEstimate est;
    est.value = std::max(q.value, 0.0);
    est.err = q.err + 1e-13 * est.value; // closed-form section roundoff allowance
    est.method = EstimateMethod::quadrature;
    est.effort = q.evals;
    est.converged = q.converged;
    return est;
}

MeasureEstimate integrate_disk_region(const Density& density, const Region& region,
                                      const EuclideanBall& disk, double tol) {
    return integrate_disk_region(density, region, to_disk(disk), tol);
}

MeasureEstimate integrate_rect_region(const Density& density, const Region& region, double x0,
                                      double x1, double y0, double y1, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_rect_region: tol must be > 0");
    if (!(x0 <= x1) || !(y0 <= y1)) throw std::invalid_argument("integrate_rect_region: empty ranges");

    const double support = density.support_half_width();
    double xlo = std::max(x0, region.x_min());
    double xhi = x1;
    if (std::isfinite(support)) {
        xlo = std::max(xlo, -support);
        xhi = std::min(xhi, support);
    }
    if (!(xlo < xhi)) return exact_zero();
    if (std::isinf(xlo) || std::isinf(xhi))
        throw std::invalid_argument("integrate_rect_region: x-range must be finite for this density");

    const double ylo = std::max(y0, 0.0);
    if (std::isinf(y1) && density.kind == DensityKind::lebesgue_unit &&
        region.kind == RegionKind::upper_half_plane)
        throw std::invalid_argument("integrate_rect_region: infinite measure on this rectangle");

    auto integrand = [&](double x) {
        const double hi = std::min(y1, region.section_top(x));
        if (!(hi > ylo)) return 0.0;
        return density.section_integral(x, ylo, hi);
    };

    // Where the section top crosses the rectangle edges g is monotone, so
    // the breakpoints have closed forms.
    std::vector<double> breaks;
    if (region.kind == RegionKind::hyperbola_tail) {
        if (y1 > 0.0 && std::isfinite(y1)) breaks.push_back(1.0 / y1);
        if (ylo > 0.0) breaks.push_back(1.0 / ylo);
    } else if (region.kind == RegionKind::exp_tail) {
        if (y1 > 0.0 && y1 < 1.0) breaks.push_back(-std::log(y1));
        if (ylo > 0.0 && ylo < 1.0) breaks.push_back(-std::log(ylo));
    }

    QuadOptions opts;
    opts.abs_tol = tol;
    QuadResult q = adaptive_integrate(integrand, xlo, xhi, opts, breaks);

    MeasureEstimate est;
    est.value = std::max(q.value, 0.0);
    est.err = q.err + 1e-13 * est.value;
    est.method = EstimateMethod::quadrature;
    est.effort = q.evals;
    est.converged = q.converged;
    return est;
}

MeasureEstimate mc_ball_measure(const MeasureSpec& spec, const EuclideanBall& ball, long long n,
                                std::uint64_t seed) {
    if (n < 1000) throw std::invalid_argument("mc_ball_measure: n must be >= 1000");
    RandomStream rng(seed);
    const double a = ball.center.x;
    const double b = ball.center.y;
    const double r = ball.radius;

    // Accumulate in units of the running maximum so that the variance of
    // samples near 1e-180 does not underflow to zero.
    double scale = 0.0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (long long i = 0; i < n; ++i) {
        const double rho = r * std::sqrt(rng.next());
        const double theta = 2.0 * kPi * rng.next();
        const double x = a + rho * std::cos(theta);
        const double y = b + rho * std::sin(theta);
        double f = 0.0;
        for (const MeasureComponent& comp : spec.components)
            if (comp.region.contains(x, y)) f += comp.density.value_at(x, y);
        if (f > scale) {
            if (scale > 0.0) {
                const double ratio = scale / f;
                sum *= ratio;
                sum_sq *= ratio * ratio;
            }
            scale = f;
        }
        if (scale > 0.0) {
            const double g = f / scale;
            sum += g;
            sum_sq += g * g;
        }
    }

    const double area = kPi * r * r;
    MeasureEstimate est;
    est.method = EstimateMethod::monte_carlo;
    est.effort = n;
    est.converged = true;
    if (scale == 0.0) return est; // every sample missed the regions: exact 0
    const double mean = sum / static_cast<double>(n);
    const double var_scaled = std::max(0.0, (sum_sq - sum * mean) / static_cast<double>(n - 1));
    est.value = area * scale * mean;
    est.err = area * scale * std::sqrt(var_scaled / static_cast<double>(n));
    return est;
}

double gauss_tail_bound(double t) {
    if (!(t > 1.0))
        throw std::invalid_argument("gauss_tail_bound: requires t > 1 (u/t >= 1 on the tail)");
    return std::exp(-0.5 * t * t) / t;
}

double gauss_tail(double t) {
    constexpr double kSqrtPiOver2 = 1.2533141373155003;
    constexpr double kInvSqrt2 = 0.7071067811865476;
    return kSqrtPiOver2 * std::erfc(t * kInvSqrt2);
}

double gauss_tail_scaled(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("gauss_tail_scaled: requires t >= 0");
    constexpr double kSqrtPiOver2 = 1.2533141373155003;
    constexpr double kInvSqrt2 = 0.7071067811865476;
    constexpr double kInvSqrtPi = 0.5641895835477563;
    const double u = t * kInvSqrt2;
    // erfcx(u) = e^{u^2} erfc(u): direct while e^{u^2} rounding stays small,
    // asymptotic series beyond (truncation ~2e-16 already at u = 12).
    double erfcx;
    if (u <= 12.0) {
        erfcx = std::exp(u * u) * std::erfc(u);
    } else {
        const double w = 1.0 / (2.0 * u * u);
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k <= 10; ++k) {
            term *= -(2.0 * k - 1.0) * w;
            sum += term;
        }
        erfcx = kInvSqrtPi / u * sum;
    }
    return kSqrtPiOver2 * erfcx;
}

} // namespace hpmax
