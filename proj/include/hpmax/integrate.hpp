#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "hpmax/geometry.hpp"

namespace hpmax {

struct Region;
struct Density;
struct MeasureSpec;

enum class EstimateMethod { quadrature, monte_carlo, analytic };

/// A numeric value with an estimated absolute error. For Monte Carlo
/// estimates err is the sample standard error. `converged` is false when an
/// evaluation budget ran out; the value then still carries the best estimate.
struct MeasureEstimate {
    double value = 0.0;
    double err = 0.0;
    EstimateMethod method = EstimateMethod::quadrature;
    long long effort = 0;
    bool converged = true;
};

// ---------------------------------------------------------------------------
// 1-D adaptive quadrature (Gauss-Kronrod 7-15)
// ---------------------------------------------------------------------------

struct QuadResult {
    double value = 0.0;
    double err = 0.0;
    long long evals = 0;
    bool converged = true;
};

struct QuadOptions {
    double abs_tol = 1e-9;
    int max_panels = 4000;
};

/// Integrates f over [a, b], subdividing the worst panel until the summed
/// error estimate drops below abs_tol. `breakpoints` become initial panel
/// edges (values outside (a, b) are ignored); place kinks of f there.
QuadResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                              const QuadOptions& opts,
                              std::span<const double> breakpoints = {});

// ---------------------------------------------------------------------------
// Disk geometry used by the integrators
// ---------------------------------------------------------------------------

/// A disk with its lower gap b - r carried explicitly. When the disk comes
/// from a hyperbolic ball, gap = p.y e^{-s} stays accurate even though
/// b and r agree to many digits.
struct Disk {
    double a;
    double b;
    double r;
    double gap;
};

Disk to_disk(const EuclideanBall& ball);
Disk to_disk(const HyperbolicBall& ball);

/// Integral of `density` over disk ∩ region. The outer integral runs over
/// the chord angle (x = a + r sin t), with panel edges at region kinks and
/// at crossings of the section top with the disk boundary; the inner
/// y-integral over [b - r cos t, b + r cos t] ∩ (0, g(x)) is evaluated in
/// closed form per density kind.
MeasureEstimate integrate_disk_region(const Density& density, const Region& region,
                                      const Disk& disk, double tol);
MeasureEstimate integrate_disk_region(const Density& density, const Region& region,
                                      const EuclideanBall& disk, double tol);

/// Same integrand over an axis-aligned rectangle [x0,x1] x [y0,y1].
/// y1 may be +inf when the sections stay integrable (Gaussian density or a
/// region with a finite section top).
MeasureEstimate integrate_rect_region(const Density& density, const Region& region,
                                      double x0, double x1, double y0, double y1,
                                      double tol);

// ---------------------------------------------------------------------------
// Monte Carlo oracle
// ---------------------------------------------------------------------------

/// Deterministic uniform doubles in [0, 1) from a seeded mt19937_64.
/// The 53-bit construction avoids std::uniform_real_distribution, whose
/// output is implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// Plain Monte Carlo estimate of spec over the disk: uniform samples via the
/// square-root radius transform, estimate = area x mean density, err = the
/// sample standard error. Bit-for-bit reproducible for a fixed seed.
MeasureEstimate mc_ball_measure(const MeasureSpec& spec, const EuclideanBall& ball,
                                long long n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Gaussian tail helpers
// ---------------------------------------------------------------------------

/// Closed-form tail majorant e^{-t^2/2} / t, valid as an upper bound for
/// t > 1 (then u/t >= 1 on the tail). t <= 1 is rejected.
double gauss_tail_bound(double t);

/// The tail itself: integral of e^{-u^2/2} over [t, inf) = sqrt(pi/2) erfc(t/sqrt 2).
double gauss_tail(double t);

/// e^{t^2/2} times the tail: representable at every t >= 0 even where the
/// tail itself underflows (t > ~38).
double gauss_tail_scaled(double t);

} // namespace hpmax
