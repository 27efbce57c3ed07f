#pragma once

#include <span>
#include <vector>

#include "hpmax/geometry.hpp"
#include "hpmax/measure.hpp"

namespace hpmax {

/// A point mass. The centered maximal operator is evaluated on finite sums
/// of these; convolution approximation reduces the weak-type question to
/// exactly this case.
struct DiracAtom {
    Point location;
    double mass = 1.0;
    explicit DiracAtom(Point location_, double mass_ = 1.0);
};

/// Result of a maximal-function evaluation. `infinite` marks the sentinel
/// reached when the evaluation point carries an atom (vanishing balls).
struct MaximalValue {
    double value = 0.0;            // +inf when infinite
    double achieving_radius = 0.0; // hyperbolic radius where the sup is (nearly) attained
    double err = 0.0;              // relative error estimate
    bool infinite = false;
    bool converged = true;
    long long effort = 0;
};

/// mu-average of the atom over B_h(w, s):
/// mass * [d(w, atom) < s] / mu(B_h(w, s)).
double ball_average_dirac(const MeasureSpec& spec, const Point& w, double s,
                          const DiracAtom& atom, double tol = 1e-9);

/// Exact sup over radii for a single atom. Since s -> mu(B_h(w,s)) is
/// nondecreasing, the sup over s > d := d(w, atom) is mass / lim_{s->d+}
/// mu(B_h(w,s)); the limit is reached by evaluating at s = d (1 + eps_k),
/// eps_k = 1e-2 * 4^{-k}, k = 0..6, and Richardson-extrapolating in eps.
/// tol is the relative error target.
MaximalValue maximal_dirac(const MeasureSpec& spec, const Point& w, const DiracAtom& atom,
                           double tol = 1e-6);

struct RadiusGrid {
    double s_min = 1e-3;
    double s_max = 1e2;
    int count = 200;
};

/// Grid search for finite atom lists: sup of ball averages over log-spaced
/// radii, locally refined `refine` times around the best radius. The result
/// is a certified lower bound for the true sup, never an exact value.
MaximalValue maximal_atoms(const MeasureSpec& spec, const Point& w,
                           std::span<const DiracAtom> atoms, const RadiusGrid& grid,
                           int refine = 3, double tol = 1e-9);

} // namespace hpmax
