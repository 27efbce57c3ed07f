#include "hpmax/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hpmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

DiracAtom::DiracAtom(Point location_, double mass_) : location(location_), mass(mass_) {
    if (!(mass > 0.0)) throw std::invalid_argument("DiracAtom: mass must be positive");
}

double ball_average_dirac(const MeasureSpec& spec, const Point& w, double s,
                          const DiracAtom& atom, double tol) {
    if (!(s > 0.0)) throw std::invalid_argument("ball_average_dirac: s must be positive");
    const double d = hyp_distance(w, atom.location);
    if (!(d < s)) return 0.0; // open ball; an atom on the boundary contributes nothing
    MeasureEstimate mu = ball_measure(spec, HyperbolicBall(w, s), tol);
    if (!(mu.value > 0.0))
        throw std::domain_error("ball_average_dirac: ball of zero measure (mu has full support, "
                                "so this indicates a numerical failure)");
    return atom.mass / mu.value;
}

MaximalValue maximal_dirac(const MeasureSpec& spec, const Point& w, const DiracAtom& atom,
                           double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("maximal_dirac: tol must be > 0");
    MaximalValue out;
    const double d = hyp_distance(w, atom.location);
    if (d == 0.0) {
        out.value = kInf;
        out.infinite = true;
        out.achieving_radius = 0.0;
        return out;
    }

    // mu(B_h(w, d (1+eps_k))) for eps_k = 1e-2 * 4^{-k}; the measures admit an
    // expansion in powers of eps, so a ratio-4 Richardson tableau converges.
    constexpr int kLevels = 7;
    double mu[kLevels];
    double max_quad_err = 0.0;
    double eps = 1e-2;
    for (int k = 0; k < kLevels; ++k, eps *= 0.25) {
        MeasureEstimate est =
            ball_measure_rel(spec, HyperbolicBall(w, d * (1.0 + eps)), tol * 0.05);
        out.effort += est.effort;
        mu[k] = est.value;
        max_quad_err = std::max(max_quad_err, est.err);
        out.converged = out.converged && est.converged;
    }

    double tableau[kLevels][kLevels];
    for (int k = 0; k < kLevels; ++k) tableau[k][0] = mu[k];
    double power = 1.0;
    for (int j = 1; j < kLevels; ++j) {
        power *= 4.0;
        for (int k = j; k < kLevels; ++k)
            tableau[k][j] =
                tableau[k][j - 1] + (tableau[k][j - 1] - tableau[k - 1][j - 1]) / (power - 1.0);
    }

    double limit = tableau[kLevels - 1][kLevels - 1];
    const double extrap_err = std::abs(limit - tableau[kLevels - 1][kLevels - 2]) +
                              std::abs(limit - tableau[kLevels - 2][kLevels - 2]);
    if (!(limit > 0.0)) {
        // Extrapolation noise on a tiny measure; fall back to the last bracket.
        limit = mu[kLevels - 1];
        out.converged = false;
    }

    out.value = atom.mass / limit;
    out.achieving_radius = d;
    out.err = (extrap_err + 3.0 * max_quad_err) / limit;
    if (out.err > tol) out.converged = false;
    return out;
}

MaximalValue maximal_atoms(const MeasureSpec& spec, const Point& w,
                           std::span<const DiracAtom> atoms, const RadiusGrid& grid, int refine,
                           double tol) {
    if (atoms.empty()) throw std::invalid_argument("maximal_atoms: atom list must be nonempty");
    if (!(grid.s_min > 0.0) || !(grid.s_max > grid.s_min) || grid.count < 2)
        throw std::invalid_argument("maximal_atoms: bad radius grid");

    MaximalValue out;
    std::vector<double> dist(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        dist[i] = hyp_distance(w, atoms[i].location);
        if (dist[i] == 0.0) {
            out.value = kInf;
            out.infinite = true;
            return out;
        }
    }

    auto average_at = [&](double s) {
        double num = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (dist[i] < s) num += atoms[i].mass;
        if (num == 0.0) return 0.0;
        MeasureEstimate mu = ball_measure_rel(spec, HyperbolicBall(w, s), tol);
        out.effort += mu.effort;
        return num / mu.value;
    };

    // Each sweep also records the smallest positive average it saw; the
    // spread of the final window bounds how much a finer grid could gain.
    double window_min = kInf;
    auto sweep = [&](double lo, double hi, int count, double& best_s, double& best_v) {
        const double step = std::log(hi / lo) / (count - 1);
        window_min = kInf;
        for (int i = 0; i < count; ++i) {
            const double s = lo * std::exp(step * i);
            const double v = average_at(s);
            if (v > best_v) {
                best_v = v;
                best_s = s;
            }
            if (v > 0.0) window_min = std::min(window_min, v);
        }
        return step;
    };

    double best_s = grid.s_min;
    double best_v = 0.0;
    double step = sweep(grid.s_min, grid.s_max, grid.count, best_s, best_v);

    double previous = best_v;
    for (int pass = 0; pass < refine; ++pass) {
        const double lo = std::max(grid.s_min, best_s * std::exp(-step));
        const double hi = std::min(grid.s_max, best_s * std::exp(step));
        previous = best_v;
        step = sweep(lo, hi, 17, best_s, best_v);
    }

    out.value = best_v;
    out.achieving_radius = best_s;
    if (best_v > 0.0) {
        const double improvement = (best_v - previous) / best_v;
        const double spread = std::isfinite(window_min) ? (best_v - window_min) / best_v : 0.0;
        out.err = improvement + spread + tol;
    } else {
        // no grid ball reached an atom; 0 is still a lower bound, but the
        // grid was inadequate and nothing positive can be certified
        out.err = tol;
        out.converged = false;
    }
    return out;
}

} // namespace hpmax
