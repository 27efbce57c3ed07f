#include <doctest.h>

#include <cmath>
#include <vector>

#include "hpmax/maximal.hpp"
#include "oracle_helpers.hpp"

using namespace hpmax;

TEST_CASE("ball averages of a Dirac atom") {
    const auto mu = MeasureSpec::paper();
    // atom outside the ball
    CHECK(ball_average_dirac(mu, Point(0, 1), 0.5, DiracAtom(Point(10, 1))) == 0.0);
    // a measure that vanishes on the ball is guarded even though mu never does
    CHECK_THROWS_AS(ball_average_dirac(MeasureSpec::tail_part(), Point(-40, 1), 0.5,
                                       DiracAtom(Point(-40, 1.2))),
                    std::domain_error);
    // atom exactly on the boundary of the (open) ball: d((0,1),(0,e)) = 1
    CHECK(ball_average_dirac(mu, Point(0, 1), 1.0, DiracAtom(Point(0, std::exp(1.0)))) == 0.0);

    // witness-ball identity: the average at the hyperbolic center of
    // B_e((x,1), sqrt(1-y^2)) is 1/mu(B_e((x,1), r)).
    const double x = 10.5, y = 0.05;
    const double r = std::sqrt((1.0 - y) * (1.0 + y));
    const auto witness = EuclideanBall(Point(x, 1.0), r);
    const auto hyp = euclid_to_hyp(witness);
    CHECK(hyp.center.y == doctest::Approx(y).epsilon(1e-12));
    const double avg =
        ball_average_dirac(mu, hyp.center, hyp.radius, DiracAtom(Point(10.5, 1.0)), 1e-10);
    const double direct = 1.0 / ball_measure(mu, witness, 1e-10).value;
    CHECK(avg == doctest::Approx(direct).epsilon(1e-7));

    // a huge ball average is mass over the measured window
    const auto est = ball_measure(mu, HyperbolicBall(Point(10.5, 1.0), 12.0), 1e-8);
    const double big =
        ball_average_dirac(mu, Point(10.5, 1.0), 12.0, DiracAtom(Point(10.4, 1.0), 2.0), 1e-8);
    CHECK(big == doctest::Approx(2.0 / est.value).epsilon(1e-6));
}

TEST_CASE("maximal_dirac: sentinel, far-field reference, self-consistency") {
    const auto mu = MeasureSpec::paper();

    const auto at_atom = maximal_dirac(mu, Point(3, 2), DiracAtom(Point(3, 2)));
    CHECK(at_atom.infinite);
    CHECK(std::isinf(at_atom.value));

    // w = (0,1), atom at (10.5, 1): the sup is 1/mu(B_h(w, d)).
    const auto far = maximal_dirac(mu, Point(0, 1), DiracAtom(Point(10.5, 1)), 1e-6);
    CHECK(far.converged);
    CHECK(far.value == doctest::Approx(0.5875615849743437).epsilon(1e-5));
    CHECK(far.achieving_radius ==
          doctest::Approx(hyp_distance(Point(0, 1), Point(10.5, 1))).epsilon(1e-14));

    // extrapolated limit vs a direct evaluation at s = d + 1e-6
    const double d = far.achieving_radius;
    const double direct =
        1.0 / ball_measure(mu, HyperbolicBall(Point(0, 1), d + 1e-6), 1e-12).value;
    CHECK(far.value == doctest::Approx(direct).epsilon(1e-4));

    // linear in the atom mass
    const auto scaled = maximal_dirac(mu, Point(0, 1), DiracAtom(Point(10.5, 1), 3.7), 1e-6);
    CHECK(scaled.value == doctest::Approx(3.7 * far.value).epsilon(1e-9));
}

TEST_CASE("maximal_dirac exceeds the weak-type level at a strip point (R = 100)") {
    const auto mu = MeasureSpec::paper();
    const double R = 100.0;
    const Point w(100.5, 1.0 / 101.0);
    const auto value = maximal_dirac(mu, w, DiracAtom(Point(R + 0.5, 1.0)), 1e-6);
    const double lambda = std::pow(R - 1.0, 1.5) / 3.0;
    CHECK(value.value > lambda);
    CHECK(value.value == doctest::Approx(769.2526772191854).epsilon(1e-3));
}

TEST_CASE("radial monotonicity of ball measures") {
    const auto mu = MeasureSpec::paper();
    std::mt19937_64 eng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const Point w(-8.0 + 20.0 * oracle::uniform01(eng),
                      std::exp(-2.0 + 4.0 * oracle::uniform01(eng)));
        double previous = 0.0;
        for (int k = 0; k < 50; ++k) {
            const double s = 1e-2 * std::pow(10.0 / 1e-2, k / 49.0);
            const auto est = ball_measure(mu, HyperbolicBall(w, s), 1e-10);
            CHECK(est.value >= previous - 2.0 * (est.err + 1e-12));
            previous = est.value;
        }
    }
}

TEST_CASE("maximal decreases along rays whose balls swallow ever more mass") {
    const auto mu = MeasureSpec::paper();
    const DiracAtom atom(Point(10.5, 1.0));

    // straight up from the atom: the limiting balls inflate with distance
    double previous = std::numeric_limits<double>::infinity();
    for (double y : {std::exp(1.0), std::exp(2.0), std::exp(3.0), std::exp(4.0)}) {
        const auto value = maximal_dirac(mu, Point(10.5, y), atom, 1e-6);
        CHECK(value.value < previous);
        previous = value.value;
    }

    // rightward along y = 1
    previous = std::numeric_limits<double>::infinity();
    for (double x : {13.0, 18.0, 28.0, 48.0}) {
        const auto value = maximal_dirac(mu, Point(x, 1.0), atom, 1e-6);
        CHECK(value.value < previous);
        previous = value.value;
    }
}

TEST_CASE("near-empty limiting balls produce huge finite maximal values") {
    // At (9,1) the limiting ball clears the tail region entirely and holds
    // only a wisp of Gaussian mass (~4e-14), so the average explodes.
    const auto mu = MeasureSpec::paper();
    const auto value = maximal_dirac(mu, Point(9.0, 1.0), DiracAtom(Point(10.5, 1.0)), 1e-6);
    CHECK(value.converged);
    CHECK(value.value > 1e12);
    CHECK(value.value < 1e15);
}

TEST_CASE("maximal_atoms: consistency with the exact single-atom reduction") {
    const auto mu = MeasureSpec::paper();
    const Point w(0, 1);
    const std::vector<DiracAtom> single{DiracAtom(Point(10.5, 1.0))};
    const auto exact = maximal_dirac(mu, w, single[0], 1e-8);
    const auto grid = maximal_atoms(mu, w, single, RadiusGrid{1e-3, 1e2, 200}, 4);
    CHECK(grid.value <= exact.value * (1.0 + 1e-6)); // lower-bound semantics
    CHECK(grid.value >= exact.value * 0.95);         // and reasonably tight

    // the coarse value never beats a 2x finer grid by more than its own err
    const auto fine = maximal_atoms(mu, w, single, RadiusGrid{1e-3, 1e2, 400}, 4);
    CHECK(grid.value <= fine.value + grid.err * grid.value + 1e-12);
}

TEST_CASE("maximal_atoms: mass inside every grid ball and symmetric pairs") {
    const auto mu = MeasureSpec::paper();
    const Point w(2.0, 1.0);
    // both atoms within hyperbolic distance < s_min of w
    const std::vector<DiracAtom> close{DiracAtom(Point(2.0, 1.0004), 1.5),
                                       DiracAtom(Point(2.0004, 1.0), 0.5)};
    const RadiusGrid grid_spec{1e-3, 10.0, 60};
    const auto got = maximal_atoms(mu, w, close, grid_spec, 0);
    const double expected =
        2.0 / ball_measure(mu, HyperbolicBall(w, grid_spec.s_min), 1e-12).value;
    CHECK(got.value == doctest::Approx(expected).epsilon(1e-6));
    CHECK(got.achieving_radius == doctest::Approx(grid_spec.s_min).epsilon(1e-12));

    // two symmetric atoms dominate either single one
    const std::vector<DiracAtom> pair{DiracAtom(Point(1.0, 1.0)), DiracAtom(Point(3.0, 1.0))};
    const std::vector<DiracAtom> lone{DiracAtom(Point(1.0, 1.0))};
    const auto both = maximal_atoms(mu, w, pair, grid_spec, 3);
    const auto one = maximal_atoms(mu, w, lone, grid_spec, 3);
    CHECK(both.value >= one.value * (1.0 - 1e-9));

    // sentinel propagates
    const std::vector<DiracAtom> at_w{DiracAtom(Point(2.0, 1.0))};
    CHECK(maximal_atoms(mu, w, at_w, grid_spec, 1).infinite);

    // a grid too short to reach any atom certifies nothing
    const std::vector<DiracAtom> far_atom{DiracAtom(Point(1e6, 1.0))};
    const auto empty = maximal_atoms(mu, w, far_atom, RadiusGrid{1e-3, 1e-2, 10}, 1);
    CHECK(empty.value == 0.0);
    CHECK_FALSE(empty.converged);
}
