#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "hpmax/measure.hpp"
#include "oracle_helpers.hpp"

using namespace hpmax;

TEST_CASE("pointwise density of mu") {
    const auto mu = MeasureSpec::paper();
    constexpr double inv2pi = 0.15915494309189535;
    // x <= 1 excludes the tail component
    CHECK(density_at(mu, Point(0, 1)) == doctest::Approx(inv2pi * std::exp(-0.5)).epsilon(1e-15));
    // (2, 1/4): inside the tail since 1/4 < 1/2
    CHECK(density_at(mu, Point(2, 0.25)) ==
          doctest::Approx(inv2pi * std::exp(-0.5 * (4.0 + 0.0625)) + 1.0).epsilon(1e-15));
    // (2, 3/4): above the hyperbola
    CHECK(density_at(mu, Point(2, 0.75)) ==
          doctest::Approx(inv2pi * std::exp(-0.5 * (4.0 + 0.5625))).epsilon(1e-15));
}

TEST_CASE("regions expose consistent sections and membership") {
    std::mt19937_64 eng(17);
    for (RegionKind kind :
         {RegionKind::upper_half_plane, RegionKind::hyperbola_tail, RegionKind::exp_tail}) {
        const Region region{kind};
        for (int i = 0; i < 2000; ++i) {
            const double x = -3.0 + 9.0 * oracle::uniform01(eng);
            const double y = 3.0 * oracle::uniform01(eng);
            if (y == 0.0) continue;
            CHECK(region.contains(x, y) == (y > 0.0 && y < region.section_top(x)));
        }
    }
}

TEST_CASE("ball measures: frozen references and trivial cases") {
    const auto mu = MeasureSpec::paper();
    const auto m2 = MeasureSpec::tail_part();

    CHECK(ball_measure(m2, EuclideanBall(Point(-5, 1), 1.0), 1e-9).value == 0.0);

    const auto far = ball_measure(mu, EuclideanBall(Point(10, 1), 1.0), 1e-10);
    CHECK(far.value < 1.0 / 9.0); // the paper's 3/(R-1)^{3/2} at R = 10
    CHECK(far.value == doctest::Approx(0.0588207372903305).epsilon(1e-8));

    // independent test-side Monte Carlo oracle, 1e7 samples
    const auto mc = oracle::mc_disk(oracle::paper_density, 10.0, 1.0, 1.0, 10000000, 2718);
    CHECK(std::abs(far.value - mc.value) <= 4.0 * mc.stderr_);
}

TEST_CASE("small-ball measure is density times area") {
    const auto m1 = MeasureSpec::gaussian_part();
    {
        const auto est = ball_measure(m1, EuclideanBall(Point(0, 5), 1e-3), 1e-16);
        const double expected = oracle::kPi * 1e-6 * 0.15915494309189535 * std::exp(-12.5);
        CHECK(est.value == doctest::Approx(expected).epsilon(1e-3));
    }
    {
        // at (0, 50) the density underflows; both sides are exactly zero
        const auto est = ball_measure(m1, EuclideanBall(Point(0, 50), 1e-3), 1e-16);
        CHECK(est.value == 0.0);
    }
}

TEST_CASE("tail mass vanishes high up until the ball reaches below y = 1") {
    // for b > 3, m2(B_e((a,b),r)) = 0 unless r > b - 1
    const auto m2 = MeasureSpec::tail_part();
    CHECK(ball_measure(m2, EuclideanBall(Point(0, 100), 98.9), 1e-12).value == 0.0);
    CHECK(ball_measure(m2, EuclideanBall(Point(0, 100), 99.0), 1e-12).value == 0.0);
    CHECK(ball_measure(m2, EuclideanBall(Point(0, 100), 99.5), 1e-10).value > 0.0);
}

TEST_CASE("strip measure of m2") {
    CHECK(strip_measure_m2(1.0 + 1e-9) == doctest::Approx(std::log(2.0)).epsilon(1e-8));
    CHECK(strip_measure_m2(10.0) == doctest::Approx(0.09531017980432486).epsilon(1e-15));
    CHECK(strip_measure_m2(10.0) > 0.05);
    for (double R : {2.0, 10.0, 1e3, 1e6}) {
        CHECK(strip_measure_m2(R) > 0.5 / R);
        CHECK(strip_measure_m2(R) < 1.0 / R);
    }
    CHECK_THROWS_AS(strip_measure_m2(1.0), std::invalid_argument);
    CHECK_THROWS_AS(strip_measure_m2(0.5), std::invalid_argument);
}

TEST_CASE("strip measure agrees with 2-D quadrature of the strip") {
    for (double R : {1.000000001, 2.0, 10.0, 100.0}) {
        const auto quad = rect_measure(MeasureSpec::tail_part(), R, R + 1.0, 0.0, 1.0, 1e-11);
        CHECK(std::abs(quad.value - strip_measure_m2(R)) <= 1e-8);
    }
    CHECK(strip_measure_m2(1.000000001) == doctest::Approx(std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("additivity and monotonicity over random balls") {
    const auto mu = MeasureSpec::paper();
    const auto m1 = MeasureSpec::gaussian_part();
    const auto m2 = MeasureSpec::tail_part();
    std::mt19937_64 eng(31);
    for (int i = 0; i < 100; ++i) {
        const double b = std::exp(-4.0 + 7.0 * oracle::uniform01(eng));
        const double f = 0.05 + 0.9 * oracle::uniform01(eng);
        const double a = -20.0 + 45.0 * oracle::uniform01(eng);
        const EuclideanBall ball(Point(a, b), f * b);

        const auto total = ball_measure(mu, ball, 1e-9);
        const auto part1 = ball_measure(m1, ball, 1e-9);
        const auto part2 = ball_measure(m2, ball, 1e-9);
        CHECK(std::abs(total.value - (part1.value + part2.value)) <=
              total.err + part1.err + part2.err + 1e-12);

        const EuclideanBall smaller(ball.center, 0.5 * ball.radius);
        CHECK(ball_measure(mu, smaller, 1e-9).value <= total.value + 2e-9);
    }
}

TEST_CASE("Gaussian half-plane mass approaches 1/2 from below") {
    const auto m1 = MeasureSpec::gaussian_part();
    // rectangle route: exact at double precision
    const auto rect = rect_measure(m1, -39.0, 39.0, 0.0, 39.0, 1e-10);
    CHECK(rect.value == doctest::Approx(0.5).epsilon(1e-9));

    // ball route: the sliver below the disk near y = 0 carries mass about
    // eps/sqrt(2 pi) + 1/(2 Y sqrt(2 pi)), so Y must be large for 1e-6.
    double previous_defect = 1.0;
    for (double Y : {40.0, 4000.0, 1e6}) {
        const auto est = ball_measure(m1, EuclideanBall(Point(0, Y), Y - 5e-7), 1e-9);
        const double defect = std::abs(0.5 - est.value);
        CHECK(est.value < 0.5);
        CHECK(defect < previous_defect);
        previous_defect = defect;
    }
    CHECK(previous_defect <= 1e-6);
}

TEST_CASE("finite-variant region has total mass one, and the variant measure is finite") {
    const auto exp_only =
        MeasureSpec({{Region{RegionKind::exp_tail}, Density{DensityKind::lebesgue_unit}}});
    const auto est = rect_measure(exp_only, 0.0, 40.0, 0.0, 2.0, 1e-9);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-6));

    // nu(H) = 1/2 + 1: a large window already captures it to 1e-6
    const auto total = rect_measure(MeasureSpec::finite_variant(), -39.0, 40.0, 0.0, 39.0, 1e-9);
    CHECK(total.value == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("measure specs serialize to JSON and back") {
    const auto mu = MeasureSpec::paper();
    const auto j = measure_spec_to_json(mu);
    const auto back = measure_spec_from_json(j);
    CHECK(measure_spec_to_json(back) == j);
    CHECK(back.components.size() == 2);

    CHECK(measure_spec_by_name("paper").components.size() == 2);
    CHECK(measure_spec_by_name("finite-variant").components[1].region.kind ==
          RegionKind::exp_tail);
    CHECK_THROWS_AS(measure_spec_by_name("nope"), std::invalid_argument);

    nlohmann::json bad = {{"components", {{{"region", "donut"}, {"density", "lebesgue"}}}}};
    CHECK_THROWS_AS(measure_spec_from_json(bad), std::invalid_argument);
    CHECK_THROWS_AS(MeasureSpec({}), std::invalid_argument);
}
