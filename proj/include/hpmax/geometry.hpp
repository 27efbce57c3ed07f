#pragma once

namespace hpmax {

/// A point of the upper half-plane model. Invariant: y > 0.
struct Point {
    double x;
    double y;
    Point(double x_, double y_);
};

/// An open euclidean disk lying strictly inside the upper half-plane:
/// center (a, b) with 0 < r < b.
struct EuclideanBall {
    Point center;
    double radius;
    EuclideanBall(Point center_, double radius_);
};

/// The same family of disks described hyperbolically: center p, radius s > 0.
struct HyperbolicBall {
    Point center;
    double radius;
    HyperbolicBall(Point center_, double radius_);
};

/// acosh(1 + t) for t >= 0 without forming 1 + t (series below t = 1e-8).
double acosh1p(double t);

/// Hyperbolic distance in the half-plane model:
/// d = acosh(1 + (|dx|^2 + |dy|^2) / (2 p.y q.y)).
double hyp_distance(const Point& p, const Point& q);

/// Euclidean ball ((a,b), r) as a hyperbolic ball:
/// center (a, sqrt(b^2 - r^2)), radius log sqrt((b+r)/(b-r)).
/// Radii with r/b > 1 - 1e-12 are rejected, not clamped; that close to the
/// half-plane boundary the result would be dominated by rounding in b - r.
HyperbolicBall euclid_to_hyp(const EuclideanBall& ball);

/// Inverse correspondence: center (a, p.y cosh s), radius p.y sinh s.
EuclideanBall hyp_to_euclid(const HyperbolicBall& ball);

/// Open-ball membership. Boundary points count as outside.
bool ball_contains(const EuclideanBall& ball, const Point& q);
bool ball_contains(const HyperbolicBall& ball, const Point& q);

} // namespace hpmax
