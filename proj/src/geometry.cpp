#include "hpmax/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hpmax {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

constexpr double kMaxRadiusFraction = 1.0 - 1e-12;

} // namespace

Point::Point(double x_, double y_) : x(x_), y(y_) {
    require(std::isfinite(x) && std::isfinite(y), "Point: coordinates must be finite");
    require(y > 0.0, "Point: y must be positive");
}

EuclideanBall::EuclideanBall(Point center_, double radius_)
    : center(center_), radius(radius_) {
    require(std::isfinite(radius) && radius > 0.0, "EuclideanBall: radius must be positive");
    // r = b is allowed: the open disk is then tangent to y = 0 but still a
    // subset of the half-plane (the paper's B_e((R,1),1) is of this kind).
    // Such a disk has no hyperbolic description; euclid_to_hyp rejects it.
    require(radius <= center.y,
            "EuclideanBall: ball must lie inside the upper half-plane (r <= b)");
}

HyperbolicBall::HyperbolicBall(Point center_, double radius_)
    : center(center_), radius(radius_) {
    require(std::isfinite(radius) && radius > 0.0, "HyperbolicBall: radius must be positive");
}

double acosh1p(double t) {
    if (t < 0.0) throw std::domain_error("acosh1p: argument below 1");
    if (t < 1e-8) {
        // acosh(1+t) = sqrt(2t) (1 - t/12 + 3t^2/160 - ...)
        return std::sqrt(2.0 * t) * (1.0 - t / 12.0 + 3.0 * t * t / 160.0);
    }
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

double hyp_distance(const Point& p, const Point& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    const double t = (dx * dx + dy * dy) / (2.0 * p.y * q.y);
    return acosh1p(t);
}

HyperbolicBall euclid_to_hyp(const EuclideanBall& ball) {
    const double b = ball.center.y;
    const double r = ball.radius;
    require(r <= kMaxRadiusFraction * b,
            "euclid_to_hyp: r/b > 1 - 1e-12; the hyperbolic radius of such a ball "
            "would be dominated by rounding in b - r");
    const double gap = b - r;
    // log sqrt((b+r)/(b-r)) = log1p(2r/(b-r)) / 2; log1p keeps small radii exact.
    const double s = 0.5 * std::log1p(2.0 * r / gap);
    const double py = std::sqrt(gap) * std::sqrt(b + r);
    return HyperbolicBall(Point(ball.center.x, py), s);
}

EuclideanBall hyp_to_euclid(const HyperbolicBall& ball) {
    const double py = ball.center.y;
    const double s = ball.radius;
    const double r = py * std::sinh(s);
    const double gap = py * std::exp(-s); // b - r, formed without cancellation
    return EuclideanBall(Point(ball.center.x, r + gap), r);
}

bool ball_contains(const EuclideanBall& ball, const Point& q) {
    const double dx = q.x - ball.center.x;
    const double dy = q.y - ball.center.y;
    return dx * dx + dy * dy < ball.radius * ball.radius;
}

bool ball_contains(const HyperbolicBall& ball, const Point& q) {
    return hyp_distance(ball.center, q) < ball.radius;
}

} // namespace hpmax
