#include "isoper/family.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace isoper {

const char* to_string(ShapeKind kind)
{
    switch (kind) {
    case ShapeKind::Disk: return "Disk";
    case ShapeKind::Stadium: return "Stadium";
    case ShapeKind::Rounded: return "Rounded";
    }
    return "Unknown";
}

double MinimizerShape::arc_radius() const
{
    struct Visitor {
        double operator()(const Disk& d) const { return d.radius; }
        double operator()(const Stadium& s) const { return s.radius; }
        double operator()(const RoundedBody& b) const { return b.radius(); }
    };
    return std::visit(Visitor{}, geometry);
}

bool MinimizerShape::contains(const Point& x, double slack) const
{
    struct Visitor {
        const Point& x;
        double slack;
        bool operator()(const Disk& d) const { return (x - d.center).norm() <= d.radius + slack; }
        bool operator()(const Stadium& s) const { return distance_to_segment(x, s.axis.a, s.axis.b) <= s.radius + slack; }
        bool operator()(const RoundedBody& b) const { return b.core().distance(x) <= b.radius() + slack; }
    };
    return std::visit(Visitor{x, slack}, geometry);
}

std::vector<Point> MinimizerShape::skeleton() const
{
    struct Visitor {
        std::vector<Point> operator()(const Disk& d) const { return {d.center}; }
        std::vector<Point> operator()(const Stadium& s) const { return {s.axis.a, s.axis.b}; }
        std::vector<Point> operator()(const RoundedBody& b) const { return b.core().extreme_points(); }
    };
    return std::visit(Visitor{}, geometry);
}

std::vector<Point> MinimizerShape::boundary(double max_angle) const
{
    struct Visitor {
        double max_angle;
        std::vector<Point> operator()(const Disk& d) const
        {
            return RoundedBody(ErodedBody(d.center, 0.0, 1.0), d.radius).boundary(max_angle);
        }
        std::vector<Point> operator()(const Stadium& s) const
        {
            return RoundedBody(ErodedBody(s.axis, 0.0, 1.0), s.radius).boundary(max_angle);
        }
        std::vector<Point> operator()(const RoundedBody& b) const { return b.boundary(max_angle); }
    };
    return std::visit(Visitor{max_angle}, geometry);
}

MinimizerFamily::MinimizerFamily(ConvexPolygon domain)
    : domain_(std::move(domain)), balls_(largest_balls(domain_))
{
    const Measures m = polygon_measures(domain_);
    domain_area_ = m.area;
    domain_perimeter_ = m.perimeter;
    if (const auto* s = std::get_if<Segment>(&balls_.centers)) axis_ = (s->b - s->a).normalized();

    if (!(balls_.ball_measure > 0.0 && balls_.ball_measure <= balls_.hull_measure &&
          balls_.hull_measure < domain_area_))
        throw Error(ErrorKind::Degenerate, "largest-ball thresholds out of order");
}

MinimizerFamily build_family(ConvexPolygon domain) { return MinimizerFamily(std::move(domain)); }

void MinimizerFamily::check_volume(double v) const
{
    if (!(v > 0.0) || v > domain_area_ * (1.0 + kTolArea))
        throw Error(ErrorKind::VolumeOutOfRange,
                    "volume " + std::to_string(v) + " outside (0, " + std::to_string(domain_area_) + "]");
}

double MinimizerFamily::opening_area(double r) const
{
    return rounded_measures(opening(domain_, r, balls_.inradius)).area;
}

double MinimizerFamily::radius_for_volume(double v) const
{
    const double tol = kTolArea * domain_area_;
    if (!(v >= balls_.hull_measure - tol) || v > domain_area_ + tol)
        throw Error(ErrorKind::VolumeOutOfRange, "volume " + std::to_string(v) + " outside opening range");
    if (v <= balls_.hull_measure) return balls_.inradius;
    if (v >= domain_area_) return 0.0;

    // Fixed-iteration bisection keeps r(v) monotone in v.
    double lo = 0.0;
    double hi = balls_.inradius;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (opening_area(mid) >= v)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

MinimizerShape MinimizerFamily::minimizer(double v) const
{
    check_volume(v);
    v = std::min(v, domain_area_);
    const double rstar = balls_.inradius;

    MinimizerShape shape{Disk{balls_.midpoint, 0.0}, v, 0.0, 0.0};
    if (v <= balls_.ball_measure) {
        const double rho = std::sqrt(v / std::numbers::pi);
        shape.geometry = Disk{balls_.midpoint, rho};
        shape.perimeter = 2.0 * std::sqrt(std::numbers::pi * v);
        shape.curvature = 1.0 / rho;
    } else if (v <= balls_.hull_measure) {
        const double length = (v - std::numbers::pi * rstar * rstar) / (2.0 * rstar);
        const Point half = 0.5 * length * axis_;
        shape.geometry = Stadium{Segment{balls_.midpoint - half, balls_.midpoint + half}, rstar};
        shape.perimeter = 2.0 * std::numbers::pi * rstar + 2.0 * length;
        shape.curvature = 1.0 / rstar;
    } else {
        const double r = radius_for_volume(v);
        RoundedBody body = opening(domain_, r, rstar);
        shape.perimeter = rounded_measures(body).perimeter;
        shape.curvature = r > 0.0 ? 1.0 / r : std::numeric_limits<double>::infinity();
        shape.geometry = std::move(body);
    }
    return shape;
}

double MinimizerFamily::curvature(double v) const { return minimizer(v).curvature; }

bool MinimizerFamily::member(double v, const Point& x) const
{
    return minimizer(v).contains(x, kEpsGeom * scale());
}

double MinimizerFamily::rank(const Point& x) const
{
    const double slack = kEpsGeom * scale();
    if (!domain_.contains(x, slack)) return domain_area_;

    const double rstar = balls_.inradius;
    const Point rel = x - balls_.midpoint;
    const double dist = rel.norm();
    if (dist <= rstar) return std::min(std::numbers::pi * dist * dist, balls_.ball_measure);

    const double length = balls_.center_length();
    if (length > 0.0) {
        const double along = std::abs(rel.dot(axis_));
        const double across = std::abs(cross(axis_, rel));
        if (across <= rstar) {
            const double needed = 2.0 * std::max(0.0, along - std::sqrt(rstar * rstar - across * across));
            if (needed <= length)
                return std::numbers::pi * rstar * rstar + 2.0 * rstar * needed;
        }
    }

    // Largest opening radius whose opening still holds x.
    double lo = 0.0;
    double hi = rstar;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (erode(domain_, mid, rstar).distance(x) <= mid)
            lo = mid;
        else
            hi = mid;
    }
    return std::min(domain_area_, opening_area(lo));
}

} // namespace isoper
