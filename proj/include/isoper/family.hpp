#pragma once

// The nested family E(v) of volume-constrained perimeter minimizers in a
// convex polygon: a centred disk up to the largest-ball area, a stadium
// (convex hull of two largest balls) up to the area of their union, and the
// opening of the domain at the radius matching v beyond that.

#include <variant>

#include "isoper/geometry.hpp"

namespace isoper {

enum class ShapeKind { Disk, Stadium, Rounded };

const char* to_string(ShapeKind kind);

struct Disk {
    Point center;
    double radius;
};

struct Stadium {
    Segment axis;
    double radius;
};

struct MinimizerShape {
    std::variant<Disk, Stadium, RoundedBody> geometry;
    double volume = 0.0;
    double perimeter = 0.0;
    // 1 / arc radius; +infinity when the shape is the whole domain.
    double curvature = 0.0;

    ShapeKind kind() const { return static_cast<ShapeKind>(geometry.index()); }
    double arc_radius() const;
    bool contains(const Point& x, double slack) const;
    // Disk centre, stadium endpoints or rounded-core extreme points.
    std::vector<Point> skeleton() const;
    std::vector<Point> boundary(double max_angle = 0.05) const;
};

class MinimizerFamily {
public:
    explicit MinimizerFamily(ConvexPolygon domain);

    const ConvexPolygon& domain() const { return domain_; }
    const LargestBallSet& balls() const { return balls_; }
    double inradius() const { return balls_.inradius; }
    double ball_volume() const { return balls_.ball_measure; }
    double hull_volume() const { return balls_.hull_measure; }
    double domain_volume() const { return domain_area_; }
    double domain_perimeter() const { return domain_perimeter_; }
    double scale() const { return domain_.scale(); }

    // Area of the opening at radius r in [0, inradius].
    double opening_area(double r) const;

    // Unique r with |opening(r)| = v, for hull_volume <= v <= domain_volume.
    double radius_for_volume(double v) const;

    MinimizerShape minimizer(double v) const;
    double curvature(double v) const;
    bool member(double v, const Point& x) const;

    // Smallest v with x in E(v); domain_volume for points outside the domain.
    double rank(const Point& x) const;

private:
    void check_volume(double v) const;

    ConvexPolygon domain_;
    LargestBallSet balls_;
    double domain_area_;
    double domain_perimeter_;
    Point axis_ = Point::UnitX();
};

inline constexpr double kTolArea = 1e-9;  // relative to |domain|
inline constexpr double kTolRank = 1e-9;  // relative to |domain|

MinimizerFamily build_family(ConvexPolygon domain);

} // namespace isoper
