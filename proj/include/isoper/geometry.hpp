#pragma once

// Exact convex geometry in the plane: validated convex polygons, inner
// parallel bodies (erosion), the largest inscribed balls and the
// morphological opening K (+) rB with its Steiner-formula measures.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "isoper/errors.hpp"

namespace isoper {

using Point = Eigen::Vector2d;

// Tolerances are relative to the domain diameter ("scale").
inline constexpr double kEpsGeom = 1e-9;
inline constexpr double kEpsArea = 1e-12;
inline constexpr double kCollapseDelta = 1e-12;
// Eroded polygons keep vertices down to this (relative) size so the area of
// the opening stays continuous in the radius.
inline constexpr double kVertexMerge = 1e-14;

inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

// { x : normal . x <= offset }, |normal| = 1.
struct HalfPlane {
    Point normal;
    double offset;

    double violation(const Point& x) const { return normal.dot(x) - offset; }
};

struct Measures {
    double area = 0.0;
    double perimeter = 0.0;
};

class ConvexPolygon {
public:
    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }

    // Edge i runs from vertex i to vertex i+1; its half-plane contains the polygon.
    const std::vector<HalfPlane>& half_planes() const { return edges_; }

    // Diameter of the vertex set; all tolerances scale with it.
    double scale() const { return scale_; }
    double area() const { return area_; }

    // True when the input was clockwise and has been reversed.
    bool reoriented() const { return reoriented_; }

    // Closed membership with absolute slack.
    bool contains(const Point& x, double slack = 0.0) const;

    bool operator==(const ConvexPolygon& other) const { return vertices_ == other.vertices_; }

private:
    friend ConvexPolygon validate_polygon(std::vector<Point> vertices);
    friend std::optional<ConvexPolygon> make_polygon(std::vector<Point> vertices, double scale, double merge);

    std::vector<Point> vertices_;
    std::vector<HalfPlane> edges_;
    double scale_ = 0.0;
    double area_ = 0.0;
    bool reoriented_ = false;
};

// Validates a convex vertex chain, reversing clockwise input. Throws
// Error{NonConvex | Degenerate | InvalidNumber}.
ConvexPolygon validate_polygon(std::vector<Point> vertices);

// Builds a polygon from a CCW vertex chain produced internally, dropping
// vertices that sit within merge*scale of the chord of their neighbours.
// Returns nullopt when fewer than three vertices survive.
std::optional<ConvexPolygon> make_polygon(std::vector<Point> vertices, double scale, double merge = kEpsGeom);

Measures polygon_measures(const ConvexPolygon& polygon);

struct Segment {
    Point a;
    Point b;

    double length() const { return (b - a).norm(); }
    Point midpoint() const { return 0.5 * (a + b); }
};

struct EmptySet {};

double distance_to_segment(const Point& x, const Point& a, const Point& b);

// Result of offsetting every edge inward by `radius`.
class ErodedBody {
public:
    using Shape = std::variant<ConvexPolygon, Segment, Point, EmptySet>;

    ErodedBody(Shape shape, double radius, double scale)
        : shape_(std::move(shape)), radius_(radius), scale_(scale) {}

    const Shape& shape() const { return shape_; }
    double radius() const { return radius_; }
    double scale() const { return scale_; }

    bool is_polygon() const { return std::holds_alternative<ConvexPolygon>(shape_); }
    bool is_segment() const { return std::holds_alternative<Segment>(shape_); }
    bool is_point() const { return std::holds_alternative<Point>(shape_); }
    bool is_empty() const { return std::holds_alternative<EmptySet>(shape_); }

    // Euclidean distance to the body (0 inside). Infinite for Empty.
    double distance(const Point& x) const;

    // Area and perimeter of the body itself; a segment of length l has perimeter 2l.
    Measures measures() const;

    // Extreme points: polygon vertices, segment endpoints or the single point.
    std::vector<Point> extreme_points() const;

private:
    Shape shape_;
    double radius_;
    double scale_;
};

// Intersection of half-planes sorted by angle. nullopt when the
// intersection is empty or has no interior.
std::optional<std::vector<Point>> intersect_half_planes(std::span<const HalfPlane> planes);

struct InscribedBall {
    double radius;
    Point center;
};

// Chebyshev ball: max r s.t. n_i . x + r <= d_i, solved with a dense simplex.
InscribedBall chebyshev_ball(const ConvexPolygon& polygon);

ErodedBody erode(const ConvexPolygon& polygon, double radius);
// Same, reusing a known inradius.
ErodedBody erode(const ConvexPolygon& polygon, double radius, double inradius);

struct LargestBallSet {
    double inradius = 0.0;
    std::variant<Segment, Point> centers;
    double ball_measure = 0.0;
    double hull_measure = 0.0;
    Point midpoint = Point::Zero();

    double center_length() const;
};

LargestBallSet largest_balls(const ConvexPolygon& polygon);

// core (+) radius * unit disk.
class RoundedBody {
public:
    RoundedBody(ErodedBody core, double radius) : core_(std::move(core)), radius_(radius) {}

    const ErodedBody& core() const { return core_; }
    double radius() const { return radius_; }

    // Points along the boundary, CCW; each corner arc is split into
    // segments no longer than `max_angle` radians.
    std::vector<Point> boundary(double max_angle = 0.05) const;

private:
    ErodedBody core_;
    double radius_;
};

// Union of all balls of the given radius inside the closed polygon.
// Throws Error{RadiusTooLarge} when radius exceeds the inradius.
RoundedBody opening(const ConvexPolygon& polygon, double radius);
RoundedBody opening(const ConvexPolygon& polygon, double radius, double inradius);

// Steiner formulas: A(K) + r P(K) + pi r^2 and P(K) + 2 pi r.
Measures rounded_measures(const RoundedBody& body);

// Closed containment: dist(x, core) <= r + kEpsGeom * scale.
bool contains(const RoundedBody& body, const Point& x);

std::vector<Point> convex_hull(std::vector<Point> points);
double polygon_signed_area(std::span<const Point> points);

} // namespace isoper
