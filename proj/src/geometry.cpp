#include "isoper/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "isoper/simplex.hpp"

namespace isoper {

namespace {

double vertex_diameter(std::span<const Point> pts)
{
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).squaredNorm());
    return std::sqrt(best);
}

std::vector<HalfPlane> edge_half_planes(const std::vector<Point>& v)
{
    std::vector<HalfPlane> planes;
    planes.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point dir = v[(i + 1) % v.size()] - v[i];
        const Point n = Point(dir.y(), -dir.x()).normalized();
        planes.push_back({n, n.dot(v[i])});
    }
    return planes;
}

// Distance of the middle vertex from the chord through its neighbours, signed
// positive for a left turn.
double chord_deviation(const Point& prev, const Point& cur, const Point& next)
{
    const Point a = cur - prev;
    const Point b = next - cur;
    const double chord = (a + b).norm();
    if (chord == 0.0) return -std::numeric_limits<double>::infinity();
    return cross(a, b) / chord;
}

std::optional<Point> line_intersection(const HalfPlane& p, const HalfPlane& q)
{
    const double det = cross(p.normal, q.normal);
    if (std::abs(det) < 1e-15) return std::nullopt;
    return Point((p.offset * q.normal.y() - q.offset * p.normal.y()) / det,
                 (p.normal.x() * q.offset - q.normal.x() * p.offset) / det);
}

double line_angle(const HalfPlane& h) { return std::atan2(h.normal.x(), -h.normal.y()); }

ErodedBody collapse(const std::vector<Point>& verts, double radius, double scale)
{
    std::size_t ia = 0, ib = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            const double d = (verts[i] - verts[j]).squaredNorm();
            if (d > best) {
                best = d;
                ia = i;
                ib = j;
            }
        }
    Point mean = Point::Zero();
    for (const auto& v : verts) mean += v;
    mean /= static_cast<double>(verts.size());

    const double diameter = std::sqrt(std::max(best, 0.0));
    if (diameter < kEpsGeom * scale) return ErodedBody(mean, radius, scale);

    const Point u = (verts[ib] - verts[ia]) / diameter;
    double tmin = std::numeric_limits<double>::infinity();
    double tmax = -tmin;
    for (const auto& v : verts) {
        const double t = (v - mean).dot(u);
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    return ErodedBody(Segment{mean + tmin * u, mean + tmax * u}, radius, scale);
}

} // namespace

bool ConvexPolygon::contains(const Point& x, double slack) const
{
    return std::all_of(edges_.begin(), edges_.end(), [&](const HalfPlane& h) { return h.violation(x) <= slack; });
}

double polygon_signed_area(std::span<const Point> points)
{
    if (points.size() < 3) return 0.0;
    // Fan about the first vertex; absolute coordinates cancel badly for tiny polygons.
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < points.size(); ++i) twice += cross(points[i] - points[0], points[i + 1] - points[0]);
    return 0.5 * twice;
}

ConvexPolygon validate_polygon(std::vector<Point> vertices)
{
    for (const auto& v : vertices)
        if (!std::isfinite(v.x()) || !std::isfinite(v.y()))
            throw Error(ErrorKind::InvalidNumber, "vertex coordinates must be finite");
    if (vertices.size() < 3) throw Error(ErrorKind::Degenerate, "need at least 3 vertices");

    const double scale = vertex_diameter(vertices);
    if (scale == 0.0) throw Error(ErrorKind::Degenerate, "all vertices coincide");

    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i)
        if ((vertices[i] - vertices[(i + 1) % n]).norm() <= kEpsGeom * scale)
            throw Error(ErrorKind::Degenerate, "duplicate vertex " + std::to_string(i));

    double area = polygon_signed_area(vertices);
    if (std::abs(area) <= kEpsArea * scale * scale) throw Error(ErrorKind::Degenerate, "zero area");

    ConvexPolygon poly;
    if (area < 0.0) {
        std::reverse(vertices.begin(), vertices.end());
        area = -area;
        poly.reoriented_ = true;
    }

    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& prev = vertices[(i + n - 1) % n];
        const Point& cur = vertices[i];
        const Point& next = vertices[(i + 1) % n];
        const double dev = chord_deviation(prev, cur, next);
        if (dev <= 0.0) throw Error(ErrorKind::NonConvex, "reflex or collinear vertex " + std::to_string(i));
        if (dev <= kEpsGeom * scale) throw Error(ErrorKind::NonConvex, "collinear vertex " + std::to_string(i));
        const Point a = cur - prev;
        const Point b = next - cur;
        turning += std::atan2(cross(a, b), a.dot(b));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
        throw Error(ErrorKind::NonConvex, "vertex chain winds more than once");

    poly.vertices_ = std::move(vertices);
    poly.edges_ = edge_half_planes(poly.vertices_);
    poly.scale_ = scale;
    poly.area_ = area;
    return poly;
}

std::optional<ConvexPolygon> make_polygon(std::vector<Point> v, double scale, double merge)
{
    const double tol = merge * scale;
    bool changed = true;
    while (changed && v.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
            const std::size_t n = v.size();
            const Point& prev = v[(i + n - 1) % n];
            const Point& next = v[(i + 1) % n];
            if ((v[i] - next).norm() <= tol || chord_deviation(prev, v[i], next) <= tol) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (v.size() < 3) return std::nullopt;
    const double area = polygon_signed_area(v);
    if (area <= 0.0) return std::nullopt;

    ConvexPolygon poly;
    poly.edges_ = edge_half_planes(v);
    poly.vertices_ = std::move(v);
    poly.scale_ = scale;
    poly.area_ = area;
    return poly;
}

Measures polygon_measures(const ConvexPolygon& polygon)
{
    const auto& v = polygon.vertices();
    double perimeter = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) perimeter += (v[(i + 1) % v.size()] - v[i]).norm();
    return {polygon_signed_area(v), perimeter};
}

double distance_to_segment(const Point& x, const Point& a, const Point& b)
{
    const Point ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (x - a).norm();
    const double t = std::clamp((x - a).dot(ab) / len2, 0.0, 1.0);
    return (x - (a + t * ab)).norm();
}

double ErodedBody::distance(const Point& x) const
{
    struct Visitor {
        const Point& x;
        double operator()(const ConvexPolygon& p) const
        {
            if (p.contains(x)) return 0.0;
            double best = std::numeric_limits<double>::infinity();
            const auto& v = p.vertices();
            for (std::size_t i = 0; i < v.size(); ++i)
                best = std::min(best, distance_to_segment(x, v[i], v[(i + 1) % v.size()]));
            return best;
        }
        double operator()(const Segment& s) const { return distance_to_segment(x, s.a, s.b); }
        double operator()(const Point& p) const { return (x - p).norm(); }
        double operator()(const EmptySet&) const { return std::numeric_limits<double>::infinity(); }
    };
    return std::visit(Visitor{x}, shape_);
}

Measures ErodedBody::measures() const
{
    struct Visitor {
        Measures operator()(const ConvexPolygon& p) const { return polygon_measures(p); }
        Measures operator()(const Segment& s) const { return {0.0, 2.0 * s.length()}; }
        Measures operator()(const Point&) const { return {}; }
        Measures operator()(const EmptySet&) const { return {}; }
    };
    return std::visit(Visitor{}, shape_);
}

std::vector<Point> ErodedBody::extreme_points() const
{
    struct Visitor {
        std::vector<Point> operator()(const ConvexPolygon& p) const { return p.vertices(); }
        std::vector<Point> operator()(const Segment& s) const { return {s.a, s.b}; }
        std::vector<Point> operator()(const Point& p) const { return {p}; }
        std::vector<Point> operator()(const EmptySet&) const { return {}; }
    };
    return std::visit(Visitor{}, shape_);
}

std::optional<std::vector<Point>> intersect_half_planes(std::span<const HalfPlane> planes)
{
    if (planes.size() < 3) return std::nullopt;

    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(planes.size());
    double magnitude = 1.0;
    for (std::size_t i = 0; i < planes.size(); ++i) {
        order.emplace_back(line_angle(planes[i]), i);
        magnitude = std::max(magnitude, std::abs(planes[i].offset));
    }
    std::sort(order.begin(), order.end());
    const double tol = 1e-13 * magnitude;

    std::vector<const HalfPlane*> lines;
    for (const auto& [angle, idx] : order) {
        if (!lines.empty() && std::abs(angle - line_angle(*lines.back())) < 1e-12) {
            if (planes[idx].offset < lines.back()->offset) lines.back() = &planes[idx];
            continue;
        }
        lines.push_back(&planes[idx]);
    }

    std::deque<const HalfPlane*> dq;
    auto outside = [&](const HalfPlane* h, const HalfPlane* p, const HalfPlane* q) -> std::optional<bool> {
        const auto x = line_intersection(*p, *q);
        if (!x) return std::nullopt;
        return h->violation(*x) > tol;
    };

    for (const HalfPlane* h : lines) {
        while (dq.size() >= 2) {
            const auto out = outside(h, dq[dq.size() - 2], dq.back());
            if (!out) return std::nullopt;
            if (!*out) break;
            dq.pop_back();
        }
        while (dq.size() >= 2) {
            const auto out = outside(h, dq[0], dq[1]);
            if (!out) return std::nullopt;
            if (!*out) break;
            dq.pop_front();
        }
        if (!dq.empty() && std::abs(cross(dq.back()->normal, h->normal)) < 1e-15 &&
            dq.back()->normal.dot(h->normal) < 0.0 && dq.back()->offset + h->offset < 0.0)
            return std::nullopt;
        dq.push_back(h);
    }
    while (dq.size() >= 3) {
        const auto out = outside(dq.front(), dq[dq.size() - 2], dq.back());
        if (!out) return std::nullopt;
        if (!*out) break;
        dq.pop_back();
    }
    while (dq.size() >= 3) {
        const auto out = outside(dq.back(), dq[0], dq[1]);
        if (!out) return std::nullopt;
        if (!*out) break;
        dq.pop_front();
    }
    if (dq.size() < 3) return std::nullopt;

    std::vector<Point> verts;
    verts.reserve(dq.size());
    for (std::size_t i = 0; i < dq.size(); ++i) {
        const auto x = line_intersection(*dq[i], *dq[(i + 1) % dq.size()]);
        if (!x) return std::nullopt;
        verts.push_back(*x);
    }
    const double check = 1e-9 * magnitude;
    for (const auto& v : verts)
        for (const auto& h : planes)
            if (h.violation(v) > check) return std::nullopt;
    if (polygon_signed_area(verts) < 0.0) return std::nullopt;
    return verts;
}

InscribedBall chebyshev_ball(const ConvexPolygon& polygon)
{
    const auto& planes = polygon.half_planes();
    Point c = Point::Zero();
    for (const auto& v : polygon.vertices()) c += v;
    c /= static_cast<double>(polygon.size());

    // x = c + (z0 - z2, z1 - z3), r = z4, all z >= 0.
    const auto m = static_cast<Eigen::Index>(planes.size());
    Eigen::MatrixXd A(m, 5);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& h = planes[static_cast<std::size_t>(i)];
        A.row(i) << h.normal.x(), h.normal.y(), -h.normal.x(), -h.normal.y(), 1.0;
        b(i) = std::max(0.0, h.offset - h.normal.dot(c));
    }
    Eigen::VectorXd objective = Eigen::VectorXd::Zero(5);
    objective(4) = 1.0;
    const auto sol = maximize(A, b, objective);
    if (!sol) throw std::logic_error("inradius LP unbounded for a bounded polygon");
    return {sol->x(4), c + Point(sol->x(0) - sol->x(2), sol->x(1) - sol->x(3))};
}

ErodedBody erode(const ConvexPolygon& polygon, double radius)
{
    return erode(polygon, radius, chebyshev_ball(polygon).radius);
}

ErodedBody erode(const ConvexPolygon& polygon, double radius, double inradius)
{
    if (!(radius >= 0.0)) throw std::invalid_argument("erosion radius must be non-negative");
    const double scale = polygon.scale();
    if (radius == 0.0) return ErodedBody(polygon, radius, scale);
    if (radius > inradius + kEpsGeom * scale) return ErodedBody(EmptySet{}, radius, scale);

    auto offset_intersection = [&](double r) {
        std::vector<HalfPlane> planes = polygon.half_planes();
        for (auto& h : planes) h.offset -= r;
        return intersect_half_planes(planes);
    };

    const double collapse_at = inradius * (1.0 - kCollapseDelta);
    if (radius < collapse_at) {
        if (const auto verts = offset_intersection(radius)) {
            if (auto poly = make_polygon(*verts, scale, kVertexMerge))
                return ErodedBody(std::move(*poly), radius, scale);
            return collapse(*verts, radius, scale);
        }
    }
    // At the inradius the body is a segment or point; intersect just below it
    // and collapse the sliver, backing off if the sliver is numerically lost.
    for (double delta = kCollapseDelta; delta < 1e-5; delta *= 100.0)
        if (const auto verts = offset_intersection(inradius * (1.0 - delta)))
            return collapse(*verts, radius, scale);
    return ErodedBody(chebyshev_ball(polygon).center, radius, scale);
}

double LargestBallSet::center_length() const
{
    if (const auto* s = std::get_if<Segment>(&centers)) return s->length();
    return 0.0;
}

LargestBallSet largest_balls(const ConvexPolygon& polygon)
{
    const InscribedBall ball = chebyshev_ball(polygon);
    const ErodedBody core = erode(polygon, ball.radius, ball.radius);

    LargestBallSet set;
    set.inradius = ball.radius;
    if (const auto* s = std::get_if<Segment>(&core.shape())) {
        set.centers = *s;
        set.midpoint = s->midpoint();
    } else if (const auto* p = std::get_if<Point>(&core.shape())) {
        set.centers = *p;
        set.midpoint = *p;
    } else {
        set.centers = ball.center;
        set.midpoint = ball.center;
    }
    const double r = ball.radius;
    set.ball_measure = std::numbers::pi * r * r;
    set.hull_measure = set.ball_measure + 2.0 * r * set.center_length();
    return set;
}

RoundedBody opening(const ConvexPolygon& polygon, double radius)
{
    return opening(polygon, radius, chebyshev_ball(polygon).radius);
}

RoundedBody opening(const ConvexPolygon& polygon, double radius, double inradius)
{
    if (!(radius >= 0.0)) throw std::invalid_argument("opening radius must be non-negative");
    if (radius > inradius * (1.0 + kEpsGeom))
        throw Error(ErrorKind::RadiusTooLarge, "radius " + std::to_string(radius) + " exceeds inradius " +
                                                   std::to_string(inradius));
    radius = std::min(radius, inradius);
    return RoundedBody(erode(polygon, radius, inradius), radius);
}

Measures rounded_measures(const RoundedBody& body)
{
    const Measures core = body.core().measures();
    const double r = body.radius();
    return {core.area + r * core.perimeter + std::numbers::pi * r * r, core.perimeter + 2.0 * std::numbers::pi * r};
}

bool contains(const RoundedBody& body, const Point& x)
{
    return body.core().distance(x) <= body.radius() + kEpsGeom * body.core().scale();
}

std::vector<Point> RoundedBody::boundary(double max_angle) const
{
    const double r = radius_;
    std::vector<Point> out;
    if (const auto* p = std::get_if<Point>(&core_.shape())) {
        const int n = std::max(8, static_cast<int>(std::ceil(2.0 * std::numbers::pi / max_angle)));
        for (int k = 0; k < n; ++k) {
            const double a = 2.0 * std::numbers::pi * k / n;
            out.push_back(*p + r * Point(std::cos(a), std::sin(a)));
        }
        return out;
    }
    std::vector<Point> corners = core_.extreme_points();
    if (corners.empty()) return out;
    if (r == 0.0) return corners;

    const std::size_t n = corners.size();
    std::vector<Point> normals(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point dir = corners[(i + 1) % n] - corners[i];
        normals[i] = Point(dir.y(), -dir.x()).normalized();
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        out.push_back(corners[i] + r * normals[i]);
        out.push_back(corners[j] + r * normals[i]);
        double sweep = std::atan2(cross(normals[i], normals[j]), normals[i].dot(normals[j]));
        if (sweep <= 0.0) sweep += 2.0 * std::numbers::pi;
        const int steps = std::max(1, static_cast<int>(std::ceil(sweep / max_angle)));
        const double start = std::atan2(normals[i].y(), normals[i].x());
        for (int k = 1; k < steps; ++k) {
            const double a = start + sweep * k / steps;
            out.push_back(corners[j] + r * Point(std::cos(a), std::sin(a)));
        }
    }
    return out;
}

std::vector<Point> convex_hull(std::vector<Point> pts)
{
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;

    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

} // namespace isoper
