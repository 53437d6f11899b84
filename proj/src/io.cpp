#include "isoper/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isoper/format.hpp"

namespace isoper {

using nlohmann::ordered_json;

ConvexPolygon read_domain(std::istream& in)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("domain is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw Error(ErrorKind::Parse, "domain must be an object with a \"vertices\" array");
    std::vector<Point> vertices;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw Error(ErrorKind::Parse, "each vertex must be a pair of numbers");
        vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return validate_polygon(std::move(vertices));
}

ConvexPolygon read_domain_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open domain file " + path);
    return read_domain(in);
}

namespace {

double r9(double x) { return round_significant(x); }

ordered_json point_json(const Point& p) { return ordered_json::array({r9(p.x()), r9(p.y())}); }

ordered_json core_json(const ErodedBody& core)
{
    ordered_json pts = ordered_json::array();
    for (const auto& p : core.extreme_points()) pts.push_back(point_json(p));
    const char* type = core.is_polygon() ? "polygon" : core.is_segment() ? "segment" : core.is_point() ? "point" : "empty";
    return {{"type", type}, {"vertices", std::move(pts)}};
}

std::string fmt(const Point& p) { return format_number(p.x()) + ' ' + format_number(p.y()); }

std::string arc_to(double r, const Point& to)
{
    return " A " + format_number(r) + ' ' + format_number(r) + " 0 0 1 " + fmt(to);
}

std::string circle_path(const Point& c, double r)
{
    const Point e(r, 0.0);
    return "M " + fmt(c + e) + arc_to(r, c - e) + arc_to(r, c + e) + " Z";
}

std::string stadium_path(const Point& a, const Point& b, double r)
{
    const double len = (b - a).norm();
    if (len == 0.0) return circle_path(a, r);
    const Point u = (b - a) / len;
    const Point left(-u.y(), u.x());
    return "M " + fmt(a - r * left) + " L " + fmt(b - r * left) + arc_to(r, b + r * left) + " L " +
           fmt(a + r * left) + arc_to(r, a - r * left) + " Z";
}

std::string rounded_path(const RoundedBody& body)
{
    const double r = body.radius();
    const ErodedBody& core = body.core();
    if (const auto* p = std::get_if<Point>(&core.shape())) return circle_path(*p, r);
    if (const auto* s = std::get_if<Segment>(&core.shape())) return stadium_path(s->a, s->b, r);
    const auto* poly = std::get_if<ConvexPolygon>(&core.shape());
    if (!poly) return {};
    const auto& v = poly->vertices();
    if (r == 0.0) return polygon_path(v);
    const std::size_t n = v.size();
    std::vector<Point> normal(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point d = (v[(i + 1) % n] - v[i]).normalized();
        normal[i] = Point(d.y(), -d.x());
    }
    std::string out = "M " + fmt(v[0] + r * normal[0]);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (i + 1) % n;
        out += " L " + fmt(v[k] + r * normal[i]);
        out += arc_to(r, v[k] + r * normal[k]);
    }
    return out + " Z";
}

} // namespace

std::string shape_json(const MinimizerShape& shape)
{
    ordered_json params;
    if (const auto* d = std::get_if<Disk>(&shape.geometry)) {
        params = {{"center", point_json(d->center)}, {"radius", r9(d->radius)}};
    } else if (const auto* s = std::get_if<Stadium>(&shape.geometry)) {
        params = {{"a", point_json(s->axis.a)},
                  {"b", point_json(s->axis.b)},
                  {"length", r9(s->axis.length())},
                  {"radius", r9(s->radius)}};
    } else {
        const auto& b = std::get<RoundedBody>(shape.geometry);
        params = {{"radius", r9(b.radius())}, {"core", core_json(b.core())}};
    }
    ordered_json j{{"type", to_string(shape.kind())},
                   {"parameters", std::move(params)},
                   {"v", r9(shape.volume)},
                   {"perimeter", r9(shape.perimeter)}};
    if (std::isfinite(shape.curvature))
        j["curvature"] = r9(shape.curvature);
    else
        j["curvature"] = "unbounded";
    return j.dump(2);
}

std::string svg_path(const MinimizerShape& shape)
{
    if (const auto* d = std::get_if<Disk>(&shape.geometry)) return circle_path(d->center, d->radius);
    if (const auto* s = std::get_if<Stadium>(&shape.geometry)) return stadium_path(s->axis.a, s->axis.b, s->radius);
    return rounded_path(std::get<RoundedBody>(shape.geometry));
}

std::string polygon_path(const std::vector<Point>& vertices)
{
    std::string out;
    for (std::size_t i = 0; i < vertices.size(); ++i) out += (i ? " L " : "M ") + fmt(vertices[i]);
    return out + " Z";
}

std::string contour_path(const Contour& contour)
{
    std::string out;
    for (const auto& s : contour.segments) {
        if (!out.empty()) out += ' ';
        out += "M " + fmt(s.a) + " L " + fmt(s.b);
    }
    return out;
}

std::string svg_document(const ConvexPolygon& domain, const std::vector<SvgLayer>& layers)
{
    Point lo = domain[0], hi = domain[0];
    for (const auto& p : domain.vertices()) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double pad = 0.05 * domain.scale();
    lo.array() -= pad;
    hi.array() += pad;
    const Point size = hi - lo;
    const double px = 600.0 / size.maxCoeff();

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(size.x() * px) << "\" height=\""
        << format_number(size.y() * px) << "\" viewBox=\"" << format_number(lo.x()) << ' ' << format_number(-hi.y())
        << ' ' << format_number(size.x()) << ' ' << format_number(size.y()) << "\">\n";
    // World frame is y-up.
    out << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linejoin=\"round\">\n";
    out << "<path d=\"" << polygon_path(domain.vertices())
        << "\" stroke=\"black\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>\n";
    for (const auto& layer : layers)
        out << "<path d=\"" << layer.path << "\" stroke=\"" << layer.stroke << "\" stroke-width=\""
            << format_number(layer.width) << "\" vector-effect=\"non-scaling-stroke\"/>\n";
    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace isoper
