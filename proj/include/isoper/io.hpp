#pragma once

// Domain files, shape export and SVG plots.

#include <iosfwd>
#include <string>
#include <vector>

#include "isoper/contour.hpp"
#include "isoper/family.hpp"

namespace isoper {

// {"vertices": [[x, y], ...]}. Throws Error{Parse} for malformed JSON and the
// validation errors of validate_polygon otherwise.
ConvexPolygon read_domain(std::istream& in);
ConvexPolygon read_domain_file(const std::string& path);

// {type, parameters, v, perimeter, curvature}; curvature "unbounded" at r = 0.
std::string shape_json(const MinimizerShape& shape);

// Closed SVG path: straight edges and circular arcs, in world coordinates.
std::string svg_path(const MinimizerShape& shape);

struct SvgLayer {
    std::string path;
    std::string stroke;
    double width = 1.0;
};

// Standalone document with a y-up world frame fitted around the domain.
std::string svg_document(const ConvexPolygon& domain, const std::vector<SvgLayer>& layers);

std::string polygon_path(const std::vector<Point>& vertices);
std::string contour_path(const Contour& contour);

} // namespace isoper
