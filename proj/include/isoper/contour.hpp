#pragma once

// Marching squares over cell-centre samples: the boundary of {u > t} as
// oriented segments (region on the left), with linear interpolation along
// the edges of the dual lattice.

#include <vector>

#include "isoper/grid.hpp"

namespace isoper {

struct ContourSegment {
    Point a;
    Point b;
};

struct Contour {
    std::vector<ContourSegment> segments;
    double length = 0.0;
    // Area enclosed by the oriented segments (Green's formula).
    double area = 0.0;

    // Area of the convex hull of the segment endpoints.
    double hull_area() const;
    // hull_area() - area; zero for a convex level set.
    double convexity_defect() const { return hull_area() - area; }
};

// Saddle cells are resolved by the mean of the four corners. Closed curves
// require zero samples along the grid border, which BV+_0 grids have.
Contour marching_squares(const GridFunction& u, double t);

// Length only; avoids storing segments.
double contour_length(const GridFunction& u, double t);

} // namespace isoper
