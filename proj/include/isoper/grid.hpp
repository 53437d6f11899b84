#pragma once

// Nonnegative cell-centred samples on a uniform rectangular grid, plus the
// text file format and rasterisation helpers.
//
// Cell (i, j) covers [x0 + i dx, x0 + (i+1) dx] x [y0 + j dy, y0 + (j+1) dy];
// its value is the sample at the cell centre. Row j = 0 is the smallest y.

#include <cstdint>
#include <iosfwd>
#include <optional>

#include <Eigen/Core>

#include "isoper/geometry.hpp"

namespace isoper {

using GridValues = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Mask = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class GridFunction {
public:
    GridFunction(Point origin, double dx, double dy, int nx, int ny);

    const Point& origin() const { return origin_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    int nx() const { return static_cast<int>(values_.cols()); }
    int ny() const { return static_cast<int>(values_.rows()); }
    double cell_area() const { return dx_ * dy_; }
    // Resolution h = max(dx, dy).
    double spacing() const { return std::max(dx_, dy_); }

    // values()(j, i) is cell (i, j).
    GridValues& values() { return values_; }
    const GridValues& values() const { return values_; }
    double& operator()(int i, int j) { return values_(j, i); }
    double operator()(int i, int j) const { return values_(j, i); }

    Point center(int i, int j) const
    {
        return {origin_.x() + (i + 0.5) * dx_, origin_.y() + (j + 0.5) * dy_};
    }

    const std::optional<ConvexPolygon>& domain() const { return domain_; }
    void set_domain(ConvexPolygon domain) { domain_ = std::move(domain); }

    // Same origin, spacing and dimensions (domain not compared).
    bool same_lattice(const GridFunction& other) const;

    // Copy of the lattice and domain with all values zero.
    GridFunction zeros_like() const;

private:
    Point origin_;
    double dx_;
    double dy_;
    GridValues values_;
    std::optional<ConvexPolygon> domain_;
};

// Square cells of side max(width, height) / n over the domain's bounding box,
// padded by `margin` cells on every side. The domain is attached.
GridFunction covering(const ConvexPolygon& domain, int n, int margin = 1);

// Values finite and >= 0 (Error{InvalidGrid}). With a domain attached: the
// grid covers its bounding box with a one-cell margin and cells centred
// outside the closed domain hold 0 (Error{DomainMismatch}).
void validate_grid(const GridFunction& u);

// Text format: "nx ny x0 y0 dx dy", then ny rows of nx values, smallest y
// first. Throws Error{Parse}; no value checks beyond parsing.
GridFunction read_grid(std::istream& in);
void write_grid(std::ostream& out, const GridFunction& u);

// Sets cells whose centre satisfies `inside` to `value`.
template <class Inside>
void rasterize(GridFunction& g, Inside&& inside, double value = 1.0)
{
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            if (inside(g.center(i, j))) g(i, j) = value;
}

// Each cell gets value times the fraction of an s x s subsample lattice
// that falls inside.
template <class Inside>
void rasterize_coverage(GridFunction& g, Inside&& inside, int s = 8, double value = 1.0)
{
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            int hits = 0;
            for (int b = 0; b < s; ++b)
                for (int a = 0; a < s; ++a) {
                    const Point p(g.origin().x() + (i + (a + 0.5) / s) * g.dx(),
                                  g.origin().y() + (j + (b + 0.5) / s) * g.dy());
                    hits += inside(p) ? 1 : 0;
                }
            g(i, j) = value * hits / (s * s);
        }
    }
}

// Cells with value > t.
Mask threshold(const GridFunction& u, double t);

} // namespace isoper
