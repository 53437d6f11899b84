#include "isoper/contour.hpp"

#include <array>

namespace isoper {

namespace {

// Calls emit(a, b) for every oriented boundary segment of {u > t}.
template <class Emit>
void march(const GridFunction& u, double t, Emit&& emit)
{
    const auto& f = u.values();
    for (int j = 0; j + 1 < u.ny(); ++j) {
        for (int i = 0; i + 1 < u.nx(); ++i) {
            // Corners counter-clockwise from the lower left.
            const std::array<double, 4> val{f(j, i), f(j, i + 1), f(j + 1, i + 1), f(j + 1, i)};
            const int mask = (val[0] > t) | (val[1] > t) << 1 | (val[2] > t) << 2 | (val[3] > t) << 3;
            if (mask == 0 || mask == 15) continue;

            const std::array<Point, 4> pos{u.center(i, j), u.center(i + 1, j), u.center(i + 1, j + 1),
                                           u.center(i, j + 1)};
            std::array<Point, 4> cross_at;
            std::array<bool, 4> exits{};
            int n = 0;
            for (int k = 0; k < 4; ++k) {
                const int l = (k + 1) & 3;
                const bool in_k = val[k] > t;
                if (in_k == (val[l] > t)) continue;
                const double s = (t - val[k]) / (val[l] - val[k]);
                cross_at[n] = pos[k] + s * (pos[l] - pos[k]);
                exits[n] = in_k;
                ++n;
            }

            if (n == 2) {
                if (exits[0])
                    emit(cross_at[0], cross_at[1]);
                else
                    emit(cross_at[1], cross_at[0]);
                continue;
            }
            // Saddle: crossings alternate exit/enter. A connected interior pairs
            // each exit with the next entry, a split one with the previous.
            const bool connected = 0.25 * (val[0] + val[1] + val[2] + val[3]) > t;
            for (int k = 0; k < 4; ++k) {
                if (!exits[k]) continue;
                emit(cross_at[k], cross_at[connected ? (k + 1) & 3 : (k + 3) & 3]);
            }
        }
    }
}

} // namespace

Contour marching_squares(const GridFunction& u, double t)
{
    Contour c;
    const Point o = u.origin();
    march(u, t, [&](const Point& a, const Point& b) {
        c.segments.push_back({a, b});
        c.length += (b - a).norm();
        c.area += 0.5 * cross(a - o, b - o);
    });
    return c;
}

double contour_length(const GridFunction& u, double t)
{
    double length = 0.0;
    march(u, t, [&](const Point& a, const Point& b) { length += (b - a).norm(); });
    return length;
}

double Contour::hull_area() const
{
    if (segments.empty()) return 0.0;
    std::vector<Point> pts;
    pts.reserve(segments.size());
    const Point o = segments.front().a;
    for (const auto& s : segments) pts.push_back(s.a - o);
    const auto hull = convex_hull(std::move(pts));
    return hull.size() < 3 ? 0.0 : polygon_signed_area(hull);
}

} // namespace isoper
