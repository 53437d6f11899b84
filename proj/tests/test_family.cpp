#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "isoper/family.hpp"
#include "test_support.hpp"

using namespace isoper;
using namespace isoper::testing;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;
const double kSquareR = std::sqrt(0.1 / (4.0 - kPi));

double shape_area(const MinimizerShape& s)
{
    struct Visitor {
        double operator()(const Disk& d) const { return kPi * d.radius * d.radius; }
        double operator()(const Stadium& st) const
        {
            return kPi * st.radius * st.radius + 2.0 * st.radius * st.axis.length();
        }
        double operator()(const RoundedBody& b) const { return rounded_measures(b).area; }
    };
    return std::visit(Visitor{}, s.geometry);
}

} // namespace

TEST_CASE("build_family thresholds")
{
    const auto sq = build_family(unit_square());
    CHECK(sq.ball_volume() == Approx(kPi / 4.0));
    CHECK(sq.hull_volume() == Approx(kPi / 4.0));
    CHECK(sq.domain_volume() == Approx(1.0));

    const auto rect = build_family(rect21());
    CHECK(rect.ball_volume() == Approx(kPi / 4.0));
    CHECK(rect.hull_volume() == Approx(kPi / 4.0 + 1.0).epsilon(1e-8));
    CHECK(rect.domain_volume() == Approx(2.0));

    const int n = 64;
    const auto gon = build_family(regular_polygon(n, 1.0));
    const double inr = std::cos(kPi / n);
    const double area = 0.5 * n * std::sin(2.0 * kPi / n);
    CHECK(gon.ball_volume() == Approx(kPi * inr * inr).epsilon(1e-10));
    CHECK(gon.hull_volume() == Approx(gon.ball_volume()).epsilon(1e-8));
    CHECK(gon.domain_volume() == Approx(area).epsilon(1e-12));
    // Circumscribed n-gon of the inscribed disk minus the disk.
    const double gap = inr * inr * (n * std::tan(kPi / n) - kPi);
    CHECK(area - gon.hull_volume() == Approx(gap).epsilon(1e-6));
}

TEST_CASE("radius_for_volume")
{
    const auto sq = build_family(unit_square());
    CHECK(sq.radius_for_volume(0.9) == Approx(kSquareR).epsilon(1e-9));
    CHECK(sq.radius_for_volume(1.0) == 0.0);
    CHECK(std::abs(sq.opening_area(sq.radius_for_volume(0.9)) - 0.9) <= kTolArea);

    const auto rect = build_family(rect21());
    CHECK(rect.radius_for_volume(1.9) == Approx(kSquareR).epsilon(1e-9));
    CHECK_THROWS_AS(rect.radius_for_volume(1.2), Error);
    CHECK_THROWS_AS(rect.radius_for_volume(2.1), Error);
}

TEST_CASE("minimizer trichotomy examples")
{
    const auto sq = build_family(unit_square());
    auto s = sq.minimizer(kPi / 4.0);
    REQUIRE(s.kind() == ShapeKind::Disk);
    CHECK((std::get<Disk>(s.geometry).center - Point(0.5, 0.5)).norm() < 1e-8);
    CHECK(std::get<Disk>(s.geometry).radius == Approx(0.5));
    CHECK(s.perimeter == Approx(kPi));

    const auto rect = build_family(rect21());
    s = rect.minimizer(1.2);
    REQUIRE(s.kind() == ShapeKind::Stadium);
    const double ell = 1.2 - kPi / 4.0;
    CHECK(ell == Approx(0.414602).epsilon(1e-6));
    CHECK(std::get<Stadium>(s.geometry).axis.length() == Approx(ell).epsilon(1e-9));
    CHECK((std::get<Stadium>(s.geometry).axis.midpoint() - Point(1.0, 0.5)).norm() < 1e-8);
    CHECK(s.perimeter == Approx(kPi + 2.0 * ell).epsilon(1e-12));
    CHECK(s.perimeter == Approx(3.970797).epsilon(1e-6));

    s = sq.minimizer(0.9);
    REQUIRE(s.kind() == ShapeKind::Rounded);
    CHECK(std::abs(s.perimeter - (4.0 - (8.0 - 2.0 * kPi) * kSquareR)) < 1e-9);

    s = sq.minimizer(1.0);
    REQUIRE(s.kind() == ShapeKind::Rounded);
    CHECK(s.perimeter == Approx(4.0));
    CHECK(std::isinf(s.curvature));

    CHECK_THROWS_AS(sq.minimizer(0.0), Error);
    CHECK_THROWS_AS(sq.minimizer(-1.0), Error);
    CHECK_THROWS_AS(sq.minimizer(1.01), Error);
    try {
        sq.minimizer(1.5);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::VolumeOutOfRange);
    }
}

TEST_CASE("seam conventions")
{
    const auto rect = build_family(rect21());
    CHECK(rect.minimizer(rect.ball_volume()).kind() == ShapeKind::Disk);
    CHECK(rect.minimizer(rect.hull_volume()).kind() == ShapeKind::Stadium);
    CHECK(rect.minimizer(rect.hull_volume()).perimeter == Approx(kPi + 2.0).epsilon(1e-8));

    const auto sq = build_family(unit_square());
    CHECK(sq.minimizer(kPi / 4.0).kind() == ShapeKind::Disk);
    CHECK(sq.minimizer(kPi / 4.0 + 1e-6).kind() == ShapeKind::Rounded);
}

TEST_CASE("curvature examples")
{
    const auto sq = build_family(unit_square());
    CHECK(sq.curvature(kPi / 4.0) == Approx(2.0));
    CHECK(sq.curvature(0.9) == Approx(1.0 / kSquareR).epsilon(1e-9));
    CHECK(std::isinf(sq.curvature(1.0)));
    CHECK(build_family(rect21()).curvature(1.2) == Approx(2.0));
}

TEST_CASE("member and rank examples")
{
    const auto sq = build_family(unit_square());
    CHECK(sq.member(0.9, Point(0.5, 0.5)));
    CHECK_FALSE(sq.member(0.9, Point(0.99, 0.99)));
    CHECK(sq.member(1.0, Point(1.0, 1.0)));
    CHECK(sq.member(1.0, Point(0.0, 0.37)));

    CHECK(sq.rank(Point(0.5, 0.5)) == 0.0);
    CHECK(sq.rank(Point(0.5, 0.75)) == Approx(kPi * 0.0625).epsilon(1e-12));
    CHECK(sq.rank(Point(1.0, 1.0)) == Approx(1.0).epsilon(1e-9));
    CHECK(sq.rank(Point(2.0, 2.0)) == 1.0);

    // Diagonal point (x, x) near a corner enters the opening of radius
    // r = sqrt2 (1 - x) / (sqrt2 - 1).
    const double x = 0.9;
    const double r = std::sqrt(2.0) * (1.0 - x) / (std::sqrt(2.0) - 1.0);
    CHECK(sq.rank(Point(x, x)) == Approx(1.0 - (4.0 - kPi) * r * r).epsilon(1e-9));

    // Stadium regime on the rectangle: point above the axis end.
    const auto rect = build_family(rect21());
    const Point p(1.45, 0.8);
    const double needed = 2.0 * (0.45 - std::sqrt(0.25 - 0.09));
    CHECK(needed == Approx(0.1));
    CHECK(rect.rank(p) == Approx(kPi / 4.0 + 2.0 * 0.5 * needed).epsilon(1e-12));
}

TEST_CASE("property: minimizer area and containment in the domain")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto fam = build_family(trial == 0 ? rect21() : random_convex_polygon(rng));
        const double slack = 1e-9 * fam.scale();
        for (int k = 0; k < 30; ++k) {
            const double v = fam.domain_volume() * (0.01 + 0.99 * unit(rng));
            const auto s = fam.minimizer(v);
            CHECK(std::abs(shape_area(s) - v) <= 1e-9 * fam.domain_volume());
            for (const auto& b : s.boundary(0.05)) CHECK(fam.domain().contains(b, slack));
            if (v <= fam.ball_volume())
                CHECK(s.kind() == ShapeKind::Disk);
            else if (v <= fam.hull_volume())
                CHECK(s.kind() == ShapeKind::Stadium);
            else
                CHECK(s.kind() == ShapeKind::Rounded);
        }
    }
}

TEST_CASE("property: nestedness and largest ball containment")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int violations = 0;
    for (int trial = 0; trial < 4; ++trial) {
        const auto fam = build_family(random_convex_polygon(rng));
        for (int k = 0; k < 500; ++k) {
            double v1 = fam.domain_volume() * unit(rng);
            double v2 = fam.domain_volume() * unit(rng);
            if (v1 > v2) std::swap(v1, v2);
            if (v1 <= 0.0) continue;
            const Point x = random_point_in(fam.domain(), rng);
            if (fam.member(v1, x) && !fam.member(v2, x)) ++violations;
        }
        const auto& b = fam.balls();
        for (int k = 0; k < 200; ++k) {
            const double a = 2.0 * kPi * unit(rng);
            const Point x = b.midpoint + b.inradius * std::sqrt(unit(rng)) * Point(std::cos(a), std::sin(a));
            const double v = fam.ball_volume() + (fam.domain_volume() - fam.ball_volume()) * unit(rng);
            if (!fam.member(v, x)) ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("property: perimeter and curvature monotone, seams continuous, isoperimetric floor")
{
    std::mt19937_64 rng(9);
    std::vector<ConvexPolygon> polys{unit_square(), rect21()};
    for (int i = 0; i < 4; ++i) polys.push_back(random_convex_polygon(rng));
    for (const auto& poly : polys) {
        const auto fam = build_family(poly);
        double prev_p = 0.0, prev_k = 0.0;
        for (int i = 1; i < 200; ++i) {
            const double v = fam.domain_volume() * i / 200.0;
            const auto s = fam.minimizer(v);
            CHECK(s.perimeter >= prev_p - 1e-12);
            // Curvature falls with the disk radius, is flat on the stadium
            // range and strictly increases once the opening takes over.
            if (v <= fam.ball_volume())
                CHECK(s.curvature == Approx(std::sqrt(kPi / v)).epsilon(1e-12));
            else if (i > 1 && v * (1.0 - 1.0 / i) >= fam.ball_volume())
                CHECK(s.curvature >= prev_k - 1e-12);
            if (v > fam.hull_volume() && fam.domain_volume() * (i - 1) / 200.0 >= fam.hull_volume())
                CHECK(s.curvature > prev_k);
            CHECK(s.perimeter >= 2.0 * std::sqrt(kPi * v) - 1e-12);
            if (s.kind() != ShapeKind::Disk) CHECK(s.perimeter > 2.0 * std::sqrt(kPi * v));
            prev_p = s.perimeter;
            prev_k = s.curvature;
        }
        for (const double seam : {fam.ball_volume(), fam.hull_volume()}) {
            const double at = fam.minimizer(seam).perimeter;
            const double above = fam.minimizer(seam * (1.0 + 1e-13)).perimeter;
            CHECK(std::abs(above - at) <= 1e-8);
        }
        // Both case formulas evaluated at each seam.
        const double rstar = fam.inradius();
        const double len = fam.balls().center_length();
        CHECK(std::abs(2.0 * std::sqrt(kPi * fam.ball_volume()) - 2.0 * kPi * rstar) <= 1e-9);
        const double stadium_p = 2.0 * kPi * rstar + 2.0 * (fam.hull_volume() - kPi * rstar * rstar) / (2.0 * rstar);
        const double rounded_p = rounded_measures(opening(poly, rstar)).perimeter;
        CHECK(std::abs(stadium_p - rounded_p) <= 1e-9);
        CHECK(std::abs(stadium_p - (2.0 * kPi * rstar + 2.0 * len)) <= 1e-9);
    }
}

TEST_CASE("property: minimizers are convex")
{
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 6; ++trial) {
        const auto fam = build_family(random_convex_polygon(rng));
        for (int k = 0; k < 10; ++k) {
            const auto s = fam.minimizer(fam.domain_volume() * (0.05 + 0.95 * unit(rng)));
            const auto pts = s.boundary(0.02);
            // Supporting-line test: every sample lies left of every boundary chord.
            const double tol = 1e-9 * fam.scale();
            bool convex = true;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const Point a = pts[i], b = pts[(i + 1) % pts.size()];
                if ((b - a).norm() < 1e-12) continue;
                const Point dir = (b - a).normalized();
                for (const auto& q : pts)
                    if (cross(dir, q - a) < -tol) convex = false;
            }
            CHECK(convex);
        }
    }
}

TEST_CASE("property: rank level sets match membership")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 3; ++trial) {
        const auto fam = build_family(trial == 0 ? rect21() : random_convex_polygon(rng));
        const double tol = 1e-7 * fam.domain_volume();
        for (int k = 0; k < 200; ++k) {
            const Point x = random_point_in(fam.domain(), rng);
            const double rho = fam.rank(x);
            CHECK(fam.member(std::min(rho + tol, fam.domain_volume()), x));
            if (rho > 2.0 * tol) CHECK_FALSE(fam.member(rho - tol, x));
        }
    }
}
