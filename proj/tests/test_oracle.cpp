#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "isoper/crofton.hpp"
#include "isoper/oracle.hpp"
#include "test_support.hpp"

using namespace isoper;
using namespace isoper::testing;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;

template <class Inside>
double crofton_of(int n, Inside&& inside)
{
    GridFunction g(Point::Zero(), 1.0 / n, 1.0 / n, n, n);
    rasterize(g, inside);
    return crofton_perimeter(threshold(g, 0.5), 1.0 / n);
}

auto rotated_square(double side, double angle)
{
    return [=](const Point& x) {
        const Point y = x - Point(0.5, 0.5);
        const double a = std::cos(angle) * y.x() + std::sin(angle) * y.y();
        const double b = -std::sin(angle) * y.x() + std::cos(angle) * y.y();
        return std::abs(a) <= 0.5 * side && std::abs(b) <= 0.5 * side;
    };
}

double polygon_perimeter(const std::vector<Point>& v)
{
    double p = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) p += (v[(i + 1) % v.size()] - v[i]).norm();
    return p;
}

ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no exception");
    return ErrorKind::Parse;
}

} // namespace

TEST_CASE("crofton directions")
{
    double total = 0.0;
    for (const auto& d : crofton_directions()) {
        total += d.weight;
        CHECK(d.weight > 0.0);
        CHECK(std::gcd(std::abs(d.dx), std::abs(d.dy)) == 1);
    }
    CHECK(total == Approx(kPi));
    // A single pixel: every direction sees two crossings of width h / |d|.
    Mask one = Mask::Zero(5, 5);
    one(2, 2) = 1;
    double expected = 0.0;
    for (const auto& d : crofton_directions()) expected += d.weight / std::hypot(d.dx, d.dy);
    CHECK(crofton_perimeter(one, 0.5) == Approx(expected * 0.5));
    CHECK(crofton_perimeter(Mask::Zero(4, 4), 1.0) == 0.0);
}

TEST_CASE("crofton_perimeter examples")
{
    CHECK(crofton_of(256, rotated_square(0.5, 0.0)) == Approx(2.0).epsilon(0.02));
    CHECK(crofton_of(256, [](const Point& x) { return (x - Point(0.5, 0.5)).norm() <= 0.3; }) ==
          Approx(2.0 * kPi * 0.3).epsilon(0.02));
    CHECK(crofton_of(256, rotated_square(0.5, kPi / 4)) == Approx(2.0).epsilon(0.02));
}

TEST_CASE("property: crofton estimate is rotation robust")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0.0, kPi / 2);
    for (int k = 0; k < 6; ++k) {
        const double th = angle(rng);
        const double base = crofton_of(200, rotated_square(0.45, th));
        const double turned = crofton_of(200, rotated_square(0.45, th + kPi / 4));
        CHECK(std::abs(base - turned) <= 0.03 * base);
    }
}

TEST_CASE("sample_competitor examples")
{
    const auto fam = build_family(unit_square());
    const double slack = kEpsGeom;

    const Competitor cut = sample_competitor(fam, 0.9, Sampler::HalfPlane, 1);
    CHECK(std::abs(cut.area - 0.9) <= 1e-6);
    CHECK(cut.inside(fam.domain(), slack));
    REQUIRE(std::holds_alternative<std::vector<Point>>(cut.shape));
    const auto& cv = std::get<std::vector<Point>>(cut.shape);
    CHECK(polygon_signed_area(cv) == Approx(cut.area));
    CHECK(polygon_perimeter(cv) == Approx(cut.perimeter));

    const Competitor hull = sample_competitor(fam, 0.9, Sampler::Hull, 7, 12);
    CHECK(std::abs(hull.area - 0.9) <= 1e-6);
    CHECK(hull.inside(fam.domain(), slack));
    const auto& hv = std::get<std::vector<Point>>(hull.shape);
    CHECK(hv.size() >= 3);
    CHECK(convex_hull(hv).size() == hv.size());

    const Competitor disk = sample_competitor(fam, 0.5, Sampler::Disk, 3);
    REQUIRE(std::holds_alternative<Disk>(disk.shape));
    CHECK(std::get<Disk>(disk.shape).radius == Approx(0.398942).epsilon(1e-6));
    CHECK(disk.inside(fam.domain(), slack));
    CHECK(disk.sampler == Sampler::Disk);
    CHECK(disk.seed == 3);

    CHECK(kind_of([&] { sample_competitor(fam, 0.9, Sampler::Disk, 1); }) == ErrorKind::SamplerInfeasible);
    CHECK(kind_of([&] { sample_competitor(fam, 1.0, Sampler::Hull, 1); }) == ErrorKind::VolumeOutOfRange);
    CHECK(kind_of([&] { sample_competitor(fam, 0.0, Sampler::HalfPlane, 1); }) == ErrorKind::VolumeOutOfRange);

    // Same seed, same competitor.
    const Competitor again = sample_competitor(fam, 0.9, Sampler::Hull, 7, 12);
    CHECK(again.perimeter == hull.perimeter);
}

TEST_CASE("verify_minimality examples")
{
    const auto sq = build_family(unit_square());
    const auto rep = verify_minimality(sq, 0.9, 10000, 11);
    CHECK(rep.pass());
    CHECK(rep.violations.empty());
    CHECK(rep.min_gap > 0.0);
    CHECK(rep.kind == ShapeKind::Rounded);
    int total = 0;
    for (int c : rep.histogram) total += c;
    CHECK(total == 10000);

    // Translated disks tie with the centred one below |H|.
    const auto ball = verify_minimality(sq, kPi / 4, 10000, 12);
    CHECK(ball.pass());
    CHECK(std::abs(ball.min_gap) <= kViolationTol);
    CHECK(ball.min_sampler == Sampler::Disk);

    const auto rect = verify_minimality(build_family(rect21()), 1.2, 10000, 13);
    CHECK(rect.pass());
    CHECK(rect.perimeter == Approx(3.970797).epsilon(1e-6));
    CHECK(rect.kind == ShapeKind::Stadium);
}

TEST_CASE("property: competitors are admissible and never beat E(v)")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    for (int trial = 0; trial < 8; ++trial) {
        const auto fam = build_family(random_convex_polygon(rng));
        const double v = unit(rng) * fam.domain_volume();
        const double perimeter = fam.minimizer(v).perimeter;
        for (int k = 0; k < 200; ++k) {
            const Sampler s = k % 3 == 0 ? Sampler::Hull : k % 3 == 1 ? Sampler::HalfPlane : Sampler::Disk;
            if (s == Sampler::Disk && v > fam.ball_volume()) continue;
            const Competitor c = sample_competitor(fam, v, s, 1000 * trial + k);
            CHECK(std::abs(c.area - v) <= 1e-6 * fam.domain_volume());
            CHECK(c.inside(fam.domain(), kEpsGeom * fam.scale()));
            CHECK(c.perimeter >= perimeter - kViolationTol);
        }
    }
}

TEST_CASE("anneal_discrete schedule checks")
{
    const auto sq = unit_square();
    CHECK(kind_of([&] { anneal_discrete(sq, 0.9, 300, Schedule{}, 0); }) == ErrorKind::ScheduleInvalid);
    CHECK(kind_of([&] { anneal_discrete(sq, 0.9, 32, Schedule{2.0, 0.0, 10}, 0); }) == ErrorKind::ScheduleInvalid);
    CHECK(kind_of([&] { anneal_discrete(sq, 0.9, 32, Schedule{2.0, 1.5, 10}, 0); }) == ErrorKind::ScheduleInvalid);
    CHECK(kind_of([&] { anneal_discrete(sq, 0.9, 32, Schedule{0.0, 0.97, 10}, 0); }) == ErrorKind::ScheduleInvalid);
    CHECK(kind_of([&] { anneal_discrete(sq, 0.9, 32, Schedule{2.0, 0.97, 0}, 0); }) == ErrorKind::ScheduleInvalid);
    CHECK(kind_of([&] { anneal_discrete(sq, 1.0, 32, Schedule{}, 0); }) == ErrorKind::VolumeOutOfRange);
}

TEST_CASE("anneal_discrete invariants")
{
    const auto sq = unit_square();
    const AnnealResult r = anneal_discrete(sq, 0.6, 32, Schedule{2.0, 0.95, 120}, 4);
    CHECK(r.in_count == static_cast<int>(std::lround(0.6 * 32 * 32)));
    CHECK(r.best.cast<int>().sum() == r.in_count);
    CHECK(r.cell == 1.0 / 32);
    REQUIRE(r.history.size() == 120);
    for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] <= r.history[k - 1]);
    CHECK(crofton_perimeter(r.best, r.cell) == Approx(r.perimeter).epsilon(1e-9));
    // Never below the isoperimetric floor by more than the estimator slack.
    CHECK(r.perimeter >= 0.97 * 2.0 * std::sqrt(kPi * r.in_count * r.cell * r.cell));

    // Deterministic given the seed.
    const AnnealResult again = anneal_discrete(sq, 0.6, 32, Schedule{2.0, 0.95, 120}, 4);
    CHECK(again.perimeter == r.perimeter);
    CHECK((again.best == r.best).all());
}

TEST_CASE("anneal_discrete examples")
{
    const auto fam = build_family(unit_square());
    const auto ball = anneal_best_of(fam.domain(), kPi / 4, 64, Schedule{}, 0);
    CHECK(ball.perimeter == Approx(kPi).epsilon(0.05));

    const auto rect = build_family(rect21());
    const auto r = anneal_discrete(rect.domain(), 1.9, 64, Schedule{}, 0);
    CHECK(r.perimeter == Approx(rect.minimizer(1.9).perimeter).epsilon(0.05));
}

TEST_CASE("write_pgm")
{
    Mask m = Mask::Zero(2, 3);
    m(0, 0) = 1;
    std::ostringstream out;
    write_pgm(out, m);
    const std::string s = out.str();
    CHECK(s.rfind("P5\n3 2\n255\n", 0) == 0);
    REQUIRE(s.size() == 11 + 6);
    // Bottom row (j = 0) is written last.
    CHECK(static_cast<unsigned char>(s[11 + 3]) == 255);
    CHECK(s[11] == 0);
}

TEST_CASE("verify report json")
{
    const auto fam = build_family(unit_square());
    const auto rep = verify_minimality(fam, 0.9, 100, 1);
    std::ostringstream out;
    write_verify_json(out, rep);
    CHECK(out.str().find("\"pass\": true") != std::string::npos);
    CHECK(out.str().find("\"case\": \"Rounded\"") != std::string::npos);
}
