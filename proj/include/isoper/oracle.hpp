#pragma once

// Independent evidence that E(v) minimizes perimeter: random area-matched
// convex competitors and a simulated-annealing search over binary cell
// images scored with the Crofton estimator.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "isoper/family.hpp"
#include "isoper/grid.hpp"

namespace isoper {

enum class Sampler { Hull, HalfPlane, Disk };

const char* to_string(Sampler s);

struct Competitor {
    // Polygon vertices (CCW) or a disk.
    std::variant<std::vector<Point>, Disk> shape;
    double area = 0.0;
    double perimeter = 0.0;
    Sampler sampler = Sampler::Hull;
    std::uint64_t seed = 0;

    // Vertices, or the disk's axis extremes, within Omega's half-planes.
    bool inside(const ConvexPolygon& domain, double slack) const;
};

inline constexpr int kHullPoints = 12;

// Hull: convex hull of `hull_points` points (three in four on the domain
// boundary, the rest uniform inside), shrunk about its centroid to area v.
// HalfPlane: the domain cut by a random half-plane, offset bisected to area v.
// Disk: area-v disk centred uniformly in the erosion by its radius; only for
// v <= |B|. Throws Error{SamplerInfeasible | VolumeOutOfRange}.
Competitor sample_competitor(const MinimizerFamily& family, double v, Sampler sampler, std::uint64_t seed,
                             int hull_points = kHullPoints);

struct Violation {
    Competitor competitor;
    double gap;  // P(F) - P(E)
};

struct VerifyReport {
    double volume = 0.0;
    ShapeKind kind = ShapeKind::Disk;
    double perimeter = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    double min_gap = 0.0;
    double min_competitor_perimeter = 0.0;
    Sampler min_sampler = Sampler::Hull;
    // Gap histogram over [0, max gap] in equal bins.
    std::vector<int> histogram;
    double histogram_width = 0.0;
    std::vector<Violation> violations;

    bool pass() const { return violations.empty(); }
};

inline constexpr double kViolationTol = 1e-9;

// Cycles through the samplers (Disk only when v <= |B|); competitor i uses
// seed mixed with i.
VerifyReport verify_minimality(const MinimizerFamily& family, double v, int samples, std::uint64_t seed);

struct Schedule {
    double t0 = 2.0;     // initial temperature in cell sides
    double ratio = 0.97; // per sweep
    int sweeps = 400;
};

struct AnnealResult {
    Mask best;
    double perimeter = 0.0;
    double cell = 0.0;
    Point origin = Point::Zero();
    int in_count = 0;
    std::uint64_t seed = 0;
    // Best-so-far energy after every sweep.
    std::vector<double> history;
};

inline constexpr int kMaxAnnealGrid = 256;

// Fixed-count Metropolis chain over the cells centred in the domain (square
// cells of side max bbox side / grid_n). Each move swaps a boundary in-cell
// with an out-cell adjacent to the set. Throws Error{ScheduleInvalid}.
AnnealResult anneal_discrete(const ConvexPolygon& domain, double v, int grid_n, const Schedule& schedule,
                             std::uint64_t seed);

// Best of `seeds` chains with seeds seed, seed + 1, ...
AnnealResult anneal_best_of(const ConvexPolygon& domain, double v, int grid_n, const Schedule& schedule,
                            std::uint64_t seed, int seeds = 3);

// Binary PGM (P5), top row = largest y.
void write_pgm(std::ostream& out, const Mask& mask);

void write_verify_json(std::ostream& out, const VerifyReport& report, const AnnealResult* anneal = nullptr,
                       double anneal_tolerance = 0.05);

} // namespace isoper
