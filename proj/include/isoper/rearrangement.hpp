#pragma once

// Equimeasurable convex rearrangement of grid functions: the distribution
// function, the decreasing rearrangement u*, u~ = u* o rank, and the
// coarea-based BV comparison.

#include <iosfwd>
#include <vector>

#include "isoper/family.hpp"
#include "isoper/grid.hpp"

namespace isoper {

// |{u > t}| on the grid: cell count times cell area.
double distribution(const GridFunction& u, double t);

// u*(v) = sup{t : |{u > t}| >= v}, from the cell values sorted descending.
class Profile {
public:
    explicit Profile(const GridFunction& u);

    double operator()(double v) const;
    double cell_area() const { return cell_area_; }
    // ess sup u = u*(0).
    double max() const { return sorted_.empty() ? 0.0 : sorted_.front(); }
    // |{u > 0}|.
    double support() const { return support_; }
    const std::vector<double>& sorted() const { return sorted_; }

    // Largest drop between consecutive sorted values (including the final
    // drop to zero), relative to max(). Small means u* is close to continuous.
    double max_relative_jump() const;

private:
    std::vector<double> sorted_;
    double cell_area_;
    double support_;
};

Profile decreasing_rearrangement(const GridFunction& u);

// Rank of every cell centre, zero-padded to u's lattice.
GridValues rank_field(const GridFunction& u, const MinimizerFamily& family);

// u~(x) = u*(rank(x)) inside the domain, 0 outside.
// Throws Error{DomainMismatch} unless u carries the family's domain.
GridFunction convex_rearrangement(const GridFunction& u, const MinimizerFamily& family);

struct BvNorm {
    double l1 = 0.0;
    double tv = 0.0;
    double bv = 0.0;
};

// Thresholds t_k = (k - 1/2) max(u) / levels, k = 1..levels.
std::vector<double> level_thresholds(double max_value, int levels);

// l1 = sum u dA; tv = midpoint-rule coarea integral of marching-squares
// contour lengths. levels >= 16 (std::invalid_argument otherwise).
BvNorm bv_norm_estimate(const GridFunction& u, int levels);

inline constexpr int kDefaultLevels = 256;
inline constexpr double kEquimeasurabilityC = 4.0;
inline constexpr double kBvTolerance = 0.02;
// u* counts as continuous when no sorted-value drop exceeds this share of max.
inline constexpr double kContinuityJump = 0.05;

struct LevelRow {
    double t;
    double mu_u;
    double mu_r;
    double perimeter_u;
    double perimeter_r;
    double defect;            // |mu_u - mu_r|
    double defect_bound;      // C h (perimeter_u + 1)
    double convexity_defect;  // hull area - area of {u~ > t}
    double convexity_bound;   // 2 h perimeter_r
};

struct RearrangementReport {
    std::vector<LevelRow> rows;
    BvNorm norm_u;
    BvNorm norm_r;
    double spacing = 0.0;
    double max_defect = 0.0;
    // max over levels of defect / defect_bound; <= 1 passes.
    double max_relative_defect = 0.0;
    double max_relative_convexity = 0.0;
    bool equimeasurable = false;
    bool bv_inequality = false;
    bool convex_levels = false;
    // Isoperimetric floor 2 sqrt(pi mu) minus the equimeasurability slack.
    bool isoperimetric_floor = false;
    bool profile_continuous = false;
    double profile_jump = 0.0;

    bool pass() const { return equimeasurable && bv_inequality; }
};

// Compares u with its rearrangement r on the same lattice and domain.
// Throws Error{DomainMismatch}.
RearrangementReport rearrangement_report(const GridFunction& u, const GridFunction& r, int levels = kDefaultLevels);

void write_report_json(std::ostream& out, const RearrangementReport& report);
void write_report_csv(std::ostream& out, const RearrangementReport& report);

} // namespace isoper
