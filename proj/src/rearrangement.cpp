#include "isoper/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "isoper/contour.hpp"
#include "isoper/format.hpp"

namespace isoper {

double distribution(const GridFunction& u, double t)
{
    return static_cast<double>((u.values() > t).count()) * u.cell_area();
}

Profile::Profile(const GridFunction& u) : cell_area_(u.cell_area())
{
    const auto& v = u.values();
    sorted_.assign(v.data(), v.data() + v.size());
    std::sort(sorted_.begin(), sorted_.end(), std::greater<>());
    support_ = distribution(u, 0.0);
}

double Profile::operator()(double v) const
{
    if (sorted_.empty()) return 0.0;
    if (v <= 0.0) return sorted_.front();
    // |{u > t}| >= v  <=>  at least m = ceil(v / a) values exceed t  <=>  t < sorted[m-1].
    const double m = std::ceil(v / cell_area_);
    if (m > static_cast<double>(sorted_.size())) return 0.0;
    return sorted_[static_cast<std::size_t>(m) - 1];
}

double Profile::max_relative_jump() const
{
    if (sorted_.empty() || sorted_.front() <= 0.0) return 0.0;
    double jump = 0.0;
    for (std::size_t k = 0; k + 1 < sorted_.size(); ++k) jump = std::max(jump, sorted_[k] - sorted_[k + 1]);
    jump = std::max(jump, sorted_.back());
    return jump / sorted_.front();
}

Profile decreasing_rearrangement(const GridFunction& u) { return Profile(u); }

namespace {

void require_domain(const GridFunction& u, const ConvexPolygon& domain)
{
    if (!u.domain() || !(*u.domain() == domain))
        throw Error(ErrorKind::DomainMismatch, "grid function is not attached to the family's domain");
}

} // namespace

GridValues rank_field(const GridFunction& u, const MinimizerFamily& family)
{
    GridValues rho(u.ny(), u.nx());
    for (int j = 0; j < u.ny(); ++j)
        for (int i = 0; i < u.nx(); ++i) rho(j, i) = family.rank(u.center(i, j));
    return rho;
}

GridFunction convex_rearrangement(const GridFunction& u, const MinimizerFamily& family)
{
    require_domain(u, family.domain());
    const Profile profile(u);
    const ConvexPolygon& domain = family.domain();
    const double slack = kEpsGeom * domain.scale();

    GridFunction out = u.zeros_like();
    for (int j = 0; j < u.ny(); ++j) {
        for (int i = 0; i < u.nx(); ++i) {
            const Point x = u.center(i, j);
            if (!domain.contains(x, slack)) continue;
            out(i, j) = profile(family.rank(x));
        }
    }
    return out;
}

std::vector<double> level_thresholds(double max_value, int levels)
{
    std::vector<double> t;
    if (!(max_value > 0.0)) return t;
    t.reserve(levels);
    for (int k = 1; k <= levels; ++k) t.push_back((k - 0.5) * max_value / levels);
    return t;
}

BvNorm bv_norm_estimate(const GridFunction& u, int levels)
{
    if (levels < 16) throw std::invalid_argument("bv_norm_estimate needs at least 16 levels");
    BvNorm n;
    n.l1 = u.values().abs().sum() * u.cell_area();
    const double top = u.values().maxCoeff();
    const double dt = top / levels;
    for (double t : level_thresholds(top, levels)) n.tv += contour_length(u, t) * dt;
    n.bv = n.l1 + n.tv;
    return n;
}

RearrangementReport rearrangement_report(const GridFunction& u, const GridFunction& r, int levels)
{
    if (levels < 16) throw std::invalid_argument("rearrangement_report needs at least 16 levels");
    if (!u.same_lattice(r)) throw Error(ErrorKind::DomainMismatch, "grids differ in lattice");
    if (u.domain().has_value() != r.domain().has_value() || (u.domain() && !(*u.domain() == *r.domain())))
        throw Error(ErrorKind::DomainMismatch, "grids carry different domains");

    RearrangementReport rep;
    rep.spacing = u.spacing();
    const double h = rep.spacing;
    const double top = std::max(u.values().maxCoeff(), r.values().maxCoeff());
    const double dt = top / levels;

    rep.equimeasurable = rep.convex_levels = rep.isoperimetric_floor = true;
    rep.norm_u.l1 = u.values().sum() * u.cell_area();
    rep.norm_r.l1 = r.values().sum() * r.cell_area();
    for (double t : level_thresholds(top, levels)) {
        LevelRow row{};
        row.t = t;
        row.mu_u = distribution(u, t);
        row.mu_r = distribution(r, t);
        row.perimeter_u = contour_length(u, t);
        const Contour c = marching_squares(r, t);
        row.perimeter_r = c.length;
        row.defect = std::abs(row.mu_u - row.mu_r);
        row.defect_bound = kEquimeasurabilityC * h * (row.perimeter_u + 1.0);
        row.convexity_defect = c.convexity_defect();
        row.convexity_bound = 2.0 * h * row.perimeter_r;

        rep.norm_u.tv += row.perimeter_u * dt;
        rep.norm_r.tv += row.perimeter_r * dt;
        rep.max_defect = std::max(rep.max_defect, row.defect);
        rep.max_relative_defect = std::max(rep.max_relative_defect, row.defect / row.defect_bound);
        if (row.convexity_bound > 0.0)
            rep.max_relative_convexity = std::max(rep.max_relative_convexity, row.convexity_defect / row.convexity_bound);
        else if (row.convexity_defect > 0.0)
            rep.max_relative_convexity = std::numeric_limits<double>::infinity();
        if (row.defect > row.defect_bound) rep.equimeasurable = false;
        if (row.convexity_defect > row.convexity_bound) rep.convex_levels = false;

        // Small sets are where the estimator is least accurate: allow C h on top of 2%.
        const auto floor_ok = [&](double perimeter, double mu) {
            const double floor = 2.0 * std::sqrt(std::numbers::pi * mu);
            return perimeter >= floor * (1.0 - kBvTolerance) - kEquimeasurabilityC * h;
        };
        if (!floor_ok(row.perimeter_u, row.mu_u) || !floor_ok(row.perimeter_r, row.mu_r))
            rep.isoperimetric_floor = false;
        rep.rows.push_back(row);
    }
    rep.norm_u.bv = rep.norm_u.l1 + rep.norm_u.tv;
    rep.norm_r.bv = rep.norm_r.l1 + rep.norm_r.tv;
    rep.bv_inequality = rep.norm_r.bv <= rep.norm_u.bv * (1.0 + kBvTolerance);

    const Profile profile(u);
    rep.profile_jump = profile.max_relative_jump();
    rep.profile_continuous = rep.profile_jump <= kContinuityJump;
    return rep;
}

namespace {

double r9(double x) { return round_significant(x); }

} // namespace

void write_report_json(std::ostream& out, const RearrangementReport& rep)
{
    using nlohmann::ordered_json;
    const auto norm = [](const BvNorm& n) { return ordered_json{{"l1", r9(n.l1)}, {"tv", r9(n.tv)}, {"bv", r9(n.bv)}}; };
    ordered_json levels = ordered_json::array();
    for (const auto& row : rep.rows) {
        levels.push_back({{"t", r9(row.t)},
                          {"mu_u", r9(row.mu_u)},
                          {"mu_rearranged", r9(row.mu_r)},
                          {"perimeter_u", r9(row.perimeter_u)},
                          {"perimeter_rearranged", r9(row.perimeter_r)},
                          {"defect", r9(row.defect)},
                          {"defect_bound", r9(row.defect_bound)},
                          {"convexity_defect", r9(row.convexity_defect)},
                          {"convexity_bound", r9(row.convexity_bound)}});
    }
    ordered_json j{{"pass", rep.pass()},
                   {"equimeasurable", rep.equimeasurable},
                   {"bv_inequality", rep.bv_inequality},
                   {"convex_levels", rep.convex_levels},
                   {"isoperimetric_floor", rep.isoperimetric_floor},
                   {"profile_continuous", rep.profile_continuous},
                   {"profile_jump", r9(rep.profile_jump)},
                   {"spacing", r9(rep.spacing)},
                   {"max_defect", r9(rep.max_defect)},
                   {"max_relative_defect", r9(rep.max_relative_defect)},
                   {"max_relative_convexity", r9(rep.max_relative_convexity)},
                   {"norm_u", norm(rep.norm_u)},
                   {"norm_rearranged", norm(rep.norm_r)},
                   {"levels", std::move(levels)}};
    out << j.dump(2) << '\n';
}

void write_report_csv(std::ostream& out, const RearrangementReport& rep)
{
    out << "t,mu_u,mu_rearranged,perimeter_u,perimeter_rearranged,defect,defect_bound,convexity_defect,"
           "convexity_bound\n";
    for (const auto& row : rep.rows) {
        out << format_number(row.t) << ',' << format_number(row.mu_u) << ',' << format_number(row.mu_r) << ','
            << format_number(row.perimeter_u) << ',' << format_number(row.perimeter_r) << ','
            << format_number(row.defect) << ',' << format_number(row.defect_bound) << ','
            << format_number(row.convexity_defect) << ',' << format_number(row.convexity_bound) << '\n';
    }
}

} // namespace isoper
