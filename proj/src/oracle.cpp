#include "isoper/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "isoper/crofton.hpp"
#include "isoper/format.hpp"

namespace isoper {

const char* to_string(Sampler s)
{
    switch (s) {
    case Sampler::Hull: return "hull";
    case Sampler::HalfPlane: return "half_plane";
    case Sampler::Disk: return "disk";
    }
    return "unknown";
}

bool Competitor::inside(const ConvexPolygon& domain, double slack) const
{
    if (const auto* d = std::get_if<Disk>(&shape)) {
        for (const auto& h : domain.half_planes())
            if (h.violation(d->center) + d->radius > slack) return false;
        return true;
    }
    for (const auto& p : std::get<std::vector<Point>>(shape))
        if (!domain.contains(p, slack)) return false;
    return true;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i)
{
    // splitmix64 finaliser
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double perimeter_of(const std::vector<Point>& v)
{
    double p = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) p += (v[(i + 1) % v.size()] - v[i]).norm();
    return p;
}

Point area_centroid(const std::vector<Point>& v)
{
    const Point o = v.front();
    Point c = Point::Zero();
    double a = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double w = cross(v[i] - o, v[i + 1] - o);
        c += w * (v[i] + v[i + 1] - 2.0 * o) / 3.0;
        a += w;
    }
    return o + c / a;
}

// Part of a convex polygon with normal . x <= offset.
std::vector<Point> clip(const std::vector<Point>& poly, const Point& normal, double offset)
{
    std::vector<Point> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        const double fp = normal.dot(p) - offset;
        const double fq = normal.dot(q) - offset;
        if (fp <= 0.0) out.push_back(p);
        if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) out.push_back(p + fp / (fp - fq) * (q - p));
    }
    return out;
}

Point uniform_in_polygon(const std::vector<Point>& poly, std::mt19937_64& rng)
{
    Point lo = poly.front(), hi = poly.front();
    for (const auto& p : poly) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    std::uniform_real_distribution<double> ux(lo.x(), hi.x()), uy(lo.y(), hi.y());
    for (;;) {
        const Point x(ux(rng), uy(rng));
        bool in = true;
        for (std::size_t i = 0; i < poly.size() && in; ++i)
            in = cross(poly[(i + 1) % poly.size()] - poly[i], x - poly[i]) >= 0.0;
        if (in) return x;
    }
}

Point uniform_on_boundary(const ConvexPolygon& domain, double perimeter, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, perimeter);
    double s = u(rng);
    const std::size_t n = domain.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = domain[i];
        const Point& b = domain[(i + 1) % n];
        const double len = (b - a).norm();
        if (s <= len || i + 1 == n) return a + std::min(s / len, 1.0) * (b - a);
        s -= len;
    }
    return domain[0];
}

Competitor hull_competitor(const MinimizerFamily& f, double v, std::mt19937_64& rng, int k)
{
    std::bernoulli_distribution on_boundary(0.75);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Point> pts;
        for (int i = 0; i < k; ++i)
            pts.push_back(on_boundary(rng) ? uniform_on_boundary(f.domain(), f.domain_perimeter(), rng)
                                           : uniform_in_polygon(f.domain().vertices(), rng));
        auto hull = convex_hull(std::move(pts));
        if (hull.size() < 3) continue;
        const double a = polygon_signed_area(hull);
        if (a < v) continue;
        const Point c = area_centroid(hull);
        const double s = std::sqrt(v / a);
        for (auto& p : hull) p = c + s * (p - c);
        Competitor out;
        out.area = polygon_signed_area(hull);
        out.perimeter = perimeter_of(hull);
        out.shape = std::move(hull);
        return out;
    }
    throw Error(ErrorKind::SamplerInfeasible, "no hull sample reached the target area");
}

Competitor half_plane_competitor(const MinimizerFamily& f, double v, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double th = angle(rng);
    const Point n(std::cos(th), std::sin(th));
    const auto& poly = f.domain().vertices();
    double lo = n.dot(poly.front()), hi = lo;
    for (const auto& p : poly) {
        lo = std::min(lo, n.dot(p));
        hi = std::max(hi, n.dot(p));
    }
    const auto area_at = [&](double c) {
        const auto part = clip(poly, n, c);
        return part.size() < 3 ? 0.0 : polygon_signed_area(part);
    };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (area_at(mid) < v ? lo : hi) = mid;
    }
    // hi is the side with area >= v.
    auto part = clip(poly, n, hi);
    Competitor out;
    out.area = polygon_signed_area(part);
    out.perimeter = perimeter_of(part);
    out.shape = std::move(part);
    return out;
}

Competitor disk_competitor(const MinimizerFamily& f, double v, std::mt19937_64& rng)
{
    if (v > f.ball_volume() * (1.0 + kTolArea))
        throw Error(ErrorKind::SamplerInfeasible, "no disk of area " + std::to_string(v) + " fits the domain");
    const double rho = std::min(std::sqrt(v / std::numbers::pi), f.inradius());
    const ErodedBody core = erode(f.domain(), rho, f.inradius());
    Point c;
    if (const auto* p = std::get_if<ConvexPolygon>(&core.shape())) {
        c = uniform_in_polygon(p->vertices(), rng);
    } else if (const auto* s = std::get_if<Segment>(&core.shape())) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        c = s->a + u(rng) * (s->b - s->a);
    } else if (const auto* q = std::get_if<Point>(&core.shape())) {
        c = *q;
    } else {
        throw Error(ErrorKind::SamplerInfeasible, "erosion by the disk radius is empty");
    }
    Competitor out;
    out.shape = Disk{c, rho};
    out.area = std::numbers::pi * rho * rho;
    out.perimeter = 2.0 * std::numbers::pi * rho;
    return out;
}

} // namespace

Competitor sample_competitor(const MinimizerFamily& family, double v, Sampler sampler, std::uint64_t seed,
                             int hull_points)
{
    if (!(v > 0.0) || !(v < family.domain_volume()))
        throw Error(ErrorKind::VolumeOutOfRange, "competitor volume must lie in (0, |domain|)");
    if (hull_points < 3) throw std::invalid_argument("hull sampler needs at least 3 points");
    std::mt19937_64 rng(seed);
    Competitor c;
    switch (sampler) {
    case Sampler::Hull: c = hull_competitor(family, v, rng, hull_points); break;
    case Sampler::HalfPlane: c = half_plane_competitor(family, v, rng); break;
    case Sampler::Disk: c = disk_competitor(family, v, rng); break;
    }
    c.sampler = sampler;
    c.seed = seed;
    return c;
}

VerifyReport verify_minimality(const MinimizerFamily& family, double v, int samples, std::uint64_t seed)
{
    if (samples < 1) throw std::invalid_argument("verify_minimality needs at least one sample");
    const MinimizerShape e = family.minimizer(v);
    VerifyReport rep;
    rep.volume = v;
    rep.kind = e.kind();
    rep.perimeter = e.perimeter;
    rep.samples = samples;
    rep.seed = seed;

    std::vector<Sampler> samplers{Sampler::Hull, Sampler::HalfPlane};
    if (v <= family.ball_volume()) samplers.push_back(Sampler::Disk);

    std::vector<double> gaps;
    gaps.reserve(samples);
    rep.min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const Sampler s = samplers[i % samplers.size()];
        Competitor c = sample_competitor(family, v, s, mix_seed(seed, i));
        const double gap = c.perimeter - e.perimeter;
        gaps.push_back(gap);
        if (gap < rep.min_gap) {
            rep.min_gap = gap;
            rep.min_competitor_perimeter = c.perimeter;
            rep.min_sampler = s;
        }
        if (gap < -kViolationTol) rep.violations.push_back({std::move(c), gap});
    }

    constexpr int kBins = 20;
    const double top = std::max(0.0, *std::max_element(gaps.begin(), gaps.end()));
    rep.histogram.assign(kBins, 0);
    rep.histogram_width = top > 0.0 ? top / kBins : 0.0;
    for (double g : gaps) {
        int b = rep.histogram_width > 0.0 ? static_cast<int>(std::max(g, 0.0) / rep.histogram_width) : 0;
        rep.histogram[std::clamp(b, 0, kBins - 1)]++;
    }
    return rep;
}

namespace {

// Dense index set with O(1) insert, erase and uniform pick.
class IndexSet {
public:
    explicit IndexSet(std::size_t universe) : pos_(universe, -1) {}

    bool contains(int x) const { return pos_[x] >= 0; }
    std::size_t size() const { return items_.size(); }
    int operator[](std::size_t k) const { return items_[k]; }

    void set(int x, bool present)
    {
        if (present == contains(x)) return;
        if (present) {
            pos_[x] = static_cast<int>(items_.size());
            items_.push_back(x);
        } else {
            const int p = pos_[x];
            items_[p] = items_.back();
            pos_[items_[p]] = p;
            items_.pop_back();
            pos_[x] = -1;
        }
    }

private:
    std::vector<int> items_;
    std::vector<int> pos_;
};

class Chain {
public:
    Chain(const ConvexPolygon& domain, double v, int grid_n)
    {
        Point lo = domain[0], hi = domain[0];
        for (const auto& p : domain.vertices()) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        h_ = (hi - lo).maxCoeff() / grid_n;
        origin_ = lo;
        nx_ = std::max(1, static_cast<int>(std::ceil((hi.x() - lo.x()) / h_ - 1e-9)));
        ny_ = std::max(1, static_cast<int>(std::ceil((hi.y() - lo.y()) / h_ - 1e-9)));
        w_ = nx_ + 2 * kPad;
        const int rows = ny_ + 2 * kPad;
        state_.assign(static_cast<std::size_t>(w_) * rows, 0);
        inside_.assign(state_.size(), 0);
        for (int j = 0; j < ny_; ++j)
            for (int i = 0; i < nx_; ++i) {
                const Point c(lo.x() + (i + 0.5) * h_, lo.y() + (j + 0.5) * h_);
                if (domain.contains(c)) {
                    inside_[index(i, j)] = 1;
                    cells_.push_back(index(i, j));
                }
            }
        count_ = static_cast<int>(std::lround(v / (h_ * h_)));
        if (count_ < 1 || count_ >= static_cast<int>(cells_.size()))
            throw Error(ErrorKind::VolumeOutOfRange, "volume leaves no room on a grid of " + std::to_string(grid_n));

        const auto& dirs = crofton_directions();
        cost_ = crofton_pair_costs(h_);
        for (int k = 0; k < 16; ++k) offset_[k] = dirs[k].dy * w_ + dirs[k].dx;
    }

    int index(int i, int j) const { return (j + kPad) * w_ + i + kPad; }

    void start(std::mt19937_64& rng)
    {
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        const double th = angle(rng);
        const Point n(std::cos(th), std::sin(th));
        std::vector<std::pair<double, int>> order;
        for (int c : cells_) order.emplace_back(n.dot(position(c)), c);
        std::sort(order.begin(), order.end());
        for (int k = 0; k < count_; ++k) state_[order[k].second] = 1;
        boundary_ = IndexSet(state_.size());
        frontier_ = IndexSet(state_.size());
        for (int c : cells_) refresh(c);
    }

    double energy() const
    {
        double e = 0.0;
        for (int c : cells_) {
            if (!state_[c]) continue;
            for (int k = 0; k < 16; ++k)
                e += cost_[k] * ((state_[c + offset_[k]] == 0) + (state_[c - offset_[k]] == 0));
        }
        return e;
    }

    int count() const
    {
        int n = 0;
        for (int c : cells_) n += state_[c];
        return n;
    }

    // Energy change if cell c flips.
    double flip_delta(int c) const
    {
        double d = 0.0;
        const std::uint8_t s = state_[c];
        for (int k = 0; k < 16; ++k) {
            d += cost_[k] * ((state_[c + offset_[k]] == s) ? 1.0 : -1.0);
            d += cost_[k] * ((state_[c - offset_[k]] == s) ? 1.0 : -1.0);
        }
        return d;
    }

    // One proposal; returns the energy change applied (0 when rejected).
    double step(std::mt19937_64& rng, double temperature)
    {
        if (boundary_.size() == 0 || frontier_.size() == 0) return 0.0;
        const int a = boundary_[std::uniform_int_distribution<std::size_t>(0, boundary_.size() - 1)(rng)];
        const int b = frontier_[std::uniform_int_distribution<std::size_t>(0, frontier_.size() - 1)(rng)];
        double delta = flip_delta(a);
        state_[a] = 0;
        delta += flip_delta(b);
        state_[b] = 1;
        if (delta > 0.0) {
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            if (!(u < std::exp(-delta / temperature))) {
                state_[a] = 1;
                state_[b] = 0;
                return 0.0;
            }
        }
        for (int c : {a, b}) {
            refresh(c);
            for (int n : {c + 1, c - 1, c + w_, c - w_}) refresh(n);
        }
        return delta;
    }

    Mask mask() const
    {
        Mask m(ny_, nx_);
        for (int j = 0; j < ny_; ++j)
            for (int i = 0; i < nx_; ++i) m(j, i) = state_[index(i, j)];
        return m;
    }

    double cell() const { return h_; }
    const Point& origin() const { return origin_; }
    int target() const { return count_; }
    std::size_t cells() const { return cells_.size(); }

private:
    static constexpr int kPad = 3;

    Point position(int c) const
    {
        const int i = c % w_ - kPad;
        const int j = c / w_ - kPad;
        return {origin_.x() + (i + 0.5) * h_, origin_.y() + (j + 0.5) * h_};
    }

    void refresh(int c)
    {
        if (!inside_[c]) return;
        const int nb[4] = {c + 1, c - 1, c + w_, c - w_};
        bool has_in = false, has_out = false;
        for (int n : nb) (state_[n] ? has_in : has_out) = true;
        boundary_.set(c, state_[c] && has_out);
        frontier_.set(c, !state_[c] && has_in);
    }

    double h_ = 0.0;
    Point origin_;
    int nx_ = 0, ny_ = 0, w_ = 0;
    int count_ = 0;
    std::vector<std::uint8_t> state_;
    std::vector<std::uint8_t> inside_;
    std::vector<int> cells_;
    std::array<double, 16> cost_{};
    std::array<int, 16> offset_{};
    IndexSet boundary_{0};
    IndexSet frontier_{0};
};

void check_schedule(int grid_n, const Schedule& s)
{
    if (grid_n < 4 || grid_n > kMaxAnnealGrid)
        throw Error(ErrorKind::ScheduleInvalid, "grid_n must lie in [4, " + std::to_string(kMaxAnnealGrid) + "]");
    if (!(s.t0 > 0.0) || !std::isfinite(s.t0)) throw Error(ErrorKind::ScheduleInvalid, "t0 must be positive");
    if (!(s.ratio > 0.0 && s.ratio <= 1.0)) throw Error(ErrorKind::ScheduleInvalid, "cooling ratio must lie in (0, 1]");
    if (s.sweeps < 1) throw Error(ErrorKind::ScheduleInvalid, "at least one sweep is required");
}

} // namespace

AnnealResult anneal_discrete(const ConvexPolygon& domain, double v, int grid_n, const Schedule& schedule,
                             std::uint64_t seed)
{
    check_schedule(grid_n, schedule);
    if (!(v > 0.0) || !(v < domain.area())) throw Error(ErrorKind::VolumeOutOfRange, "volume must lie in (0, |domain|)");

    Chain chain(domain, v, grid_n);
    std::mt19937_64 rng(mix_seed(seed, 0));
    chain.start(rng);

    AnnealResult res;
    res.cell = chain.cell();
    res.origin = chain.origin();
    res.in_count = chain.target();
    res.seed = seed;
    double energy = chain.energy();
    res.perimeter = energy;
    res.best = chain.mask();

    double temperature = schedule.t0 * chain.cell();
    const std::size_t per_sweep = chain.cells();
    for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
        for (std::size_t k = 0; k < per_sweep; ++k) energy += chain.step(rng, temperature);
        // Resynchronise against accumulated rounding and check the invariant.
        energy = chain.energy();
        if (chain.count() != chain.target()) throw std::logic_error("annealing lost track of the cell count");
        if (energy < res.perimeter) {
            res.perimeter = energy;
            res.best = chain.mask();
        }
        res.history.push_back(res.perimeter);
        temperature *= schedule.ratio;
    }
    return res;
}

AnnealResult anneal_best_of(const ConvexPolygon& domain, double v, int grid_n, const Schedule& schedule,
                            std::uint64_t seed, int seeds)
{
    if (seeds < 1) throw Error(ErrorKind::ScheduleInvalid, "at least one seed is required");
    AnnealResult best;
    for (int s = 0; s < seeds; ++s) {
        AnnealResult r = anneal_discrete(domain, v, grid_n, schedule, seed + s);
        if (s == 0 || r.perimeter < best.perimeter) best = std::move(r);
    }
    return best;
}

void write_pgm(std::ostream& out, const Mask& mask)
{
    out << "P5\n" << mask.cols() << ' ' << mask.rows() << "\n255\n";
    for (Eigen::Index j = mask.rows() - 1; j >= 0; --j)
        for (Eigen::Index i = 0; i < mask.cols(); ++i) out.put(mask(j, i) ? char(255) : char(0));
}

namespace {

nlohmann::ordered_json competitor_json(const Competitor& c)
{
    using nlohmann::ordered_json;
    ordered_json j{{"sampler", to_string(c.sampler)},
                   {"seed", c.seed},
                   {"area", round_significant(c.area)},
                   {"perimeter", round_significant(c.perimeter)}};
    if (const auto* d = std::get_if<Disk>(&c.shape)) {
        j["center"] = {round_significant(d->center.x()), round_significant(d->center.y())};
        j["radius"] = round_significant(d->radius);
    } else {
        ordered_json verts = ordered_json::array();
        for (const auto& p : std::get<std::vector<Point>>(c.shape))
            verts.push_back({round_significant(p.x()), round_significant(p.y())});
        j["vertices"] = std::move(verts);
    }
    return j;
}

} // namespace

void write_verify_json(std::ostream& out, const VerifyReport& rep, const AnnealResult* anneal,
                       double anneal_tolerance)
{
    using nlohmann::ordered_json;
    const auto r9 = [](double x) { return round_significant(x); };
    ordered_json violations = ordered_json::array();
    for (const auto& v : rep.violations) {
        auto j = competitor_json(v.competitor);
        j["gap"] = r9(v.gap);
        violations.push_back(std::move(j));
    }
    bool pass = rep.pass();
    ordered_json j{{"volume", r9(rep.volume)},
                   {"case", to_string(rep.kind)},
                   {"perimeter", r9(rep.perimeter)},
                   {"samples", rep.samples},
                   {"seed", rep.seed},
                   {"min_gap", r9(rep.min_gap)},
                   {"min_competitor_perimeter", r9(rep.min_competitor_perimeter)},
                   {"min_sampler", to_string(rep.min_sampler)},
                   {"histogram_bin_width", r9(rep.histogram_width)},
                   {"gap_histogram", rep.histogram},
                   {"violations", std::move(violations)}};
    if (anneal) {
        const double ratio = anneal->perimeter / rep.perimeter;
        const bool within = std::abs(ratio - 1.0) <= anneal_tolerance;
        pass = pass && within;
        j["anneal"] = {{"cell", r9(anneal->cell)},
                       {"in_count", anneal->in_count},
                       {"seed", anneal->seed},
                       {"perimeter", r9(anneal->perimeter)},
                       {"ratio", r9(ratio)},
                       {"within_tolerance", within}};
    }
    j["pass"] = pass;
    out << j.dump(2) << '\n';
}

} // namespace isoper
