#include "isoper/grid.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "isoper/format.hpp"

namespace isoper {

GridFunction::GridFunction(Point origin, double dx, double dy, int nx, int ny)
    : origin_(std::move(origin)), dx_(dx), dy_(dy)
{
    if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy))
        throw Error(ErrorKind::InvalidGrid, "spacing must be positive and finite");
    if (nx < 1 || ny < 1) throw Error(ErrorKind::InvalidGrid, "grid dimensions must be positive");
    if (!origin_.allFinite()) throw Error(ErrorKind::InvalidGrid, "origin must be finite");
    values_ = GridValues::Zero(ny, nx);
}

bool GridFunction::same_lattice(const GridFunction& other) const
{
    return nx() == other.nx() && ny() == other.ny() && dx_ == other.dx_ && dy_ == other.dy_ &&
           origin_ == other.origin_;
}

GridFunction GridFunction::zeros_like() const
{
    GridFunction out(origin_, dx_, dy_, nx(), ny());
    out.domain_ = domain_;
    return out;
}

namespace {

struct Box {
    Point lo;
    Point hi;
};

Box bounding_box(const ConvexPolygon& p)
{
    Box b{p[0], p[0]};
    for (const auto& v : p.vertices()) {
        b.lo = b.lo.cwiseMin(v);
        b.hi = b.hi.cwiseMax(v);
    }
    return b;
}

} // namespace

GridFunction covering(const ConvexPolygon& domain, int n, int margin)
{
    if (n < 1 || margin < 0) throw Error(ErrorKind::InvalidGrid, "covering needs n >= 1 and margin >= 0");
    const Box box = bounding_box(domain);
    const Point size = box.hi - box.lo;
    const double h = size.maxCoeff() / n;
    // Cells per axis: enough to cover the box, then centre the box in them.
    const int cx = static_cast<int>(std::ceil(size.x() / h - 1e-9));
    const int cy = static_cast<int>(std::ceil(size.y() / h - 1e-9));
    const int nx = cx + 2 * margin;
    const int ny = cy + 2 * margin;
    const Point mid = 0.5 * (box.lo + box.hi);
    Point origin(mid.x() - 0.5 * nx * h, mid.y() - 0.5 * ny * h);
    if (cx * h == size.x()) origin.x() = box.lo.x() - margin * h;
    if (cy * h == size.y()) origin.y() = box.lo.y() - margin * h;
    GridFunction g(origin, h, h, nx, ny);
    g.set_domain(domain);
    return g;
}

void validate_grid(const GridFunction& u)
{
    const auto& v = u.values();
    if (!v.allFinite()) throw Error(ErrorKind::InvalidGrid, "grid holds a non-finite value");
    if ((v < 0.0).any()) throw Error(ErrorKind::InvalidGrid, "grid holds a negative value");
    if (!u.domain()) return;

    const ConvexPolygon& domain = *u.domain();
    const Box box = bounding_box(domain);
    const double tol = kEpsGeom * domain.scale();
    const Point lo = u.origin();
    const Point hi(lo.x() + u.nx() * u.dx(), lo.y() + u.ny() * u.dy());
    if (box.lo.x() - lo.x() < u.dx() - tol || box.lo.y() - lo.y() < u.dy() - tol ||
        hi.x() - box.hi.x() < u.dx() - tol || hi.y() - box.hi.y() < u.dy() - tol)
        throw Error(ErrorKind::DomainMismatch, "grid does not cover the domain with a one-cell margin");

    for (int j = 0; j < u.ny(); ++j)
        for (int i = 0; i < u.nx(); ++i)
            if (u(i, j) != 0.0 && !domain.contains(u.center(i, j), tol))
                throw Error(ErrorKind::DomainMismatch, "nonzero value outside the domain at cell (" +
                                                           std::to_string(i) + ", " + std::to_string(j) + ")");
}

namespace {

class Tokens {
public:
    explicit Tokens(std::istream& in) : in_(in) {}

    bool next_line(std::string& line)
    {
        while (std::getline(in_, line)) {
            ++line_no_;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    }

    int line_no() const { return line_no_; }

private:
    std::istream& in_;
    int line_no_ = 0;
};

template <class T>
T parse_token(std::string_view tok, int line)
{
    T value{};
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": bad number '" + std::string(tok) + "'");
    return value;
}

std::vector<std::string_view> split(const std::string& line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.emplace_back(line.data() + i, j - i);
        i = j;
    }
    return out;
}

} // namespace

GridFunction read_grid(std::istream& in)
{
    Tokens lines(in);
    std::string line;
    if (!lines.next_line(line)) throw Error(ErrorKind::Parse, "empty grid file");
    const auto head = split(line);
    if (head.size() != 6) throw Error(ErrorKind::Parse, "header must be 'nx ny x0 y0 dx dy'");
    const int nx = parse_token<int>(head[0], lines.line_no());
    const int ny = parse_token<int>(head[1], lines.line_no());
    const double x0 = parse_token<double>(head[2], lines.line_no());
    const double y0 = parse_token<double>(head[3], lines.line_no());
    const double dx = parse_token<double>(head[4], lines.line_no());
    const double dy = parse_token<double>(head[5], lines.line_no());
    if (nx < 1 || ny < 1) throw Error(ErrorKind::Parse, "grid dimensions must be positive");
    if (!(dx > 0.0) || !(dy > 0.0)) throw Error(ErrorKind::Parse, "grid spacing must be positive");

    GridFunction g(Point(x0, y0), dx, dy, nx, ny);
    for (int j = 0; j < ny; ++j) {
        if (!lines.next_line(line)) throw Error(ErrorKind::Parse, "expected " + std::to_string(ny) + " rows");
        const auto toks = split(line);
        if (static_cast<int>(toks.size()) != nx)
            throw Error(ErrorKind::Parse, "line " + std::to_string(lines.line_no()) + ": expected " +
                                              std::to_string(nx) + " values");
        for (int i = 0; i < nx; ++i) g(i, j) = parse_token<double>(toks[i], lines.line_no());
    }
    if (lines.next_line(line)) throw Error(ErrorKind::Parse, "trailing data after grid rows");
    return g;
}

void write_grid(std::ostream& out, const GridFunction& u)
{
    out << u.nx() << ' ' << u.ny() << ' ' << format_number(u.origin().x()) << ' ' << format_number(u.origin().y())
        << ' ' << format_number(u.dx()) << ' ' << format_number(u.dy()) << '\n';
    std::string row;
    for (int j = 0; j < u.ny(); ++j) {
        row.clear();
        for (int i = 0; i < u.nx(); ++i) {
            if (i) row += ' ';
            row += format_number(u(i, j));
        }
        row += '\n';
        out << row;
    }
}

Mask threshold(const GridFunction& u, double t) { return (u.values() > t).cast<std::uint8_t>(); }

} // namespace isoper
