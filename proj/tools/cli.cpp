// isoper: minimizers, families, rearrangements and minimality checks for
// convex polygonal domains.
//
// Exit codes: 0 ok, 2 usage/parse, 3 geometry, 4 volume out of range,
// 5 domain mismatch, 6 check failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "isoper/contour.hpp"
#include "isoper/format.hpp"
#include "isoper/io.hpp"
#include "isoper/oracle.hpp"
#include "isoper/rearrangement.hpp"

namespace fs = std::filesystem;
using namespace isoper;

namespace {

enum Exit { kOk = 0, kUsage = 2, kGeometry = 3, kVolume = 4, kMismatch = 5, kCheck = 6 };

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidGrid:
    case ErrorKind::ScheduleInvalid: return kUsage;
    case ErrorKind::NonConvex:
    case ErrorKind::Degenerate:
    case ErrorKind::InvalidNumber:
    case ErrorKind::RadiusTooLarge: return kGeometry;
    case ErrorKind::VolumeOutOfRange: return kVolume;
    case ErrorKind::DomainMismatch: return kMismatch;
    case ErrorKind::SamplerInfeasible: return kCheck;
    }
    return kUsage;
}

struct Config {
    std::string domain;
    std::string grid;
    std::optional<double> volume;
    std::optional<double> fraction;
    std::string sweep;
    int levels = kDefaultLevels;
    std::uint64_t seed = 0;
    int samples = 10000;
    int anneal = 0;
    int anneal_seeds = 3;
    double anneal_tolerance = 0.05;
    std::string out = ".";
    bool json = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double target_volume(const Config& c, const MinimizerFamily& f)
{
    if (c.fraction) {
        if (!(*c.fraction > 0.0 && *c.fraction < 1.0))
            throw Error(ErrorKind::VolumeOutOfRange, "--volume-fraction must lie in (0, 1)");
        return *c.fraction * f.domain_volume();
    }
    if (c.volume) return *c.volume;
    throw UsageError("one of --volume or --volume-fraction is required");
}

void write_file(const fs::path& path, const std::string& text)
{
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string curvature_text(double k) { return std::isfinite(k) ? format_number(k) : "inf"; }

int cmd_minimizer(const Config& c)
{
    const MinimizerFamily f(read_domain_file(c.domain));
    const double v = target_volume(c, f);
    const MinimizerShape e = f.minimizer(v);
    const std::string json = shape_json(e);
    write_file(fs::path(c.out) / "shape.json", json + "\n");
    write_file(fs::path(c.out) / "shape.svg", svg_document(f.domain(), {{svg_path(e), "#c0392b", 2.0}}));
    if (c.json)
        std::cout << json << '\n';
    else
        std::cout << "v " << format_number(v) << "  P " << format_number(e.perimeter) << "  k "
                  << curvature_text(e.curvature) << "  case " << to_string(e.kind()) << '\n';
    return kOk;
}

struct Sweep {
    double a;
    double b;
    int n;
};

Sweep parse_sweep(const std::string& text)
{
    Sweep s{};
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    char c1 = 0, c2 = 0;
    if (!(in >> s.a >> c1 >> s.b >> c2 >> s.n) || c1 != ':' || c2 != ':' || !in.eof())
        throw UsageError("--sweep expects a:b:n");
    if (s.n < 2) throw UsageError("--sweep needs at least 2 steps");
    if (!(s.a <= s.b)) throw UsageError("--sweep needs a <= b");
    return s;
}

int cmd_family(const Config& c)
{
    if (c.sweep.empty()) throw UsageError("--sweep a:b:n is required");
    const Sweep s = parse_sweep(c.sweep);
    const MinimizerFamily f(read_domain_file(c.domain));

    std::ostringstream csv;
    csv << "v,case,r,P,k\n";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::vector<SvgLayer> layers;
    for (int i = 0; i < s.n; ++i) {
        const double v = s.a + (s.b - s.a) * i / (s.n - 1);
        const MinimizerShape e = f.minimizer(v);
        csv << format_number(v) << ',' << to_string(e.kind()) << ',' << format_number(e.arc_radius()) << ','
            << format_number(e.perimeter) << ',' << curvature_text(e.curvature) << '\n';
        nlohmann::ordered_json row{{"v", round_significant(v)},
                                   {"case", to_string(e.kind())},
                                   {"r", round_significant(e.arc_radius())},
                                   {"P", round_significant(e.perimeter)}};
        if (std::isfinite(e.curvature))
            row["k"] = round_significant(e.curvature);
        else
            row["k"] = "unbounded";
        rows.push_back(std::move(row));
        layers.push_back({svg_path(e), "#2c7fb8", 0.75});
    }
    write_file(fs::path(c.out) / "family.csv", csv.str());
    write_file(fs::path(c.out) / "family.svg", svg_document(f.domain(), layers));
    if (c.json)
        std::cout << nlohmann::ordered_json{{"ball_volume", round_significant(f.ball_volume())},
                                            {"hull_volume", round_significant(f.hull_volume())},
                                            {"domain_volume", round_significant(f.domain_volume())},
                                            {"inradius", round_significant(f.inradius())},
                                            {"rows", std::move(rows)}}
                         .dump(2)
                  << '\n';
    else
        std::cout << csv.str();
    return kOk;
}

int cmd_rearrange(const Config& c)
{
    if (c.grid.empty()) throw UsageError("--grid is required");
    if (c.levels < 16) throw UsageError("--levels must be at least 16");
    const MinimizerFamily f(read_domain_file(c.domain));
    std::ifstream in(c.grid);
    if (!in) throw Error(ErrorKind::Parse, "cannot open grid file " + c.grid);
    GridFunction u = read_grid(in);
    u.set_domain(f.domain());
    validate_grid(u);

    const GridFunction r = convex_rearrangement(u, f);
    const RearrangementReport rep = rearrangement_report(u, r, c.levels);

    std::ostringstream grid, json, csv;
    write_grid(grid, r);
    write_report_json(json, rep);
    write_report_csv(csv, rep);
    write_file(fs::path(c.out) / "rearranged.grid", grid.str());
    write_file(fs::path(c.out) / "report.json", json.str());
    write_file(fs::path(c.out) / "report.csv", csv.str());

    std::vector<SvgLayer> layers;
    const double top = u.values().maxCoeff();
    for (int k = 1; k <= 8 && top > 0.0; ++k) {
        const double t = (k - 0.5) * top / 8;
        layers.push_back({contour_path(marching_squares(u, t)), "#999999", 0.75});
        layers.push_back({contour_path(marching_squares(r, t)), "#c0392b", 1.25});
    }
    write_file(fs::path(c.out) / "levels.svg", svg_document(f.domain(), layers));

    if (c.json)
        std::cout << json.str();
    else
        std::cout << "bv(u) " << format_number(rep.norm_u.bv) << "  bv(rearranged) " << format_number(rep.norm_r.bv)
                  << "  max defect " << format_number(rep.max_defect) << "  equimeasurable "
                  << (rep.equimeasurable ? "PASS" : "FAIL") << "  bv " << (rep.bv_inequality ? "PASS" : "FAIL")
                  << "  profile " << (rep.profile_continuous ? "continuous" : "jumps") << '\n';
    return rep.pass() ? kOk : kCheck;
}

int cmd_verify(const Config& c)
{
    if (c.samples < 1) throw UsageError("--samples must be positive");
    const MinimizerFamily f(read_domain_file(c.domain));
    const double v = target_volume(c, f);
    const VerifyReport rep = verify_minimality(f, v, c.samples, c.seed);

    std::optional<AnnealResult> anneal;
    if (c.anneal > 0) anneal = anneal_best_of(f.domain(), v, c.anneal, Schedule{}, c.seed, c.anneal_seeds);

    std::ostringstream json;
    write_verify_json(json, rep, anneal ? &*anneal : nullptr, c.anneal_tolerance);
    write_file(fs::path(c.out) / "verify.json", json.str());
    bool pass = rep.pass();
    double ratio = 0.0;
    if (anneal) {
        std::ostringstream pgm;
        write_pgm(pgm, anneal->best);
        write_file(fs::path(c.out) / "anneal.pgm", pgm.str());
        ratio = anneal->perimeter / rep.perimeter;
        pass = pass && std::abs(ratio - 1.0) <= c.anneal_tolerance;
    }

    if (c.json) {
        std::cout << json.str();
    } else {
        std::cout << "v " << format_number(v) << "  P " << format_number(rep.perimeter) << "  samples " << rep.samples
                  << "  violations " << rep.violations.size() << "  min gap " << format_number(rep.min_gap);
        if (anneal) std::cout << "  anneal " << format_number(anneal->perimeter) << " (ratio " << format_number(ratio) << ')';
        std::cout << "  " << (pass ? "PASS" : "FAIL") << '\n';
    }
    return pass ? kOk : kCheck;
}

void add_common(CLI::App* sub, Config& c)
{
    sub->add_option("--domain", c.domain, "Domain JSON {\"vertices\": [[x, y], ...]}")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "Output directory")->capture_default_str();
    sub->add_flag("--json", c.json, "Print a JSON document instead of text");
}

void add_volume(CLI::App* sub, Config& c)
{
    auto* vol = sub->add_option("--volume", c.volume, "Target area v");
    auto* frac = sub->add_option("--volume-fraction", c.fraction, "Target area as a fraction of the domain");
    vol->excludes(frac);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Perimeter minimizers and convex rearrangements in convex polygons"};
    app.require_subcommand(1);
    Config c;

    auto* minimizer = app.add_subcommand("minimizer", "Minimizer E(v): shape.json and shape.svg");
    add_common(minimizer, c);
    add_volume(minimizer, c);

    auto* family = app.add_subcommand("family", "Sweep of E(v): family.csv and family.svg");
    add_common(family, c);
    family->add_option("--sweep", c.sweep, "v_min:v_max:steps")->required();

    auto* rearrange = app.add_subcommand("rearrange", "Convex rearrangement of a grid function");
    add_common(rearrange, c);
    rearrange->add_option("--grid", c.grid, "Grid file")->required()->check(CLI::ExistingFile);
    rearrange->add_option("--levels", c.levels, "Threshold levels (>= 16)")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Random competitors and optional annealing oracle");
    add_common(verify, c);
    add_volume(verify, c);
    verify->add_option("--samples", c.samples, "Number of competitors")->capture_default_str();
    verify->add_option("--seed", c.seed, "Base seed")->capture_default_str();
    verify->add_option("--anneal", c.anneal, "Annealing grid size n (0 = off)")->capture_default_str();
    verify->add_option("--anneal-seeds", c.anneal_seeds, "Annealing chains (best is kept)")->capture_default_str();
    verify->add_option("--tolerance", c.anneal_tolerance, "Relative tolerance for the annealed perimeter")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*minimizer) return cmd_minimizer(c);
        if (*family) return cmd_family(c);
        if (*rearrange) return cmd_rearrange(c);
        if (*verify) return cmd_verify(c);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kUsage;
}
