#include "io.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace acsf::io {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

[[noreturn]] void fail_io(const std::string& what) {
    throw Error(ErrorKind::io, what);
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream is(p);
    if (!is) fail_io("cannot open for reading: " + p.string());
    return is;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p, std::ios::trunc);
    if (!os) fail_io("cannot open for writing: " + p.string());
    return os;
}

void finish(std::ofstream& os, const fs::path& p) {
    os.flush();
    if (!os) fail_io("write failed: " + p.string());
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json parse_json(std::istream& is, const fs::path& p) {
    try {
        return ordered_json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw_invalid("malformed JSON in " + p.string() + ": " + e.what());
    }
}

double finite_number(const ordered_json& j, const char* what) {
    if (!j.is_number()) throw_invalid(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw_invalid(std::string(what) + " must be finite");
    return v;
}

Vec2 vec2_of(const ordered_json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw_invalid(std::string(what) + " must be an [x, y] pair");
    return Vec2(finite_number(j[0], what), finite_number(j[1], what));
}

} // namespace

ConvexPolygon read_polygon(const fs::path& p) {
    std::ifstream is = open_in(p);
    std::vector<Vec2> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        double x = 0.0, y = 0.0;
        std::string extra;
        if (!(row >> x >> y) || (row >> extra))
            throw_invalid("bad vertex line " + std::to_string(lineno) +
                          " in " + p.string());
        pts.emplace_back(x, y);
    }
    if (pts.size() < 3)
        throw_invalid("polygon file needs at least 3 vertices: " + p.string());
    return ConvexPolygon::from_points(std::move(pts));
}

void write_polygon(const fs::path& p, const ConvexPolygon& poly) {
    std::ofstream os = open_out(p);
    for (const auto& v : poly.vertices)
        os << fmt17(v.x()) << ' ' << fmt17(v.y()) << '\n';
    finish(os, p);
}

SupportCurve read_curve(const fs::path& p) {
    std::ifstream is = open_in(p);
    const ordered_json j = parse_json(is, p);
    if (!j.is_object() || !j.contains("n_samples") || !j.contains("origin") ||
        !j.contains("h"))
        throw_invalid("curve JSON needs n_samples, origin, h: " + p.string());
    if (!j["n_samples"].is_number_integer())
        throw_invalid("n_samples must be an integer");
    const long n = j["n_samples"].get<long>();
    const auto& h = j["h"];
    if (!h.is_array() || static_cast<long>(h.size()) != n)
        throw_invalid("h length disagrees with n_samples in " + p.string());
    std::vector<double> hv;
    hv.reserve(h.size());
    for (const auto& e : h) hv.push_back(finite_number(e, "h entry"));
    return SupportCurve(std::move(hv), vec2_of(j["origin"], "origin"));
}

void write_curve(const fs::path& p, const SupportCurve& c) {
    ordered_json j;
    j["n_samples"] = c.samples();
    j["origin"] = {c.origin().x(), c.origin().y()};
    j["h"] = c.support();
    std::ofstream os = open_out(p);
    os << j.dump() << '\n';
    finish(os, p);
}

Trajectory read_trajectory(const fs::path& p) {
    std::ifstream is = open_in(p);
    Trajectory traj;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        const ordered_json j = parse_json(row, p);
        if (!j.is_object() || !j.contains("t") || !j.contains("n_samples") ||
            !j.contains("h"))
            throw_invalid("trajectory line " + std::to_string(lineno) +
                          " needs t, n_samples, h");
        const double t = finite_number(j["t"], "t");
        const long n = j["n_samples"].get<long>();
        const auto& h = j["h"];
        if (!h.is_array() || static_cast<long>(h.size()) != n)
            throw_invalid("h length disagrees with n_samples on line " +
                          std::to_string(lineno));
        std::vector<double> hv;
        hv.reserve(h.size());
        for (const auto& e : h) hv.push_back(finite_number(e, "h entry"));
        if (!traj.states.empty()) {
            if (n != traj.states.front().curve.samples())
                throw_invalid("trajectory mixes sample counts");
            if (!(t > traj.states.back().t))
                throw_invalid("trajectory times must be strictly increasing");
        }
        traj.states.push_back(
            FlowState{t, SupportCurve(std::move(hv), Vec2(0.0, 0.0))});
    }
    if (traj.states.empty())
        throw_invalid("trajectory file has no states: " + p.string());
    const FlowState& last = traj.states.back();
    traj.extinction_estimate =
        last.t + 0.75 * std::pow(area(last.curve) / kPi, 2.0 / 3.0);
    return traj;
}

void write_trajectory(const fs::path& p, const Trajectory& traj) {
    std::ofstream os = open_out(p);
    for (const auto& st : traj.states) {
        ordered_json j;
        j["t"] = st.t;
        j["n_samples"] = st.curve.samples();
        j["h"] = st.curve.support();
        os << j.dump() << '\n';
    }
    finish(os, p);
}

void write_summary_csv(const fs::path& p, const Trajectory& traj) {
    std::ofstream os = open_out(p);
    os << "t,area,affine_length,iso_ratio\n";
    for (const auto& st : traj.states) {
        const double a = area(st.curve);
        const double l = affine_length(st.curve);
        os << fmt17(st.t) << ',' << fmt17(a) << ',' << fmt17(l) << ','
           << fmt17(std::pow(a, -1.0 / 3.0) * l) << '\n';
    }
    finish(os, p);
}

void write_ratio_csv(const fs::path& p, const RatioSeries& rs) {
    std::ofstream os = open_out(p);
    os << "t,ratio,gap_to_sup\n";
    for (size_t i = 0; i < rs.t.size(); ++i)
        os << fmt17(rs.t[i]) << ',' << fmt17(rs.ratio[i]) << ','
           << fmt17(rs.gap_to_sup[i]) << '\n';
    finish(os, p);
}

Ellipse read_ellipse(const fs::path& p) {
    std::ifstream is = open_in(p);
    const ordered_json j = parse_json(is, p);
    if (!j.is_object() || !j.contains("center") || !j.contains("shape"))
        throw_invalid("ellipse JSON needs center and shape: " + p.string());
    const auto& sh = j["shape"];
    if (!sh.is_array() || sh.size() != 2 || !sh[0].is_array() ||
        !sh[1].is_array() || sh[0].size() != 2 || sh[1].size() != 2)
        throw_invalid("ellipse shape must be a 2x2 matrix");
    Ellipse e;
    e.center = vec2_of(j["center"], "center");
    e.shape << finite_number(sh[0][0], "shape"), finite_number(sh[0][1], "shape"),
        finite_number(sh[1][0], "shape"), finite_number(sh[1][1], "shape");
    e.validate();
    return e;
}

void write_ellipse(const fs::path& p, const Ellipse& e) {
    ordered_json j;
    j["center"] = {e.center.x(), e.center.y()};
    j["shape"] = {{e.shape(0, 0), e.shape(0, 1)},
                  {e.shape(1, 0), e.shape(1, 1)}};
    std::ofstream os = open_out(p);
    os << j.dump() << '\n';
    finish(os, p);
}

void write_field_csv(const fs::path& csv, const fs::path& sidecar,
                     const ArrivalField& f) {
    const GridSpec& g = f.grid;
    g.validate();
    {
        std::ofstream os = open_out(csv);
        os << "i,j,x,y,tau,u,resolved\n";
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const int k = g.index(i, j);
                const Vec2 p = g.node(i, j);
                os << i << ',' << j << ',' << fmt17(p.x()) << ','
                   << fmt17(p.y()) << ',' << fmt17(f.tau[k]) << ','
                   << fmt17(f.u[k]) << ',' << int(f.resolved[k]) << '\n';
            }
        }
        finish(os, csv);
    }
    ordered_json j;
    j["grid"] = {{"origin", {g.origin.x(), g.origin.y()}},
                 {"spacing", g.spacing},
                 {"nx", g.nx},
                 {"ny", g.ny}};
    j["t_stop"] = f.t_stop;
    j["u_floor"] = f.u_floor;
    j["extinction_estimate"] = f.extinction_estimate;
    j["extinction_point"] = {f.extinction_point.x(), f.extinction_point.y()};
    std::ofstream os = open_out(sidecar);
    os << j.dump(2) << '\n';
    finish(os, sidecar);
}

namespace {

struct Viewport {
    double min_x = 0.0, min_y = 0.0, span = 1.0;
    static constexpr double kSize = 640.0;

    double px(double x) const { return (x - min_x) / span * kSize; }
    double py(double y) const { return (1.0 - (y - min_y) / span) * kSize; }
};

Viewport fit_viewport(const std::vector<ConvexPolygon>& shapes) {
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = -lo_x;
    for (const auto& s : shapes)
        for (const auto& v : s.vertices) {
            lo_x = std::min(lo_x, v.x());
            hi_x = std::max(hi_x, v.x());
            lo_y = std::min(lo_y, v.y());
            hi_y = std::max(hi_y, v.y());
        }
    Viewport vp;
    vp.span = std::max(hi_x - lo_x, hi_y - lo_y) * 1.1;
    if (!(vp.span > 0.0)) vp.span = 1.0;
    vp.min_x = 0.5 * (lo_x + hi_x) - 0.5 * vp.span;
    vp.min_y = 0.5 * (lo_y + hi_y) - 0.5 * vp.span;
    return vp;
}

void svg_path(std::ostream& os, const Viewport& vp, const ConvexPolygon& poly,
              const std::string& stroke, double width_px) {
    os << "  <path d=\"";
    for (size_t i = 0; i < poly.vertices.size(); ++i) {
        const auto& v = poly.vertices[i];
        char buf[64];
        std::snprintf(buf, sizeof buf, "%c%.3f %.3f", i == 0 ? 'M' : 'L',
                      vp.px(v.x()), vp.py(v.y()));
        os << buf << ' ';
    }
    os << "Z\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
       << width_px << "\"/>\n";
}

} // namespace

void write_curves_svg(const fs::path& p,
                      const std::vector<std::pair<SupportCurve, SvgStyle>>& curves) {
    if (curves.empty()) throw_invalid("write_curves_svg needs a curve");
    std::vector<ConvexPolygon> shapes;
    shapes.reserve(curves.size());
    for (const auto& [c, style] : curves) shapes.push_back(to_points(c));
    const Viewport vp = fit_viewport(shapes);

    std::ofstream os = open_out(p);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Viewport::kSize
       << "\" height=\"" << Viewport::kSize << "\" viewBox=\"0 0 "
       << Viewport::kSize << ' ' << Viewport::kSize << "\">\n";
    for (size_t i = 0; i < shapes.size(); ++i) {
        const SvgStyle& style = curves[i].second;
        const double width_px =
            std::max(0.5, style.stroke_width / vp.span * Viewport::kSize);
        svg_path(os, vp, shapes[i], style.stroke, width_px);
    }
    os << "</svg>\n";
    finish(os, p);
}

void write_curve_svg(const fs::path& p, const SupportCurve& c) {
    write_curves_svg(p, {{c, SvgStyle{}}});
}

void write_overlay_svg(const fs::path& p, const SupportCurve& c,
                       const Ellipse& e) {
    write_curves_svg(
        p, {{c, SvgStyle{}},
            {support_of_ellipse(e, 256), SvgStyle{"#c44536", 0.008}}});
}

OutputStager::OutputStager(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) fail_io("cannot create output directory " + dir_.string() + ": " +
                    ec.message());
}

OutputStager::~OutputStager() {
    std::error_code ec;
    for (const auto& [tmp, final] : staged_) fs::remove(tmp, ec);
}

std::filesystem::path OutputStager::stage(const std::string& filename) {
    if (filename.empty() || filename.find('/') != std::string::npos)
        throw_invalid("stage needs a bare file name");
    const fs::path final = dir_ / filename;
    const fs::path tmp =
        dir_ / (filename + ".tmp" + std::to_string(staged_.size()));
    staged_.emplace_back(tmp, final);
    return tmp;
}

void OutputStager::commit() {
    for (const auto& [tmp, final] : staged_) {
        std::error_code ec;
        fs::rename(tmp, final, ec);
        if (ec)
            fail_io("cannot commit " + final.string() + ": " + ec.message());
    }
    staged_.clear();
}

} // namespace acsf::io
