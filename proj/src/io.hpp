#pragma once

#include "arrival.hpp"
#include "flow.hpp"
#include "invariants.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace acsf::io {

// File-format surface. Readers raise io errors when a path cannot be opened
// and invalid_input when the content does not parse or fails validation;
// writers raise io on any stream failure. Doubles are written round-trip
// exact: 17 significant digits in CSV, shortest round-trip form in JSON.

// Plain text, one "x y" vertex per line, counterclockwise. Blank lines and
// lines starting with '#' are skipped.
ConvexPolygon read_polygon(const std::filesystem::path& p);
void write_polygon(const std::filesystem::path& p, const ConvexPolygon& poly);

// JSON object {n_samples, origin:[x,y], h:[...]}.
SupportCurve read_curve(const std::filesystem::path& p);
void write_curve(const std::filesystem::path& p, const SupportCurve& c);

// JSON lines, one state per line: {t, n_samples, h:[...]}. Evolve re-bases
// to the Steiner point, so no origin travels with the lines. Reading
// recomputes the extinction estimate from the final state; the stop reason
// of a loaded trajectory defaults to area_floor.
Trajectory read_trajectory(const std::filesystem::path& p);
void write_trajectory(const std::filesystem::path& p, const Trajectory& traj);

// CSV t,area,affine_length,iso_ratio, one row per snapshot.
void write_summary_csv(const std::filesystem::path& p, const Trajectory& traj);

// CSV t,ratio,gap_to_sup.
void write_ratio_csv(const std::filesystem::path& p, const RatioSeries& rs);

// JSON {center:[x,y], shape:[[m11,m12],[m12,m22]]}.
Ellipse read_ellipse(const std::filesystem::path& p);
void write_ellipse(const std::filesystem::path& p, const Ellipse& e);

// CSV i,j,x,y,tau,u,resolved plus a JSON sidecar holding the grid spec and
// the scalar field metadata. Unresolved nodes write nan for tau and u.
void write_field_csv(const std::filesystem::path& csv,
                     const std::filesystem::path& sidecar,
                     const ArrivalField& f);

// Standalone vector snapshot of one or more curves; curves are drawn as
// closed polylines in a common viewport with equal axis scaling.
struct SvgStyle {
    std::string stroke = "#1f6f8b";
    double stroke_width = 0.01;
};
void write_curves_svg(const std::filesystem::path& p,
                      const std::vector<std::pair<SupportCurve, SvgStyle>>& curves);
void write_curve_svg(const std::filesystem::path& p, const SupportCurve& c);
// Overlay of a curve and a fitted ellipse, for normalization snapshots.
void write_overlay_svg(const std::filesystem::path& p, const SupportCurve& c,
                       const Ellipse& e);

// Write-to-temp, rename-on-success staging: stage() hands out sibling temp
// paths, commit() renames everything into place, and uncommitted temps are
// removed on destruction so failed commands leave no partial output.
class OutputStager {
public:
    explicit OutputStager(std::filesystem::path dir);
    ~OutputStager();
    OutputStager(const OutputStager&) = delete;
    OutputStager& operator=(const OutputStager&) = delete;

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path stage(const std::string& filename);
    void commit();

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged_;
};

} // namespace acsf::io
