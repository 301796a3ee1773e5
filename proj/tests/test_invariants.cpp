#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flow.hpp"
#include "helpers.hpp"
#include "invariants.hpp"

#include <cmath>

using namespace acsf;

namespace {

SupportCurve circle(double r, int n = 256) {
    Ellipse e;
    e.shape = Mat2::Identity() * (r * r);
    return support_of_ellipse(e, n);
}

} // namespace

TEST_CASE("the ratio supremum is 2 pi^{2/3}") {
    CHECK_NEAR(affine_iso_sup(), 4.290058794222051, 1e-14);
}

TEST_CASE("affine length of circles and ellipses") {
    // circle radius R: integral rho^{2/3} = 2 pi R^{2/3}
    CHECK_NEAR(affine_length(circle(2.0)), 2.0 * kPi * std::cbrt(4.0), 1e-11);

    // ellipse a*b: affine length = 2 pi (ab)^{1/3}, the equality case
    Ellipse e;
    e.shape << 4.0, 0.0, 0.0, 1.0;
    const SupportCurve c = support_of_ellipse(e, 256);
    CHECK_NEAR(affine_length(c), 2.0 * kPi * std::cbrt(2.0), 1e-10);
    CHECK_NEAR(iso_ratio(c), affine_iso_sup(), 1e-10);
}

TEST_CASE("pinned quadrature value for a cosine perturbation of the disk") {
    const SupportCurve c = curve_from_fourier(256, 1.0, {0.0, 0.0, 0.1});
    CHECK_NEAR(area(c), 3.015928947446201, 1e-12);
    CHECK_NEAR(affine_length(c), 6.020720736098619, 1e-10);
    CHECK_NEAR(iso_ratio(c), 4.167172209870524, 1e-10);
    CHECK(iso_ratio(c) < affine_iso_sup());
}

TEST_CASE("iso_ratio is invariant under unimodular maps") {
    const SupportCurve c = curve_from_fourier(256, 1.0, {0.0, 0.02, 0.1});
    AffineMap m;
    m.linear << 1.3, 0.4, 0.1, (1.0 + 0.4 * 0.1) / 1.3; // det = 1
    m.unimodular = true;
    m.translation = Vec2(0.2, -0.1);
    const SupportCurve img = apply_affine(c, m);
    CHECK_NEAR(iso_ratio(img), iso_ratio(c), 1e-9);

    // scaling is also neutral: both numerator and denominator scale as s^{2/3}
    CHECK_NEAR(iso_ratio(c.scaled(2.5)), iso_ratio(c), 1e-10);
}

TEST_CASE("ratio series increases along the flow and approaches the sup") {
    const SupportCurve c0 = curve_from_fourier(128, 1.0, {0.0, 0.0, 0.1});
    EvolveOptions opt;
    opt.area_floor = area(c0) / 64.0;
    const Trajectory traj = evolve(c0, opt);
    const RatioSeries rs = ratio_series(traj);
    REQUIRE(rs.t.size() == traj.states.size());
    REQUIRE(rs.t.size() > 5);

    for (size_t i = 0; i + 1 < rs.ratio.size(); ++i)
        CHECK(rs.ratio[i + 1] >= rs.ratio[i] - 1e-6);
    for (size_t i = 0; i < rs.ratio.size(); ++i) {
        CHECK(rs.gap_to_sup[i] == affine_iso_sup() - rs.ratio[i]);
        CHECK(rs.gap_to_sup[i] > -1e-9);
    }
    CHECK(rs.gap_to_sup.back() < rs.gap_to_sup.front());
    CHECK(rs.gap_to_sup.back() < 1e-2);
}

TEST_CASE("iso_ratio rejects degenerate input") {
    std::vector<Vec2> sq = {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    const SupportCurve raw = from_polygon(ConvexPolygon::from_points(sq), 64, 0.0);
    CHECK_THROWS_AS(iso_ratio(raw), LostConvexityError);
}
