#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geometry.hpp"
#include "helpers.hpp"
#include "spectral.hpp"

#include <cmath>

using namespace acsf;

namespace {

SupportCurve unit_disk(int n = 256) {
    return support_of_ellipse(Ellipse{}, n);
}

Ellipse axis_ellipse(double a, double b, Vec2 c = Vec2(0.0, 0.0)) {
    Ellipse e;
    e.center = c;
    e.shape << a * a, 0.0, 0.0, b * b;
    return e;
}

} // namespace

TEST_CASE("spectral differentiation is exact on resolved modes") {
    const int n = 256;
    auto& eng = spectral_for(n);
    for (int k : {1, 3, 17, 64}) {
        std::vector<double> h(n), d1(n), d2(n);
        for (int j = 0; j < n; ++j) {
            const double t = 2.0 * kPi * j / n;
            h[j] = std::cos(k * t) + 0.25 * std::sin(k * t);
        }
        eng.derivatives(h.data(), d1.data(), d2.data());
        for (int j = 0; j < n; ++j) {
            const double t = 2.0 * kPi * j / n;
            const double want1 = -k * std::sin(k * t) + 0.25 * k * std::cos(k * t);
            const double want2 = -k * k * h[j];
            CHECK_NEAR(d1[j], want1, 1e-8);
            CHECK_NEAR(d2[j], want2, 1e-6 * k * k);
        }
    }
}

TEST_CASE("spectral resample agrees with direct sampling of a band-limited h") {
    const int coarse = 64, fine = 256;
    std::vector<double> h(coarse);
    for (int j = 0; j < coarse; ++j) {
        const double t = 2.0 * kPi * j / coarse;
        h[j] = 1.0 + 0.2 * std::cos(3.0 * t) - 0.05 * std::sin(7.0 * t);
    }
    const std::vector<double> up = spectral_resample(h, fine);
    for (int j = 0; j < fine; ++j) {
        const double t = 2.0 * kPi * j / fine;
        const double want = 1.0 + 0.2 * std::cos(3.0 * t) - 0.05 * std::sin(7.0 * t);
        CHECK_NEAR(up[j], want, 1e-12);
    }
    const std::vector<double> back = spectral_resample(up, coarse);
    for (int j = 0; j < coarse; ++j) CHECK_NEAR(back[j], h[j], 1e-12);
}

TEST_CASE("support curve constructor validates") {
    CHECK_THROWS_AS(SupportCurve(std::vector<double>(8, 1.0), Vec2(0, 0)), Error);
    std::vector<double> bad(32, 1.0);
    bad[5] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(SupportCurve(std::move(bad), Vec2(0, 0)), Error);
}

TEST_CASE("ellipse support samples and curvature radii") {
    // Unit disk centered at (1, 0) about the world origin: h = 1 + cos(theta).
    const SupportCurve c =
        support_of_ellipse(axis_ellipse(1.0, 1.0, Vec2(1.0, 0.0)), 256);
    for (int j = 0; j < 256; ++j)
        CHECK_NEAR(c.support()[j], 1.0 + std::cos(c.theta(j)), 1e-13);

    // a = 2, b = 1: rho(0) = b^2/a = 0.5, rho(pi/2) = a^2/b = 4.
    const SupportCurve e = support_of_ellipse(axis_ellipse(2.0, 1.0), 256);
    const std::vector<double> rho = radius_of_curvature(e);
    CHECK_NEAR(rho[0], 0.5, 1e-10);
    CHECK_NEAR(rho[64], 4.0, 1e-10);
    CHECK_NEAR(area(e), 2.0 * kPi, 1e-12);
}

TEST_CASE("raw square support is exact and flagged non-convex") {
    std::vector<Vec2> sq = {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    const ConvexPolygon poly = ConvexPolygon::from_points(sq);
    const SupportCurve c = from_polygon(poly, 256, 0.0);
    CHECK_NEAR(c.support()[0], 1.0, 1e-14);
    CHECK_NEAR(c.support()[32], std::sqrt(2.0), 1e-14);
    CHECK_FALSE(strictly_convex(c));
    CHECK_THROWS_AS(radius_of_curvature(c), LostConvexityError);
    try {
        radius_of_curvature(c);
    } catch (const LostConvexityError& err) {
        CHECK(err.sample_index() >= 0);
        CHECK(err.kind() == ErrorKind::lost_convexity);
    }
}

TEST_CASE("smoothed polygon support is strictly convex and close to the body") {
    std::vector<Vec2> sq = {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    const ConvexPolygon poly = ConvexPolygon::from_points(sq);
    const SupportCurve c = from_polygon(poly, 256); // default r_smooth = 1e-2 diam
    double min_rho = 0.0;
    CHECK(strictly_convex(c, &min_rho));
    CHECK(min_rho > 0.01);
    CHECK(area(c) > 3.8);
    CHECK(area(c) < 4.6); // angular mollification dilates by O(sigma * h)
    const SupportCurve raw = from_polygon(poly, 256, 0.0);
    CHECK(hausdorff(c, raw) < 0.2);
}

TEST_CASE("from_polygon on a fine inscribed polygon approximates the ellipse") {
    // 20 jittered vertices on a mild ellipse; smoothing must keep the curve
    // within 1e-2 Hausdorff of the generating ellipse.
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> jit(-0.05, 0.05);
    std::vector<Vec2> pts;
    const double a = 0.35, b = 0.3;
    for (int i = 0; i < 20; ++i) {
        const double t = 2.0 * kPi * (i + jit(rng)) / 20.0;
        pts.emplace_back(a * std::cos(t), b * std::sin(t));
    }
    const ConvexPolygon poly = ConvexPolygon::from_points(pts);
    const SupportCurve c = from_polygon(poly, 256, 5e-4);
    CHECK(strictly_convex(c));
    const SupportCurve ell = support_of_ellipse(axis_ellipse(a, b), 256);
    CHECK(hausdorff(c, ell) < 1e-2);
}

TEST_CASE("boundary points satisfy the ellipse equation") {
    const double a = 1.5, b = 0.8;
    const SupportCurve c = support_of_ellipse(axis_ellipse(a, b), 256);
    const ConvexPolygon pts = to_points(c);
    REQUIRE(pts.vertices.size() == 256);
    for (const auto& p : pts.vertices) {
        const double q = (p.x() / a) * (p.x() / a) + (p.y() / b) * (p.y() / b);
        CHECK_NEAR(q, 1.0, 1e-10);
    }
    CHECK_NEAR(pts.signed_area(), kPi * a * b, 1e-3);
}

TEST_CASE("to_points propagates lost convexity") {
    std::vector<Vec2> sq = {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    const SupportCurve raw = from_polygon(ConvexPolygon::from_points(sq), 256, 0.0);
    CHECK_THROWS_AS(to_points(raw), LostConvexityError);
}

TEST_CASE("apply_affine matches the closed-form image of a disk under shear") {
    AffineMap shear;
    shear.linear << 1.0, 1.0, 0.0, 1.0;
    const SupportCurve img = apply_affine(unit_disk(), shear);
    Ellipse want;
    want.shape = shear.linear * shear.linear.transpose();
    const SupportCurve ref = support_of_ellipse(want, 256);
    CHECK(hausdorff(img, ref) < 1e-10);
}

TEST_CASE("apply_affine identity and inverse round-trip") {
    const SupportCurve c = curve_from_fourier(256, 1.0, {0.0, 0.0, 0.1});
    const SupportCurve same = apply_affine(c, AffineMap{});
    CHECK(hausdorff(c, same) < 1e-12);

    AffineMap m;
    m.linear << 1.4, 0.3, -0.2, 0.9;
    m.translation = Vec2(0.4, -0.7);
    const SupportCurve there = apply_affine(c, m);
    const SupportCurve back = apply_affine(there, m.inverse());
    CHECK(hausdorff(c, back) < 1e-9);
}

TEST_CASE("apply_affine rejects singular maps") {
    AffineMap bad;
    bad.linear << 1.0, 2.0, 0.5, 1.0; // det = 0
    CHECK_THROWS_AS(apply_affine(unit_disk(), bad), Error);
}

TEST_CASE("unimodular maps preserve area") {
    const SupportCurve c = curve_from_fourier(256, 1.0, {0.0, 0.0, 0.1});
    AffineMap m;
    m.linear << 2.0, 0.3, 0.1, 0.515; // det = 1
    m.unimodular = true;
    const SupportCurve img = apply_affine(c, m);
    CHECK(area(img) == doctest::Approx(area(c)).epsilon(1e-6));
}

TEST_CASE("translation moves support but not curvature") {
    const SupportCurve c = support_of_ellipse(axis_ellipse(2.0, 1.0), 256);
    const Vec2 d(0.3, 0.0); // grid-aligned so the max is attained at theta = 0
    const SupportCurve moved = c.translated(d);
    CHECK_NEAR(hausdorff(c, moved), 0.3, 1e-12);
    const auto r0 = radius_of_curvature(c);
    const auto r1 = radius_of_curvature(moved);
    for (int j = 0; j < 256; ++j) CHECK_NEAR(r1[j], r0[j], 1e-9);
    CHECK_NEAR(area(moved), area(c), 1e-12);
}

TEST_CASE("hausdorff between disk and wider ellipse is the axis gap") {
    const SupportCurve disk = unit_disk();
    const SupportCurve ell = support_of_ellipse(axis_ellipse(1.2, 1.0), 256);
    CHECK_NEAR(hausdorff(disk, ell), 0.2, 1e-12);
    CHECK_NEAR(hausdorff(ell, disk), 0.2, 1e-12);
    CHECK_NEAR(hausdorff(disk, disk), 0.0, 1e-15);
}

TEST_CASE("hausdorff handles different grids and origins") {
    const SupportCurve fine = support_of_ellipse(axis_ellipse(1.0, 0.7), 256);
    const SupportCurve coarse = support_of_ellipse(axis_ellipse(1.0, 0.7), 64);
    CHECK(hausdorff(fine, coarse) < 1e-6);

    const SupportCurve rebased = fine.rebased(Vec2(0.2, -0.1));
    CHECK(hausdorff(fine, rebased) < 1e-12); // same body, different origin
}

TEST_CASE("steiner point of an ellipse is its center") {
    Ellipse e = axis_ellipse(1.7, 0.6, Vec2(0.8, -0.3));
    const SupportCurve c = support_of_ellipse(e, 256);
    CHECK((steiner_point(c) - e.center).norm() < 1e-12);
}

TEST_CASE("support_about matches rebased support") {
    const SupportCurve c =
        support_of_ellipse(axis_ellipse(1.3, 0.9, Vec2(0.5, 0.2)), 64);
    const Vec2 p(0.1, -0.4);
    const auto h = c.support_about(p);
    const SupportCurve r = c.rebased(p);
    for (int j = 0; j < 64; ++j) CHECK_NEAR(h[j], r.support()[j], 1e-14);
    CHECK_NEAR(area(r), area(c), 1e-12);
}

TEST_CASE("polygon validation") {
    std::vector<Vec2> reflex = {{0, 0}, {2, 0}, {0.2, 0.2}, {0, 2}};
    CHECK_THROWS_AS(ConvexPolygon::from_points(reflex), Error);

    std::vector<Vec2> line = {{0, 0}, {1, 1}, {2, 2}};
    CHECK_THROWS_AS(ConvexPolygon::from_points(line), Error);

    std::vector<Vec2> cw = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    const ConvexPolygon fixed = ConvexPolygon::from_points(cw);
    CHECK(fixed.signed_area() == doctest::Approx(1.0));
    CHECK(fixed.centroid().x() == doctest::Approx(0.5));
    CHECK(fixed.diameter() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("curve_from_fourier evaluates the requested series") {
    const SupportCurve c = curve_from_fourier(64, 1.0, {0.0, 0.0, 0.1}, {0.02});
    for (int j = 0; j < 64; ++j) {
        const double t = c.theta(j);
        const double want = 1.0 + 0.1 * std::cos(3.0 * t) + 0.02 * std::sin(t);
        CHECK_NEAR(c.support()[j], want, 1e-14);
    }
}

TEST_CASE("ellipse type validators") {
    Ellipse e;
    e.shape << 1.0, 0.5, 0.5, 1.0;
    e.validate();
    CHECK(e.area() == doctest::Approx(kPi * std::sqrt(0.75)));
    auto axes = e.semi_axes();
    CHECK(axes[0] == doctest::Approx(std::sqrt(1.5)));
    CHECK(axes[1] == doctest::Approx(std::sqrt(0.5)));

    Ellipse bad;
    bad.shape << 1.0, 2.0, 2.0, 1.0; // indefinite
    CHECK_THROWS_AS(bad.validate(), Error);
}
