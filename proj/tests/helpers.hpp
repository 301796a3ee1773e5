#pragma once

#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

// Absolute-tolerance checks (doctest's Approx is relative-only).
#define CHECK_NEAR(a, b, tol) CHECK(std::fabs((a) - (b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::fabs((a) - (b)) <= (tol))

namespace testutil {

using acsf::Vec2;

// Brute-force support value of a point set.
inline double brute_support(const std::vector<Vec2>& pts, const Vec2& origin,
                            double theta) {
    const Vec2 u(std::cos(theta), std::sin(theta));
    double best = -1e300;
    for (const auto& p : pts) best = std::max(best, (p - origin).dot(u));
    return best;
}

// Dense boundary sampling of an axis-aligned ellipse centered at c.
inline std::vector<Vec2> ellipse_boundary(double a, double b, const Vec2& c,
                                          int m, double phase = 0.0) {
    std::vector<Vec2> pts(m);
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * acsf::kPi * i / m + phase;
        pts[i] = c + Vec2(a * std::cos(t), b * std::sin(t));
    }
    return pts;
}

// Andrew monotone chain; returns counterclockwise hull.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& p, const Vec2& q) {
        return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& p, const Vec2& q) {
                              return p.x() == q.x() && p.y() == q.y();
                          }),
              pts.end());
    const auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) -
               (a.y() - o.y()) * (b.x() - o.x());
    };
    const int n = static_cast<int>(pts.size());
    if (n < 3) return pts;
    std::vector<Vec2> hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

// Seeded random convex polygon with 3..12 vertices inside a disk.
inline acsf::ConvexPolygon random_convex_polygon(std::mt19937& rng,
                                                 double radius = 1.0) {
    std::uniform_int_distribution<int> count(6, 16);
    std::uniform_real_distribution<double> coord(-radius, radius);
    std::vector<Vec2> pts;
    while (true) {
        pts.clear();
        const int m = count(rng);
        for (int i = 0; i < m; ++i) {
            Vec2 p(coord(rng), coord(rng));
            if (p.norm() <= radius) pts.push_back(p);
            else --i;
        }
        auto hull = convex_hull(pts);
        if (hull.size() >= 3) {
            acsf::ConvexPolygon poly{std::move(hull)};
            if (poly.signed_area() > 0.05 * radius * radius)
                return acsf::ConvexPolygon::from_points(poly.vertices);
        }
    }
}

} // namespace testutil
