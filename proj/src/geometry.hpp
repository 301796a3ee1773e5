#pragma once

#include "errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

namespace acsf {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Counterclockwise convex vertex list. `from_points` validates convex
// position (cross products of consecutive edges >= -eps * scale^2) and
// orientation; fewer than 3 vertices or a degenerate hull is invalid input.
struct ConvexPolygon {
    std::vector<Vec2> vertices;

    static ConvexPolygon from_points(std::vector<Vec2> pts);

    double signed_area() const;
    Vec2 centroid() const;
    double diameter() const;
};

// E = { x : (x - center)^T shape^{-1} (x - center) <= 1 }, shape SPD.
struct Ellipse {
    Vec2 center{0.0, 0.0};
    Mat2 shape{Mat2::Identity()};

    void validate() const; // throws invalid_input unless SPD
    double area() const;   // pi * sqrt(det shape)
    // Semi-axis lengths, descending (sqrt of shape eigenvalues).
    std::array<double, 2> semi_axes() const;
};

// x -> linear * x + translation. `unimodular` asserts |det linear| == 1
// and is checked by validate().
struct AffineMap {
    Mat2 linear{Mat2::Identity()};
    Vec2 translation{0.0, 0.0};
    bool unimodular = false;

    Vec2 operator()(const Vec2& x) const { return linear * x + translation; }
    AffineMap inverse() const;
    void validate() const;
};

// Convex body represented by n uniform samples of its support function
// about `origin`: h_j = h_K(theta_j) with theta_j = 2*pi*j/n,
// h_K(theta) = sup_{x in K} <x - origin, (cos theta, sin theta)>.
//
// The constructor checks n >= 16 and finiteness only; strict convexity
// (h + h'' > 0) is a precondition of the operations that differentiate,
// which raise lost-convexity errors with the offending sample index.
class SupportCurve {
public:
    SupportCurve(std::vector<double> h, Vec2 origin);

    int samples() const noexcept { return static_cast<int>(h_.size()); }
    const std::vector<double>& support() const noexcept { return h_; }
    const Vec2& origin() const noexcept { return origin_; }
    double theta(int j) const { return 2.0 * kPi * j / samples(); }
    static Vec2 direction(double theta) {
        return Vec2(std::cos(theta), std::sin(theta));
    }

    // Same body measured about a different origin.
    SupportCurve rebased(const Vec2& new_origin) const;
    // Body translated by delta (origin kept).
    SupportCurve translated(const Vec2& delta) const;
    // Body scaled by lambda > 0 about the origin.
    SupportCurve scaled(double lambda) const;
    // Support samples about an arbitrary point p (no object built).
    std::vector<double> support_about(const Vec2& p) const;

private:
    std::vector<double> h_;
    Vec2 origin_;
};

// --- constructors -----------------------------------------------------------

// Exact polygon support about the centroid, optionally mollified: wrapped
// Gaussian filter of width 2.5 * dtheta in angle (computed on an 8x
// oversampled exact sampling), then Minkowski sum with a disk of radius
// r_smooth, which shifts h + h'' up by r_smooth and restores strict
// convexity. r_smooth = 0 returns the raw sampled support (no filter).
// Default r_smooth: 1e-2 * diameter.
SupportCurve from_polygon(const ConvexPolygon& poly, int n,
                          std::optional<double> r_smooth = std::nullopt);

// h(theta) = <center, u> + sqrt(u^T shape u), measured about the world origin.
SupportCurve support_of_ellipse(const Ellipse& e, int n);

// base + sum_k (cos_amps[k-1] cos k theta + sin_amps[k-1] sin k theta),
// about the world origin.
SupportCurve curve_from_fourier(int n, double base,
                                const std::vector<double>& cos_amps,
                                const std::vector<double>& sin_amps = {});

// --- operations -------------------------------------------------------------

// rho_j = h_j + h''_j (spectral second derivative). Throws LostConvexityError
// at the first nonpositive sample.
std::vector<double> radius_of_curvature(const SupportCurve& c);

// True iff min_j (h + h'')_j > 0; optionally reports the minimum.
bool strictly_convex(const SupportCurve& c, double* min_rho = nullptr);

// Enclosed area, 0.5 * integral (h^2 - h'^2), trapezoid rule (spectrally
// accurate for periodic integrands).
double area(const SupportCurve& c);

// Boundary points X(theta_j) = origin + h u + h' u_perp as a polygon.
// Requires strict convexity (error propagates).
ConvexPolygon to_points(const SupportCurve& c);

// Support curve of the affinely mapped body, via the dual identity
// h_{L K}(u) = |L^T u| h_K(L^T u / |L^T u|) evaluated with trigonometric
// interpolation at 4x oversampled angles and truncated back to n_out modes.
// Origin maps along. Singular maps are invalid input. n_out = 0 keeps the
// input sample count.
SupportCurve apply_affine(const SupportCurve& c, const AffineMap& map,
                          int n_out = 0);

// Hausdorff distance: max_j |h_1 - h_2| about a common origin (exact for
// convex bodies); the coarser curve is spectrally upsampled first.
double hausdorff(const SupportCurve& a, const SupportCurve& b);

// Curvature centroid origin + (1/pi) * integral h(theta) u(theta) dtheta;
// affinely natural center used to re-base curves for flow runs.
Vec2 steiner_point(const SupportCurve& c);

} // namespace acsf
