#pragma once

#include "geometry.hpp"

#include <vector>

namespace acsf {

struct Trajectory; // flow.hpp

// sup over convex bodies of the affine isoperimetric ratio, attained by
// ellipses: 2 * pi^{2/3}.
double affine_iso_sup();

// integral (h + h'')^{2/3} dtheta; requires strict convexity.
double affine_length(const SupportCurve& c);

// area^{-1/3} * affine_length; invariant under unimodular affine maps.
double iso_ratio(const SupportCurve& c);

struct RatioSeries {
    std::vector<double> t;
    std::vector<double> ratio;
    std::vector<double> gap_to_sup; // affine_iso_sup() - ratio
};

// Ratio along a trajectory's recorded states; monotone nondecreasing up to
// discretization slack for genuine flows.
RatioSeries ratio_series(const Trajectory& traj);

} // namespace acsf
