#pragma once

#include <vector>

namespace acsf {

// Closed forms for the affine flow of spheres and ellipsoids: hypersurface
// dimension n in R^{n+1}, speed K^{1/(n+2)} along the inward normal.

struct EllipsoidND {
    int n = 2;                     // hypersurface dimension
    std::vector<double> semi_axes; // n+1 positive entries

    void validate() const;
    double mean_radius() const; // geometric mean of the semi-axes
    double volume() const;      // enclosed (n+1)-volume
};

// R(t) = (R0^p - p t)^{1/p} with p = (2n+2)/(n+2); ancient for all t < T.
// t >= extinction time is a range error.
double sphere_radius_nd(double r0, double t, int n);

// T = R0^p / p, the blow-up time of the radius law.
double extinction_time_nd(double r0, int n);

// Ellipsoids evolve by isotropic scaling of the initial shape:
// a_i(t) = a_i(0) * R(t)/R0 with R0 the geometric mean radius.
EllipsoidND ellipsoid_evolution_nd(const EllipsoidND& e0, double t);

// Affine isoperimetric ratio of the round sphere (the supremum over convex
// hypersurfaces): sigma_n^{(2n+2)/(n+2)} / (n+1)^{n/(n+2)} written as
// V^{-n/(n+2)} * sigma_n for the unit ball. n = 1 gives 2 pi^{2/3}.
double iso_ratio_nd(int n);

// Residual of the parabolic rescaling identity
//   lambda^{-(n+2)/(2n+2)} E(lambda t) == E_lambda(t)
// where E_lambda starts from the rescaled initial ellipsoid. Evaluated at
// t = t_fraction * T_lambda; exact in closed form, so the residual is
// roundoff (max relative mismatch over the semi-axes).
double rescale_invariance_check(const EllipsoidND& e0, double lambda,
                                double t_fraction);

} // namespace acsf
