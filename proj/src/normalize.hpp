#pragma once

#include "flow.hpp"
#include "geometry.hpp"

namespace acsf {

struct MveeResult {
    Ellipse ellipse;
    int iterations = 0;
    double residual = 0.0; // max(w+/D - 1, 1 - w-/D) at exit
    std::vector<double> weights;
};

// Minimum-volume enclosing ellipse of the vertex set, by Khachiyan
// multiplicative-weights ascent with Todd-Yildirim away steps on the lifted
// points (p; 1). Certifies (1 + tol)-optimality; every vertex satisfies
// (p - c)^T M^{-1} (p - c) <= (1 + tol)^2 at exit. Collinear input is
// invalid; hitting max_iters is a convergence error carrying the residual.
MveeResult mvee(const ConvexPolygon& points, double tol = 1e-6,
                long max_iters = 100000);

struct GoodShape {
    bool good = false;
    double lambda_inner = 0.0; // largest s with s*E (about its center) inside K
    double mu_outer = 0.0;     // smallest s with K inside s*E
};

// John containment test against a candidate ellipse: good iff
// lambda_inner >= 1/2 - tol and mu_outer <= 1 + tol.
GoodShape good_shape_check(const SupportCurve& c, const Ellipse& e,
                           double tol = 1e-4);

// Area-preserving linear normalization: L = (det M)^{1/4} M^{-1/2},
// translation -L * center; maps E onto the disk of radius (det M)^{1/4}
// about the origin, det L = 1. Axis ratio beyond 1e6 (shape condition
// number > 1e12) is a conditioning error.
AffineMap unimodular_normalizer(const Ellipse& e);

// Roundness of the normalized curve: max_theta |h_hat(theta)/r - 1| where
// h_hat is the support of the normalizer image about the origin and
// r = (det M)^{1/4}. Zero iff K equals E.
double ellipse_eps(const SupportCurve& c, const Ellipse& e);

// Parabolic space-time rescale of a trajectory: t -> t/lambda and
// x -> lambda^{-3/4} x, the planar case of lambda^{-(n+2)/(2n+2)}.
Trajectory blow_down(const Trajectory& traj, double lambda);

struct NormalizedSnapshot {
    SupportCurve curve; // unimodular image; its MVEE is the disk of radius `scale`
    AffineMap map;
    Ellipse mvee_ellipse;
    double scale = 0.0; // (det M)^{1/4}
};

NormalizedSnapshot normalize_snapshot(const SupportCurve& c,
                                      double mvee_tol = 1e-6);

} // namespace acsf
