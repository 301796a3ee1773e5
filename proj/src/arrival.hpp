#pragma once

#include "flow.hpp"
#include "geometry.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace acsf {

struct GridSpec {
    Vec2 origin{0.0, 0.0}; // node (0, 0)
    double spacing = 0.0;
    int nx = 0, ny = 0;

    static GridSpec centered(double half_extent, int nodes_per_side);

    void validate() const;
    Vec2 node(int i, int j) const { return origin + spacing * Vec2(i, j); }
    int index(int i, int j) const { return j * nx + i; }
    int count() const { return nx * ny; }
};

// Arrival time tau(x) = first time the shrinking curve reaches x, and the
// ancient-solution normal form u(x) = extinction_estimate - tau(x).
// Nodes outside the initial curve are neither inside nor resolved; nodes
// still interior at t_stop are inside but unresolved (tau, u = NaN there).
struct ArrivalField {
    GridSpec grid;
    std::vector<double> tau;
    std::vector<double> u;
    std::vector<std::uint8_t> inside;
    std::vector<std::uint8_t> resolved;
    double t_stop = 0.0;
    double u_floor = 0.0; // extinction_estimate - t_stop
    double extinction_estimate = 0.0;
    Vec2 extinction_point{0.0, 0.0};
};

// Sweep the grid against the trajectory: per node, bracket the crossing by
// binary search over snapshots, then bisect in time (tolerance 1e-6) on the
// interpolated support function. Containment margin is
// min_theta (h - <p - o, u(theta)>) with 3-point parabolic refinement.
// Preconditions: strictly shrinking snapshots, the grid box covers the
// initial curve, and the final curve spans >= 8 grid nodes (else a
// resolution error).
ArrivalField reconstruct(const Trajectory& traj, const GridSpec& grid);

// Closed-form ancient solution profile (3/4) |x|^{4/3}.
double radial_exact(const Vec2& x);

// Synthetic field from a closed-form u, every node resolved; for residual
// convergence studies and detector tests.
ArrivalField sample_field(const GridSpec& grid,
                          const std::function<double(const Vec2&)>& u_fn);

struct ResidualStats {
    double max_abs = 0.0;
    double median_abs = 0.0;
    long count = 0;
};

// Pointwise defect of div(Du/|Du|) = |Du|^{-3} by central differences.
// Eligible nodes have a fully resolved 5x5 neighbourhood, lie outside the
// exclusion disk of radius 4*spacing about the extinction point, and within
// [r_min, r_max] of it. Returns NaN at ineligible nodes.
std::vector<double> pde_residual(const ArrivalField& f, double r_min = 0.0,
                                 double r_max = std::numeric_limits<double>::infinity());

// Stats over the eligible nodes; no eligible node is a resolution error.
ResidualStats pde_residual_stats(const ArrivalField& f, double r_min = 0.0,
                                 double r_max = std::numeric_limits<double>::infinity());

struct ConcavityReport {
    bool passes = false;        // no midpoint violation and convex levels
    double worst_violation = 0.0; // max of phi(mid) - avg(phi(ends)) over triples
    long triples_checked = 0;
    long violations = 0;
    bool level_sets_convex = false;
    double worst_level_defect = 0.0; // deepest non-member node inside a level hull
    long levels_checked = 0;
};

// Log-concavity probe of phi = -log(h0 - u) for a level h0
// above the probed range: midpoint convexity of phi along axis and diagonal
// equal-spaced triples (violation beyond `slack` counts), plus convexity of
// sampled sub-level sets {u <= level} via a support-hull fill test with a
// 2*spacing discretization allowance.
ConcavityReport log_concavity_check(const ArrivalField& f, double h0,
                                    double slack = 1e-6);

} // namespace acsf
