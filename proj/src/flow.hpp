#pragma once

#include "geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace acsf {

struct FlowState {
    double t = 0.0;
    SupportCurve curve;
};

enum class StopReason { area_floor, target_time, lost_convexity, max_steps };

const char* to_string(StopReason r);

struct EvolveOptions {
    std::optional<double> area_floor;  // stop when area <= floor
    std::optional<double> target_time; // stop at t (clamping the last dt)
    double safety = 0.2;               // CFL safety factor, see cfl_dt
    double snapshot_area_fraction = 0.01; // record when area drops by this fraction
    std::vector<double> milestone_areas;  // force-record at first crossing
    long max_steps = 20'000'000;
};

struct Trajectory {
    std::vector<FlowState> states; // t strictly increasing; [0] is the input
    std::vector<int> milestone_indices; // into states, one per reached milestone
    StopReason stop_reason = StopReason::area_floor;
    double safety = 0.2;
    double extinction_estimate = 0.0;
    // Provenance tag for the estimate: circle-law bound from the final area.
    std::string extinction_formula = "t_stop + (3/4)*(A_stop/pi)^(2/3)";

    double t_begin() const { return states.front().t; }
    double t_end() const { return states.back().t; }

    // Curve at time t by linear interpolation of neighbouring snapshots
    // (valid because snapshots are dense in log-area); the interpolant is
    // checked for strict convexity. t outside [t_begin, t_end] is a range
    // error.
    SupportCurve curve_at(double t) const;
};

// Largest stable explicit step for the stiffest mode:
//   dt = safety * 1.5 * (min rho)^{4/3} * dtheta^2.
// The linearized symbol at the Nyquist mode is -(1/3) rho^{-4/3} (n/2)^2, so
// RK4's real-axis stability bound 2.785 translates to safety <= 0.565;
// the default 0.2 leaves a 2.8x margin for the nonlinearity.
double cfl_dt(const SupportCurve& c, double safety);

// One RK4 step of h_t = -(h + h'')^{-1/3}. Any stage losing strict
// convexity raises LostConvexityError with the stage recorded.
FlowState step(const FlowState& s, double dt);

// March until the requested stop condition, recording snapshots on a
// geometric-in-area cadence plus forced records at t = 0, each milestone
// crossing and the final step. The input curve is re-based to its Steiner
// point so every recorded state has origin (0, 0) in body frame.
// On mid-run loss of convexity the last good state closes the trajectory
// and stop_reason says so; the error is not propagated.
Trajectory evolve(const SupportCurve& c0, const EvolveOptions& opt);

// max over consecutive snapshot pairs of |dA/dt + affine_length(mid)| /
// affine_length(mid); the exact flow has dA/dt = -affine_length.
double area_law_check(const Trajectory& traj);

} // namespace acsf
