#include "flow.hpp"

#include "invariants.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace acsf {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::area_floor: return "area_floor";
        case StopReason::target_time: return "target_time";
        case StopReason::lost_convexity: return "lost_convexity";
        case StopReason::max_steps: return "max_steps";
    }
    return "unknown";
}

namespace {

// out = -(h + h'')^{-1/3}; returns the index of a nonpositive rho, or -1.
int flow_rhs(SpectralEngine& eng, const std::vector<double>& h,
             std::vector<double>& out) {
    const int n = static_cast<int>(h.size());
    out.resize(n);
    eng.derivatives(h.data(), nullptr, out.data());
    for (int j = 0; j < n; ++j) {
        const double rho = h[j] + out[j];
        if (!(rho > 0.0)) return j;
        out[j] = -1.0 / std::cbrt(rho);
    }
    return -1;
}

[[noreturn]] void throw_stage(int stage, int index) {
    std::ostringstream os;
    os << "lost convexity in RK4 stage " << stage << " at sample " << index;
    throw LostConvexityError(os.str(), index, stage);
}

} // namespace

double cfl_dt(const SupportCurve& c, double safety) {
    if (!(safety > 0.0)) throw_invalid("cfl safety factor must be positive");
    double min_rho = 0.0;
    if (!strictly_convex(c, &min_rho)) {
        std::ostringstream os;
        os << "cfl_dt on non-convex curve (min h + h'' = " << min_rho << ")";
        throw LostConvexityError(os.str(), -1);
    }
    const double dtheta = 2.0 * kPi / c.samples();
    return safety * 1.5 * std::pow(min_rho, 4.0 / 3.0) * dtheta * dtheta;
}

FlowState step(const FlowState& s, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw_invalid("step needs dt > 0");
    const int n = s.curve.samples();
    auto& eng = spectral_for(n);
    const std::vector<double>& h = s.curve.support();

    std::vector<double> k1, k2, k3, k4, tmp(n);
    int bad = flow_rhs(eng, h, k1);
    if (bad >= 0) throw_stage(1, bad);
    for (int j = 0; j < n; ++j) tmp[j] = h[j] + 0.5 * dt * k1[j];
    bad = flow_rhs(eng, tmp, k2);
    if (bad >= 0) throw_stage(2, bad);
    for (int j = 0; j < n; ++j) tmp[j] = h[j] + 0.5 * dt * k2[j];
    bad = flow_rhs(eng, tmp, k3);
    if (bad >= 0) throw_stage(3, bad);
    for (int j = 0; j < n; ++j) tmp[j] = h[j] + dt * k3[j];
    bad = flow_rhs(eng, tmp, k4);
    if (bad >= 0) throw_stage(4, bad);

    std::vector<double> out(n);
    for (int j = 0; j < n; ++j)
        out[j] = h[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    return FlowState{s.t + dt, SupportCurve(std::move(out), s.curve.origin())};
}

Trajectory evolve(const SupportCurve& c0, const EvolveOptions& opt) {
    if (!opt.area_floor && !opt.target_time)
        throw_invalid("evolve needs an area_floor or a target_time");
    if (opt.area_floor && !(*opt.area_floor > 0.0))
        throw_invalid("area_floor must be positive");
    if (!(opt.snapshot_area_fraction > 0.0 && opt.snapshot_area_fraction < 1.0))
        throw_invalid("snapshot_area_fraction must lie in (0, 1)");

    Trajectory traj;
    traj.safety = opt.safety;

    FlowState cur{0.0, c0.rebased(steiner_point(c0))};
    radius_of_curvature(cur.curve); // insist on a strictly convex start
    double cur_area = area(cur.curve);
    if (!(cur_area > 0.0)) throw_invalid("evolve needs positive initial area");

    std::vector<double> milestones = opt.milestone_areas;
    std::sort(milestones.begin(), milestones.end(), std::greater<>());
    size_t next_milestone = 0;
    while (next_milestone < milestones.size() &&
           milestones[next_milestone] >= cur_area)
        ++next_milestone;

    traj.states.push_back(cur);
    double last_recorded_area = cur_area;
    bool finished = false;

    auto record = [&](const FlowState& s, double a, bool milestone) {
        if (traj.states.empty() || traj.states.back().t < s.t)
            traj.states.push_back(s);
        if (milestone)
            traj.milestone_indices.push_back(
                static_cast<int>(traj.states.size()) - 1);
        last_recorded_area = a;
    };

    long steps = 0;
    while (!finished) {
        if (steps++ >= opt.max_steps) {
            traj.stop_reason = StopReason::max_steps;
            record(cur, cur_area, false);
            break;
        }
        double dt = cfl_dt(cur.curve, opt.safety);
        bool clamped = false;
        if (opt.target_time) {
            const double remaining = *opt.target_time - cur.t;
            if (remaining <= 1e-15 * std::max(1.0, std::abs(*opt.target_time))) {
                traj.stop_reason = StopReason::target_time;
                record(cur, cur_area, false);
                break;
            }
            if (dt >= remaining) {
                dt = remaining;
                clamped = true;
            }
        }

        FlowState next = cur;
        bool stepped = false;
        for (int attempt = 0; attempt < 10; ++attempt) {
            try {
                next = step(cur, dt);
                stepped = true;
                break;
            } catch (const LostConvexityError&) {
                dt *= 0.5;
                clamped = false;
            }
        }
        if (!stepped) {
            traj.stop_reason = StopReason::lost_convexity;
            record(cur, cur_area, false);
            break;
        }

        double next_area = 0.0;
        const bool still_convex = strictly_convex(next.curve, nullptr);
        next_area = still_convex ? area(next.curve) : 0.0;
        if (!still_convex || !(next_area > 0.0) || !std::isfinite(next_area)) {
            traj.stop_reason = StopReason::lost_convexity;
            record(cur, cur_area, false);
            break;
        }
        cur = std::move(next);
        cur_area = next_area;

        bool milestone_hit = false;
        while (next_milestone < milestones.size() &&
               cur_area <= milestones[next_milestone]) {
            milestone_hit = true;
            ++next_milestone;
        }

        if (opt.area_floor && cur_area <= *opt.area_floor) {
            traj.stop_reason = StopReason::area_floor;
            record(cur, cur_area, milestone_hit);
            break;
        }
        if (clamped) {
            traj.stop_reason = StopReason::target_time;
            record(cur, cur_area, milestone_hit);
            break;
        }
        if (milestone_hit ||
            cur_area <= last_recorded_area * (1.0 - opt.snapshot_area_fraction))
            record(cur, cur_area, milestone_hit);
    }

    const double a_stop = area(traj.states.back().curve);
    traj.extinction_estimate =
        traj.states.back().t + 0.75 * std::cbrt((a_stop / kPi) * (a_stop / kPi));
    return traj;
}

SupportCurve Trajectory::curve_at(double t) const {
    if (states.empty()) throw_invalid("empty trajectory");
    const double lo = t_begin(), hi = t_end();
    const double slack = 1e-12 * std::max(1.0, std::abs(hi));
    if (t < lo - slack || t > hi + slack)
        throw Error(ErrorKind::range, "curve_at: t outside trajectory span");
    t = std::clamp(t, lo, hi);

    const auto it = std::lower_bound(
        states.begin(), states.end(), t,
        [](const FlowState& s, double tt) { return s.t < tt; });
    if (it == states.begin()) return states.front().curve;
    if (it == states.end()) return states.back().curve;
    const FlowState& b = *it;
    const FlowState& a = *(it - 1);
    const double w = (t - a.t) / (b.t - a.t);

    if (a.curve.samples() != b.curve.samples())
        throw_invalid("trajectory states have mismatched grids");
    std::vector<double> h(a.curve.samples());
    for (size_t j = 0; j < h.size(); ++j)
        h[j] = (1.0 - w) * a.curve.support()[j] + w * b.curve.support()[j];
    SupportCurve out(std::move(h), a.curve.origin());
    radius_of_curvature(out); // interpolant must stay strictly convex
    return out;
}

double area_law_check(const Trajectory& traj) {
    double worst = 0.0;
    for (size_t i = 0; i + 1 < traj.states.size(); ++i) {
        const FlowState& a = traj.states[i];
        const FlowState& b = traj.states[i + 1];
        const double dt = b.t - a.t;
        if (!(dt > 0.0)) continue;
        if (a.curve.samples() != b.curve.samples()) continue;
        std::vector<double> mid(a.curve.samples());
        for (size_t j = 0; j < mid.size(); ++j)
            mid[j] = 0.5 * (a.curve.support()[j] + b.curve.support()[j]);
        const SupportCurve mc(std::move(mid), a.curve.origin());
        const double len = affine_length(mc);
        const double da = (area(b.curve) - area(a.curve)) / dt;
        worst = std::max(worst, std::abs(da + len) / len);
    }
    return worst;
}

} // namespace acsf
