#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flow.hpp"
#include "helpers.hpp"
#include "invariants.hpp"

#include <cmath>

using namespace acsf;

namespace {

SupportCurve circle(double r, int n) {
    Ellipse e;
    e.shape = Mat2::Identity() * (r * r);
    return support_of_ellipse(e, n);
}

SupportCurve ellipse_curve(double a, double b, int n) {
    Ellipse e;
    e.shape << a * a, 0.0, 0.0, b * b;
    return support_of_ellipse(e, n);
}

double circle_radius_law(double r0, double t) {
    return std::pow(std::pow(r0, 4.0 / 3.0) - (4.0 / 3.0) * t, 0.75);
}

} // namespace

TEST_CASE("cfl_dt pins the documented value on the unit circle") {
    // safety * 1.5 * rho^{4/3} * dtheta^2 with rho = 1, n = 128, safety = 0.8.
    const double dt = cfl_dt(circle(1.0, 128), 0.8);
    CHECK_NEAR(dt, 1.2 * std::pow(2.0 * kPi / 128, 2.0), 1e-15);
    CHECK_NEAR(dt, 2.891488e-3, 1e-8);

    CHECK_THROWS_AS(cfl_dt(circle(1.0, 128), -1.0), Error);
}

TEST_CASE("step rejects bad dt and non-convex input") {
    const FlowState s{0.0, circle(1.0, 64)};
    CHECK_THROWS_AS(step(s, 0.0), Error);
    CHECK_THROWS_AS(step(s, -1e-3), Error);

    std::vector<Vec2> sq = {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    const SupportCurve raw = from_polygon(ConvexPolygon::from_points(sq), 64, 0.0);
    try {
        step(FlowState{0.0, raw}, 1e-6);
        CHECK(false);
    } catch (const LostConvexityError& err) {
        CHECK(err.stage() == 1);
    }
}

TEST_CASE("a flowing circle follows the closed-form radius law") {
    const int n = 128;
    EvolveOptions opt;
    opt.area_floor = kPi / 25.0;
    const Trajectory traj = evolve(circle(1.0, n), opt);
    REQUIRE(traj.states.size() > 10);
    CHECK(traj.stop_reason == StopReason::area_floor);

    double worst = 0.0;
    for (const auto& st : traj.states) {
        const double r_num = std::sqrt(area(st.curve) / kPi);
        worst = std::max(worst, std::abs(r_num - circle_radius_law(1.0, st.t)));
        // the curve itself stays round
        for (double h : st.curve.support())
            worst = std::max(worst, std::abs(h - r_num));
    }
    CHECK(worst < 1e-6);

    // extinction estimate recovers T = 3/4 R0^{4/3}
    CHECK_NEAR(traj.extinction_estimate, 0.75, 1e-6);
    CHECK(area_law_check(traj) < 1e-3);
}

TEST_CASE("ellipses shrink homothetically") {
    EvolveOptions opt;
    const SupportCurve e0 = ellipse_curve(1.5, 0.75, 128);
    const double a0 = area(e0);
    opt.area_floor = a0 / 16.0;
    const Trajectory traj = evolve(e0, opt);
    CHECK(traj.stop_reason == StopReason::area_floor);

    const SupportCurve& last = traj.states.back().curve;
    const double s = std::sqrt(area(last) / a0);
    CHECK(hausdorff(last, traj.states.front().curve.scaled(s)) < 1e-6);
    CHECK(area_law_check(traj) < 1e-3);

    // A(t)^{2/3} is linear with slope -(4/3) pi^{2/3}: least-squares fit.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(traj.states.size());
    for (const auto& st : traj.states) {
        const double x = st.t, y = std::pow(area(st.curve), 2.0 / 3.0);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double want = -(4.0 / 3.0) * std::pow(kPi, 2.0 / 3.0);
    CHECK(std::abs(slope - want) / std::abs(want) < 1e-6);
}

TEST_CASE("evolve honours target_time") {
    EvolveOptions opt;
    opt.target_time = 0.3;
    const Trajectory traj = evolve(circle(1.0, 64), opt);
    CHECK(traj.stop_reason == StopReason::target_time);
    CHECK_NEAR(traj.t_end(), 0.3, 1e-12);
}

TEST_CASE("evolve reports max_steps") {
    EvolveOptions opt;
    opt.area_floor = kPi / 25.0;
    opt.max_steps = 5;
    const Trajectory traj = evolve(circle(1.0, 64), opt);
    CHECK(traj.stop_reason == StopReason::max_steps);
}

TEST_CASE("milestones are recorded at first crossing") {
    EvolveOptions opt;
    const SupportCurve c0 = circle(1.0, 64);
    const double a0 = area(c0);
    opt.area_floor = a0 / 20.0;
    opt.milestone_areas = {a0 / 2.0, a0 / 4.0};
    const Trajectory traj = evolve(c0, opt);
    REQUIRE(traj.milestone_indices.size() == 2);
    const double a_first = area(traj.states[traj.milestone_indices[0]].curve);
    const double a_second = area(traj.states[traj.milestone_indices[1]].curve);
    CHECK(a_first <= a0 / 2.0);
    CHECK(a_first > a0 / 2.0 * 0.995); // within one step of the crossing
    CHECK(a_second <= a0 / 4.0);
    CHECK(a_second > a0 / 4.0 * 0.995); // within one step of the crossing
}

TEST_CASE("curve_at interpolates between snapshots") {
    EvolveOptions opt;
    opt.area_floor = kPi / 16.0;
    const Trajectory traj = evolve(circle(1.0, 64), opt);

    const double t = 0.5 * traj.t_end();
    const SupportCurve c = traj.curve_at(t);
    const double want_r = circle_radius_law(1.0, t);
    for (double h : c.support()) CHECK_NEAR(h, want_r, 1e-5);

    CHECK_THROWS_AS(traj.curve_at(-1.0), Error);
    CHECK_THROWS_AS(traj.curve_at(traj.t_end() + 0.1), Error);
}

TEST_CASE("evolve requires a stop condition and convex data") {
    CHECK_THROWS_AS(evolve(circle(1.0, 64), EvolveOptions{}), Error);

    std::vector<Vec2> sq = {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    const SupportCurve raw = from_polygon(ConvexPolygon::from_points(sq), 64, 0.0);
    EvolveOptions opt;
    opt.area_floor = 0.1;
    CHECK_THROWS_AS(evolve(raw, opt), LostConvexityError);
}

TEST_CASE("unimodular equivariance: flowing the sheared curve equals shearing the flow") {
    const SupportCurve k0 = curve_from_fourier(128, 1.0, {0.0, 0.0, 0.1});
    AffineMap shear;
    shear.linear << 1.0, 0.6, 0.0, 1.0;
    shear.unimodular = true;
    const SupportCurve k0s = apply_affine(k0, shear);

    EvolveOptions opt;
    opt.area_floor = area(k0) / 4.0;
    const Trajectory ta = evolve(k0, opt);
    const Trajectory tb = evolve(k0s, opt);

    const double t_mid = 0.5 * std::min(ta.t_end(), tb.t_end());
    const SupportCurve lhs = apply_affine(ta.curve_at(t_mid), shear);
    const SupportCurve rhs = tb.curve_at(t_mid);
    CHECK(hausdorff(lhs, rhs) < 1e-3);
}

TEST_CASE("snapshots drop area by roughly the configured fraction") {
    EvolveOptions opt;
    opt.area_floor = kPi / 8.0;
    opt.snapshot_area_fraction = 0.05;
    const Trajectory traj = evolve(circle(1.0, 64), opt);
    for (size_t i = 0; i + 2 < traj.states.size(); ++i) {
        const double ratio =
            area(traj.states[i + 1].curve) / area(traj.states[i].curve);
        CHECK(ratio <= 0.9501);
        CHECK(ratio > 0.90);
    }
}
