#include "arrival.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace acsf {

GridSpec GridSpec::centered(double half_extent, int nodes_per_side) {
    if (!(half_extent > 0.0) || nodes_per_side < 2)
        throw_invalid("bad centered grid parameters");
    GridSpec g;
    g.nx = g.ny = nodes_per_side;
    g.spacing = 2.0 * half_extent / (nodes_per_side - 1);
    g.origin = Vec2(-half_extent, -half_extent);
    return g;
}

void GridSpec::validate() const {
    if (!(spacing > 0.0) || nx < 2 || ny < 2 || !origin.allFinite())
        throw_invalid("invalid grid spec");
}

double radial_exact(const Vec2& x) { return 0.75 * std::pow(x.norm(), 4.0 / 3.0); }

namespace {

struct MarginEvaluator {
    std::vector<double> times;
    std::vector<const std::vector<double>*> supports;
    Vec2 body_origin;
    std::vector<Vec2> dirs;

    explicit MarginEvaluator(const Trajectory& traj) {
        const int n = traj.states.front().curve.samples();
        body_origin = traj.states.front().curve.origin();
        for (const auto& st : traj.states) {
            if (st.curve.samples() != n)
                throw_invalid("reconstruct: trajectory grids differ");
            if ((st.curve.origin() - body_origin).norm() > 0.0)
                throw_invalid("reconstruct: trajectory origins differ");
            times.push_back(st.t);
            supports.push_back(&st.curve.support());
        }
        dirs.resize(n);
        for (int j = 0; j < n; ++j) {
            const double t = 2.0 * kPi * j / n;
            dirs[j] = Vec2(std::cos(t), std::sin(t));
        }
    }

    int states() const { return static_cast<int>(times.size()); }

    // min_theta (h - <p - o, u>) on the blend h = (1-w) h_a + w h_b, with a
    // 3-point parabolic refinement through the discrete minimum.
    double margin(const Vec2& p, int a, int b, double w) const {
        const int n = static_cast<int>(dirs.size());
        const std::vector<double>& ha = *supports[a];
        const std::vector<double>& hb = *supports[b];
        const Vec2 d = p - body_origin;
        auto val = [&](int j) {
            return (1.0 - w) * ha[j] + w * hb[j] - d.dot(dirs[j]);
        };
        double m0 = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (int j = 0; j < n; ++j) {
            const double v = val(j);
            if (v < m0) { m0 = v; arg = j; }
        }
        const double vm = val((arg + n - 1) % n);
        const double vp = val((arg + 1) % n);
        const double curv = vm - 2.0 * m0 + vp;
        if (curv > 1e-300) return m0 - (vp - vm) * (vp - vm) / (8.0 * curv);
        return m0;
    }

    double margin_at_state(const Vec2& p, int k) const {
        return margin(p, k, k, 0.0);
    }
};

} // namespace

ArrivalField reconstruct(const Trajectory& traj, const GridSpec& grid) {
    grid.validate();
    if (traj.states.size() < 2)
        throw_invalid("reconstruct needs at least two snapshots");
    {
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& st : traj.states) {
            const double a = area(st.curve);
            if (!(a < prev))
                throw_invalid("reconstruct: snapshots not strictly shrinking");
            prev = a;
        }
    }

    const MarginEvaluator ev(traj);
    const SupportCurve& first = traj.states.front().curve;
    const SupportCurve& last = traj.states.back().curve;

    // The grid box must cover the initial curve; the support samples in the
    // four axis directions give the bounding box exactly.
    {
        const int n = first.samples();
        if (n % 4 != 0) throw_invalid("reconstruct expects 4 | n_samples");
        const std::vector<double>& h = first.support();
        const Vec2 o = first.origin();
        const double xmax = o.x() + h[0], ymax = o.y() + h[n / 4];
        const double xmin = o.x() - h[n / 2], ymin = o.y() - h[3 * n / 4];
        const Vec2 lo = grid.origin;
        const Vec2 hi = grid.node(grid.nx - 1, grid.ny - 1);
        if (xmin < lo.x() || ymin < lo.y() || xmax > hi.x() || ymax > hi.y())
            throw_invalid("grid does not cover the initial curve");
    }

    // The final curve must still span enough nodes to leave a resolved rim.
    {
        const int n = last.samples();
        const std::vector<double>& h = last.support();
        double min_width = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n / 2; ++j)
            min_width = std::min(min_width, h[j] + h[j + n / 2]);
        if (min_width < 8.0 * grid.spacing)
            throw Error(ErrorKind::resolution,
                        "final curve spans fewer than 8 grid nodes; lower the "
                        "area floor or refine the grid");
    }

    ArrivalField f;
    f.grid = grid;
    f.t_stop = traj.t_end();
    f.extinction_estimate = traj.extinction_estimate;
    f.u_floor = traj.extinction_estimate - traj.t_end();
    const int count = grid.count();
    f.tau.assign(count, std::numeric_limits<double>::quiet_NaN());
    f.u.assign(count, std::numeric_limits<double>::quiet_NaN());
    f.inside.assign(count, 0);
    f.resolved.assign(count, 0);

    const int ns = ev.states();
    constexpr double kTimeTol = 1e-6;

    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const Vec2 p = grid.node(i, j);
            const int idx = grid.index(i, j);
            if (ev.margin_at_state(p, 0) < 0.0) continue; // outside at t0
            f.inside[idx] = 1;
            if (ev.margin_at_state(p, ns - 1) >= 0.0) continue; // never swept

            // The margin decreases strictly in t (supports shrink pointwise),
            // so the first negative snapshot is found by binary search.
            int lo = 0, hi = ns - 1;
            while (hi - lo > 1) {
                const int mid = (lo + hi) / 2;
                if (ev.margin_at_state(p, mid) < 0.0) hi = mid;
                else lo = mid;
            }
            double ta = ev.times[lo], tb = ev.times[hi];
            double ma = ev.margin_at_state(p, lo);
            double mb = ev.margin_at_state(p, hi);
            while (tb - ta > kTimeTol) {
                const double tm = 0.5 * (ta + tb);
                const double w = (tm - ev.times[lo]) / (ev.times[hi] - ev.times[lo]);
                const double m = ev.margin(p, lo, hi, w);
                if (m < 0.0) {
                    tb = tm;
                    mb = m;
                } else {
                    ta = tm;
                    ma = m;
                }
            }
            // Regula-falsi finish: the margin is nearly linear across the
            // final bracket, and the secant root varies smoothly with p
            // (plain midpoints carry kTimeTol-size jitter that second
            // differences would amplify).
            const double tau =
                ma > mb ? ta + (tb - ta) * ma / (ma - mb) : 0.5 * (ta + tb);
            f.tau[idx] = tau;
            f.u[idx] = f.extinction_estimate - tau;
            f.resolved[idx] = 1;
        }
    }

    // Extinction point: centroid of the unresolved hole, else the min-u node.
    long hole = 0;
    Vec2 acc(0.0, 0.0);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const int idx = grid.index(i, j);
            if (f.inside[idx] && !f.resolved[idx]) {
                acc += grid.node(i, j);
                ++hole;
            }
        }
    if (hole > 0) {
        f.extinction_point = acc / static_cast<double>(hole);
    } else {
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const int idx = grid.index(i, j);
                if (f.resolved[idx] && f.u[idx] < best) {
                    best = f.u[idx];
                    f.extinction_point = grid.node(i, j);
                }
            }
    }
    return f;
}

ArrivalField sample_field(const GridSpec& grid,
                          const std::function<double(const Vec2&)>& u_fn) {
    grid.validate();
    ArrivalField f;
    f.grid = grid;
    const int count = grid.count();
    f.tau.assign(count, 0.0);
    f.u.assign(count, 0.0);
    f.inside.assign(count, 1);
    f.resolved.assign(count, 1);
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const int idx = grid.index(i, j);
            const Vec2 p = grid.node(i, j);
            const double u = u_fn(p);
            if (!std::isfinite(u)) throw_invalid("sample_field: non-finite u");
            f.u[idx] = u;
            f.tau[idx] = -u;
            if (u < best) {
                best = u;
                f.extinction_point = p;
            }
        }
    return f;
}

std::vector<double> pde_residual(const ArrivalField& f, double r_min, double r_max) {
    const GridSpec& g = f.grid;
    g.validate();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> res(g.count(), nan);
    const double s = g.spacing;
    const double excl = 4.0 * s;

    auto resolved_block = [&](int i, int j) {
        for (int dj = -2; dj <= 2; ++dj)
            for (int di = -2; di <= 2; ++di)
                if (!f.resolved[g.index(i + di, j + dj)]) return false;
        return true;
    };
    auto grad = [&](int i, int j) {
        return Vec2((f.u[g.index(i + 1, j)] - f.u[g.index(i - 1, j)]) / (2.0 * s),
                    (f.u[g.index(i, j + 1)] - f.u[g.index(i, j - 1)]) / (2.0 * s));
    };

    for (int j = 2; j < g.ny - 2; ++j) {
        for (int i = 2; i < g.nx - 2; ++i) {
            const Vec2 p = g.node(i, j);
            const double r = (p - f.extinction_point).norm();
            if (r < excl || r < r_min || r > r_max) continue;
            if (!resolved_block(i, j)) continue;

            const Vec2 ge = grad(i + 1, j), gw = grad(i - 1, j);
            const Vec2 gn = grad(i, j + 1), gs = grad(i, j - 1);
            const Vec2 g0 = grad(i, j);
            const double len0 = g0.norm();
            if (len0 < 1e-9 || ge.norm() < 1e-9 || gw.norm() < 1e-9 ||
                gn.norm() < 1e-9 || gs.norm() < 1e-9)
                continue;
            const double div_p = (ge.x() / ge.norm() - gw.x() / gw.norm() +
                                  gn.y() / gn.norm() - gs.y() / gs.norm()) /
                                 (2.0 * s);
            res[g.index(i, j)] = div_p - 1.0 / (len0 * len0 * len0);
        }
    }
    return res;
}

ResidualStats pde_residual_stats(const ArrivalField& f, double r_min, double r_max) {
    const std::vector<double> res = pde_residual(f, r_min, r_max);
    std::vector<double> mags;
    mags.reserve(res.size());
    for (double v : res)
        if (std::isfinite(v)) mags.push_back(std::abs(v));
    if (mags.empty())
        throw Error(ErrorKind::resolution, "no eligible nodes for pde_residual");
    ResidualStats st;
    st.count = static_cast<long>(mags.size());
    st.max_abs = *std::max_element(mags.begin(), mags.end());
    auto mid = mags.begin() + mags.size() / 2;
    std::nth_element(mags.begin(), mid, mags.end());
    st.median_abs = *mid;
    return st;
}

ConcavityReport log_concavity_check(const ArrivalField& f, double h0, double slack) {
    const GridSpec& g = f.grid;
    g.validate();
    if (!std::isfinite(h0)) throw_invalid("log_concavity_check needs finite h0");

    const int count = g.count();
    std::vector<double> phi(count, std::numeric_limits<double>::quiet_NaN());
    double u_lo = std::numeric_limits<double>::infinity();
    double u_hi = -std::numeric_limits<double>::infinity();
    for (int idx = 0; idx < count; ++idx) {
        if (!f.resolved[idx]) continue;
        const double u = f.u[idx];
        if (!(u < h0)) continue; // outside the probed sub-level range
        phi[idx] = -std::log(h0 - u);
        u_lo = std::min(u_lo, u);
        u_hi = std::max(u_hi, u);
    }

    ConcavityReport rep;
    if (!(u_lo < u_hi)) {
        rep.passes = false;
        return rep;
    }

    // Midpoint convexity along axis and diagonal equal-spaced triples.
    const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double pc = phi[g.index(i, j)];
            if (!std::isfinite(pc)) continue;
            for (const auto& d : dirs) {
                const int ia = i - d[0], ja = j - d[1];
                const int ib = i + d[0], jb = j + d[1];
                if (ia < 0 || ib < 0 || ja < 0 || jb < 0 || ia >= g.nx ||
                    ib >= g.nx || ja >= g.ny || jb >= g.ny)
                    continue;
                const double pa = phi[g.index(ia, ja)];
                const double pb = phi[g.index(ib, jb)];
                if (!std::isfinite(pa) || !std::isfinite(pb)) continue;
                ++rep.triples_checked;
                const double viol = pc - 0.5 * (pa + pb);
                rep.worst_violation = std::max(rep.worst_violation, viol);
                if (viol > slack) ++rep.violations;
            }
        }
    }

    // Convexity of sampled sub-level sets, by a support-hull fill test:
    // a node outside {u <= level} sitting deeper than 2*spacing inside the
    // hull of member nodes marks a dent.
    const int n_levels = 8;
    const int n_dirs = 180;
    std::vector<Vec2> hull_dirs(n_dirs);
    for (int k = 0; k < n_dirs; ++k) {
        const double a = 2.0 * kPi * k / n_dirs;
        hull_dirs[k] = Vec2(std::cos(a), std::sin(a));
    }
    rep.level_sets_convex = true;
    for (int l = 1; l <= n_levels; ++l) {
        const double level = u_lo + (u_hi - u_lo) * l / (n_levels + 1.0);
        ++rep.levels_checked;
        std::vector<double> sup(n_dirs, -std::numeric_limits<double>::infinity());
        bool any = false;
        auto is_member = [&](int idx) {
            if (!f.inside[idx]) return false;
            if (!f.resolved[idx]) return true; // unresolved hole is deepest
            return f.u[idx] <= level;
        };
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                if (!is_member(g.index(i, j))) continue;
                any = true;
                const Vec2 p = g.node(i, j);
                for (int k = 0; k < n_dirs; ++k)
                    sup[k] = std::max(sup[k], p.dot(hull_dirs[k]));
            }
        if (!any) continue;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int idx = g.index(i, j);
                if (is_member(idx) || !f.inside[idx]) continue;
                const Vec2 p = g.node(i, j);
                double depth = std::numeric_limits<double>::infinity();
                for (int k = 0; k < n_dirs; ++k)
                    depth = std::min(depth, sup[k] - p.dot(hull_dirs[k]));
                if (depth > 0.0)
                    rep.worst_level_defect = std::max(rep.worst_level_defect, depth);
            }
    }
    if (rep.worst_level_defect > 2.0 * g.spacing) rep.level_sets_convex = false;

    rep.passes = (rep.violations == 0) && rep.level_sets_convex;
    return rep;
}

} // namespace acsf
