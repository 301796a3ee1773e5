#include "normalize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace acsf {

namespace {

// Finish the weight problem by damped Newton on a small candidate support
// set, growing it with the worst violator until the optimality gap over all
// surviving points is within tol. The exchange steps localize the contact
// set but then zigzag among the near-touching points of finely sampled
// smooth bodies; the Newton solve converges quadratically from there.
// Returns false on stall and leaves u/active untouched.
bool support_newton(const Eigen::MatrixXd& q, Eigen::VectorXd& u,
                    std::vector<int>& active, double tol, double& residual) {
    constexpr double kD = 3.0;
    std::vector<int> s(active);
    std::sort(s.begin(), s.end(), [&](int a, int b) { return u(a) > u(b); });
    if (s.size() > 12) s.resize(12);
    double mass = 0.0;
    for (int i : s) mass += u(i);
    if (!(mass > 0.0)) return false;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(u.size());
    for (int i : s) v(i) = u(i) / mass;

    const auto shape_of = [&](const std::vector<int>& idx,
                              const Eigen::VectorXd& wt) {
        Eigen::Matrix3d ml = Eigen::Matrix3d::Zero();
        for (int i : idx) ml += wt(i) * (q.col(i) * q.col(i).transpose());
        return ml;
    };

    for (int outer = 0; outer < 60; ++outer) {
        for (int inner = 0; inner < 80; ++inner) {
            const int k = static_cast<int>(s.size());
            const Eigen::FullPivLU<Eigen::Matrix3d> lu(shape_of(s, v));
            if (!lu.isInvertible()) return false;
            const Eigen::Matrix3d mli = lu.inverse();
            Eigen::MatrixXd km(k, k);
            for (int a = 0; a < k; ++a) {
                const Eigen::Vector3d col = mli * q.col(s[a]);
                for (int b = a; b < k; ++b)
                    km(a, b) = km(b, a) = q.col(s[b]).dot(col);
            }
            double wp = -1.0, wm = std::numeric_limits<double>::infinity();
            for (int a = 0; a < k; ++a) {
                wp = std::max(wp, km(a, a));
                wm = std::min(wm, km(a, a));
            }
            const double res_s = std::max(wp / kD - 1.0, 1.0 - wm / kD);
            if (res_s <= 0.25 * tol) break;

            // KKT system for max log det over the simplex restricted to s:
            // (K .* K) delta = w - kD subject to sum(delta) = 0.
            Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
            kkt.topLeftCorner(k, k) = km.cwiseProduct(km);
            kkt.topLeftCorner(k, k).diagonal().array() +=
                1e-13 * kkt.topLeftCorner(k, k).trace() / k;
            kkt.topRightCorner(k, 1).setOnes();
            kkt.bottomLeftCorner(1, k).setOnes();
            for (int a = 0; a < k; ++a) rhs(a) = km(a, a) - kD;
            const Eigen::FullPivLU<Eigen::MatrixXd> klu(kkt);
            if (!klu.isInvertible()) return false;
            const Eigen::VectorXd delta = klu.solve(rhs).head(k);

            // Step to the first weight that hits zero, then backtrack on the
            // subproblem residual.
            double tmax = std::numeric_limits<double>::infinity();
            for (int a = 0; a < k; ++a)
                if (delta(a) < 0.0) tmax = std::min(tmax, -v(s[a]) / delta(a));
            double t = std::min(1.0, tmax);
            bool accepted = false;
            for (int ls = 0; ls < 30 && t > 0.0; ++ls, t *= 0.5) {
                Eigen::VectorXd v2 = v;
                double sum2 = 0.0;
                for (int a = 0; a < k; ++a) {
                    v2(s[a]) = std::max(0.0, v(s[a]) + t * delta(a));
                    sum2 += v2(s[a]);
                }
                if (!(sum2 > 0.0)) continue;
                for (int i : s) v2(i) /= sum2;
                const Eigen::FullPivLU<Eigen::Matrix3d> lu2(shape_of(s, v2));
                if (!lu2.isInvertible()) continue;
                const Eigen::Matrix3d mli2 = lu2.inverse();
                double wp2 = -1.0, wm2 = std::numeric_limits<double>::infinity();
                for (int i : s) {
                    const double wi = q.col(i).dot(mli2 * q.col(i));
                    wp2 = std::max(wp2, wi);
                    wm2 = std::min(wm2, wi);
                }
                if (std::max(wp2 / kD - 1.0, 1.0 - wm2 / kD) < res_s) {
                    for (int i : s) v(i) = v2(i);
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
            if (s.size() > 3) {
                std::vector<int> alive;
                for (int i : s) {
                    if (v(i) > 1e-14) alive.push_back(i);
                    else v(i) = 0.0;
                }
                if (alive.size() >= 3) s = std::move(alive);
            }
        }

        // Optimality certificate over every surviving point.
        const Eigen::FullPivLU<Eigen::Matrix3d> lu(shape_of(s, v));
        if (!lu.isInvertible()) return false;
        const Eigen::Matrix3d mli = lu.inverse();
        double wp = -1.0, wm = std::numeric_limits<double>::infinity();
        int ip = -1;
        for (int i : active) {
            const double wi = q.col(i).dot(mli * q.col(i));
            if (wi > wp) { wp = wi; ip = i; }
            if (v(i) > 0.0) wm = std::min(wm, wi);
        }
        const double res = std::max(wp / kD - 1.0, 1.0 - wm / kD);
        if (res <= tol) {
            u = v;
            active = std::move(s);
            residual = res;
            return true;
        }
        if (std::find(s.begin(), s.end(), ip) != s.end()) return false;
        const double alpha = (wp - kD) / (kD * (wp - 1.0));
        if (!(alpha > 0.0)) return false;
        for (int i : s) v(i) *= (1.0 - alpha);
        v(ip) = alpha;
        s.push_back(ip);
    }
    return false;
}

} // namespace

MveeResult mvee(const ConvexPolygon& points, double tol, long max_iters) {
    const auto& pts = points.vertices;
    const int m = static_cast<int>(pts.size());
    if (m < 3) throw_invalid("mvee needs at least 3 points");
    if (!(tol > 0.0)) throw_invalid("mvee tol must be positive");

    // Pre-scale for conditioning; undo at the end (MVEE is equivariant).
    Vec2 mean(0.0, 0.0);
    for (const auto& p : pts) mean += p;
    mean /= m;
    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, (p - mean).norm());
    if (!(scale > 0.0)) throw_invalid("mvee needs non-coincident points");

    Eigen::MatrixXd q(3, m);
    for (int i = 0; i < m; ++i) {
        const Vec2 z = (pts[i] - mean) / scale;
        q.col(i) << z.x(), z.y(), 1.0;
    }

    constexpr double kD = 3.0; // lifted dimension d + 1
    Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / m);
    Eigen::VectorXd w(m);
    std::vector<int> active(m);
    for (int i = 0; i < m; ++i) active[i] = i;
    double residual = 0.0;
    int iters = 0;
    bool converged = false;
    long next_newton = 0;

    for (long it = 0; it < max_iters; ++it) {
        const Eigen::Matrix3d ml = q * u.asDiagonal() * q.transpose();
        const Eigen::FullPivLU<Eigen::Matrix3d> lu(ml);
        if (!lu.isInvertible())
            throw_invalid("mvee: points are collinear");
        const Eigen::Matrix3d mli = lu.inverse();
        for (int i : active) w(i) = q.col(i).dot(mli * q.col(i));

        int ip = active.front(), im = -1;
        double wp = -1.0, wm = std::numeric_limits<double>::infinity();
        for (int i : active) {
            if (w(i) > wp) { wp = w(i); ip = i; }
            if (u(i) > 1e-12 && w(i) < wm) { wm = w(i); im = i; }
        }

        const double eps_p = wp / kD - 1.0;
        const double eps_m = (im >= 0) ? 1.0 - wm / kD : 0.0;
        residual = std::max(eps_p, eps_m);
        iters = static_cast<int>(it);
        if (residual <= tol) { converged = true; break; }

        if (residual <= 1e-2 && it >= next_newton) {
            if (support_newton(q, u, active, tol, residual)) {
                converged = true;
                break;
            }
            next_newton = it + 250;
        }

        if (eps_p >= eps_m || im < 0) {
            const double alpha = (wp - kD) / (kD * (wp - 1.0));
            u *= (1.0 - alpha);
            u(ip) += alpha;
        } else {
            const double cap = u(im) / (1.0 - u(im));
            double beta = cap;
            if (wm > 1.0 + 1e-12)
                beta = std::min((kD - wm) / (kD * (wm - 1.0)), cap);
            u *= (1.0 + beta);
            u(im) -= beta;
            if (u(im) < 0.0) u(im) = 0.0;
        }
    }

    if (!converged) {
        std::ostringstream os;
        os << "mvee did not converge in " << max_iters
           << " iterations (residual " << residual << ", tol " << tol << ")";
        throw Error(ErrorKind::convergence, os.str());
    }

    Eigen::MatrixXd p(2, m);
    for (int i = 0; i < m; ++i) p.col(i) = (pts[i] - mean) / scale;
    const Vec2 c = p * u;
    const Mat2 sigma = p * u.asDiagonal() * p.transpose() - c * c.transpose();

    MveeResult res;
    res.ellipse.center = mean + scale * c;
    res.ellipse.shape = (scale * scale) * (2.0 * sigma); // d * covariance
    res.ellipse.shape = 0.5 * (res.ellipse.shape + res.ellipse.shape.transpose().eval());
    res.iterations = iters;
    res.residual = residual;
    res.weights.assign(u.data(), u.data() + m);
    res.ellipse.validate();
    return res;
}

GoodShape good_shape_check(const SupportCurve& c, const Ellipse& e, double tol) {
    e.validate();
    if (!(tol >= 0.0)) throw_invalid("good_shape_check tol must be nonnegative");
    const int n = c.samples();
    const std::vector<double> hk = c.support_about(e.center);
    GoodShape g;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int j = 0; j < n; ++j) {
        const Vec2 u = SupportCurve::direction(c.theta(j));
        const double he = std::sqrt(u.dot(e.shape * u));
        const double ratio = hk[j] / he;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    g.lambda_inner = lo;
    g.mu_outer = hi;
    g.good = (lo >= 0.5 - tol) && (hi <= 1.0 + tol);
    return g;
}

AffineMap unimodular_normalizer(const Ellipse& e) {
    e.validate();
    Eigen::SelfAdjointEigenSolver<Mat2> es(e.shape);
    const double l0 = es.eigenvalues()(0), l1 = es.eigenvalues()(1);
    if (l1 / l0 > 1e12)
        throw Error(ErrorKind::conditioning,
                    "ellipse too eccentric to normalize (condition > 1e12)");
    const double det4 = std::pow(l0 * l1, 0.25);
    const Mat2 inv_sqrt =
        es.eigenvectors() *
        Eigen::Vector2d(1.0 / std::sqrt(l0), 1.0 / std::sqrt(l1)).asDiagonal() *
        es.eigenvectors().transpose();
    AffineMap map;
    map.linear = det4 * inv_sqrt;
    map.translation = -(map.linear * e.center);
    map.unimodular = true;
    map.validate();
    return map;
}

double ellipse_eps(const SupportCurve& c, const Ellipse& e) {
    const AffineMap t = unimodular_normalizer(e);
    const SupportCurve hat = apply_affine(c, t);
    const std::vector<double> h0 = hat.support_about(Vec2(0.0, 0.0));
    const double r = std::pow(e.shape.determinant(), 0.25);
    double eps = 0.0;
    for (double h : h0) eps = std::max(eps, std::abs(h / r - 1.0));
    return eps;
}

Trajectory blow_down(const Trajectory& traj, double lambda) {
    if (!(lambda > 0.0)) throw_invalid("blow_down needs lambda > 0");
    if (traj.states.empty()) throw_invalid("blow_down of empty trajectory");
    const double s = std::pow(lambda, -0.75);
    Trajectory out;
    out.stop_reason = traj.stop_reason;
    out.safety = traj.safety;
    out.milestone_indices = traj.milestone_indices;
    out.extinction_estimate = traj.extinction_estimate / lambda;
    out.extinction_formula = traj.extinction_formula;
    out.states.reserve(traj.states.size());
    for (const auto& st : traj.states) {
        std::vector<double> h(st.curve.support());
        for (double& v : h) v *= s;
        out.states.push_back(
            FlowState{st.t / lambda,
                      SupportCurve(std::move(h), s * st.curve.origin())});
    }
    return out;
}

NormalizedSnapshot normalize_snapshot(const SupportCurve& c, double mvee_tol) {
    const MveeResult mv = mvee(to_points(c), mvee_tol);
    AffineMap map = unimodular_normalizer(mv.ellipse);
    return NormalizedSnapshot{apply_affine(c, map), map, mv.ellipse,
                              std::pow(mv.ellipse.shape.determinant(), 0.25)};
}

} // namespace acsf
