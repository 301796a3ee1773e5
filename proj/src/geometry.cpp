#include "geometry.hpp"

#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace acsf {

namespace {

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
}

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

} // namespace

// --- ConvexPolygon -----------------------------------------------------------

ConvexPolygon ConvexPolygon::from_points(std::vector<Vec2> pts) {
    if (pts.size() < 3) throw_invalid("polygon needs at least 3 vertices");
    for (const auto& p : pts)
        if (!p.allFinite()) throw_invalid("polygon has non-finite vertex");

    ConvexPolygon poly{std::move(pts)};
    if (poly.signed_area() < 0.0)
        std::reverse(poly.vertices.begin(), poly.vertices.end());

    const double scale = poly.diameter();
    if (!(poly.signed_area() > 1e-12 * scale * scale))
        throw_invalid("polygon is degenerate (zero area)");

    const auto& v = poly.vertices;
    const size_t m = v.size();
    const double eps = 1e-12 * scale * scale;
    for (size_t i = 0; i < m; ++i) {
        const Vec2 e0 = v[(i + 1) % m] - v[i];
        const Vec2 e1 = v[(i + 2) % m] - v[(i + 1) % m];
        if (cross(e0, e1) < -eps)
            throw_invalid("vertices are not in convex position at index " +
                          std::to_string((i + 1) % m));
    }
    return poly;
}

double ConvexPolygon::signed_area() const {
    double a = 0.0;
    const size_t m = vertices.size();
    for (size_t i = 0; i < m; ++i)
        a += cross(vertices[i], vertices[(i + 1) % m]);
    return 0.5 * a;
}

Vec2 ConvexPolygon::centroid() const {
    const size_t m = vertices.size();
    double a = 0.0;
    Vec2 c(0.0, 0.0);
    for (size_t i = 0; i < m; ++i) {
        const Vec2& p = vertices[i];
        const Vec2& q = vertices[(i + 1) % m];
        const double w = cross(p, q);
        a += w;
        c += w * (p + q);
    }
    if (std::abs(a) < 1e-300) throw_invalid("degenerate polygon centroid");
    return c / (3.0 * a);
}

double ConvexPolygon::diameter() const {
    double d = 0.0;
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            d = std::max(d, (vertices[i] - vertices[j]).norm());
    return d;
}

// --- Ellipse -----------------------------------------------------------------

void Ellipse::validate() const {
    if (!center.allFinite() || !shape.allFinite())
        throw_invalid("ellipse has non-finite entries");
    const double asym = std::abs(shape(0, 1) - shape(1, 0));
    if (asym > 1e-9 * (1.0 + shape.norm()))
        throw_invalid("ellipse shape matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Mat2> es(shape);
    if (!(es.eigenvalues().minCoeff() > 0.0))
        throw_invalid("ellipse shape matrix is not positive definite");
}

double Ellipse::area() const {
    const double det = shape.determinant();
    if (!(det > 0.0)) throw_invalid("ellipse shape matrix is not positive definite");
    return kPi * std::sqrt(det);
}

std::array<double, 2> Ellipse::semi_axes() const {
    Eigen::SelfAdjointEigenSolver<Mat2> es(shape);
    const double l0 = es.eigenvalues()(0), l1 = es.eigenvalues()(1);
    if (!(l0 > 0.0)) throw_invalid("ellipse shape matrix is not positive definite");
    return {std::sqrt(std::max(l0, l1)), std::sqrt(std::min(l0, l1))};
}

// --- AffineMap ---------------------------------------------------------------

void AffineMap::validate() const {
    if (!linear.allFinite() || !translation.allFinite())
        throw_invalid("affine map has non-finite entries");
    const double det = linear.determinant();
    const double scale2 = linear.squaredNorm();
    if (std::abs(det) <= 1e-12 * std::max(scale2, 1e-300))
        throw_invalid("affine map is singular");
    if (unimodular && std::abs(std::abs(det) - 1.0) > 1e-9)
        throw_invalid("map flagged unimodular but |det| = " + std::to_string(std::abs(det)));
}

AffineMap AffineMap::inverse() const {
    validate();
    AffineMap inv;
    inv.linear = linear.inverse();
    inv.translation = -(inv.linear * translation);
    inv.unimodular = unimodular;
    return inv;
}

// --- SupportCurve ------------------------------------------------------------

SupportCurve::SupportCurve(std::vector<double> h, Vec2 origin)
    : h_(std::move(h)), origin_(origin) {
    if (h_.size() < 16) throw_invalid("support curve needs at least 16 samples");
    if (!all_finite(h_) || !origin_.allFinite())
        throw_invalid("support curve has non-finite values");
}

SupportCurve SupportCurve::rebased(const Vec2& new_origin) const {
    std::vector<double> h(h_.size());
    const Vec2 d = origin_ - new_origin;
    for (int j = 0; j < samples(); ++j)
        h[j] = h_[j] + d.dot(direction(theta(j)));
    return SupportCurve(std::move(h), new_origin);
}

SupportCurve SupportCurve::translated(const Vec2& delta) const {
    std::vector<double> h(h_.size());
    for (int j = 0; j < samples(); ++j)
        h[j] = h_[j] + delta.dot(direction(theta(j)));
    return SupportCurve(std::move(h), origin_);
}

SupportCurve SupportCurve::scaled(double lambda) const {
    if (!(lambda > 0.0)) throw_invalid("scale factor must be positive");
    std::vector<double> h(h_.size());
    for (size_t j = 0; j < h_.size(); ++j) h[j] = lambda * h_[j];
    return SupportCurve(std::move(h), origin_);
}

std::vector<double> SupportCurve::support_about(const Vec2& p) const {
    std::vector<double> h(h_.size());
    const Vec2 d = origin_ - p;
    for (int j = 0; j < samples(); ++j)
        h[j] = h_[j] + d.dot(direction(theta(j)));
    return h;
}

// --- constructors ------------------------------------------------------------

namespace {

std::vector<double> sample_polygon_support(const ConvexPolygon& poly,
                                           const Vec2& origin, int n) {
    std::vector<double> h(n);
    for (int j = 0; j < n; ++j) {
        const Vec2 u = SupportCurve::direction(2.0 * kPi * j / n);
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& v : poly.vertices) best = std::max(best, (v - origin).dot(u));
        h[j] = best;
    }
    return h;
}

} // namespace

SupportCurve from_polygon(const ConvexPolygon& poly, int n,
                          std::optional<double> r_smooth) {
    if (n < 16) throw_invalid("from_polygon needs n >= 16");
    if (poly.vertices.size() < 3) throw_invalid("polygon needs at least 3 vertices");
    const double diam = poly.diameter();
    if (!(diam > 0.0)) throw_invalid("degenerate polygon");
    const double r = r_smooth.value_or(1e-2 * diam);
    if (r < 0.0) throw_invalid("r_smooth must be nonnegative");

    const Vec2 o = poly.centroid();
    if (r == 0.0)
        return SupportCurve(sample_polygon_support(poly, o, n), o);

    // Exact sampling at 8x oversampling, wrapped-Gaussian mollifier of
    // angular width sigma = 2.5 * dtheta(n), then truncate to the n-grid.
    const int m = 8 * n;
    std::vector<double> hs = sample_polygon_support(poly, o, m);
    auto& eng = spectral_for(m);
    std::vector<std::complex<double>> c(m / 2 + 1);
    eng.spectrum(hs.data(), c.data());
    const double sigma = 2.5 * (2.0 * kPi / n);
    for (int k = 0; k <= m / 2; ++k)
        c[k] *= std::exp(-0.5 * (k * sigma) * (k * sigma));
    eng.synthesize(c.data(), hs.data());
    std::vector<double> h = spectral_resample(hs, n);
    for (double& v : h) v += r;
    return SupportCurve(std::move(h), o);
}

SupportCurve support_of_ellipse(const Ellipse& e, int n) {
    e.validate();
    if (n < 16) throw_invalid("support_of_ellipse needs n >= 16");
    std::vector<double> h(n);
    for (int j = 0; j < n; ++j) {
        const Vec2 u = SupportCurve::direction(2.0 * kPi * j / n);
        h[j] = e.center.dot(u) + std::sqrt(u.dot(e.shape * u));
    }
    return SupportCurve(std::move(h), Vec2(0.0, 0.0));
}

SupportCurve curve_from_fourier(int n, double base,
                                const std::vector<double>& cos_amps,
                                const std::vector<double>& sin_amps) {
    if (n < 16) throw_invalid("curve_from_fourier needs n >= 16");
    std::vector<double> h(n, base);
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * kPi * j / n;
        for (size_t k = 0; k < cos_amps.size(); ++k)
            h[j] += cos_amps[k] * std::cos((k + 1) * t);
        for (size_t k = 0; k < sin_amps.size(); ++k)
            h[j] += sin_amps[k] * std::sin((k + 1) * t);
    }
    return SupportCurve(std::move(h), Vec2(0.0, 0.0));
}

// --- operations --------------------------------------------------------------

namespace {

// rho into out; returns index of the minimum.
int curvature_radius_into(const SupportCurve& c, std::vector<double>& out) {
    const int n = c.samples();
    out.resize(n);
    spectral_for(n).derivatives(c.support().data(), nullptr, out.data());
    int argmin = 0;
    for (int j = 0; j < n; ++j) {
        out[j] += c.support()[j];
        if (out[j] < out[argmin]) argmin = j;
    }
    return argmin;
}

} // namespace

std::vector<double> radius_of_curvature(const SupportCurve& c) {
    std::vector<double> rho;
    const int argmin = curvature_radius_into(c, rho);
    if (!(rho[argmin] > 0.0)) {
        std::ostringstream os;
        os << "lost convexity: h + h'' = " << rho[argmin]
           << " at sample " << argmin;
        throw LostConvexityError(os.str(), argmin);
    }
    return rho;
}

bool strictly_convex(const SupportCurve& c, double* min_rho) {
    std::vector<double> rho;
    const int argmin = curvature_radius_into(c, rho);
    if (min_rho) *min_rho = rho[argmin];
    return rho[argmin] > 0.0;
}

double area(const SupportCurve& c) {
    const int n = c.samples();
    std::vector<double> d1(n);
    spectral_for(n).derivatives(c.support().data(), d1.data(), nullptr);
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
        acc += c.support()[j] * c.support()[j] - d1[j] * d1[j];
    return 0.5 * acc * (2.0 * kPi / n);
}

ConvexPolygon to_points(const SupportCurve& c) {
    radius_of_curvature(c); // propagate lost-convexity before emitting points
    const int n = c.samples();
    std::vector<double> d1(n);
    spectral_for(n).derivatives(c.support().data(), d1.data(), nullptr);
    std::vector<Vec2> pts(n);
    for (int j = 0; j < n; ++j) {
        const double t = c.theta(j);
        const Vec2 u = SupportCurve::direction(t);
        const Vec2 uperp(-u.y(), u.x());
        pts[j] = c.origin() + c.support()[j] * u + d1[j] * uperp;
    }
    return ConvexPolygon::from_points(std::move(pts));
}

SupportCurve apply_affine(const SupportCurve& c, const AffineMap& map, int n_out) {
    map.validate();
    const int n_in = c.samples();
    if (n_out == 0) n_out = n_in;
    if (n_out < 16) throw_invalid("apply_affine needs n_out >= 16");

    auto& eng_in = spectral_for(n_in);
    std::vector<std::complex<double>> cin(n_in / 2 + 1);
    eng_in.spectrum(c.support().data(), cin.data());

    const Mat2 lt = map.linear.transpose();
    const int m = 4 * n_out;
    std::vector<double> s(m);
    for (int i = 0; i < m; ++i) {
        const Vec2 u = SupportCurve::direction(2.0 * kPi * i / m);
        const Vec2 w = lt * u;
        const double r = w.norm();
        s[i] = r * trig_eval(cin.data(), n_in, std::atan2(w.y(), w.x()));
    }
    std::vector<double> h = spectral_resample(s, n_out);
    return SupportCurve(std::move(h), map(c.origin()));
}

double hausdorff(const SupportCurve& a, const SupportCurve& b) {
    const int n = std::max(a.samples(), b.samples());
    std::vector<double> ha = spectral_resample(a.support(), n);
    std::vector<double> hb = spectral_resample(b.support(), n);
    const Vec2 d = b.origin() - a.origin();
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        const Vec2 u = SupportCurve::direction(2.0 * kPi * j / n);
        worst = std::max(worst, std::abs(ha[j] - (hb[j] + d.dot(u))));
    }
    return worst;
}

Vec2 steiner_point(const SupportCurve& c) {
    const int n = c.samples();
    Vec2 s(0.0, 0.0);
    for (int j = 0; j < n; ++j)
        s += c.support()[j] * SupportCurve::direction(c.theta(j));
    return c.origin() + s * (2.0 / n);
}

} // namespace acsf
