#include "ndflow.hpp"

#include "errors.hpp"
#include "geometry.hpp"

#include <cmath>

namespace acsf {

namespace {

void check_dim(int n) {
    if (n < 1 || n > 64) throw_invalid("hypersurface dimension out of range");
}

double flow_exponent(int n) { return (2.0 * n + 2.0) / (n + 2.0); }

} // namespace

void EllipsoidND::validate() const {
    check_dim(n);
    if (static_cast<int>(semi_axes.size()) != n + 1)
        throw_invalid("ellipsoid needs n + 1 semi-axes");
    for (double a : semi_axes)
        if (!(a > 0.0) || !std::isfinite(a))
            throw_invalid("semi-axes must be positive and finite");
}

double EllipsoidND::mean_radius() const {
    validate();
    double logsum = 0.0;
    for (double a : semi_axes) logsum += std::log(a);
    return std::exp(logsum / semi_axes.size());
}

double EllipsoidND::volume() const {
    validate();
    const int d = n + 1;
    double v = std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
    for (double a : semi_axes) v *= a;
    return v;
}

double sphere_radius_nd(double r0, double t, int n) {
    check_dim(n);
    if (!(r0 > 0.0)) throw_invalid("sphere radius must be positive");
    const double p = flow_exponent(n);
    const double core = std::pow(r0, p) - p * t;
    if (!(core > 0.0))
        throw Error(ErrorKind::range, "t is at or past the extinction time");
    return std::pow(core, 1.0 / p);
}

double extinction_time_nd(double r0, int n) {
    check_dim(n);
    if (!(r0 > 0.0)) throw_invalid("sphere radius must be positive");
    const double p = flow_exponent(n);
    return std::pow(r0, p) / p;
}

EllipsoidND ellipsoid_evolution_nd(const EllipsoidND& e0, double t) {
    e0.validate();
    const double r0 = e0.mean_radius();
    const double s = sphere_radius_nd(r0, t, e0.n) / r0;
    EllipsoidND out = e0;
    for (double& a : out.semi_axes) a *= s;
    return out;
}

double iso_ratio_nd(int n) {
    check_dim(n);
    const double sigma =
        2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
    const double ball_volume = sigma / (n + 1);
    return std::pow(ball_volume, -static_cast<double>(n) / (n + 2)) * sigma;
}

double rescale_invariance_check(const EllipsoidND& e0, double lambda,
                                double t_fraction) {
    e0.validate();
    if (!(lambda > 0.0)) throw_invalid("lambda must be positive");
    if (!(t_fraction > 0.0 && t_fraction < 1.0))
        throw_invalid("t_fraction must lie in (0, 1)");

    const int n = e0.n;
    const double scale = std::pow(lambda, -(n + 2.0) / (2.0 * n + 2.0));
    EllipsoidND scaled = e0;
    for (double& a : scaled.semi_axes) a *= scale;

    const double t = t_fraction * extinction_time_nd(scaled.mean_radius(), n);
    const EllipsoidND lhs = ellipsoid_evolution_nd(scaled, t);
    const EllipsoidND orig_at = ellipsoid_evolution_nd(e0, lambda * t);

    double worst = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double want = scale * orig_at.semi_axes[i];
        worst = std::max(worst,
                         std::abs(lhs.semi_axes[i] - want) / std::abs(want));
    }
    return worst;
}

} // namespace acsf
