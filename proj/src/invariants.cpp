#include "invariants.hpp"

#include "flow.hpp"

#include <cmath>

namespace acsf {

double affine_iso_sup() { return 2.0 * std::pow(kPi, 2.0 / 3.0); }

double affine_length(const SupportCurve& c) {
    const std::vector<double> rho = radius_of_curvature(c);
    double acc = 0.0;
    for (double r : rho) acc += std::cbrt(r * r);
    return acc * (2.0 * kPi / c.samples());
}

double iso_ratio(const SupportCurve& c) {
    const double a = area(c);
    if (!(a > 0.0)) throw_invalid("iso_ratio needs positive area");
    return affine_length(c) / std::cbrt(a);
}

RatioSeries ratio_series(const Trajectory& traj) {
    RatioSeries s;
    const double sup = affine_iso_sup();
    s.t.reserve(traj.states.size());
    for (const auto& st : traj.states) {
        const double r = iso_ratio(st.curve);
        s.t.push_back(st.t);
        s.ratio.push_back(r);
        s.gap_to_sup.push_back(sup - r);
    }
    return s;
}

} // namespace acsf
