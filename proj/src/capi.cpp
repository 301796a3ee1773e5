#include "acsflow.h"

#include "errors.hpp"
#include "experiments.hpp"
#include "flow.hpp"
#include "geometry.hpp"
#include "invariants.hpp"
#include "io.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

struct acsf_curve {
    acsf::SupportCurve impl;
};

struct acsf_trajectory {
    acsf::Trajectory impl;
};

namespace {

thread_local std::string g_last_error;

int status_of(acsf::ErrorKind k) {
    switch (k) {
    case acsf::ErrorKind::invalid_input:
        return ACSF_ERROR_INVALID_INPUT;
    case acsf::ErrorKind::io:
        return ACSF_ERROR_IO;
    default:
        return ACSF_ERROR_NUMERICAL;
    }
}

// Runs f and funnels every failure into the status/last-error contract.
template <typename F> int guarded(F&& f) {
    try {
        f();
        return ACSF_OK;
    } catch (const acsf::Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return ACSF_ERROR_NUMERICAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ACSF_ERROR_NUMERICAL;
    }
}

template <typename Handle, typename F> Handle* guarded_new(F&& f) {
    Handle* h = nullptr;
    const int rc = guarded([&] { h = new Handle{f()}; });
    return rc == ACSF_OK ? h : nullptr;
}

bool require(bool ok, const char* msg) {
    if (!ok) g_last_error = msg;
    return ok;
}

} // namespace

extern "C" {

const char* acsf_version(void) { return "0.1.0"; }

const char* acsf_last_error(void) { return g_last_error.c_str(); }

acsf_curve* acsf_curve_circle(double radius, int n_samples) {
    return guarded_new<acsf_curve>([&] {
        if (!(radius > 0.0)) acsf::throw_invalid("radius must be positive");
        acsf::Ellipse e;
        e.shape = acsf::Mat2::Identity() * (radius * radius);
        return acsf::support_of_ellipse(e, n_samples);
    });
}

acsf_curve* acsf_curve_ellipse(double a, double b, int n_samples) {
    return guarded_new<acsf_curve>([&] {
        if (!(a > 0.0) || !(b > 0.0))
            acsf::throw_invalid("semi-axes must be positive");
        acsf::Ellipse e;
        e.shape << a * a, 0.0, 0.0, b * b;
        return acsf::support_of_ellipse(e, n_samples);
    });
}

acsf_curve* acsf_curve_from_support(const double* h, int n_samples,
                                    double origin_x, double origin_y) {
    return guarded_new<acsf_curve>([&] {
        if (h == nullptr) acsf::throw_invalid("h must not be NULL");
        if (n_samples < 0) acsf::throw_invalid("n_samples must be nonnegative");
        std::vector<double> hv(h, h + n_samples);
        return acsf::SupportCurve(std::move(hv),
                                  acsf::Vec2(origin_x, origin_y));
    });
}

acsf_curve* acsf_curve_read_json(const char* path) {
    return guarded_new<acsf_curve>([&] {
        if (path == nullptr) acsf::throw_invalid("path must not be NULL");
        return acsf::io::read_curve(path);
    });
}

void acsf_curve_free(acsf_curve* c) { delete c; }

int acsf_curve_samples(const acsf_curve* c) {
    return c != nullptr ? c->impl.samples() : 0;
}

int acsf_curve_support(const acsf_curve* c, double* out, size_t len) {
    if (!require(c != nullptr && out != nullptr, "NULL argument"))
        return ACSF_ERROR_INVALID_INPUT;
    const auto& h = c->impl.support();
    if (!require(len >= h.size(), "output buffer too small"))
        return ACSF_ERROR_INVALID_INPUT;
    std::memcpy(out, h.data(), h.size() * sizeof(double));
    return ACSF_OK;
}

int acsf_curve_area(const acsf_curve* c, double* out) {
    if (!require(c != nullptr && out != nullptr, "NULL argument"))
        return ACSF_ERROR_INVALID_INPUT;
    return guarded([&] { *out = acsf::area(c->impl); });
}

int acsf_curve_affine_length(const acsf_curve* c, double* out) {
    if (!require(c != nullptr && out != nullptr, "NULL argument"))
        return ACSF_ERROR_INVALID_INPUT;
    return guarded([&] { *out = acsf::affine_length(c->impl); });
}

int acsf_curve_iso_ratio(const acsf_curve* c, double* out) {
    if (!require(c != nullptr && out != nullptr, "NULL argument"))
        return ACSF_ERROR_INVALID_INPUT;
    return guarded([&] { *out = acsf::iso_ratio(c->impl); });
}

int acsf_curve_write_json(const acsf_curve* c, const char* path) {
    if (!require(c != nullptr && path != nullptr, "NULL argument"))
        return ACSF_ERROR_INVALID_INPUT;
    return guarded([&] { acsf::io::write_curve(path, c->impl); });
}

acsf_trajectory* acsf_evolve(const acsf_curve* c, double area_floor,
                             double safety) {
    if (!require(c != nullptr, "NULL curve")) return nullptr;
    return guarded_new<acsf_trajectory>([&] {
        acsf::EvolveOptions opt;
        opt.area_floor = area_floor;
        opt.safety = safety;
        return acsf::evolve(c->impl, opt);
    });
}

void acsf_trajectory_free(acsf_trajectory* t) { delete t; }

int acsf_trajectory_snapshots(const acsf_trajectory* t) {
    return t != nullptr ? static_cast<int>(t->impl.states.size()) : 0;
}

int acsf_trajectory_t_end(const acsf_trajectory* t, double* out) {
    if (!require(t != nullptr && out != nullptr, "NULL argument"))
        return ACSF_ERROR_INVALID_INPUT;
    *out = t->impl.t_end();
    return ACSF_OK;
}

int acsf_trajectory_extinction_estimate(const acsf_trajectory* t,
                                        double* out) {
    if (!require(t != nullptr && out != nullptr, "NULL argument"))
        return ACSF_ERROR_INVALID_INPUT;
    *out = t->impl.extinction_estimate;
    return ACSF_OK;
}

acsf_curve* acsf_trajectory_curve_at(const acsf_trajectory* t, double time) {
    if (!require(t != nullptr, "NULL trajectory")) return nullptr;
    return guarded_new<acsf_curve>([&] { return t->impl.curve_at(time); });
}

int acsf_trajectory_write(const acsf_trajectory* t, const char* path) {
    if (!require(t != nullptr && path != nullptr, "NULL argument"))
        return ACSF_ERROR_INVALID_INPUT;
    return guarded([&] { acsf::io::write_trajectory(path, t->impl); });
}

int acsf_run(const char* command, const char* config_json, const char* out_dir,
             char** report_out) {
    if (!require(command != nullptr && out_dir != nullptr &&
                     report_out != nullptr,
                 "NULL argument"))
        return ACSF_ERROR_INVALID_INPUT;
    *report_out = nullptr;
    return guarded([&] {
        const std::string report = acsf::run_command(
            command, config_json != nullptr ? config_json : "", out_dir);
        char* buf = static_cast<char*>(std::malloc(report.size() + 1));
        if (buf == nullptr) throw std::bad_alloc();
        std::memcpy(buf, report.c_str(), report.size() + 1);
        *report_out = buf;
    });
}

void acsf_string_free(char* s) { std::free(s); }

} // extern "C"
