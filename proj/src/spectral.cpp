#include "spectral.hpp"

#include "errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace acsf {

namespace {
// FFTW plan creation is not thread-safe; execution of distinct plans is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

SpectralEngine::SpectralEngine(int n) : n_(n) {
    if (n < 4) throw_invalid("spectral engine requires n >= 4");
    std::lock_guard<std::mutex> lock(plan_mutex());
    real_buf_ = fftw_alloc_real(n);
    cplx_buf_ = fftw_alloc_complex(n / 2 + 1);
    plan_fwd_ = fftw_plan_dft_r2c_1d(n, real_buf_,
                                     static_cast<fftw_complex*>(cplx_buf_),
                                     FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_1d(n, static_cast<fftw_complex*>(cplx_buf_),
                                     real_buf_, FFTW_ESTIMATE);
    work_.resize(n / 2 + 1);
}

SpectralEngine::~SpectralEngine() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

void SpectralEngine::spectrum(const double* h, std::complex<double>* c) {
    std::copy(h, h + n_, real_buf_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    auto* out = static_cast<fftw_complex*>(cplx_buf_);
    const double scale = 1.0 / n_;
    for (int k = 0; k <= n_ / 2; ++k)
        c[k] = std::complex<double>(out[k][0] * scale, out[k][1] * scale);
}

void SpectralEngine::synthesize(const std::complex<double>* c, double* h) {
    auto* in = static_cast<fftw_complex*>(cplx_buf_);
    for (int k = 0; k <= n_ / 2; ++k) {
        in[k][0] = c[k].real();
        in[k][1] = c[k].imag();
    }
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    std::copy(real_buf_, real_buf_ + n_, h);
}

void SpectralEngine::derivatives(const double* h, double* d1, double* d2) {
    spectrum(h, work_.data());
    const int half = n_ / 2;
    const bool even = (n_ % 2 == 0);
    if (d1) {
        std::vector<std::complex<double>> c1(half + 1);
        for (int k = 0; k <= half; ++k)
            c1[k] = std::complex<double>(0.0, k) * work_[k];
        if (even) c1[half] = 0.0; // Nyquist carries no odd-derivative info
        synthesize(c1.data(), d1);
    }
    if (d2) {
        std::vector<std::complex<double>> c2(half + 1);
        for (int k = 0; k <= half; ++k)
            c2[k] = -static_cast<double>(k) * k * work_[k];
        synthesize(c2.data(), d2);
    }
}

SpectralEngine& spectral_for(int n) {
    thread_local std::map<int, std::unique_ptr<SpectralEngine>> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<SpectralEngine>(n)).first;
    return *it->second;
}

double trig_eval(const std::complex<double>* c, int n, double theta) {
    // Real part of sum over k >= 0 with doubling for k >= 1; the Nyquist
    // term (even n) is the real cosine mode, counted once.
    const int half = n / 2;
    const bool even = (n % 2 == 0);
    double acc = c[0].real();
    const int top = even ? half - 1 : half;
    for (int k = 1; k <= top; ++k) {
        const double ck = std::cos(k * theta), sk = std::sin(k * theta);
        acc += 2.0 * (c[k].real() * ck - c[k].imag() * sk);
    }
    if (even) acc += c[half].real() * std::cos(half * theta);
    return acc;
}

std::vector<double> spectral_resample(const std::vector<double>& h, int n_out) {
    const int n_in = static_cast<int>(h.size());
    if (n_out == n_in) return h;
    auto& ein = spectral_for(n_in);
    auto& eout = spectral_for(n_out);
    std::vector<std::complex<double>> cin(n_in / 2 + 1);
    ein.spectrum(h.data(), cin.data());
    std::vector<std::complex<double>> cout(n_out / 2 + 1, 0.0);
    const int keep = std::min(n_in / 2, n_out / 2);
    for (int k = 0; k <= keep; ++k) cout[k] = cin[k];
    // When upsampling from an even grid the source Nyquist cosine becomes an
    // interior mode that the inverse transform conjugate-doubles, so halve it.
    if (n_out > n_in && n_in % 2 == 0) cout[n_in / 2] *= 0.5;
    // Mirror case: an interior source mode landing on the target Nyquist bin
    // is counted once there, so keep twice its cosine part.
    if (n_out < n_in && n_out % 2 == 0)
        cout[n_out / 2] = 2.0 * cin[n_out / 2].real();
    std::vector<double> out(n_out);
    eout.synthesize(cout.data(), out.data());
    return out;
}

} // namespace acsf
