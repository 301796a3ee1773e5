#pragma once

#include <complex>
#include <vector>

namespace acsf {

// Spectral differentiation and trigonometric interpolation for real
// 2*pi-periodic samples on the uniform grid theta_j = 2*pi*j/n.
//
// All plans are FFTW_ESTIMATE and cached per thread (see spectral_for),
// so repeated calls at a fixed n do no planning work. Frequency-domain
// conventions: coefficients are normalized, h(theta) = sum_k c_k e^{i k theta}
// with c_{-k} = conj(c_k); the Nyquist mode (k = n/2, even n) is zeroed for
// odd derivatives and multiplied by -(n/2)^2 for the second derivative.
class SpectralEngine {
public:
    explicit SpectralEngine(int n);
    ~SpectralEngine();

    SpectralEngine(const SpectralEngine&) = delete;
    SpectralEngine& operator=(const SpectralEngine&) = delete;

    int size() const noexcept { return n_; }

    // First and/or second derivative; either output may be null.
    void derivatives(const double* h, double* d1, double* d2);

    // Normalized half-spectrum c_0 .. c_{n/2} (length n/2 + 1).
    void spectrum(const double* h, std::complex<double>* c);

    // Inverse of spectrum().
    void synthesize(const std::complex<double>* c, double* h);

private:
    int n_;
    double* real_buf_;
    void* cplx_buf_; // fftw_complex*
    void* plan_fwd_; // fftw_plan
    void* plan_bwd_;
    std::vector<std::complex<double>> work_;
};

// Thread-local engine cache keyed by n.
SpectralEngine& spectral_for(int n);

// Evaluate the trig interpolant of the half-spectrum c (length n/2 + 1,
// sample count n) at an arbitrary angle.
double trig_eval(const std::complex<double>* c, int n, double theta);

// Resample band-limited samples onto a grid of n_out points by spectral
// zero-padding (n_out > n) or truncation (n_out < n).
std::vector<double> spectral_resample(const std::vector<double>& h, int n_out);

} // namespace acsf
