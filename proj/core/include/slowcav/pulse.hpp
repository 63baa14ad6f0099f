#ifndef SLOWCAV_PULSE_HPP
#define SLOWCAV_PULSE_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "slowcav/cavity.hpp"

namespace slowcav {

// Complex baseband envelope on a uniform time grid.
struct PulseEnvelope {
    std::vector<double> times_s;
    std::vector<std::complex<double>> field;
    double dt_s = 0.0;

    double energy() const;  // sum |field|^2 dt
    std::vector<double> intensity() const;
};

// Gaussian envelope whose *intensity* FWHM is fwhm_s, peaked at center_s.
// Requires span >= 10 fwhm and at least 16 samples per fwhm.
PulseEnvelope gaussian_pulse(double fwhm_s, double center_s, double time_span_s,
                             std::size_t samples);

// Single-pass linear propagation: output spectrum = input spectrum * t(nu),
// with t resampled onto the pulse FFT bins by linear interpolation. The
// pulse 99%-energy bandwidth must fit inside the transfer grid span.
PulseEnvelope propagate(const PulseEnvelope& input, const FieldTransfer& ft);

struct RingDown {
    bool found = false;  // false: fewer than 2 resolvable peaks
    std::vector<double> peak_times_s;
    double period_s = 0.0;          // mean successive peak-time difference
    double amplitude_ratio = 0.0;   // geometric mean of successive intensity ratios
};

RingDown ring_down_metrics(const PulseEnvelope& output,
                           double min_peak_fraction = 0.01,
                           std::size_t min_separation = 10);

}  // namespace slowcav

#endif
