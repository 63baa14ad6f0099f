#include "slowcav/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slowcav/errors.hpp"
#include "slowcav/fft.hpp"

namespace slowcav {

double PulseEnvelope::energy() const {
    double e = 0.0;
    for (const auto& f : field) e += std::norm(f);
    return e * dt_s;
}

std::vector<double> PulseEnvelope::intensity() const {
    std::vector<double> out(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) out[i] = std::norm(field[i]);
    return out;
}

PulseEnvelope gaussian_pulse(double fwhm_s, double center_s, double time_span_s,
                             std::size_t samples) {
    if (!(fwhm_s > 0.0)) throw invalid_parameter("gaussian_pulse: fwhm must be positive");
    if (!(time_span_s >= 10.0 * fwhm_s))
        throw invalid_parameter("gaussian_pulse: span must be >= 10x fwhm");
    if (samples == 0) throw invalid_parameter("gaussian_pulse: samples must be positive");
    const double dt = time_span_s / static_cast<double>(samples);
    if (fwhm_s / dt < 16.0)
        throw invalid_parameter("gaussian_pulse: undersampled, need >= 16 samples per fwhm");

    PulseEnvelope p;
    p.dt_s = dt;
    p.times_s.resize(samples);
    p.field.resize(samples);
    const double t0 = center_s - time_span_s / 2.0;
    const double k = 2.0 * std::log(2.0) / (fwhm_s * fwhm_s);  // intensity FWHM = fwhm
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = t0 + dt * static_cast<double>(i);
        p.times_s[i] = t;
        const double u = t - center_s;
        p.field[i] = std::exp(-k * u * u);
    }
    return p;
}

PulseEnvelope propagate(const PulseEnvelope& input, const FieldTransfer& ft) {
    const std::size_t n = input.field.size();
    if (n < 2 || input.dt_s <= 0.0) throw invalid_parameter("propagate: empty pulse");

    // Envelope convention x(t) = int X(f) e^{-2 pi i f t} df, so the
    // analysis transform is the (unnormalized) inverse FFT and e^{+i phi}
    // transfers produce positive group delay.
    std::vector<std::complex<double>> spec(input.field);
    fft(spec, true);

    const double df = 1.0 / (input.dt_s * static_cast<double>(n));
    auto bin_freq = [&](std::size_t k) {
        return (k <= n / 2) ? df * static_cast<double>(k)
                            : df * (static_cast<double>(k) - static_cast<double>(n));
    };

    // The 99%-energy bandwidth must fit inside the transfer grid.
    double total = 0.0;
    for (const auto& s : spec) total += std::norm(s);
    std::vector<std::pair<double, double>> by_freq(n);  // (|f|, energy)
    for (std::size_t k = 0; k < n; ++k) by_freq[k] = {std::abs(bin_freq(k)), std::norm(spec[k])};
    std::sort(by_freq.begin(), by_freq.end());
    double acc = 0.0, f99 = 0.0;
    for (const auto& [f, e] : by_freq) {
        acc += e;
        f99 = f;
        if (acc >= 0.99 * total) break;
    }
    const double span_limit = std::min(-ft.grid.min_detuning(), ft.grid.max_detuning());
    if (f99 > span_limit)
        throw invalid_parameter("propagate: pulse bandwidth exceeds the transfer grid span");

    for (std::size_t k = 0; k < n; ++k) spec[k] *= ft.at(bin_freq(k));
    fft(spec, false);

    PulseEnvelope out;
    out.times_s = input.times_s;
    out.dt_s = input.dt_s;
    out.field = std::move(spec);
    return out;
}

RingDown ring_down_metrics(const PulseEnvelope& output, double min_peak_fraction,
                           std::size_t min_separation) {
    RingDown rd;
    const std::vector<double> inten = output.intensity();
    const std::size_t n = inten.size();
    if (n < 3) return rd;
    const double imax = *std::max_element(inten.begin(), inten.end());
    if (imax <= 0.0) return rd;
    const double thr = min_peak_fraction * imax;

    std::vector<std::size_t> peaks;
    std::vector<double> peak_intensity;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(inten[i] >= thr && inten[i] > inten[i - 1] && inten[i] >= inten[i + 1]))
            continue;
        const std::size_t lo = i > min_separation ? i - min_separation : 0;
        const std::size_t hi = std::min(n - 1, i + min_separation);
        bool window_max = true;
        for (std::size_t j = lo; j <= hi && window_max; ++j)
            if (inten[j] > inten[i]) window_max = false;
        if (!window_max) continue;
        if (!peaks.empty() && i - peaks.back() < min_separation) continue;
        peaks.push_back(i);
        peak_intensity.push_back(inten[i]);
    }
    if (peaks.size() < 2) return rd;

    rd.found = true;
    for (std::size_t p : peaks) rd.peak_times_s.push_back(output.times_s[p]);
    double dt_sum = 0.0, log_ratio = 0.0;
    for (std::size_t k = 0; k + 1 < peaks.size(); ++k) {
        dt_sum += rd.peak_times_s[k + 1] - rd.peak_times_s[k];
        log_ratio += std::log(peak_intensity[k + 1] / peak_intensity[k]);
    }
    const double pairs = static_cast<double>(peaks.size() - 1);
    rd.period_s = dt_sum / pairs;
    rd.amplitude_ratio = std::exp(log_ratio / pairs);
    return rd;
}

}  // namespace slowcav
