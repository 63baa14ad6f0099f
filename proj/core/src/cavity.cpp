#include "slowcav/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slowcav/errors.hpp"

namespace slowcav {

namespace {

constexpr double pi = std::numbers::pi;

void check_config(const CavityConfig& cfg) {
    if (!(cfg.length_m > 0.0)) throw invalid_parameter("cavity.length must be positive");
    if (!(cfg.r1 > 0.0 && cfg.r1 < 1.0) || !(cfg.r2 > 0.0 && cfg.r2 < 1.0))
        throw invalid_parameter("cavity reflectivities must be in (0, 1)");
    if (!(cfg.excess_roundtrip > 0.0 && cfg.excess_roundtrip <= 1.0))
        throw invalid_parameter("cavity.excess_roundtrip must be in (0, 1]");
    if (!(cfg.background_index > 0.0))
        throw invalid_parameter("cavity.background_index must be positive");
}

}  // namespace

std::complex<double> FieldTransfer::at(double detuning_hz) const {
    const double pos = (detuning_hz - grid.min_detuning()) / grid.spacing();
    if (pos <= 0.0) return t.front();
    if (pos >= static_cast<double>(t.size() - 1)) return t.back();
    const std::size_t i = static_cast<std::size_t>(pos);
    const double f = pos - static_cast<double>(i);
    return t[i] + f * (t[i + 1] - t[i]);
}

FieldTransfer transfer(const CavityConfig& cfg, const std::vector<double>& alpha_samples,
                       const DispersionProfile& disp) {
    check_config(cfg);
    if (alpha_samples.size() != disp.grid.size() ||
        disp.delta_n.size() != disp.grid.size())
        throw invalid_parameter("transfer: alpha samples and dispersion must share the grid");

    const double num_amp =
        std::sqrt((1.0 - cfg.r1) * (1.0 - cfg.r2) * cfg.excess_roundtrip);
    const double rt_amp = std::sqrt(cfg.r1 * cfg.r2 * cfg.excess_roundtrip);
    const double phase_scale = 2.0 * pi * cfg.length_m / speed_of_light;

    FieldTransfer out{disp.grid, std::vector<std::complex<double>>(disp.grid.size()),
                      std::vector<double>(disp.grid.size())};
    for (std::size_t i = 0; i < disp.grid.size(); ++i) {
        const double n = cfg.background_index + disp.delta_n[i];
        const double phi = phase_scale * disp.grid.frequency(i) * n;
        const double al = alpha_samples[i] * cfg.length_m;
        const std::complex<double> single =
            std::exp(std::complex<double>(-al / 2.0, phi));
        const std::complex<double> t = num_amp * single / (1.0 - rt_amp * single * single);
        out.t[i] = t;
        out.T[i] = std::norm(t);
    }
    return out;
}

ModeTable find_modes(const FieldTransfer& ft, double min_peak_fraction) {
    ModeTable table;
    const auto& T = ft.T;
    const std::size_t n = T.size();
    if (n < 3) return table;
    const double tmax = *std::max_element(T.begin(), T.end());
    if (tmax <= 0.0) return table;
    const double threshold = min_peak_fraction * tmax;
    const double h = ft.grid.spacing();

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(T[i] >= threshold && T[i] > T[i - 1] && T[i] >= T[i + 1])) continue;

        // Quadratic refinement through the three points around the maximum.
        const double denom = T[i - 1] - 2.0 * T[i] + T[i + 1];
        double dx = 0.0;
        if (denom < 0.0) dx = 0.5 * (T[i - 1] - T[i + 1]) / denom;
        dx = std::clamp(dx, -0.5, 0.5);
        ModeRow row;
        row.center_hz = ft.grid.detuning(i) + dx * h;
        row.peak_T = T[i] - 0.25 * (T[i - 1] - T[i + 1]) * dx;

        // Half-max crossings by linear interpolation.
        const double half = row.peak_T / 2.0;
        std::size_t lo = i;
        while (lo > 0 && T[lo] > half) --lo;
        std::size_t hi = i;
        while (hi + 1 < n && T[hi] > half) ++hi;
        if (T[lo] > half || T[hi] > half) {
            row.fwhm_bounded = false;
        } else {
            const double fl = (T[lo + 1] - half) / (T[lo + 1] - T[lo]);
            const double left = ft.grid.detuning(lo + 1) - fl * h;
            const double fr = (T[hi - 1] - half) / (T[hi - 1] - T[hi]);
            const double right = ft.grid.detuning(hi - 1) + fr * h;
            row.fwhm_hz = right - left;
        }
        table.rows.push_back(row);
    }
    for (std::size_t k = 0; k + 1 < table.rows.size(); ++k)
        table.rows[k].spacing_to_next_hz =
            table.rows[k + 1].center_hz - table.rows[k].center_hz;
    return table;
}

std::pair<std::int64_t, double> mode_number(double center_detuning_hz,
                                            const DispersionProfile& disp,
                                            const CavityConfig& cfg) {
    const double nu = disp.grid.carrier() + center_detuning_hz;
    const double n = disp.index_at(center_detuning_hz);
    const double x = 2.0 * cfg.length_m * nu * n / speed_of_light;
    const double m = std::round(x);
    return {static_cast<std::int64_t>(m), std::abs(x - m)};
}

void assign_mode_numbers(ModeTable& table, const DispersionProfile& disp,
                         const CavityConfig& cfg) {
    for (auto& row : table.rows) {
        const auto [m, res] = mode_number(row.center_hz, disp, cfg);
        row.mode_number = m;
        row.residual = res;
    }
}

double free_spectral_range(const CavityConfig& cfg) {
    return speed_of_light / (2.0 * cfg.background_index * cfg.length_m);
}

double airy_fwhm(const CavityConfig& cfg) {
    check_config(cfg);
    const double rho = std::sqrt(cfg.r1 * cfg.r2 * cfg.excess_roundtrip);
    const double arg = (1.0 - rho) / (2.0 * std::sqrt(rho));
    if (arg >= 1.0) return free_spectral_range(cfg);  // peaks wider than the FSR
    return free_spectral_range(cfg) * (2.0 / pi) * std::asin(arg);
}

double calibrate_excess_loss(double r1, double r2, double target_fwhm_hz,
                             double length_m, double background_index) {
    CavityConfig cfg{length_m, r1, r2, background_index, 1.0};
    if (!(target_fwhm_hz > 0.0))
        throw invalid_parameter("calibrate_excess_loss: target must be positive");
    if (airy_fwhm(cfg) > target_fwhm_hz)
        throw invalid_parameter(
            "calibrate_excess_loss: target narrower than the lossless cavity allows");
    // FWHM decreases monotonically with A; bisect.
    double lo = 1e-12, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        cfg.excess_roundtrip = mid;
        if (airy_fwhm(cfg) > target_fwhm_hz)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace slowcav
