#include "slowcav/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "slowcav/errors.hpp"
#include "slowcav/kk.hpp"
#include "slowcav/pulse.hpp"

namespace slowcav {

namespace {

constexpr double pi = std::numbers::pi;

// Spacing of the adjacent detected pair whose midpoint is closest to
// `center`, and the FWHM of the single mode closest to `center`.
struct CentralModes {
    double spacing = 0.0;
    double fwhm = 0.0;
};

CentralModes central_modes(const ModeTable& table, double center) {
    CentralModes out;
    const auto& rows = table.rows;
    if (rows.empty()) return out;
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (std::abs(rows[i].center_hz - center) < std::abs(rows[nearest].center_hz - center))
            nearest = i;
    if (rows[nearest].fwhm_bounded) out.fwhm = rows[nearest].fwhm_hz;
    if (rows.size() >= 2) {
        std::size_t best = 0;
        double best_dist = std::abs(0.5 * (rows[0].center_hz + rows[1].center_hz) - center);
        for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
            const double d = std::abs(0.5 * (rows[i].center_hz + rows[i + 1].center_hz) - center);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        out.spacing = rows[best].spacing_to_next_hz;
    }
    return out;
}

}  // namespace

double vg_eq5(double gamma_hz, double alpha_per_m) {
    if (!(gamma_hz > 0.0) || !(alpha_per_m > 0.0))
        throw invalid_parameter("vg_eq5: gamma and alpha must be positive");
    return 2.0 * pi * gamma_hz / alpha_per_m;
}

double tb_product(double alpha_per_m, double length_m) {
    if (!(alpha_per_m > 0.0) || !(length_m >= 0.0))
        throw invalid_parameter("tb_product: inputs must be positive");
    return alpha_per_m * length_m / (2.0 * pi);
}

double mode_spacing_eq1(double v_g_mps, double length_m) {
    if (!(v_g_mps > 0.0) || !(length_m > 0.0))
        throw invalid_parameter("mode_spacing_eq1: inputs must be positive");
    return v_g_mps / (2.0 * length_m);
}

std::vector<SlowLightReport> tuning_sweep(const SweepConfig& cfg,
                                          const std::vector<double>& gammas_hz) {
    std::vector<SlowLightReport> out;
    out.reserve(gammas_hz.size());
    const double bare_fwhm = airy_fwhm(cfg.cavity);
    const double fsr = free_spectral_range(cfg.cavity);

    for (double gamma : gammas_hz) {
        if (!(gamma > 0.0)) throw invalid_parameter("tuning_sweep: gamma must be positive");
        const double span = cfg.span_factor * gamma;
        FrequencyGrid grid(default_carrier_hz, span, cfg.grid_points);
        auto profile = build_background(BackgroundShape::flat, cfg.background_alpha_per_m,
                                        0.0, span);
        HoleSpec hole{0.0, gamma, cfg.residual_per_m, cfg.edge_ramp_fraction * gamma};
        profile = burn_hole(profile, hole);
        const auto alpha = profile.sample(grid);
        const auto disp = kk_analytic(profile, grid, cfg.cavity.background_index);
        const auto ft = transfer(cfg.cavity, alpha, disp);
        auto modes = find_modes(ft, cfg.min_peak_fraction);
        assign_mode_numbers(modes, disp, cfg.cavity);

        SlowLightReport row;
        row.gamma_hz = gamma;
        row.alpha_eff_per_m =
            profile(gamma / 2.0 + std::max(hole.edge_ramp_hz, 1e-3 * gamma));
        row.v_g_eq5_mps = vg_eq5(gamma, row.alpha_eff_per_m);
        row.v_g_kk_mps = speed_of_light / disp.group_index_at(0.0);
        const auto central = central_modes(modes, 0.0);
        row.mode_spacing_hz = central.spacing;
        row.linewidth_hz = central.fwhm;
        row.narrowing_factor = central.fwhm > 0.0 ? bare_fwhm / central.fwhm : 0.0;
        row.spacing_reduction_factor = central.spacing > 0.0 ? fsr / central.spacing : 0.0;
        row.tb_product = tb_product(row.alpha_eff_per_m, cfg.cavity.length_m);
        out.push_back(row);
    }
    return out;
}

double simulated_tb(double gamma_hz, double alpha_per_m, double length_m) {
    if (!(gamma_hz > 0.0) || !(alpha_per_m > 0.0) || !(length_m > 0.0))
        throw invalid_parameter("simulated_tb: inputs must be positive");

    const double span = 40.0 * gamma_hz;
    FrequencyGrid grid(default_carrier_hz, span, 1 << 16);
    auto profile = build_background(BackgroundShape::flat, alpha_per_m, 0.0, span);
    profile = burn_hole(profile, HoleSpec{0.0, gamma_hz, 0.0, 0.0});
    const auto alpha = profile.sample(grid);
    const auto disp = kk_analytic(profile, grid);

    // Bare medium, single pass: t = e^{i phi - alpha l / 2}.
    FieldTransfer medium{grid, std::vector<std::complex<double>>(grid.size()),
                         std::vector<double>(grid.size())};
    const double phase_scale = 2.0 * pi * length_m / speed_of_light;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double n = disp.background_index + disp.delta_n[i];
        const double phi = phase_scale * grid.frequency(i) * n;
        medium.t[i] = std::exp(std::complex<double>(-alpha[i] * length_m / 2.0, phi));
        medium.T[i] = std::norm(medium.t[i]);
    }

    // A pulse of duration ~1/Gamma fills the window; its peak arrival
    // shift is the usable delay of the structure.
    const double fwhm = 1.0 / gamma_hz;
    const double expect_delay = length_m * disp.group_index_at(0.0) / speed_of_light;
    const double span_t = std::max(10.0 * fwhm, 8.0 * (expect_delay + fwhm));
    std::size_t samples = 1;
    const double dt_target = fwhm / 32.0;
    while (static_cast<double>(samples) * dt_target < span_t) samples <<= 1;

    const auto input = gaussian_pulse(fwhm, 0.0, span_t, samples);
    const auto output = propagate(input, medium);

    const auto inten = output.intensity();
    std::size_t imax = 0;
    for (std::size_t i = 1; i < inten.size(); ++i)
        if (inten[i] > inten[imax]) imax = i;
    double peak_t = output.times_s[imax];
    if (imax > 0 && imax + 1 < inten.size()) {
        const double denom = inten[imax - 1] - 2.0 * inten[imax] + inten[imax + 1];
        if (denom < 0.0)
            peak_t += 0.5 * (inten[imax - 1] - inten[imax + 1]) / denom * output.dt_s;
    }
    return peak_t * gamma_hz;
}

}  // namespace slowcav
