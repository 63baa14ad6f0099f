#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "slowcav/cavity.hpp"
#include "slowcav/kk.hpp"
#include "slowcav/profile.hpp"

using namespace slowcav;

namespace {

DispersionProfile flat_dispersion(const FrequencyGrid& grid, double n_bg = 1.8) {
    return DispersionProfile{grid, std::vector<double>(grid.size(), 0.0),
                             std::vector<double>(grid.size(), n_bg), n_bg};
}

}  // namespace

TEST_CASE("free spectral range of the bare cavity") {
    CavityConfig cfg;
    CHECK(free_spectral_range(cfg) ==
          doctest::Approx(speed_of_light / (2.0 * 1.8 * 6e-3)).epsilon(1e-12));
    CHECK(free_spectral_range(cfg) == doctest::Approx(13.8793e9).epsilon(1e-4));
}

TEST_CASE("loss calibration reproduces the target linewidth") {
    const double a = calibrate_excess_loss(0.95, 0.95, 1e9, 6e-3, 1.8);
    CHECK(a == doctest::Approx(default_excess_roundtrip).epsilon(1e-10));
    CavityConfig cfg;
    cfg.excess_roundtrip = a;
    CHECK(airy_fwhm(cfg) == doctest::Approx(1e9).epsilon(1e-9));
}

TEST_CASE("airy linewidth grows as loss increases") {
    CavityConfig lossless;
    lossless.excess_roundtrip = 1.0;
    CavityConfig lossy;
    lossy.excess_roundtrip = 0.5;
    CHECK(airy_fwhm(lossy) > airy_fwhm(lossless));
}

TEST_CASE("non-dispersive transfer peaks and T bound") {
    CavityConfig cfg;
    FrequencyGrid grid(default_carrier_hz, 35e9, 1 << 13);
    std::vector<double> alpha(grid.size(), 0.0);
    auto ft = transfer(cfg, alpha, flat_dispersion(grid));

    double tmax = 0.0;
    for (double v : ft.T) {
        CHECK(v <= 1.0 + 1e-12);
        tmax = std::max(tmax, v);
    }
    const double r = 0.95, a = cfg.excess_roundtrip;
    const double rho = std::sqrt(r * r * a);
    const double expected_peak = (1.0 - r) * (1.0 - r) * a / ((1.0 - rho) * (1.0 - rho));
    CHECK(tmax == doctest::Approx(expected_peak).epsilon(1e-4));
}

TEST_CASE("mode extraction on the empty cavity") {
    CavityConfig cfg;
    FrequencyGrid grid(default_carrier_hz, 35e9, 1 << 13);
    std::vector<double> alpha(grid.size(), 0.0);
    auto disp = flat_dispersion(grid);
    auto ft = transfer(cfg, alpha, disp);
    auto modes = find_modes(ft);
    REQUIRE(modes.rows.size() >= 2);

    const double fsr = free_spectral_range(cfg);
    for (std::size_t i = 0; i + 1 < modes.rows.size(); ++i) {
        CHECK(modes.rows[i].spacing_to_next_hz == doctest::Approx(fsr).epsilon(1e-3));
        CHECK(modes.rows[i].center_hz < modes.rows[i + 1].center_hz);
    }
    for (const auto& row : modes.rows) {
        if (!row.fwhm_bounded) continue;
        CHECK(row.fwhm_hz == doctest::Approx(airy_fwhm(cfg)).epsilon(0.01));
    }

    assign_mode_numbers(modes, disp, cfg);
    for (std::size_t i = 0; i + 1 < modes.rows.size(); ++i) {
        CHECK(modes.rows[i].residual < 0.01);
        CHECK(modes.rows[i + 1].mode_number - modes.rows[i].mode_number == 1);
    }
}

TEST_CASE("no peaks above threshold yields an empty table") {
    CavityConfig cfg;
    FrequencyGrid grid(default_carrier_hz, 35e9, 1 << 10);
    FieldTransfer ft{grid, std::vector<std::complex<double>>(grid.size(), 0.0),
                     std::vector<double>(grid.size(), 0.0)};
    CHECK(find_modes(ft).rows.empty());
}

TEST_CASE("dispersive cavity compresses mode spacing") {
    auto bg = build_background(BackgroundShape::flat, 3750.0, 0.0, 40e6);
    auto prof = burn_hole(bg, {0.0, 1e6, 0.0, 0.0});
    FrequencyGrid grid(default_carrier_hz, 40e6, 1 << 16);
    auto disp = kk_analytic(prof, grid);

    CavityConfig cfg;
    auto ft = transfer(cfg, prof.sample(grid), disp);
    auto modes = find_modes(ft);
    REQUIRE(modes.rows.size() >= 3);

    // Spacing near the window centre matches v_g / 2L.
    std::size_t best = 0;
    double best_mid = 1e18;
    for (std::size_t i = 0; i + 1 < modes.rows.size(); ++i) {
        const double mid =
            std::abs(0.5 * (modes.rows[i].center_hz + modes.rows[i + 1].center_hz));
        if (mid < best_mid) {
            best_mid = mid;
            best = i;
        }
    }
    // n_g grows away from the window centre, so the straddling pair sits a
    // few percent below c / (2 L n_g(0)).
    const double ng = disp.group_index_at(0.0);
    const double expected = speed_of_light / ng / (2.0 * cfg.length_m);
    CHECK(modes.rows[best].spacing_to_next_hz == doctest::Approx(expected).epsilon(0.10));

    for (double v : ft.T) CHECK(v <= 1.0 + 1e-12);
}

TEST_CASE("field transfer interpolation clamps at the ends") {
    CavityConfig cfg;
    FrequencyGrid grid(default_carrier_hz, 35e9, 1 << 10);
    std::vector<double> alpha(grid.size(), 0.0);
    auto ft = transfer(cfg, alpha, flat_dispersion(grid));
    CHECK(ft.at(-1e12) == ft.t.front());
    CHECK(ft.at(1e12) == ft.t.back());
    CHECK(std::abs(ft.at(grid.detuning(5)) - ft.t[5]) < 1e-15);
}
