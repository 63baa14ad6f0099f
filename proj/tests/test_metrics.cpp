#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "slowcav/metrics.hpp"

using namespace slowcav;

TEST_CASE("closed-form figures of merit") {
    CHECK(vg_eq5(1e6, 3750.0) ==
          doctest::Approx(2.0 * std::numbers::pi * 1e6 / 3750.0).epsilon(1e-12));
    // 50 per cm over 12 mm
    CHECK(tb_product(5000.0, 12e-3) == doctest::Approx(9.5493).epsilon(1e-4));
    CHECK(mode_spacing_eq1(1675.5, 6e-3) == doctest::Approx(1675.5 / 0.012).epsilon(1e-12));
}

TEST_CASE("single-row tuning sweep, 1 MHz window at 3750/m") {
    SweepConfig cfg;
    cfg.background_alpha_per_m = 3750.0;
    auto rows = tuning_sweep(cfg, {1e6});
    REQUIRE(rows.size() == 1);
    const auto& r = rows[0];

    CHECK(r.gamma_hz == doctest::Approx(1e6));
    CHECK(r.alpha_eff_per_m == doctest::Approx(3750.0).epsilon(1e-6));

    // KK group velocity is pi/2 times the order-of-magnitude estimate.
    CHECK(r.v_g_kk_mps ==
          doctest::Approx(std::numbers::pi / 2.0 * r.v_g_eq5_mps).epsilon(0.01));

    // Mode spacing follows v_g / 2L near the window centre; the straddling
    // pair sits a few percent low because n_g grows off-centre.
    CHECK(r.mode_spacing_hz ==
          doctest::Approx(mode_spacing_eq1(r.v_g_kk_mps, cfg.cavity.length_m)).epsilon(0.10));
    CHECK(r.linewidth_hz > 0.0);
    CHECK(r.linewidth_hz < r.mode_spacing_hz);
    CHECK(r.narrowing_factor > 1.0);
    CHECK(r.spacing_reduction_factor > 1.0);
    CHECK(r.tb_product == doctest::Approx(tb_product(3750.0, cfg.cavity.length_m)).epsilon(1e-6));
}

TEST_CASE("sweep rows follow the requested widths in order") {
    SweepConfig cfg;
    cfg.background_alpha_per_m = 3750.0;
    auto rows = tuning_sweep(cfg, {18e6, 3e6});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].gamma_hz == doctest::Approx(18e6));
    CHECK(rows[1].gamma_hz == doctest::Approx(3e6));
    // Narrower window, slower light, tighter modes.
    CHECK(rows[1].v_g_kk_mps < rows[0].v_g_kk_mps);
    CHECK(rows[1].mode_spacing_hz < rows[0].mode_spacing_hz);
}

TEST_CASE("simulated delay-bandwidth agrees with alpha l / 2 pi") {
    const double alpha = 5000.0, l = 12e-3, gamma = 1e6;
    const double tb = simulated_tb(gamma, alpha, l);
    const double expected = tb_product(alpha, l);
    CHECK(std::abs(tb - expected) < 0.3 * expected);
}
