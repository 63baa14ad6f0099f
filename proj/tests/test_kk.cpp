#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pv_oracle.hpp"
#include "slowcav/errors.hpp"
#include "slowcav/kk.hpp"
#include "slowcav/profile.hpp"

using namespace slowcav;

namespace {

// True if detuning sits within eps of any profile breakpoint (the analytic
// path clamps its logs there, so oracle comparisons skip those points).
bool near_breakpoint(const AbsorptionProfile& p, double nu, double eps) {
    for (double b : p.breakpoints())
        if (std::abs(nu - b) < eps) return true;
    return false;
}

}  // namespace

TEST_CASE("analytic KK matches the PV quadrature oracle, square hole") {
    auto bg = build_background(BackgroundShape::flat, 3750.0, 0.0, 40e6);
    auto prof = burn_hole(bg, {0.0, 1e6, 0.0, 0.0});
    FrequencyGrid grid(default_carrier_hz, 20e6, 128);
    auto disp = kk_analytic(prof, grid);

    double max_dn = 0.0;
    for (double v : disp.delta_n) max_dn = std::max(max_dn, std::abs(v));
    REQUIRE(max_dn > 0.0);

    const double eps = 2e-6 * grid.spacing();
    for (std::size_t i = 0; i < grid.size(); i += 7) {
        const double nu = grid.detuning(i);
        if (near_breakpoint(prof, nu, eps)) continue;
        const double oracle = testing::kk_delta_n_oracle(prof, nu, grid.carrier());
        CHECK(std::abs(disp.delta_n[i] - oracle) < 1e-9 * max_dn);
    }
}

TEST_CASE("analytic KK matches the oracle for an asymmetric ramp profile") {
    AbsorptionProfile prof({-8e6, -5e6, -1e6, 2e6, 4e6, 8e6},
                           {500.0, 2200.0, 300.0, 1700.0, 900.0, 500.0});
    FrequencyGrid grid(default_carrier_hz, 30e6, 96);
    auto disp = kk_analytic(prof, grid);

    double max_dn = 0.0;
    for (double v : disp.delta_n) max_dn = std::max(max_dn, std::abs(v));

    const double eps = 2e-6 * grid.spacing();
    for (std::size_t i = 0; i < grid.size(); i += 5) {
        const double nu = grid.detuning(i);
        if (near_breakpoint(prof, nu, eps)) continue;
        const double oracle = testing::kk_delta_n_oracle(prof, nu, grid.carrier());
        CHECK(std::abs(disp.delta_n[i] - oracle) < 1e-9 * max_dn);
    }
}

TEST_CASE("square hole centre group index equals c alpha / (pi^2 Gamma)") {
    const double alpha = 3750.0, gamma = 1e6;
    auto bg = build_background(BackgroundShape::flat, alpha, 0.0, 40e6);
    auto prof = burn_hole(bg, {0.0, gamma, 0.0, 0.0});
    FrequencyGrid grid(default_carrier_hz, 4e6, 1024);
    auto disp = kk_analytic(prof, grid);

    const double expected = speed_of_light * alpha / (std::numbers::pi * std::numbers::pi * gamma);
    const double got = disp.group_index[grid.size() / 2] - disp.background_index -
                       disp.delta_n[grid.size() / 2];
    CHECK(got == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("KK is linear in the absorption profile") {
    std::vector<double> bp{-4e6, -1e6, 0.0, 2e6, 4e6};
    std::vector<double> a1{100.0, 900.0, 200.0, 700.0, 100.0};
    std::vector<double> a2{300.0, 50.0, 600.0, 150.0, 300.0};
    std::vector<double> sum(a1.size());
    for (std::size_t i = 0; i < a1.size(); ++i) sum[i] = 2.0 * a1[i] + a2[i];

    FrequencyGrid grid(default_carrier_hz, 16e6, 64);
    auto d1 = kk_analytic(AbsorptionProfile(bp, a1), grid);
    auto d2 = kk_analytic(AbsorptionProfile(bp, a2), grid);
    auto ds = kk_analytic(AbsorptionProfile(bp, sum), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double lin = 2.0 * d1.delta_n[i] + d2.delta_n[i];
        CHECK(ds.delta_n[i] == doctest::Approx(lin).epsilon(1e-12));
    }
}

TEST_CASE("delta_n of a symmetric profile is antisymmetric") {
    auto bg = build_background(BackgroundShape::flat, 2000.0, 0.0, 40e6);
    auto prof = burn_hole(bg, {0.0, 3e6, 0.0, 0.0});
    FrequencyGrid grid(default_carrier_hz, 20e6, 256);
    auto disp = kk_analytic(prof, grid);

    double max_dn = 0.0;
    for (double v : disp.delta_n) max_dn = std::max(max_dn, std::abs(v));
    const std::size_t n = grid.size();
    for (std::size_t i = 1; i < n; ++i) {
        // detuning(n - i) == -detuning(i) on this grid
        CHECK(std::abs(disp.delta_n[n - i] + disp.delta_n[i]) < 1e-9 * max_dn);
    }
    CHECK(std::abs(disp.delta_n[n / 2]) < 1e-9 * max_dn);
}

TEST_CASE("numeric Hilbert path agrees with the analytic path") {
    // Ramped edges keep delta_n bounded; a square hole's log spikes cannot
    // be resolved by the sampled Hilbert transform.
    auto bg = build_background(BackgroundShape::flat, 3750.0, 0.0, 400e6);
    auto prof = burn_hole(bg, {0.0, 18e6, 0.0, 1e6});
    FrequencyGrid grid(default_carrier_hz, 400e6, 1 << 16);
    auto ana = kk_analytic(prof, grid);
    auto num = kk_numeric(prof.sample(grid), grid);

    double max_dn = 0.0, max_err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        max_dn = std::max(max_dn, std::abs(ana.delta_n[i]));
        max_err = std::max(max_err, std::abs(ana.delta_n[i] - num.delta_n[i]));
    }
    CHECK(max_err < 1e-3 * max_dn);
}

TEST_CASE("finite-difference group index tracks the analytic one") {
    auto prof = build_background(BackgroundShape::gaussian, 2000.0, 9e9, 44e9);
    FrequencyGrid grid(default_carrier_hz, 44e9, 1 << 14);
    auto disp = kk_analytic(prof, grid);
    auto fd = group_index(disp);
    double max_ng = 0.0;
    for (double v : disp.group_index) max_ng = std::max(max_ng, std::abs(v));
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        // The analytic n_g has log kinks at breakpoints that the central
        // difference smooths over; compare only away from them.
        if (near_breakpoint(prof, grid.detuning(i), 3.0 * grid.spacing())) continue;
        CHECK(std::abs(fd[i] - disp.group_index[i]) < 5e-3 * max_ng);
    }
}

TEST_CASE("interpolated accessors clamp at the grid ends") {
    auto prof = build_background(BackgroundShape::flat, 100.0, 0.0, 10e6);
    FrequencyGrid grid(default_carrier_hz, 8e6, 64);
    auto disp = kk_analytic(prof, grid);
    CHECK(disp.delta_n_at(-1e9) == disp.delta_n.front());
    CHECK(disp.delta_n_at(1e9) == disp.delta_n.back());
    CHECK(disp.index_at(0.0) == doctest::Approx(disp.background_index).epsilon(1e-12));
}

TEST_CASE("kk_numeric rejects mismatched sample counts") {
    FrequencyGrid grid(default_carrier_hz, 8e6, 64);
    CHECK_THROWS_AS(kk_numeric(std::vector<double>(63, 0.0), grid), invalid_parameter);
}
