#ifndef SLOWCAV_METRICS_HPP
#define SLOWCAV_METRICS_HPP

#include <vector>

#include "slowcav/cavity.hpp"
#include "slowcav/profile.hpp"

namespace slowcav {

// Slow-light figures of merit for one transmission-window width.
struct SlowLightReport {
    double gamma_hz = 0.0;
    double alpha_eff_per_m = 0.0;   // absorption just outside the window
    double v_g_eq5_mps = 0.0;       // 2 pi Gamma / alpha
    double v_g_kk_mps = 0.0;        // c / n_g(window center) from the KK chain
    double mode_spacing_hz = 0.0;   // spacing of the two modes nearest the window center
    double linewidth_hz = 0.0;      // FWHM of the mode nearest the window center
    double narrowing_factor = 0.0;  // non-dispersive FWHM / linewidth
    double spacing_reduction_factor = 0.0;
    double tb_product = 0.0;        // alpha_eff * L / 2 pi
};

// v_g ~ 2 pi Gamma / alpha (order-of-magnitude estimate).
double vg_eq5(double gamma_hz, double alpha_per_m);

// Time-bandwidth product alpha * l / 2 pi of a slow-light structure.
double tb_product(double alpha_per_m, double length_m);

// Dispersive cavity mode spacing v_g / 2 L.
double mode_spacing_eq1(double v_g_mps, double length_m);

struct SweepConfig {
    double background_alpha_per_m = 2000.0;
    double residual_per_m = 0.0;
    double edge_ramp_fraction = 0.0;  // edge ramp as a fraction of Gamma
    CavityConfig cavity;
    double span_factor = 40.0;          // grid span = span_factor * Gamma
    std::size_t grid_points = 1 << 16;  // per sweep row
    double min_peak_fraction = 0.01;
};

// Quasi-static width sweep: for each Gamma run profile -> kk -> cavity ->
// find_modes and fill a report row. Rows ordered as the input list.
std::vector<SlowLightReport> tuning_sweep(const SweepConfig& cfg,
                                          const std::vector<double>& gammas_hz);

// Delay x bandwidth measured from a single-pass pulse simulation through
// the bare medium (no mirrors): a pulse of duration 1/Gamma is sent
// through a square window of width Gamma and the peak arrival shift is
// multiplied by Gamma. Comparable to tb_product within tens of percent.
double simulated_tb(double gamma_hz, double alpha_per_m, double length_m);

}  // namespace slowcav

#endif
