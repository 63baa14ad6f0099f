#ifndef SLOWCAV_KK_HPP
#define SLOWCAV_KK_HPP

#include <vector>

#include "slowcav/frequency_grid.hpp"
#include "slowcav/profile.hpp"

namespace slowcav {

inline constexpr double default_background_index = 1.8;

// Real index deviation delta_n(nu) and group index n_g(nu) on a grid.
struct DispersionProfile {
    FrequencyGrid grid;
    std::vector<double> delta_n;      // dimensionless
    std::vector<double> group_index;  // includes background_index
    double background_index = default_background_index;

    // Linear interpolation at an arbitrary detuning (clamped at the ends).
    double delta_n_at(double detuning_hz) const;
    double group_index_at(double detuning_hz) const;

    // Phase index n(nu) = background_index + delta_n(nu).
    double index_at(double detuning_hz) const {
        return background_index + delta_n_at(detuning_hz);
    }
};

// Closed-form Kramers-Kronig of a piecewise-linear absorption profile,
// narrowband single-pole form:
//   delta_n(nu) = (c / 4 pi^2 nu0) PV int alpha(s) / (s - nu) ds.
// Sign convention: inside a spectral hole d(delta_n)/dnu > 0 (slow light).
// The group index is filled from the analytic derivative of the closed
// form, so it is exact up to rounding. This path is authoritative.
DispersionProfile kk_analytic(const AbsorptionProfile& profile, const FrequencyGrid& grid,
                              double background_index = default_background_index);

// Discrete Hilbert transform via FFT with edge-constant subtraction,
// cosine-tapered edges and >= 4x zero padding. Validation path for
// sampled profiles; requires alpha to approach a constant at both edges.
DispersionProfile kk_numeric(const std::vector<double>& alpha_samples,
                             const FrequencyGrid& grid,
                             double background_index = default_background_index);

// n_g = background + delta_n + carrier * d(delta_n)/dnu by central finite
// differences (one-sided at the edges). Requires >= 3 points.
std::vector<double> group_index(const DispersionProfile& disp);

}  // namespace slowcav

#endif
