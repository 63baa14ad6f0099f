#ifndef SLOWCAV_CAVITY_HPP
#define SLOWCAV_CAVITY_HPP

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "slowcav/frequency_grid.hpp"
#include "slowcav/kk.hpp"

namespace slowcav {

// Excess round-trip intensity loss calibrated so the empty (non-dispersive)
// cavity linewidth is 1 GHz with R1 = R2 = 0.95, L = 6 mm, n = 1.8.
// See calibrate_excess_loss.
inline constexpr double default_excess_roundtrip = 0.70596095363876787;

struct CavityConfig {
    double length_m = 6e-3;
    double r1 = 0.95;  // intensity reflectivities
    double r2 = 0.95;
    double background_index = default_background_index;
    double excess_roundtrip = default_excess_roundtrip;  // intensity factor A per round trip
};

// Complex field transmission of the lossy dispersive etalon.
struct FieldTransfer {
    FrequencyGrid grid;
    std::vector<std::complex<double>> t;  // field transmission
    std::vector<double> T;                // |t|^2

    std::complex<double> at(double detuning_hz) const;  // linear interp, clamped
};

// t(nu) = sqrt((1-R1)(1-R2)A) e^{i phi - alpha L / 2}
//         / (1 - sqrt(R1 R2 A) e^{2 i phi - alpha L}),
// phi(nu) = 2 pi nu n(nu) L / c, n = background + delta_n.
FieldTransfer transfer(const CavityConfig& cfg, const std::vector<double>& alpha_samples,
                       const DispersionProfile& disp);

struct ModeRow {
    double center_hz = 0.0;  // detuning
    double fwhm_hz = 0.0;
    bool fwhm_bounded = true;  // false if a half-max crossing fell off the grid
    double peak_T = 0.0;
    double spacing_to_next_hz = 0.0;  // 0 for the last row
    std::int64_t mode_number = 0;
    double residual = 0.0;  // |2 L nu n / c - m|
};

struct ModeTable {
    std::vector<ModeRow> rows;
};

// Local maxima of T above min_peak_fraction * max(T). Centers refined by a
// quadratic through the 3 points around the maximum; FWHM by linear
// interpolation at the half-peak crossings. No peaks is an empty table.
ModeTable find_modes(const FieldTransfer& ft, double min_peak_fraction = 0.01);

// m = round(2 L nu n(nu) / c) with nu = carrier + detuning.
std::pair<std::int64_t, double> mode_number(double center_detuning_hz,
                                            const DispersionProfile& disp,
                                            const CavityConfig& cfg);

// Fill mode_number/residual for every row.
void assign_mode_numbers(ModeTable& table, const DispersionProfile& disp,
                         const CavityConfig& cfg);

// Non-dispersive FWHM of the cavity from the exact Airy half-width.
double airy_fwhm(const CavityConfig& cfg);

// Non-dispersive free spectral range c / (2 n L).
double free_spectral_range(const CavityConfig& cfg);

// Solve for the excess round-trip intensity factor A that makes the
// non-dispersive linewidth equal target_fwhm_hz.
double calibrate_excess_loss(double r1, double r2, double target_fwhm_hz,
                             double length_m, double background_index);

}  // namespace slowcav

#endif
