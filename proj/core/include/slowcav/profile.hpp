#ifndef SLOWCAV_PROFILE_HPP
#define SLOWCAV_PROFILE_HPP

#include <cstddef>
#include <vector>

#include "slowcav/frequency_grid.hpp"

namespace slowcav {

// A burned spectral transmission window. Inside
// [center - width/2 + edge_ramp, center + width/2 - edge_ramp] the
// absorption is `residual`; linear ramps of width `edge_ramp` connect to
// the surrounding profile. edge_ramp == 0 means square edges.
struct HoleSpec {
    double center_hz = 0.0;
    double width_hz = 0.0;
    double residual_per_m = 0.0;
    double edge_ramp_hz = 0.0;
};

// Piecewise-linear intensity absorption coefficient alpha(detuning).
// Constant extrapolation of the end values outside the breakpoint span.
// The parametric representation is exact, which is what allows the
// closed-form Kramers-Kronig path downstream.
class AbsorptionProfile {
public:
    AbsorptionProfile(std::vector<double> breakpoints_hz,
                      std::vector<double> alphas_per_m);

    double operator()(double detuning_hz) const;

    std::vector<double> sample(const FrequencyGrid& grid) const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& alphas() const { return alphas_; }

    // Minimum of the profile over [lo, hi] (checks breakpoints and ends).
    double min_over(double lo_hz, double hi_hz) const;

private:
    std::vector<double> breakpoints_;
    std::vector<double> alphas_;
};

enum class BackgroundShape { flat, gaussian };

// Inhomogeneous background line. `flat` ignores fwhm; `gaussian` produces
// a piecewise-linear approximation whose interpolation error stays below
// 0.1% of peak_alpha, with breakpoints placed by local curvature.
AbsorptionProfile build_background(BackgroundShape shape, double peak_alpha_per_m,
                                   double fwhm_hz, double grid_span_hz);

// Burn a transmission window into `profile`. Holes only remove absorption:
// a residual above the local background is an error. Idempotent for the
// same hole.
AbsorptionProfile burn_hole(const AbsorptionProfile& profile, const HoleSpec& hole);

}  // namespace slowcav

#endif
