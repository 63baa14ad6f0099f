#include "slowcav/profile.hpp"

#include <algorithm>
#include <cmath>

#include "slowcav/errors.hpp"

namespace slowcav {

namespace {

// Square hole edges are represented as ramps of this fraction of the
// width so breakpoints stay strictly increasing.
constexpr double kSquareEdgeFraction = 1e-12;

double gaussian_alpha(double peak, double fwhm, double x) {
    const double k = 4.0 * std::log(2.0);
    return peak * std::exp(-k * x * x / (fwhm * fwhm));
}

}  // namespace

AbsorptionProfile::AbsorptionProfile(std::vector<double> breakpoints_hz,
                                     std::vector<double> alphas_per_m)
    : breakpoints_(std::move(breakpoints_hz)), alphas_(std::move(alphas_per_m)) {
    if (breakpoints_.size() < 2 || breakpoints_.size() != alphas_.size())
        throw invalid_parameter("AbsorptionProfile: need >= 2 matched breakpoints/alphas");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] > breakpoints_[i - 1]))
            throw invalid_parameter("AbsorptionProfile: breakpoints must be strictly increasing");
    for (double a : alphas_)
        if (!(a >= 0.0))
            throw invalid_parameter("AbsorptionProfile: alphas must be non-negative");
}

double AbsorptionProfile::operator()(double x) const {
    if (x <= breakpoints_.front()) return alphas_.front();
    if (x >= breakpoints_.back()) return alphas_.back();
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
    const double x0 = breakpoints_[i - 1], x1 = breakpoints_[i];
    const double f = (x - x0) / (x1 - x0);
    return alphas_[i - 1] + f * (alphas_[i] - alphas_[i - 1]);
}

std::vector<double> AbsorptionProfile::sample(const FrequencyGrid& grid) const {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = (*this)(grid.detuning(i));
    return out;
}

double AbsorptionProfile::min_over(double lo, double hi) const {
    double m = std::min((*this)(lo), (*this)(hi));
    for (std::size_t i = 0; i < breakpoints_.size(); ++i)
        if (breakpoints_[i] > lo && breakpoints_[i] < hi) m = std::min(m, alphas_[i]);
    return m;
}

AbsorptionProfile build_background(BackgroundShape shape, double peak_alpha_per_m,
                                   double fwhm_hz, double grid_span_hz) {
    if (!(peak_alpha_per_m >= 0.0))
        throw invalid_parameter("build_background: peak_alpha must be >= 0");
    if (!(grid_span_hz > 0.0))
        throw invalid_parameter("build_background: grid_span must be positive");
    const double half = grid_span_hz / 2.0;

    if (shape == BackgroundShape::flat)
        return AbsorptionProfile({-half, half}, {peak_alpha_per_m, peak_alpha_per_m});

    if (!(fwhm_hz > 0.0))
        throw invalid_parameter("build_background: gaussian fwhm must be positive");

    // Curvature-graded breakpoints, dense through the line core, coarse in
    // the wings. The densest step fwhm/64 keeps the interpolation error
    // below 0.1% of the peak; fwhm/2 is always an exact breakpoint.
    const double w = fwhm_hz;
    std::vector<double> pos;  // positive half-axis, ascending, excluding 0
    double x = 0.0;
    auto march = [&](double limit, double step) {
        while (x < limit - step / 2 && x < half) {
            x += step;
            pos.push_back(std::min(x, half));
        }
    };
    march(std::min(w, half), w / 64.0);
    march(std::min(2.0 * w, half), w / 20.0);
    march(std::min(3.0 * w, half), w / 4.0);
    if (pos.empty() || pos.back() < half) pos.push_back(half);

    std::vector<double> bp, av;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) bp.push_back(-*it);
    bp.push_back(0.0);
    for (double p : pos) bp.push_back(p);
    av.reserve(bp.size());
    for (double b : bp) av.push_back(gaussian_alpha(peak_alpha_per_m, w, b));
    return AbsorptionProfile(std::move(bp), std::move(av));
}

AbsorptionProfile burn_hole(const AbsorptionProfile& profile, const HoleSpec& hole) {
    if (!(hole.width_hz > 0.0))
        throw invalid_parameter("hole.width must be positive");
    if (!(hole.residual_per_m >= 0.0))
        throw invalid_parameter("hole.residual must be >= 0");
    if (!(hole.edge_ramp_hz >= 0.0) || hole.edge_ramp_hz > hole.width_hz / 2.0)
        throw invalid_parameter("hole.edge_ramp must be in [0, width/2]");

    const double lo = hole.center_hz - hole.width_hz / 2.0;
    const double hi = hole.center_hz + hole.width_hz / 2.0;
    if (lo < profile.breakpoints().front() || hi > profile.breakpoints().back())
        throw invalid_parameter("hole window must lie within the profile span");
    if (hole.residual_per_m > profile.min_over(lo, hi))
        throw invalid_parameter("hole.residual exceeds the local background");

    double ramp = hole.edge_ramp_hz;
    if (ramp == 0.0) ramp = hole.width_hz * kSquareEdgeFraction;

    std::vector<double> bp, av;
    const auto& obp = profile.breakpoints();
    const auto& oav = profile.alphas();
    for (std::size_t i = 0; i < obp.size() && obp[i] < lo; ++i) {
        bp.push_back(obp[i]);
        av.push_back(oav[i]);
    }
    bp.push_back(lo);
    av.push_back(profile(lo));
    bp.push_back(lo + ramp);
    av.push_back(hole.residual_per_m);
    bp.push_back(hi - ramp);
    av.push_back(hole.residual_per_m);
    bp.push_back(hi);
    av.push_back(profile(hi));
    for (std::size_t i = 0; i < obp.size(); ++i) {
        if (obp[i] > hi) {
            bp.push_back(obp[i]);
            av.push_back(oav[i]);
        }
    }
    return AbsorptionProfile(std::move(bp), std::move(av));
}

}  // namespace slowcav
