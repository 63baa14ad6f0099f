#include "slowcav/kk.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "slowcav/errors.hpp"
#include "slowcav/fft.hpp"

namespace slowcav {

namespace {

constexpr double pi = std::numbers::pi;

double interp_at(const FrequencyGrid& grid, const std::vector<double>& values,
                 double detuning_hz) {
    const double pos = (detuning_hz - grid.min_detuning()) / grid.spacing();
    if (pos <= 0.0) return values.front();
    if (pos >= static_cast<double>(values.size() - 1)) return values.back();
    const std::size_t i = static_cast<std::size_t>(pos);
    const double f = pos - static_cast<double>(i);
    return values[i] + f * (values[i + 1] - values[i]);
}

}  // namespace

double DispersionProfile::delta_n_at(double detuning_hz) const {
    return interp_at(grid, delta_n, detuning_hz);
}

double DispersionProfile::group_index_at(double detuning_hz) const {
    return interp_at(grid, group_index, detuning_hz);
}

// The principal-value integral of a piecewise-linear profile collapses to
//   F(nu) = (a_n - a_0) - sum_k J_k + sum_k [c_k (nu - b_k) - J_k] ln|nu - b_k|,
// where c_k is the slope change at node k and J_k the jump there (the
// constant tails beyond the end breakpoints cancel against the boundary
// log terms). Its derivative is sum_k [c_k (ln|nu - b_k| + 1) - J_k/(nu - b_k)].
// Segments far narrower than the profile span are collapsed into exact
// jump terms: evaluating them as ramps would cancel two huge log terms
// against each other and lose most of the significant digits.
DispersionProfile kk_analytic(const AbsorptionProfile& profile, const FrequencyGrid& grid,
                              double background_index) {
    const auto& b = profile.breakpoints();
    const auto& a = profile.alphas();
    const std::size_t n = b.size();

    // Reduced polyline: nodes with a left and a right value. A segment of
    // width < 1e-7 of the span becomes a jump at its midpoint.
    const double jump_eps = 1e-7 * (b.back() - b.front());
    std::vector<double> pos, a_left, a_right;
    pos.reserve(n);
    a_left.reserve(n);
    a_right.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n && b[i + 1] - b[i] < jump_eps) {
            pos.push_back(0.5 * (b[i] + b[i + 1]));
            a_left.push_back(a[i]);
            a_right.push_back(a[i + 1]);
            ++i;
        } else {
            pos.push_back(b[i]);
            a_left.push_back(a[i]);
            a_right.push_back(a[i]);
        }
    }

    const std::size_t m = pos.size();
    std::vector<double> slope(m > 1 ? m - 1 : 0);
    for (std::size_t i = 0; i + 1 < m; ++i)
        slope[i] = (a_left[i + 1] - a_right[i]) / (pos[i + 1] - pos[i]);

    // Per-node slope change c and jump J; all-zero nodes contribute nothing.
    std::vector<double> bj, cj, jj;
    double jump_sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double prev = (k == 0) ? 0.0 : slope[k - 1];
        const double next = (k == m - 1) ? 0.0 : slope[k];
        const double c = prev - next;
        const double jmp = a_right[k] - a_left[k];
        jump_sum += jmp;
        if (c != 0.0 || jmp != 0.0) {
            bj.push_back(pos[k]);
            cj.push_back(c);
            jj.push_back(jmp);
        }
    }

    const double scale = speed_of_light / (4.0 * pi * pi * grid.carrier());
    const double f0 = (a.back() - a.front()) - jump_sum;
    const double tiny = 1e-6 * grid.spacing();  // clamp at exact node positions

    DispersionProfile out{grid, std::vector<double>(grid.size()),
                          std::vector<double>(grid.size()), background_index};
    const std::size_t nt = bj.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double nu = grid.detuning(i);
        double f = f0;
        double fp = 0.0;
        for (std::size_t j = 0; j < nt; ++j) {
            const double x = nu - bj[j];
            const double ax = std::abs(x);
            const double lg = std::log(std::max(ax, tiny));
            if (ax > tiny) f += cj[j] * x * lg;
            f -= jj[j] * lg;
            fp += cj[j] * (lg + 1.0);
            fp -= jj[j] / ((x >= 0.0) ? std::max(x, tiny) : std::min(x, -tiny));
        }
        const double dn = scale * f;
        out.delta_n[i] = dn;
        out.group_index[i] = background_index + dn + grid.frequency(i) * scale * fp;
    }
    return out;
}

DispersionProfile kk_numeric(const std::vector<double>& alpha_samples,
                             const FrequencyGrid& grid, double background_index) {
    const std::size_t n = grid.size();
    if (alpha_samples.size() != n)
        throw invalid_parameter("kk_numeric: samples do not match the grid");

    const double edge = 0.5 * (alpha_samples.front() + alpha_samples.back());
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = alpha_samples[i] - edge;

    // Raised-cosine taper over the outer 1/16 of the window so leftover
    // edge structure does not wrap through the padding.
    const std::size_t nt = std::max<std::size_t>(2, n / 16);
    for (std::size_t i = 0; i < nt; ++i) {
        const double w =
            0.5 * (1.0 - std::cos(pi * static_cast<double>(i) / static_cast<double>(nt)));
        dev[i] *= w;
        dev[n - 1 - i] *= w;
    }

    std::size_t padded = 1;
    while (padded < 4 * n) padded <<= 1;
    const std::size_t offset = (padded - n) / 2;

    std::vector<std::complex<double>> buf(padded, 0.0);
    for (std::size_t i = 0; i < n; ++i) buf[offset + i] = dev[i];

    fft(buf, false);
    buf[0] = 0.0;
    buf[padded / 2] = 0.0;
    const std::complex<double> neg_i(0.0, -1.0), pos_i(0.0, 1.0);
    for (std::size_t k = 1; k < padded / 2; ++k) buf[k] *= neg_i;
    for (std::size_t k = padded / 2 + 1; k < padded; ++k) buf[k] *= pos_i;
    fft(buf, true);

    // The discrete multiplier convolves with the periodized 1/x kernel.
    // Remove the image contributions to zeroth order in the signal moments:
    //   err(x) = (M / pi) * [pi cot(pi x / P) / P - 1 / x],
    // with M the integral of the deviation and P the padded span.
    double moment = 0.0;
    for (double v : dev) moment += v;
    moment *= grid.spacing();
    const double period = static_cast<double>(padded) * grid.spacing();

    const double scale = -speed_of_light / (4.0 * pi * grid.carrier());
    DispersionProfile out{grid, std::vector<double>(n), {}, background_index};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.detuning(i);
        const double u = pi * x / period;
        const double images =
            (std::abs(u) < 1e-4)
                ? -(pi / period) * (pi / period) * x / 3.0
                : pi / (period * std::tan(u)) - 1.0 / x;
        out.delta_n[i] = scale * (buf[offset + i].real() - moment / pi * images);
    }
    out.group_index = group_index(out);
    return out;
}

std::vector<double> group_index(const DispersionProfile& disp) {
    const std::size_t n = disp.delta_n.size();
    if (n < 3) throw invalid_parameter("group_index: need >= 3 grid points");
    const double h = disp.grid.spacing();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double deriv;
        if (i == 0)
            deriv = (disp.delta_n[1] - disp.delta_n[0]) / h;
        else if (i == n - 1)
            deriv = (disp.delta_n[n - 1] - disp.delta_n[n - 2]) / h;
        else
            deriv = (disp.delta_n[i + 1] - disp.delta_n[i - 1]) / (2.0 * h);
        out[i] = disp.background_index + disp.delta_n[i] + disp.grid.frequency(i) * deriv;
    }
    return out;
}

}  // namespace slowcav
