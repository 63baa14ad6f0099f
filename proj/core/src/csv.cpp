#include "slowcav/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "slowcav/errors.hpp"

namespace slowcav {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void append_row(std::string& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out += ',';
        out += format_double(v);
        first = false;
    }
    out += '\n';
}

}  // namespace

std::string profile_csv(const FrequencyGrid& grid, const std::vector<double>& alpha) {
    std::string out = "detuning_Hz,alpha_per_m\n";
    for (std::size_t i = 0; i < alpha.size(); ++i)
        append_row(out, {grid.detuning(i), alpha[i]});
    return out;
}

std::string dispersion_csv(const DispersionProfile& disp) {
    std::string out = "detuning_Hz,delta_n,group_index\n";
    for (std::size_t i = 0; i < disp.delta_n.size(); ++i)
        append_row(out, {disp.grid.detuning(i), disp.delta_n[i], disp.group_index[i]});
    return out;
}

std::string spectrum_csv(const FieldTransfer& ft) {
    std::string out = "detuning_Hz,T,re_t,im_t\n";
    for (std::size_t i = 0; i < ft.t.size(); ++i)
        append_row(out, {ft.grid.detuning(i), ft.T[i], ft.t[i].real(), ft.t[i].imag()});
    return out;
}

std::string modes_csv(const ModeTable& table) {
    std::string out = "center_Hz,fwhm_Hz,peak_T,spacing_Hz,mode_number\n";
    for (const auto& row : table.rows) {
        out += format_double(row.center_hz);
        out += ',';
        out += row.fwhm_bounded ? format_double(row.fwhm_hz) : std::string();
        out += ',';
        out += format_double(row.peak_T);
        out += ',';
        out += format_double(row.spacing_to_next_hz);
        out += ',';
        out += std::to_string(row.mode_number);
        out += '\n';
    }
    return out;
}

std::string pulse_csv(const PulseEnvelope& pulse, bool normalize) {
    double scale = 1.0;
    if (normalize) {
        double imax = 0.0;
        for (const auto& f : pulse.field) imax = std::max(imax, std::norm(f));
        if (imax > 0.0) scale = 1.0 / std::sqrt(imax);
    }
    std::string out = "time_s,intensity,re_field,im_field\n";
    for (std::size_t i = 0; i < pulse.field.size(); ++i) {
        const auto f = pulse.field[i] * scale;
        append_row(out, {pulse.times_s[i], std::norm(f), f.real(), f.imag()});
    }
    return out;
}

std::string report_csv(const std::vector<SlowLightReport>& rows) {
    std::string out =
        "gamma_Hz,alpha_eff_per_m,v_g_eq5_mps,v_g_kk_mps,mode_spacing_Hz,linewidth_Hz,"
        "narrowing_factor,spacing_reduction_factor,tb_product\n";
    for (const auto& r : rows)
        append_row(out, {r.gamma_hz, r.alpha_eff_per_m, r.v_g_eq5_mps, r.v_g_kk_mps,
                         r.mode_spacing_hz, r.linewidth_hz, r.narrowing_factor,
                         r.spacing_reduction_factor, r.tb_product});
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace slowcav
