#include "slowcav/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "slowcav/csv.hpp"
#include "slowcav/errors.hpp"

#ifndef SLOWCAV_SCENARIO_DIR
#define SLOWCAV_SCENARIO_DIR ""
#endif

namespace slowcav {

using nlohmann::json;

namespace {

std::string shape_name(BackgroundShape s) {
    return s == BackgroundShape::flat ? "flat" : "gaussian";
}

BackgroundShape shape_from(const std::string& s) {
    if (s == "flat") return BackgroundShape::flat;
    if (s == "gaussian") return BackgroundShape::gaussian;
    throw invalid_parameter("profile.background.shape must be 'flat' or 'gaussian'");
}

json to_json(const ScenarioConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    if (!cfg.comment.empty()) j["comment"] = cfg.comment;
    j["grid"] = {{"carrier_hz", cfg.grid.carrier_hz},
                 {"span_hz", cfg.grid.span_hz},
                 {"count", cfg.grid.count}};
    json holes = json::array();
    for (const auto& h : cfg.profile.holes)
        holes.push_back({{"center_hz", h.center_hz},
                         {"width_hz", h.width_hz},
                         {"residual_per_m", h.residual_per_m},
                         {"edge_ramp_hz", h.edge_ramp_hz}});
    j["profile"] = {{"background",
                     {{"shape", shape_name(cfg.profile.background.shape)},
                      {"peak_alpha_per_m", cfg.profile.background.peak_alpha_per_m},
                      {"fwhm_hz", cfg.profile.background.fwhm_hz}}},
                    {"holes", holes}};
    j["cavity"] = {{"length_m", cfg.cavity.length_m},
                   {"r1", cfg.cavity.r1},
                   {"r2", cfg.cavity.r2},
                   {"background_index", cfg.cavity.background_index},
                   {"excess_roundtrip", cfg.cavity.excess_roundtrip}};
    if (cfg.calibrate_fwhm_hz) j["cavity"]["calibrate_fwhm_hz"] = *cfg.calibrate_fwhm_hz;
    if (cfg.pulse)
        j["pulse"] = {{"fwhm_s", cfg.pulse->fwhm_s},
                      {"center_s", cfg.pulse->center_s},
                      {"time_span_s", cfg.pulse->time_span_s},
                      {"samples", cfg.pulse->samples}};
    if (cfg.sweep_gammas_hz) j["sweep"] = {{"gammas_hz", *cfg.sweep_gammas_hz}};
    j["min_peak_fraction"] = cfg.min_peak_fraction;
    return j;
}

ScenarioConfig from_json(const json& j) {
    ScenarioConfig cfg;
    cfg.name = j.value("name", std::string{});
    cfg.comment = j.value("comment", std::string{});
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        cfg.grid.carrier_hz = g.value("carrier_hz", default_carrier_hz);
        cfg.grid.span_hz = g.value("span_hz", 0.0);
        cfg.grid.count = g.value("count", std::size_t{0});
    }
    if (j.contains("profile")) {
        const auto& p = j.at("profile");
        if (p.contains("background")) {
            const auto& b = p.at("background");
            cfg.profile.background.shape = shape_from(b.value("shape", std::string("flat")));
            cfg.profile.background.peak_alpha_per_m = b.value("peak_alpha_per_m", 0.0);
            cfg.profile.background.fwhm_hz = b.value("fwhm_hz", 0.0);
        }
        for (const auto& h : p.value("holes", json::array()))
            cfg.profile.holes.push_back(HoleSpec{h.value("center_hz", 0.0),
                                                 h.value("width_hz", 0.0),
                                                 h.value("residual_per_m", 0.0),
                                                 h.value("edge_ramp_hz", 0.0)});
    }
    if (j.contains("cavity")) {
        const auto& c = j.at("cavity");
        cfg.cavity.length_m = c.value("length_m", 6e-3);
        cfg.cavity.r1 = c.value("r1", 0.95);
        cfg.cavity.r2 = c.value("r2", 0.95);
        cfg.cavity.background_index = c.value("background_index", default_background_index);
        cfg.cavity.excess_roundtrip = c.value("excess_roundtrip", default_excess_roundtrip);
        if (c.contains("calibrate_fwhm_hz"))
            cfg.calibrate_fwhm_hz = c.at("calibrate_fwhm_hz").get<double>();
    }
    if (j.contains("pulse")) {
        const auto& p = j.at("pulse");
        cfg.pulse = PulseSpec{p.value("fwhm_s", 0.0), p.value("center_s", 0.0),
                              p.value("time_span_s", 0.0), p.value("samples", std::size_t{0})};
    }
    if (j.contains("sweep"))
        cfg.sweep_gammas_hz = j.at("sweep").value("gammas_hz", std::vector<double>{});
    cfg.min_peak_fraction = j.value("min_peak_fraction", 0.01);
    return cfg;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config parse error: ") + e.what());
    }
    return from_json(j);
}

std::string serialize_config(const ScenarioConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

std::vector<ValidationIssue> validate_config(const ScenarioConfig& cfg) {
    std::vector<ValidationIssue> issues;
    auto err = [&](const std::string& field, const std::string& msg) {
        issues.push_back({field, msg, false});
    };
    auto warn = [&](const std::string& field, const std::string& msg) {
        issues.push_back({field, msg, true});
    };

    if (!(cfg.grid.carrier_hz > 0.0)) err("grid.carrier_hz", "carrier must be positive");
    if (!(cfg.grid.span_hz > 0.0)) err("grid.span_hz", "span must be positive");
    if (cfg.grid.count < 2 || cfg.grid.count % 2 != 0)
        err("grid.count", "count must be even and >= 2");
    if (cfg.grid.carrier_hz > 0.0 && cfg.grid.span_hz / 2.0 >= cfg.grid.carrier_hz / 100.0)
        err("grid.span_hz", "max |detuning| must be < carrier/100");

    const auto& bg = cfg.profile.background;
    if (!(bg.peak_alpha_per_m >= 0.0))
        err("profile.background.peak_alpha_per_m", "peak alpha must be >= 0");
    if (bg.shape == BackgroundShape::gaussian && !(bg.fwhm_hz > 0.0))
        err("profile.background.fwhm_hz", "gaussian fwhm must be positive");

    for (std::size_t i = 0; i < cfg.profile.holes.size(); ++i) {
        const auto& h = cfg.profile.holes[i];
        const std::string field = "profile.holes[" + std::to_string(i) + "]";
        if (!(h.width_hz > 0.0)) err(field + ".width_hz", "hole.width must be positive");
        if (!(h.residual_per_m >= 0.0))
            err(field + ".residual_per_m", "hole.residual must be >= 0");
        if (h.width_hz > 0.0 &&
            (!(h.edge_ramp_hz >= 0.0) || h.edge_ramp_hz > h.width_hz / 2.0))
            err(field + ".edge_ramp_hz", "hole.edge_ramp must be in [0, width/2]");
        if (cfg.grid.span_hz > 0.0 && h.width_hz > 0.0 &&
            (std::abs(h.center_hz) + h.width_hz / 2.0 > cfg.grid.span_hz / 2.0))
            err(field, "hole window must lie within the grid span");
    }

    const auto& c = cfg.cavity;
    if (!(c.length_m > 0.0)) err("cavity.length_m", "length must be positive");
    if (!(c.r1 > 0.0 && c.r1 < 1.0)) err("cavity.r1", "reflectivity must be in (0, 1)");
    if (!(c.r2 > 0.0 && c.r2 < 1.0)) err("cavity.r2", "reflectivity must be in (0, 1)");
    if (!(c.background_index > 0.0))
        err("cavity.background_index", "background index must be positive");
    if (!(c.excess_roundtrip > 0.0 && c.excess_roundtrip <= 1.0))
        err("cavity.excess_roundtrip", "excess loss must be in (0, 1]");
    if (cfg.calibrate_fwhm_hz && !(*cfg.calibrate_fwhm_hz > 0.0))
        err("cavity.calibrate_fwhm_hz", "calibration target must be positive");

    if (cfg.pulse) {
        const auto& p = *cfg.pulse;
        if (!(p.fwhm_s > 0.0)) err("pulse.fwhm_s", "fwhm must be positive");
        if (p.fwhm_s > 0.0 && !(p.time_span_s >= 10.0 * p.fwhm_s))
            err("pulse.time_span_s", "span must be >= 10x fwhm");
        if (p.samples == 0)
            err("pulse.samples", "samples must be positive");
        else if (p.fwhm_s > 0.0 && p.time_span_s > 0.0 &&
                 p.fwhm_s / (p.time_span_s / static_cast<double>(p.samples)) < 16.0)
            err("pulse.samples", "undersampled, need >= 16 samples per fwhm");
    }
    if (cfg.sweep_gammas_hz)
        for (double g : *cfg.sweep_gammas_hz)
            if (!(g > 0.0)) err("sweep.gammas_hz", "sweep widths must be positive");

    if (!(cfg.min_peak_fraction > 0.0 && cfg.min_peak_fraction < 1.0))
        err("min_peak_fraction", "peak threshold must be in (0, 1)");

    // Resolution policy: warn when the grid cannot resolve the narrowest
    // expected linewidth with ~10 points.
    if (issues.empty() && cfg.grid.count > 0) {
        const double resolution = cfg.grid.span_hz / static_cast<double>(cfg.grid.count);
        const double fwhm_fraction = airy_fwhm(cfg.cavity) / free_spectral_range(cfg.cavity);
        double narrowest = airy_fwhm(cfg.cavity);
        for (const auto& h : cfg.profile.holes) {
            const double alpha_out = cfg.profile.background.peak_alpha_per_m;
            if (alpha_out <= 0.0) continue;
            const double n_g = speed_of_light * alpha_out / (9.8696044 * h.width_hz);
            const double spacing =
                speed_of_light / (2.0 * cfg.cavity.length_m * std::max(n_g, 1.0));
            narrowest = std::min(narrowest, spacing * fwhm_fraction);
        }
        if (resolution > narrowest / 10.0)
            warn("grid.count", "grid resolution coarser than expected linewidth/10");
    }
    return issues;
}

ScenarioResult run_pipeline(const ScenarioConfig& input_cfg) {
    const auto issues = validate_config(input_cfg);
    std::string msgs;
    for (const auto& i : issues)
        if (!i.warning) msgs += i.field + ": " + i.message + "; ";
    if (!msgs.empty()) throw invalid_parameter("invalid config: " + msgs);

    ScenarioResult res;
    res.config = input_cfg;
    auto& cfg = res.config;
    if (cfg.calibrate_fwhm_hz)
        cfg.cavity.excess_roundtrip =
            calibrate_excess_loss(cfg.cavity.r1, cfg.cavity.r2, *cfg.calibrate_fwhm_hz,
                                  cfg.cavity.length_m, cfg.cavity.background_index);

    FrequencyGrid grid(cfg.grid.carrier_hz, cfg.grid.span_hz, cfg.grid.count);
    res.grid = grid;

    auto profile = build_background(cfg.profile.background.shape,
                                    cfg.profile.background.peak_alpha_per_m,
                                    cfg.profile.background.fwhm_hz, cfg.grid.span_hz);
    for (const auto& h : cfg.profile.holes) profile = burn_hole(profile, h);
    res.alpha = profile.sample(grid);

    res.dispersion = kk_analytic(profile, grid, cfg.cavity.background_index);
    res.field_transfer = transfer(cfg.cavity, res.alpha, *res.dispersion);
    res.modes = find_modes(*res.field_transfer, cfg.min_peak_fraction);
    assign_mode_numbers(res.modes, *res.dispersion, cfg.cavity);

    if (cfg.pulse) {
        res.pulse_in = gaussian_pulse(cfg.pulse->fwhm_s, cfg.pulse->center_s,
                                      cfg.pulse->time_span_s, cfg.pulse->samples);
        res.pulse_out = propagate(*res.pulse_in, *res.field_transfer);
        res.ring_down = ring_down_metrics(*res.pulse_out);
    }

    if (cfg.sweep_gammas_hz) {
        SweepConfig sweep;
        sweep.background_alpha_per_m = cfg.profile.background.peak_alpha_per_m;
        sweep.cavity = cfg.cavity;
        sweep.min_peak_fraction = cfg.min_peak_fraction;
        if (!cfg.profile.holes.empty()) {
            const auto& h = cfg.profile.holes.front();
            sweep.residual_per_m = h.residual_per_m;
            sweep.edge_ramp_fraction = h.edge_ramp_hz / h.width_hz;
        }
        res.sweep_rows = tuning_sweep(sweep, *cfg.sweep_gammas_hz);
    }
    return res;
}

std::string config_hash(const ScenarioConfig& cfg) {
    const std::string s = serialize_config(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

json pulse_json(const PulseEnvelope& p, bool normalize) {
    double scale = 1.0;
    if (normalize) {
        double imax = 0.0;
        for (const auto& f : p.field) imax = std::max(imax, std::norm(f));
        if (imax > 0.0) scale = 1.0 / std::sqrt(imax);
    }
    json j;
    j["time_s"] = p.times_s;
    std::vector<double> in(p.field.size()), re(p.field.size()), im(p.field.size());
    for (std::size_t i = 0; i < p.field.size(); ++i) {
        const auto f = p.field[i] * scale;
        in[i] = std::norm(f);
        re[i] = f.real();
        im[i] = f.imag();
    }
    j["intensity"] = in;
    j["re_field"] = re;
    j["im_field"] = im;
    return j;
}

}  // namespace

std::vector<std::string> emit_outputs(const ScenarioResult& res, const std::string& out_dir,
                                      OutputFormat format, bool normalize,
                                      double wall_time_s, const std::string& stage) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> files;
    const bool all = stage == "all";
    auto want = [&](const char* s) { return all || stage == s; };
    const bool csv = format == OutputFormat::csv;
    auto emit = [&](const std::string& stem, const std::string& csv_text,
                    const json& json_doc) {
        const std::string name = stem + (csv ? ".csv" : ".json");
        write_file((fs::path(out_dir) / name).string(),
                   csv ? csv_text : json_doc.dump(2) + "\n");
        files.push_back(name);
    };

    const auto& grid = *res.grid;
    if (want("profile")) {
        json j;
        j["detuning_Hz"] = grid.detunings();
        j["alpha_per_m"] = res.alpha;
        emit("profile", profile_csv(grid, res.alpha), j);
    }
    if (want("dispersion") && res.dispersion) {
        json j;
        j["detuning_Hz"] = grid.detunings();
        j["delta_n"] = res.dispersion->delta_n;
        j["group_index"] = res.dispersion->group_index;
        emit("dispersion", dispersion_csv(*res.dispersion), j);
    }
    if (want("spectrum") && res.field_transfer) {
        json j;
        j["detuning_Hz"] = grid.detunings();
        j["T"] = res.field_transfer->T;
        std::vector<double> re(res.field_transfer->t.size()), im(res.field_transfer->t.size());
        for (std::size_t i = 0; i < re.size(); ++i) {
            re[i] = res.field_transfer->t[i].real();
            im[i] = res.field_transfer->t[i].imag();
        }
        j["re_t"] = re;
        j["im_t"] = im;
        emit("spectrum", spectrum_csv(*res.field_transfer), j);
    }
    if (want("modes")) {
        json j = json::array();
        for (const auto& r : res.modes.rows) {
            json row = {{"center_Hz", r.center_hz},
                        {"peak_T", r.peak_T},
                        {"spacing_Hz", r.spacing_to_next_hz},
                        {"mode_number", r.mode_number},
                        {"residual", r.residual}};
            if (r.fwhm_bounded) row["fwhm_Hz"] = r.fwhm_hz;
            j.push_back(row);
        }
        emit("modes", modes_csv(res.modes), j);
    }
    if (want("pulse") && res.pulse_in && res.pulse_out) {
        emit("pulse_input", pulse_csv(*res.pulse_in, normalize),
             pulse_json(*res.pulse_in, normalize));
        emit("pulse_output", pulse_csv(*res.pulse_out, normalize),
             pulse_json(*res.pulse_out, normalize));
        if (res.ring_down && res.ring_down->found) {
            json j = {{"peak_times_s", res.ring_down->peak_times_s},
                      {"period_s", res.ring_down->period_s},
                      {"amplitude_ratio", res.ring_down->amplitude_ratio}};
            write_file((fs::path(out_dir) / "ringdown.json").string(), j.dump(2) + "\n");
            files.push_back("ringdown.json");
        }
    }
    if (want("sweep") && !res.sweep_rows.empty()) {
        json j = json::array();
        for (const auto& r : res.sweep_rows)
            j.push_back({{"gamma_Hz", r.gamma_hz},
                         {"alpha_eff_per_m", r.alpha_eff_per_m},
                         {"v_g_eq5_mps", r.v_g_eq5_mps},
                         {"v_g_kk_mps", r.v_g_kk_mps},
                         {"mode_spacing_Hz", r.mode_spacing_hz},
                         {"linewidth_Hz", r.linewidth_hz},
                         {"narrowing_factor", r.narrowing_factor},
                         {"spacing_reduction_factor", r.spacing_reduction_factor},
                         {"tb_product", r.tb_product}});
        emit("report", report_csv(res.sweep_rows), j);
        if (csv) {
            // The sweep report also ships as JSON for downstream plotting.
            write_file((fs::path(out_dir) / "report.json").string(), j.dump(2) + "\n");
            files.push_back("report.json");
        }
    }

    if (!all) return files;

    json manifest = {{"scenario", res.config.name},
                     {"config_hash", config_hash(res.config)},
                     {"files", files},
                     {"wall_time_s", wall_time_s}};
    write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    files.push_back("manifest.json");
    return files;
}

std::string find_scenario_file(const std::string& name) {
    namespace fs = std::filesystem;
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("SLOWCAV_SCENARIO_DIR")) dirs.emplace_back(env);
    dirs.emplace_back("scenarios");
    if (std::string dir = SLOWCAV_SCENARIO_DIR; !dir.empty()) dirs.emplace_back(dir);
    for (const auto& d : dirs) {
        const fs::path p = d / (name + ".json");
        std::error_code ec;
        if (fs::exists(p, ec)) return p.string();
    }
    return {};
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

}  // namespace slowcav
