#ifndef SLOWCAV_SCENARIO_HPP
#define SLOWCAV_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "slowcav/cavity.hpp"
#include "slowcav/kk.hpp"
#include "slowcav/metrics.hpp"
#include "slowcav/profile.hpp"
#include "slowcav/pulse.hpp"

namespace slowcav {

struct GridSpec {
    double carrier_hz = default_carrier_hz;
    double span_hz = 0.0;
    std::size_t count = 0;
};

struct BackgroundSpec {
    BackgroundShape shape = BackgroundShape::flat;
    double peak_alpha_per_m = 0.0;
    double fwhm_hz = 0.0;  // unused for flat
};

struct ProfileSpec {
    BackgroundSpec background;
    std::vector<HoleSpec> holes;
};

struct PulseSpec {
    double fwhm_s = 0.0;
    double center_s = 0.0;
    double time_span_s = 0.0;
    std::size_t samples = 0;
};

struct ScenarioConfig {
    std::string name;
    std::string comment;
    GridSpec grid;
    ProfileSpec profile;
    CavityConfig cavity;
    // When set, excess_roundtrip is recalibrated so the non-dispersive
    // linewidth equals this value before the scenario runs.
    std::optional<double> calibrate_fwhm_hz;
    std::optional<PulseSpec> pulse;
    std::optional<std::vector<double>> sweep_gammas_hz;
    double min_peak_fraction = 0.01;
};

struct ValidationIssue {
    std::string field;
    std::string message;
    bool warning = false;  // warnings do not block a run
};

ScenarioConfig parse_config(const std::string& json_text);
std::string serialize_config(const ScenarioConfig& cfg);

// Every violated invariant, one issue each. Errors make the config
// unrunnable; warnings (e.g. a coarse grid) do not.
std::vector<ValidationIssue> validate_config(const ScenarioConfig& cfg);

// Everything a scenario computes, kept in memory so callers can inspect
// results without re-parsing the emitted files.
struct ScenarioResult {
    ScenarioConfig config;
    std::optional<FrequencyGrid> grid;
    std::vector<double> alpha;
    std::optional<DispersionProfile> dispersion;
    std::optional<FieldTransfer> field_transfer;
    ModeTable modes;
    std::optional<PulseEnvelope> pulse_in;
    std::optional<PulseEnvelope> pulse_out;
    std::optional<RingDown> ring_down;
    std::vector<SlowLightReport> sweep_rows;
};

// Validate and run the profile -> kk -> cavity -> modes chain, plus the
// optional pulse propagation and width sweep. Throws invalid_parameter on
// validation errors.
ScenarioResult run_pipeline(const ScenarioConfig& cfg);

enum class OutputFormat { csv, json };

// Write the scenario artifacts plus a manifest.json
// {scenario, config_hash, files[], wall_time_s} under out_dir.
// Returns the emitted file names (manifest included). `stage` restricts the
// output to one artifact group (profile, dispersion, spectrum, modes, pulse
// or sweep); "all" also writes the manifest.
std::vector<std::string> emit_outputs(const ScenarioResult& result,
                                      const std::string& out_dir,
                                      OutputFormat format = OutputFormat::csv,
                                      bool normalize = false,
                                      double wall_time_s = 0.0,
                                      const std::string& stage = "all");

// FNV-1a 64-bit over the canonical serialized config.
std::string config_hash(const ScenarioConfig& cfg);

// Locate a shipped scenario config by name: $SLOWCAV_SCENARIO_DIR, then
// ./scenarios, then the build-time default directory. Empty if not found.
std::string find_scenario_file(const std::string& name);

ScenarioConfig load_config_file(const std::string& path);

}  // namespace slowcav

#endif
