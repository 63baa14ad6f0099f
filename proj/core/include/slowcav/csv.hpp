#ifndef SLOWCAV_CSV_HPP
#define SLOWCAV_CSV_HPP

#include <string>
#include <vector>

#include "slowcav/cavity.hpp"
#include "slowcav/kk.hpp"
#include "slowcav/metrics.hpp"
#include "slowcav/profile.hpp"
#include "slowcav/pulse.hpp"

namespace slowcav {

// All writers format numbers with "%.17g" so reruns are byte-identical.
std::string format_double(double v);

std::string profile_csv(const FrequencyGrid& grid, const std::vector<double>& alpha);
std::string dispersion_csv(const DispersionProfile& disp);
std::string spectrum_csv(const FieldTransfer& ft);
std::string modes_csv(const ModeTable& table);
std::string pulse_csv(const PulseEnvelope& pulse, bool normalize);
std::string report_csv(const std::vector<SlowLightReport>& rows);

void write_file(const std::string& path, const std::string& contents);

}  // namespace slowcav

#endif
