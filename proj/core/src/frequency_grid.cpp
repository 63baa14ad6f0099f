#include "slowcav/frequency_grid.hpp"

#include <cmath>

#include "slowcav/errors.hpp"

namespace slowcav {

FrequencyGrid::FrequencyGrid(double carrier_hz, double span_hz, std::size_t count)
    : carrier_hz_(carrier_hz), count_(count) {
    if (carrier_hz <= 0.0)
        throw invalid_parameter("FrequencyGrid: carrier must be positive");
    if (count < 2 || count % 2 != 0)
        throw invalid_parameter("FrequencyGrid: count must be even and >= 2");
    if (!(span_hz > 0.0))
        throw invalid_parameter("FrequencyGrid: span must be positive");
    spacing_ = span_hz / static_cast<double>(count);
    first_ = -span_hz / 2.0;
    // Narrowband regime guard: detunings must stay small against the carrier.
    if (span_hz / 2.0 >= carrier_hz / 100.0)
        throw invalid_parameter("FrequencyGrid: max |detuning| must be < carrier/100");
}

std::vector<double> FrequencyGrid::detunings() const {
    std::vector<double> out(count_);
    for (std::size_t i = 0; i < count_; ++i) out[i] = detuning(i);
    return out;
}

bool FrequencyGrid::same_as(const FrequencyGrid& other) const {
    return carrier_hz_ == other.carrier_hz_ && first_ == other.first_ &&
           spacing_ == other.spacing_ && count_ == other.count_;
}

}  // namespace slowcav
