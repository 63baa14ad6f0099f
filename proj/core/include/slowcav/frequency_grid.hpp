#ifndef SLOWCAV_FREQUENCY_GRID_HPP
#define SLOWCAV_FREQUENCY_GRID_HPP

#include <cstddef>
#include <vector>

namespace slowcav {

inline constexpr double speed_of_light = 299792458.0;  // m/s

// Vacuum wavelength 605.976 nm, the working transition of the cavity crystal.
inline constexpr double default_carrier_hz = speed_of_light / 605.976e-9;

// Uniform detuning axis relative to an absolute optical carrier.
// The axis is centred on zero detuning; with an even count the point at
// index count/2 sits exactly at detuning 0.
class FrequencyGrid {
public:
    FrequencyGrid(double carrier_hz, double span_hz, std::size_t count);

    double carrier() const { return carrier_hz_; }
    double span() const { return spacing_ * static_cast<double>(count_); }
    double spacing() const { return spacing_; }
    std::size_t size() const { return count_; }

    double detuning(std::size_t i) const {
        return first_ + spacing_ * static_cast<double>(i);
    }
    double min_detuning() const { return first_; }
    double max_detuning() const { return detuning(count_ - 1); }

    // Absolute optical frequency at sample i.
    double frequency(std::size_t i) const { return carrier_hz_ + detuning(i); }

    std::vector<double> detunings() const;

    bool same_as(const FrequencyGrid& other) const;

private:
    double carrier_hz_;
    double first_;
    double spacing_;
    std::size_t count_;
};

}  // namespace slowcav

#endif
