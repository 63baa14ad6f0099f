#ifndef SLOWCAV_ERRORS_HPP
#define SLOWCAV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace slowcav {

// Thrown when an operation precondition is violated (bad physical
// parameters, mismatched grids, undersampled pulses, ...).
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace slowcav

#endif
