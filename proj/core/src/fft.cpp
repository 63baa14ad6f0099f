#include "slowcav/fft.hpp"

#include <fftw3.h>

#include "slowcav/errors.hpp"

namespace slowcav {

void fft(std::vector<std::complex<double>>& data, bool inverse) {
    if (data.empty()) throw invalid_parameter("fft: empty input");
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr,
                                      inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(data.size());
        for (auto& v : data) v *= scale;
    }
}

}  // namespace slowcav
