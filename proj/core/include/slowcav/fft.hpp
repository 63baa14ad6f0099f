#ifndef SLOWCAV_FFT_HPP
#define SLOWCAV_FFT_HPP

#include <complex>
#include <vector>

namespace slowcav {

// In-place DFT (FFTW backend, any length). The inverse is normalized by
// 1/N so forward followed by inverse is the identity.
void fft(std::vector<std::complex<double>>& data, bool inverse);

}  // namespace slowcav

#endif
