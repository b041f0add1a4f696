// Minimal iterative radix-2 FFT (power-of-two sizes, deterministic).
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace quasispec {

// In-place transform; inverse applies conjugate twiddles and divides by N.
// Twiddles come from a per-call cos/sin table (no accumulated recurrences).
// Throws std::invalid_argument unless a.size() is a power of two >= 1.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace quasispec
