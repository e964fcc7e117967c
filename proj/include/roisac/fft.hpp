#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace roisac::fft {

using cvec = std::vector<std::complex<double>>;

std::size_t next_pow2(std::size_t n);

// In-place radix-2 transform. Size must be a power of two.
// Forward applies no scaling; inverse scales by 1/N.
void transform(cvec& a, bool inverse);

// Forward transform of a real sequence zero-padded to length n (power of two).
cvec forward_real(std::span<const double> x, std::size_t n);

// Inverse transform, returning the real parts.
std::vector<double> inverse_real(cvec spec);

} // namespace roisac::fft
