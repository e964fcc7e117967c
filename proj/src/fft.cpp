#include "roisac/fft.hpp"

#include <cmath>
#include <stdexcept>

#include "roisac/constants.hpp"

namespace roisac::fft {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void transform(cvec& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("fft: size must be a nonzero power of two");
  }
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const std::complex<double> wm = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        // Resync the twiddle recurrence periodically to stop drift.
        if ((k & 63u) == 0) {
          w = std::polar(1.0, ang * static_cast<double>(k));
        }
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wm;
      }
    }
  }
  if (inverse) {
    const double s = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= s;
  }
}

cvec forward_real(std::span<const double> x, std::size_t n) {
  cvec a(n);
  const std::size_t m = x.size() < n ? x.size() : n;
  for (std::size_t i = 0; i < m; ++i) a[i] = x[i];
  transform(a, false);
  return a;
}

std::vector<double> inverse_real(cvec spec) {
  transform(spec, true);
  std::vector<double> out(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) out[i] = spec[i].real();
  return out;
}

} // namespace roisac::fft
