#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace qi {

enum class FftSign { Forward, Backward };

/// Unnormalized in-place multi-dimensional DFT over a row-major box (last axis
/// fastest). Forward uses e^{-2 pi i n k / N}, Backward e^{+2 pi i n k / N}.
/// Any axis length is accepted.
void dft_inplace(std::span<std::complex<double>> data,
                 std::span<const std::int64_t> sizes, FftSign sign);

/// Smallest power of two >= n.
std::int64_t next_pow2(std::int64_t n);

}  // namespace qi
