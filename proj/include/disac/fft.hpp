#pragma once

#include "disac/common.hpp"

namespace disac::fft {

enum class Sign { Forward = -1, Backward = +1 };  // sign of the exponent

/// In-place unnormalized 1D DFTs over `count` interleaved sequences of length
/// `n`: element t of sequence s lives at data[s*dist + t*stride].
/// Plans are cached per shape; planning is serialized, execution is
/// thread-safe.
void transform(cd* data, int n, int count, int stride, int dist, Sign sign);

/// Columns (contiguous, length rows) of a column-major rows x cols array.
inline void columns(cd* data, int rows, int cols, Sign sign) {
  transform(data, rows, cols, 1, rows, sign);
}

/// Rows (stride rows, length cols) of a column-major rows x cols array.
inline void rows(cd* data, int rows, int cols, Sign sign) {
  transform(data, cols, rows, rows, 1, sign);
}

}  // namespace disac::fft
