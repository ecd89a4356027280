#pragma once

#include <vector>

#include "qldpc/codes.h"
#include "qldpc/gf2.h"
#include "qldpc/rng.h"

namespace qldpc::testing {

/// Parity checks of the [7,4,3] Hamming code.
inline BinMatrix hamming_checks() {
  return BinMatrix::from_rows({
      {0, 0, 0, 1, 1, 1, 1},
      {0, 1, 1, 0, 0, 1, 1},
      {1, 0, 1, 0, 1, 0, 1},
  });
}

/// [[7,1,3]] Steane code: hx = hz = Hamming checks.
inline CssCode steane_code() { return make_css_code(hamming_checks(), hamming_checks(), "steane"); }

inline BinMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double density = 0.5) {
  BinMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng.bernoulli(density)) m.set(r, c);
    }
  }
  return m;
}

inline BinVector random_vector(std::size_t n, Rng& rng, double density = 0.5) {
  BinVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(density)) v.set(i);
  }
  return v;
}

}  // namespace qldpc::testing
