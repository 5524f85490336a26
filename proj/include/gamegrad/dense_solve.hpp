// Copyright 2026 The gamegrad Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAMEGRAD_DENSE_SOLVE_HPP_
#define GAMEGRAD_DENSE_SOLVE_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "gamegrad/dual.hpp"
#include "gamegrad/errors.hpp"

namespace gamegrad {

// Solves a * x = b by LU with partial pivoting. Works over any scalar with
// field operations; pivots are chosen on primal values so derivatives follow
// the same elimination as the values.
template <class S, std::size_t N>
std::array<S, N> lu_solve(std::array<std::array<S, N>, N> a, std::array<S, N> b) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(primal(a[r][col])) > std::abs(primal(a[pivot][col]))) pivot = r;
    }
    if (primal(a[pivot][col]) == 0.0) throw NumericalError("lu_solve: singular matrix");
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = col + 1; r < N; ++r) {
      const S factor = a[r][col] / a[col][col];
      for (std::size_t c = col + 1; c < N; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::array<S, N> x;
  for (std::size_t i = N; i-- > 0;) {
    S acc = b[i];
    for (std::size_t c = i + 1; c < N; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace gamegrad

#endif  // GAMEGRAD_DENSE_SOLVE_HPP_
