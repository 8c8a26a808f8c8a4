#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace maxdist {

inline constexpr int kMaxDim = 3;

/// Fixed-capacity velocity/position vector. The active dimension (1, 2 or 3)
/// is carried by the owning object; unused components stay zero.
using VecN = std::array<double, kMaxDim>;

inline double dot(const VecN& a, const VecN& b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += a[k] * b[k];
  return s;
}

inline double norm2(const VecN& v, int dim) { return dot(v, v, dim); }

inline double norm(const VecN& v, int dim) { return std::sqrt(norm2(v, dim)); }

inline VecN zero_vec() { return VecN{0.0, 0.0, 0.0}; }

}  // namespace maxdist
