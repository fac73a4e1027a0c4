#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>

#include "rimg/tensor.hpp"

namespace rimg::testing {

inline ComplexTensor3 random_tensor(Dims d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexTensor3 t(d);
  for (auto& z : t.values()) z = {n(rng), n(rng)};
  return t;
}

// Bitwise-equal dims and values.
inline bool same_values(const ComplexTensor3& a, const ComplexTensor3& b) {
  return a.dims() == b.dims() && std::ranges::equal(a.values(), b.values());
}

inline double rel_err(const ComplexTensor3& a, const ComplexTensor3& b) {
  return frob_norm(a - b) / frob_norm(b);
}

// Direct O(N^2) unitary 3D DFT.
inline ComplexTensor3 naive_dft3(const ComplexTensor3& t, int sign = -1) {
  const Dims d = t.dims();
  ComplexTensor3 out(d);
  const double pi = std::acos(-1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d.count()));
  for (std::size_t u = 0; u < d.nx; ++u)
    for (std::size_t v = 0; v < d.ny; ++v)
      for (std::size_t w = 0; w < d.nz; ++w) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < d.nx; ++i)
          for (std::size_t j = 0; j < d.ny; ++j)
            for (std::size_t k = 0; k < d.nz; ++k) {
              const double ph = sign * 2.0 * pi *
                                (static_cast<double>(u * i) / d.nx + static_cast<double>(v * j) / d.ny +
                                 static_cast<double>(w * k) / d.nz);
              acc += t(i, j, k) * std::polar(1.0, ph);
            }
        out(u, v, w) = acc * scale;
      }
  return out;
}

}  // namespace rimg::testing
