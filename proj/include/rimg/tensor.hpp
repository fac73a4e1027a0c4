#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <cstddef>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rimg/error.hpp"

namespace rimg {

using cdouble = std::complex<double>;

/// Allocator with 64-byte alignment so every tensor buffer suits the same
/// SIMD FFT plans.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), kAlign)); }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlign); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

struct Dims {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::size_t nz = 0;

  /// Element count; throws DimensionError if the product overflows.
  std::size_t count() const;
  bool operator==(const Dims&) const = default;
  std::string str() const;
};

/// Dense complex 3D array. Element (i, j, k) lives at (i*ny + j)*nz + k,
/// so the third index varies fastest. Frontal slice k is the nx-by-ny
/// matrix obtained by fixing k.
class ComplexTensor3 {
 public:
  ComplexTensor3() = default;
  explicit ComplexTensor3(Dims dims, cdouble fill = {0.0, 0.0});
  ComplexTensor3(Dims dims, std::vector<cdouble> data);

  const Dims& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }

  std::size_t offset(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * dims_.ny + j) * dims_.nz + k;
  }
  cdouble& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[offset(i, j, k)];
  }
  const cdouble& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[offset(i, j, k)];
  }
  cdouble& operator[](std::size_t n) { return data_[n]; }
  const cdouble& operator[](std::size_t n) const { return data_[n]; }

  std::span<cdouble> values() { return data_; }
  std::span<const cdouble> values() const { return data_; }

  ComplexTensor3& operator+=(const ComplexTensor3& other);
  ComplexTensor3& operator-=(const ComplexTensor3& other);
  ComplexTensor3& operator*=(cdouble s);

  bool operator==(const ComplexTensor3&) const = default;

 private:
  Dims dims_{};
  std::vector<cdouble, AlignedAllocator<cdouble>> data_;
};

/// Boolean 3D tensor with the same layout as ComplexTensor3.
struct Mask3 {
  Dims dims{};
  std::vector<std::uint8_t> on;

  Mask3() = default;
  explicit Mask3(Dims d) : dims(d), on(d.count(), 0) {}
  bool operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return on[(i * dims.ny + j) * dims.nz + k] != 0;
  }
  std::size_t count() const;
};

ComplexTensor3 operator+(ComplexTensor3 a, const ComplexTensor3& b);
ComplexTensor3 operator-(ComplexTensor3 a, const ComplexTensor3& b);
ComplexTensor3 operator*(cdouble s, ComplexTensor3 a);

void require_same_dims(const Dims& a, const Dims& b, const char* what);

/// Unitary separable 3D DFT (forward kernel exp(-2*pi*i*...)), 1/sqrt(N) scaling.
ComplexTensor3 fft3(const ComplexTensor3& t);
/// Exact inverse of fft3.
ComplexTensor3 ifft3(const ComplexTensor3& t);

/// Unitary 2D DFT over the first two axes of every frontal slice.
ComplexTensor3 fft_xy(const ComplexTensor3& t);
ComplexTensor3 ifft_xy(const ComplexTensor3& t);

/// Unitary 1D DFT along the third axis.
ComplexTensor3 fft_z(const ComplexTensor3& t);
ComplexTensor3 ifft_z(const ComplexTensor3& t);

ComplexTensor3 hadamard(const ComplexTensor3& a, const ComplexTensor3& b);
ComplexTensor3 conj(const ComplexTensor3& t);

/// sum a * conj(b)
cdouble inner(const ComplexTensor3& a, const ComplexTensor3& b);
double frob_norm(const ComplexTensor3& t);
double max_abs(const ComplexTensor3& t);
bool all_finite(const ComplexTensor3& t);

}  // namespace rimg
