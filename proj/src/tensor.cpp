#include "rimg/tensor.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

namespace rimg {

std::size_t Dims::count() const {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  // Payload bytes (16 per element) must also be addressable.
  constexpr std::size_t kLimit = kMax / sizeof(cdouble);
  std::size_t n = 1;
  for (std::size_t d : {nx, ny, nz}) {
    if (d != 0 && n > kLimit / d) {
      throw DimensionError("tensor dims " + str() + " overflow addressable size");
    }
    n *= d;
  }
  return n;
}

std::string Dims::str() const {
  return "(" + std::to_string(nx) + "," + std::to_string(ny) + "," + std::to_string(nz) + ")";
}

ComplexTensor3::ComplexTensor3(Dims dims, cdouble fill) : dims_(dims) {
  if (dims.nx == 0 || dims.ny == 0 || dims.nz == 0) {
    throw DimensionError("tensor dims must be positive, got " + dims.str());
  }
  data_.assign(dims.count(), fill);
}

ComplexTensor3::ComplexTensor3(Dims dims, std::vector<cdouble> data)
    : dims_(dims), data_(data.begin(), data.end()) {
  if (dims.nx == 0 || dims.ny == 0 || dims.nz == 0) {
    throw DimensionError("tensor dims must be positive, got " + dims.str());
  }
  if (data_.size() != dims.count()) {
    throw DimensionError("data length " + std::to_string(data_.size()) +
                         " does not match dims " + dims.str());
  }
}

std::size_t Mask3::count() const {
  return static_cast<std::size_t>(std::count_if(on.begin(), on.end(), [](std::uint8_t v) { return v != 0; }));
}

void require_same_dims(const Dims& a, const Dims& b, const char* what) {
  if (!(a == b)) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + a.str() + " vs " + b.str());
  }
}

ComplexTensor3& ComplexTensor3::operator+=(const ComplexTensor3& other) {
  require_same_dims(dims_, other.dims_, "operator+=");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
  return *this;
}

ComplexTensor3& ComplexTensor3::operator-=(const ComplexTensor3& other) {
  require_same_dims(dims_, other.dims_, "operator-=");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= other.data_[n];
  return *this;
}

ComplexTensor3& ComplexTensor3::operator*=(cdouble s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexTensor3 operator+(ComplexTensor3 a, const ComplexTensor3& b) { return a += b; }
ComplexTensor3 operator-(ComplexTensor3 a, const ComplexTensor3& b) { return a -= b; }
ComplexTensor3 operator*(cdouble s, ComplexTensor3 a) { return a *= s; }

namespace {

enum class Axes { XYZ, XY, Z };

// FFTW plans are created under a lock and reused; fftw_execute_dft on a
// cached plan is thread-safe.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const Dims& d, Axes axes, int sign) {
    const auto key = std::make_tuple(d.nx, d.ny, d.nz, static_cast<int>(axes), sign);
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const int nx = static_cast<int>(d.nx), ny = static_cast<int>(d.ny), nz = static_cast<int>(d.nz);
    fftw_iodim dims[3];
    fftw_iodim loops[1];
    int rank = 0, howmany = 0;
    switch (axes) {
      case Axes::XYZ:
        dims[0] = {nx, ny * nz, ny * nz};
        dims[1] = {ny, nz, nz};
        dims[2] = {nz, 1, 1};
        rank = 3;
        break;
      case Axes::XY:
        dims[0] = {nx, ny * nz, ny * nz};
        dims[1] = {ny, nz, nz};
        loops[0] = {nz, 1, 1};
        rank = 2;
        howmany = 1;
        break;
      case Axes::Z:
        dims[0] = {nz, 1, 1};
        loops[0] = {nx * ny, nz, nz};
        rank = 1;
        howmany = 1;
        break;
    }
    // Estimate rather than measure: the plan, and so the rounding, must not
    // depend on timing.
    std::vector<cdouble, AlignedAllocator<cdouble>> scratch(d.count());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_guru_dft(rank, dims, howmany, loops, buf, buf, sign, FFTW_ESTIMATE);
    if (plan == nullptr) throw Error("FFTW failed to create a plan for dims " + d.str());
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

ComplexTensor3 transform(const ComplexTensor3& t, Axes axes, int sign) {
  const Dims& d = t.dims();
  if (d.nx > static_cast<std::size_t>(std::numeric_limits<int>::max() / 2) ||
      d.ny > static_cast<std::size_t>(std::numeric_limits<int>::max() / 2) ||
      d.nz > static_cast<std::size_t>(std::numeric_limits<int>::max() / 2) ||
      d.count() > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw DimensionError("tensor dims " + d.str() + " exceed the FFT backend range");
  }
  ComplexTensor3 out = t;
  fftw_plan plan = plan_cache().get(d, axes, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(out.values().data());
  fftw_execute_dft(plan, buf, buf);

  double n = 1.0;
  switch (axes) {
    case Axes::XYZ: n = static_cast<double>(d.count()); break;
    case Axes::XY: n = static_cast<double>(d.nx * d.ny); break;
    case Axes::Z: n = static_cast<double>(d.nz); break;
  }
  const double scale = 1.0 / std::sqrt(n);
  for (auto& v : out.values()) v *= scale;
  return out;
}

}  // namespace

ComplexTensor3 fft3(const ComplexTensor3& t) { return transform(t, Axes::XYZ, FFTW_FORWARD); }
ComplexTensor3 ifft3(const ComplexTensor3& t) { return transform(t, Axes::XYZ, FFTW_BACKWARD); }
ComplexTensor3 fft_xy(const ComplexTensor3& t) { return transform(t, Axes::XY, FFTW_FORWARD); }
ComplexTensor3 ifft_xy(const ComplexTensor3& t) { return transform(t, Axes::XY, FFTW_BACKWARD); }
ComplexTensor3 fft_z(const ComplexTensor3& t) { return transform(t, Axes::Z, FFTW_FORWARD); }
ComplexTensor3 ifft_z(const ComplexTensor3& t) { return transform(t, Axes::Z, FFTW_BACKWARD); }

ComplexTensor3 hadamard(const ComplexTensor3& a, const ComplexTensor3& b) {
  require_same_dims(a.dims(), b.dims(), "hadamard");
  ComplexTensor3 out = a;
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= b[n];
  return out;
}

ComplexTensor3 conj(const ComplexTensor3& t) {
  ComplexTensor3 out = t;
  for (auto& v : out.values()) v = std::conj(v);
  return out;
}

cdouble inner(const ComplexTensor3& a, const ComplexTensor3& b) {
  require_same_dims(a.dims(), b.dims(), "inner");
  cdouble acc{0.0, 0.0};
  for (std::size_t n = 0; n < a.size(); ++n) acc += a[n] * std::conj(b[n]);
  return acc;
}

double frob_norm(const ComplexTensor3& t) {
  double acc = 0.0;
  for (const auto& v : t.values()) acc += std::norm(v);
  return std::sqrt(acc);
}

double max_abs(const ComplexTensor3& t) {
  double m = 0.0;
  for (const auto& v : t.values()) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const ComplexTensor3& t) {
  return std::all_of(t.values().begin(), t.values().end(), [](const cdouble& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

}  // namespace rimg
