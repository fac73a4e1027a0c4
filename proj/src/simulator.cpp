#include "rimg/simulator.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace rimg {

namespace {
constexpr std::uint64_t kNoiseStream = 0x9E3779B97F4A7C15ULL;
}

ComplexTensor3 synthesize_spectrum(const Scene& scene, const RadarGeometry& g) {
  g.validate();
  const Dims d = g.dims();
  ComplexTensor3 out(d);
  std::vector<double> two_k(d.nz);
  for (std::size_t q = 0; q < d.nz; ++q) two_k[q] = 2.0 * g.wavenumber(q);

  for (const auto& s : scene.scatterers) {
    (void)g.nearest_voxel(s.position);
    for (std::size_t i = 0; i < d.nx; ++i) {
      const auto ap = g.voxel_position(i, 0, 0);
      const double ex = ap[0] - s.position[0];
      for (std::size_t j = 0; j < d.ny; ++j) {
        const double ey = g.voxel_position(0, j, 0)[1] - s.position[1];
        const double r = std::sqrt(ex * ex + ey * ey + s.position[2] * s.position[2]);
        cdouble* row = &out(i, j, 0);
        for (std::size_t q = 0; q < d.nz; ++q) {
          row[q] += s.amplitude * std::polar(1.0, -two_k[q] * r);
        }
      }
    }
  }
  return out;
}

ComplexTensor3 range_compress(const ComplexTensor3& spectrum, const RadarGeometry& g) {
  require_same_dims(spectrum.dims(), g.dims(), "range_compress");
  const Dims d = g.dims();
  std::vector<cdouble> reference(d.nz);
  const double r0 = g.range_start();
  for (std::size_t q = 0; q < d.nz; ++q) {
    reference[q] = std::polar(1.0, 2.0 * g.wavenumber(q) * r0);
  }
  ComplexTensor3 dechirped = spectrum;
  for (std::size_t n = 0; n < dechirped.size(); ++n) dechirped[n] *= reference[n % d.nz];
  ComplexTensor3 out = ifft_z(dechirped);
  out *= 1.0 / std::sqrt(static_cast<double>(d.count()));
  return out;
}

ComplexTensor3 voxelize(const std::vector<Scatterer>& scatterers, const RadarGeometry& g) {
  ComplexTensor3 out(g.dims());
  for (const auto& s : scatterers) {
    const auto v = g.nearest_voxel(s.position);
    out(v[0], v[1], v[2]) += s.amplitude;
  }
  return out;
}

ComplexTensor3 synthesize_echo(const Scene& scene, const OperatorPair& op, EchoModel model) {
  if (scene.scatterers.empty() && !scene.interference.has_value()) {
    throw ConfigError("empty scene: no scatterers and no interference");
  }
  const RadarGeometry& g = op.geometry();
  ComplexTensor3 echo(g.dims());
  if (!scene.scatterers.empty()) {
    if (model == EchoModel::Physical) {
      echo += range_compress(synthesize_spectrum(scene, g), g);
    } else {
      echo += echo_generation(op, voxelize(scene.scatterers, g));
    }
  }
  if (scene.interference) {
    require_same_dims(scene.interference->dims(), g.dims(), "scene interference");
    echo += echo_generation(op, *scene.interference);
  }
  if (scene.snr_db) echo = add_noise(echo, *scene.snr_db, scene.seed ^ kNoiseStream);
  return echo;
}

ComplexTensor3 synthesize_echo(const Scene& scene, const RadarGeometry& g, EchoModel model) {
  return synthesize_echo(scene, build_operator_pair(g), model);
}

ComplexTensor3 add_noise(const ComplexTensor3& y, double snr_db, std::uint64_t seed) {
  if (snr_db == kNoiseFree) return y;
  if (!std::isfinite(snr_db)) throw ConfigError("snr_db must be finite or +inf");
  const double energy = std::pow(frob_norm(y), 2);
  if (!(energy > 0.0)) throw ConfigError("cannot set an SNR relative to a zero-energy echo");

  const double variance = energy / (static_cast<double>(y.size()) * std::pow(10.0, snr_db / 10.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  ComplexTensor3 out = y;
  for (auto& v : out.values()) {
    const double re = normal(rng);
    const double im = normal(rng);
    v += cdouble(re, im);
  }
  return out;
}

std::size_t frontal_slice_rank(const ComplexTensor3& t, std::size_t k, double rel_tol) {
  const Dims& d = t.dims();
  Eigen::MatrixXcd m(d.nx, d.ny);
  for (std::size_t i = 0; i < d.nx; ++i)
    for (std::size_t j = 0; j < d.ny; ++j) m(i, j) = t(i, j, k);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index n = 0; n < s.size(); ++n) {
    if (s(n) > rel_tol * s(0)) ++r;
  }
  return r;
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi_exclusive) {
  return std::uniform_int_distribution<std::size_t>(lo, hi_exclusive - 1)(rng);
}

Scatterer at_voxel(const RadarGeometry& g, std::size_t i, std::size_t j, std::size_t m, cdouble a,
                   bool distributed) {
  return {g.voxel_position(i, j, m), a, distributed};
}

std::vector<Scatterer> three_points(const RadarGeometry& g, Rng& rng) {
  const std::array<double, 3> amps = {1.0, 0.5, 0.25};
  std::vector<std::array<std::size_t, 3>> picked;
  const double min_sep = 6.0;
  while (picked.size() < amps.size()) {
    const std::array<std::size_t, 3> v = {uniform_index(rng, g.nx / 4, 3 * g.nx / 4),
                                          uniform_index(rng, g.ny / 4, 3 * g.ny / 4),
                                          uniform_index(rng, g.nr / 4, 3 * g.nr / 4)};
    const bool separated = std::all_of(picked.begin(), picked.end(), [&](const auto& p) {
      double d2 = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double diff = static_cast<double>(v[a]) - static_cast<double>(p[a]);
        d2 += diff * diff;
      }
      return d2 >= min_sep * min_sep;
    });
    if (separated) picked.push_back(v);
  }
  std::vector<Scatterer> out;
  for (std::size_t n = 0; n < amps.size(); ++n) {
    out.push_back(at_voxel(g, picked[n][0], picked[n][1], picked[n][2], amps[n], false));
  }
  return out;
}

struct Part {
  double u0, u1, v0, v1;
};

// Rifle outline in voxel units (along-body u, across-body v), sized for a
// 32-sample aperture and scaled with the grid.
constexpr std::array<Part, 5> kRifleParts = {{
    {-11.0, -5.0, -1.5, 1.5},  // stock
    {-5.5, 3.5, -1.0, 1.0},    // receiver
    {3.0, 11.5, -0.7, 0.7},    // barrel
    {-2.5, 0.0, 0.5, 4.5},     // magazine
    {-5.5, -3.5, 0.5, 3.0},    // grip
}};

std::vector<Scatterer> rifle(const RadarGeometry& g, Rng& rng) {
  const double scale = static_cast<double>(std::min(g.nx, g.ny)) / 32.0;
  const double angle = uniform(rng, -std::numbers::pi / 6.0, std::numbers::pi / 6.0);
  const double ci = static_cast<double>(g.nx / 2) + uniform(rng, -2.0, 2.0);
  const double cj = static_cast<double>(g.ny / 2) + uniform(rng, -2.0, 2.0);
  const std::size_t m0 = uniform_index(rng, g.nr / 2 - g.nr / 8, g.nr / 2 + g.nr / 8);
  const double half_length = 11.5 * scale;

  std::vector<Scatterer> out;
  std::vector<std::array<std::size_t, 2>> cells;
  const double ca = std::cos(angle), sa = std::sin(angle);
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      const double di = static_cast<double>(i) - ci;
      const double dj = static_cast<double>(j) - cj;
      const double u = (ca * di + sa * dj) / scale;
      const double v = (-sa * di + ca * dj) / scale;
      const bool inside = std::any_of(kRifleParts.begin(), kRifleParts.end(), [&](const Part& p) {
        return u >= p.u0 && u <= p.u1 && v >= p.v0 && v <= p.v1;
      });
      if (!inside) continue;
      cells.push_back({i, j});
      const double amp =
          0.12 + 0.08 * 0.5 * (1.0 + std::cos(std::numbers::pi * u * scale / half_length));
      for (std::size_t m = m0; m < m0 + 2; ++m) out.push_back(at_voxel(g, i, j, m, amp, true));
    }
  }
  // Three strong glints on the silhouette.
  std::shuffle(cells.begin(), cells.end(), rng);
  for (std::size_t n = 0; n < 3 && n < cells.size(); ++n) {
    for (auto& s : out) {
      const auto v = g.nearest_voxel(s.position);
      if (v[0] == cells[n][0] && v[1] == cells[n][1] && v[2] == m0) {
        s.amplitude = 1.0;
        s.distributed = false;
      }
    }
  }
  return out;
}

ComplexTensor3 interference_slab(const RadarGeometry& g, std::size_t center, std::size_t rank,
                                 double energy, Rng& rng) {
  const Dims d = g.dims();
  const std::size_t half = std::max<std::size_t>(1, d.nz / 16);
  const std::size_t k0 = center > half ? center - half : 0;
  const std::size_t k1 = std::min(d.nz, center + half + 2);

  std::vector<Eigen::VectorXcd> us, vs;
  for (std::size_t r = 0; r < rank; ++r) {
    Eigen::VectorXcd u(d.nx), v(d.ny);
    const double fu = uniform(rng, 0.5, 2.0), pu = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double fv = uniform(rng, 0.5, 2.0), pv = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < d.nx; ++i) {
      u(i) = 1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * fu * i / d.nx + pu);
    }
    for (std::size_t j = 0; j < d.ny; ++j) {
      v(j) = 1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * fv * j / d.ny + pv);
    }
    us.push_back(u);
    vs.push_back(v);
  }
  ComplexTensor3 out(d);
  for (std::size_t k = k0; k < k1; ++k) {
    for (std::size_t r = 0; r < rank; ++r) {
      const cdouble w = std::polar(uniform(rng, 0.5, 1.0), uniform(rng, 0.0, 2.0 * std::numbers::pi));
      for (std::size_t i = 0; i < d.nx; ++i)
        for (std::size_t j = 0; j < d.ny; ++j) out(i, j, k) += w * us[r](i) * vs[r](j);
    }
  }
  out *= std::sqrt(energy) / frob_norm(out);
  return out;
}

}  // namespace

Phantom make_phantom(TaskId task, const RadarGeometry& g, std::uint64_t seed) {
  g.validate();
  Rng rng(seed);
  Phantom p;
  p.scene.seed = seed;
  switch (task) {
    case TaskId::ScatteringDiagnosis:
      p.scene.scatterers = three_points(g, rng);
      break;
    case TaskId::PersonScreen:
    case TaskId::ParcelScreen:
      p.scene.scatterers = rifle(g, rng);
      break;
  }
  p.truth = voxelize(p.scene.scatterers, g);

  if (task == TaskId::ParcelScreen) {
    constexpr std::size_t kRank = 3;
    constexpr double kEnergyRatio = 5.0;
    const std::size_t center = g.nearest_voxel(p.scene.scatterers.front().position)[2];
    const double target_energy = std::pow(frob_norm(p.truth), 2);
    p.scene.interference = interference_slab(g, center, kRank, kEnergyRatio * target_energy, rng);
    p.scene.interference_rank = kRank;
    p.scene.interference_energy_ratio = kEnergyRatio;
  }
  return p;
}

}  // namespace rimg
