#include "congruent/sampling.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "congruent/error.hpp"

namespace congruent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::array<std::uint32_t, 8> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19};

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1), never 0, from a counter.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept {
  const std::uint64_t h = splitmix64(splitmix64(seed ^ splitmix64(stream)) + counter);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double radical_inverse(std::uint64_t index, std::uint32_t base) noexcept {
  const double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

Vec sphere_point(int n, std::uint64_t seed, std::uint64_t index) {
  Vec v(n);
  for (std::uint64_t attempt = 0;; ++attempt) {
    // Each attempt consumes its own counter block, so resampling stays a
    // function of (seed, index) alone.
    const std::uint64_t base = (attempt * static_cast<std::uint64_t>(kMaxDim + 1)) << 1;
    for (int i = 0; i < n; i += 2) {
      const double u1 = counter_uniform(seed, index, base + static_cast<std::uint64_t>(i));
      const double u2 = counter_uniform(seed, index, base + static_cast<std::uint64_t>(i) + 1);
      const double r = std::sqrt(-2.0 * std::log(u1));
      v[i] = r * std::cos(kTwoPi * u2);
      if (i + 1 < n) v[i + 1] = r * std::sin(kTwoPi * u2);
    }
    const double len = norm(v);
    if (len >= 1e-8) return (1.0 / len) * v;
  }
}

std::vector<Vec> sample_sphere(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1 || n > kMaxDim) {
    throw Error(ErrorKind::kUnsupportedDimension, "sample_sphere: unsupported dimension");
  }
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sphere_point(n, seed, i));
  return out;
}

SubsphereLattice::SubsphereLattice(int frame_dim, std::size_t count)
    : frame_dim_(frame_dim), count_(count) {
  if (frame_dim < 2 || frame_dim > kMaxDim) {
    throw Error(ErrorKind::kUnsupportedDimension, "subsphere lattice: unsupported dimension");
  }
  coords_.resize(count * static_cast<std::size_t>(frame_dim));
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t h = i + 1;  // skip the all-zero Halton point
    double* p = coords_.data() + i * static_cast<std::size_t>(frame_dim);
    switch (frame_dim) {
      case 2: {
        const double t = kTwoPi * radical_inverse(h, 2);
        p[0] = std::cos(t);
        p[1] = std::sin(t);
        break;
      }
      case 3: {
        const double z = 1.0 - 2.0 * radical_inverse(h, 2);
        const double t = kTwoPi * radical_inverse(h, 3);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        p[0] = r * std::cos(t);
        p[1] = r * std::sin(t);
        p[2] = z;
        break;
      }
      case 4: {
        const double u1 = radical_inverse(h, 2);
        const double t2 = kTwoPi * radical_inverse(h, 3);
        const double t3 = kTwoPi * radical_inverse(h, 5);
        const double r1 = std::sqrt(1.0 - u1);
        const double r2 = std::sqrt(u1);
        p[0] = r1 * std::sin(t2);
        p[1] = r1 * std::cos(t2);
        p[2] = r2 * std::sin(t3);
        p[3] = r2 * std::cos(t3);
        break;
      }
      default: {
        Vec g(frame_dim);
        for (int k = 0; k < frame_dim; k += 2) {
          const double u1 = 1.0 - radical_inverse(h, kPrimes[static_cast<std::size_t>(k)]);
          const double u2 = radical_inverse(h, kPrimes[static_cast<std::size_t>(k + 1)]);
          const double r = std::sqrt(-2.0 * std::log(u1));
          g[k] = r * std::cos(kTwoPi * u2);
          if (k + 1 < frame_dim) g[k + 1] = r * std::sin(kTwoPi * u2);
        }
        const double len = norm(g);
        for (int k = 0; k < frame_dim; ++k) p[k] = g[k] / len;
        break;
      }
    }
  }
}

}  // namespace congruent
