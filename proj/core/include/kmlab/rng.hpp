#ifndef KMLAB_RNG_HPP
#define KMLAB_RNG_HPP

#include <cstdint>
#include <random>

#include "kmlab/point.hpp"

namespace kmlab {

/// splitmix64 finalizer; mixes (seed, index) into an independent stream seed
/// so that sequence elements can be drawn in any order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 engine_at(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(mix_seed(seed, index));
}

/// Uniform direction on the unit sphere of R^dim (normalized Gaussian).
inline Point unit_sphere(std::mt19937_64& gen, Eigen::Index dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Point v(dim);
  double n = 0.0;
  do {
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = normal(gen);
    n = v.norm();
  } while (n < 1e-12);
  return v / n;
}

/// Uniform draw from the closed ball B[center; radius]
/// (sphere direction times radius * U^(1/dim)).
inline Point ball_uniform(std::mt19937_64& gen, const Point& center, double radius) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Point dir = unit_sphere(gen, center.size());
  const double r = radius * std::pow(unif(gen), 1.0 / static_cast<double>(center.size()));
  return center + r * dir;
}

/// Gaussian point with i.i.d. N(0, scale^2) coordinates.
inline Point gaussian_point(std::mt19937_64& gen, Eigen::Index dim, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Point v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = normal(gen);
  return v;
}

}  // namespace kmlab

#endif
