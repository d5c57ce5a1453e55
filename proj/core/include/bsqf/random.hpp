#pragma once

#include <cstdint>
#include <random>

#include "bsqf/matrix.hpp"

namespace bsqf {

/// Seedable stream of standard normals.
///
/// Streams are split by index: stream(seed, i) seeds an mt19937_64 with
/// splitmix64(seed) ^ splitmix64(i + golden), so sample i of an experiment
/// draws the same numbers regardless of the order samples are processed in.
/// Gaussians come from Box-Muller on 53-bit uniforms, which keeps the output
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on (0, 1].
  double uniform();
  double normal();
  /// Real and imaginary parts i.i.d. N(0, 1/2), so E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// d x d matrix of i.i.d. standard complex Gaussians.
ComplexMatrix ginibre(std::size_t d, Rng& rng);

/// Haar-random unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal absorbed into Q.
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

/// Random Hermitian matrix (G + G^dagger)/2 with G Ginibre.
ComplexMatrix random_hermitian(std::size_t d, Rng& rng);

}  // namespace bsqf
