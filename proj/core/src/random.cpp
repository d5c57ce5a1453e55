#include "bsqf/random.hpp"

#include <cmath>
#include <numbers>

namespace bsqf {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

double Rng::uniform() {
  // 53 random bits mapped to (0, 1]; never zero so log() in Box-Muller is safe.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix ginibre(std::size_t d, Rng& rng) {
  ComplexMatrix g(d);
  for (auto& z : g.entries()) z = rng.complex_normal();
  return g;
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  // Modified Gram-Schmidt on the columns of a Ginibre matrix. Normalizing each
  // column to a positive projection onto its own input is the phase fix that
  // makes the distribution Haar.
  ComplexMatrix q = ginibre(d, rng);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(q(i, k)) * q(i, j);
      for (std::size_t i = 0; i < d; ++i) q(i, j) -= proj * q(i, k);
    }
    double len = 0.0;
    for (std::size_t i = 0; i < d; ++i) len += std::norm(q(i, j));
    len = std::sqrt(len);
    for (std::size_t i = 0; i < d; ++i) q(i, j) /= len;
  }
  return q;
}

ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  return ginibre(d, rng).hermitian_part();
}

}  // namespace bsqf
