#pragma once

// Test-only constructions and independent oracles. Nothing here calls the
// divergence or quasi-factorization code it is used to check.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "bsqf/hermitian.hpp"
#include "bsqf/random.hpp"
#include "bsqf/states.hpp"

namespace bsqf::testing {

// Values frozen from a 50-digit mpmath evaluation of the defining formulas
// (spectral log / sqrt / inverse on exact rational inputs).
namespace frozen {
// rho = [[1/2, 1/4], [1/4, 1/2]] (= 0.75|+><+| + 0.25|-><-|), sigma = diag(3/4, 1/4)
inline constexpr double kBsNonCommuting = 0.3006198874012344444734987;
inline constexpr double kUmegakiNonCommuting = 0.2746530721670274228488113;
// same rho against 1/2: ln 2 + 0.75 ln 0.75 + 0.25 ln 0.25
inline constexpr double kUmegakiPlusVsMixed = 0.1308120359411369591292018;
// diag(1/2, 1/2) against diag(1/4, 3/4)
inline constexpr double kKlHalfVsQuarter = 0.1438410362258904637196095;
// 1 / (1 - 6p/(1-p)^2) at p = 0.05
inline constexpr double kWernerM005 = 1.497925311203319502074689;
}  // namespace frozen

/// Classical KL divergence in extended precision; log1p of the relative
/// difference keeps nearly equal distributions accurate.
inline double scalar_kl(const std::vector<double>& p, const std::vector<double>& q) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long double pi = p[i];
    const long double qi = q[i];
    s += pi * std::log1p((pi - qi) / qi);
  }
  return static_cast<double>(s);
}

/// Probability vector with entries bounded away from zero.
inline std::vector<double> random_probabilities(std::size_t d, Rng& rng,
                                                double floor = 0.02) {
  std::vector<double> p(d);
  for (auto& x : p) x = floor + rng.uniform();
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= total;
  return p;
}

/// U diag(p) U^dagger.
inline ComplexMatrix in_basis(const ComplexMatrix& u, const std::vector<double>& p) {
  return u * ComplexMatrix::diagonal(p) * u.adjoint();
}

inline DensityMatrix random_state(std::size_t d, Rng& rng) {
  return sample_ginibre_density(d, rng);
}

inline DensityMatrix diagonal_state(const std::vector<double>& p) {
  return validate_density(ComplexMatrix::diagonal(p), true);
}

/// Two states sharing a random eigenbasis, hence commuting exactly in exact
/// arithmetic.
struct CommutingPair {
  DensityMatrix rho;
  DensityMatrix sigma;
};

inline CommutingPair commuting_pair(std::size_t d, Rng& rng) {
  const ComplexMatrix u = random_unitary(d, rng);
  return {validate_density(in_basis(u, random_probabilities(d, rng)), true),
          validate_density(in_basis(u, random_probabilities(d, rng)), true)};
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

/// Bipartite pair with sigma = sigma_A (x) sigma_B and [rho_A, sigma_A] =
/// [rho_B, sigma_B] = 0, while rho_AB itself is correlated and does not
/// commute with sigma.
///
/// rho is built in a local product basis U_A (x) U_B from a random state by
/// keeping only the entries (ik, jl) with i - j == k - l: that is the twirl
/// over the phase group diag(e^{i t n}) (x) diag(e^{-i t n}), so it stays a
/// full-rank state, and its marginals are diagonal in that basis.
struct ReductionCase {
  BipartiteState rho;
  BipartiteState sigma;
};

inline ReductionCase commuting_marginals_case(std::size_t d_a, std::size_t d_b,
                                              Rng& rng) {
  const ComplexMatrix u_a = random_unitary(d_a, rng);
  const ComplexMatrix u_b = random_unitary(d_b, rng);
  const DensityMatrix seed = sample_ginibre_density(d_a * d_b, rng);
  ComplexMatrix twirled(d_a * d_b);
  for (std::size_t i = 0; i < d_a; ++i)
    for (std::size_t j = 0; j < d_a; ++j)
      for (std::size_t k = 0; k < d_b; ++k)
        for (std::size_t l = 0; l < d_b; ++l)
          if (static_cast<long>(i) - static_cast<long>(j) ==
              static_cast<long>(k) - static_cast<long>(l)) {
            twirled(i * d_b + k, j * d_b + l) = seed.matrix()(i * d_b + k, j * d_b + l);
          }
  const ComplexMatrix u = kron(u_a, u_b);
  BipartiteState rho(validate_density(u * twirled * u.adjoint(), true), d_a, d_b);
  const DensityMatrix sigma_a =
      validate_density(in_basis(u_a, random_probabilities(d_a, rng)), true);
  const DensityMatrix sigma_b =
      validate_density(in_basis(u_b, random_probabilities(d_b, rng)), true);
  return {std::move(rho), product_state(sigma_a, sigma_b)};
}

/// sigma close to a product so both quasi-factorization hypotheses can hold.
inline BipartiteState near_product_state(std::size_t d_a, std::size_t d_b,
                                         double epsilon, Rng& rng) {
  const DensityMatrix a = sample_ginibre_density(d_a, rng);
  const DensityMatrix b = sample_ginibre_density(d_b, rng);
  const DensityMatrix lambda = sample_ginibre_density(d_a * d_b, rng);
  return perturbed_product(a, b, lambda, epsilon);
}

}  // namespace bsqf::testing
