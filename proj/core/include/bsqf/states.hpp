#pragma once

#include <cstddef>
#include <utility>

#include "bsqf/hermitian.hpp"
#include "bsqf/matrix.hpp"
#include "bsqf/random.hpp"

namespace bsqf {

namespace tolerance {
inline constexpr double kDensity = 1e-10;
/// Minimum eigenvalue for a state to count as full rank.
inline constexpr double kFullRank = 1e-8;
}  // namespace tolerance

/// Validated quantum state: Hermitian, positive semidefinite, unit trace.
///
/// Only constructible through validate_density (or the samplers built on it),
/// so holding one is proof of the invariants. The spectral decomposition is
/// cached because every divergence needs it.
class DensityMatrix {
 public:
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const HermitianEigen& eigen() const noexcept { return eigen_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  double min_eigenvalue() const noexcept { return eigen_.min_eigenvalue(); }
  bool full_rank() const noexcept {
    return min_eigenvalue() > tolerance::kFullRank;
  }

  /// rho^{1/2}, rho^{-1/2}, log rho from the cached decomposition.
  ComplexMatrix sqrt() const;
  ComplexMatrix inv_sqrt() const;
  ComplexMatrix inverse() const;
  ComplexMatrix log() const;

 private:
  DensityMatrix(ComplexMatrix m, HermitianEigen e)
      : matrix_(std::move(m)), eigen_(std::move(e)) {}
  friend DensityMatrix validate_density(const ComplexMatrix&, bool);

  ComplexMatrix matrix_;
  HermitianEigen eigen_;
};

/// Checks, in order: Hermitian, positive semidefinite, unit trace and (when
/// requested) full rank. The stored matrix is the Hermitian part of `m`.
DensityMatrix validate_density(const ComplexMatrix& m,
                               bool require_full_rank = false);

/// A density matrix on H_A (x) H_B.
class BipartiteState {
 public:
  BipartiteState(DensityMatrix state, std::size_t d_a, std::size_t d_b);

  const DensityMatrix& state() const noexcept { return state_; }
  const ComplexMatrix& matrix() const noexcept { return state_.matrix(); }
  std::size_t d_a() const noexcept { return d_a_; }
  std::size_t d_b() const noexcept { return d_b_; }

 private:
  DensityMatrix state_;
  std::size_t d_a_;
  std::size_t d_b_;
};

inline constexpr int kMaxResamples = 100;

/// Hilbert-Schmidt random state GG^dagger / tr(GG^dagger) with G Ginibre.
/// Rank-deficient draws are rejected; after kMaxResamples rejections this
/// throws NotFullRank.
DensityMatrix sample_ginibre_density(std::size_t d, Rng& rng);

/// Tensor product state with its subsystem dimensions.
BipartiteState product_state(const DensityMatrix& a, const DensityMatrix& b);

/// (eta_A (x) eta_B + eps * lambda_AB) / tr[...].
BipartiteState perturbed_product(const DensityMatrix& eta_a,
                                 const DensityMatrix& eta_b,
                                 const DensityMatrix& lambda_ab, double epsilon);

/// (tr_B rho, tr_A rho).
std::pair<DensityMatrix, DensityMatrix> marginals(const BipartiteState& s);

/// Two-qubit Werner state p |Phi+><Phi+| + (1 - p) 1/4.
BipartiteState werner_state(double p);

}  // namespace bsqf
