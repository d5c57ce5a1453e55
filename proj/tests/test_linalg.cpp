#include "doctest.h"

#include <cmath>

#include "bsqf/error.hpp"
#include "bsqf/hermitian.hpp"
#include "bsqf/matrix.hpp"
#include "bsqf/random.hpp"
#include "support/fixtures.hpp"

using namespace bsqf;
using bsqf::testing::max_abs_diff;

namespace {

const ComplexMatrix kPauliX{{0, 1}, {1, 0}};
const ComplexMatrix kPauliY{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
const ComplexMatrix kPauliZ{{1, 0}, {0, -1}};

double reconstruction_residual(const ComplexMatrix& m, const HermitianEigen& e) {
  return (e.reconstruct() - m).frobenius_norm() / std::max(1.0, m.frobenius_norm());
}

double unitarity_residual(const HermitianEigen& e) {
  const std::size_t n = e.eigenvectors.dim();
  return (e.eigenvectors.adjoint() * e.eigenvectors - ComplexMatrix::identity(n))
      .frobenius_norm();
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected bsqf::Error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_SUITE("matrix") {
  TEST_CASE("construction rejects bad shapes and non-finite entries") {
    CHECK(code_of([] { ComplexMatrix(0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { ComplexMatrix(2, {1, 2, 3}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { ComplexMatrix(1, {std::nan("")}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { ComplexMatrix{{1, 2}, {3}}; }) == ErrorCode::DimensionMismatch);
  }

  TEST_CASE("kron examples") {
    CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) ==
          ComplexMatrix::identity(4));
    CHECK(kron(ComplexMatrix::diagonal({1, 0}), ComplexMatrix::diagonal({0, 1})) ==
          ComplexMatrix::diagonal({0, 1, 0, 0}));

    const ComplexMatrix a{{1, 2}, {3, 4}};
    const ComplexMatrix b{{0, 5}, {6, 7}};
    const ComplexMatrix k = kron(a, b);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t r = 0; r < 2; ++r)
          for (std::size_t s = 0; s < 2; ++s)
            CHECK(k(i * 2 + r, j * 2 + s) == a(i, j) * b(r, s));
  }

  TEST_CASE("kron multiplies traces") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix a = ginibre(2 + trial % 3, rng);
      const ComplexMatrix b = ginibre(1 + trial % 4, rng);
      CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) <= 1e-12 * 10);
    }
  }

  TEST_CASE("partial trace") {
    Rng rng(3);
    const DensityMatrix ra = sample_ginibre_density(2, rng);
    const DensityMatrix rb = sample_ginibre_density(3, rng);
    const ComplexMatrix prod = kron(ra.matrix(), rb.matrix());
    CHECK(max_abs_diff(partial_trace(prod, 2, 3, Subsystem::A), ra.matrix()) < 1e-14);
    CHECK(max_abs_diff(partial_trace(prod, 2, 3, Subsystem::B), rb.matrix()) < 1e-14);

    ComplexMatrix bell(4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    const ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5);
    CHECK(max_abs_diff(partial_trace(bell, 2, 2, Subsystem::A), half) == 0.0);
    CHECK(max_abs_diff(partial_trace(bell, 2, 2, Subsystem::B), half) == 0.0);

    for (int trial = 0; trial < 100; ++trial) {
      const DensityMatrix rho = sample_ginibre_density(4, rng);
      CHECK(std::abs(partial_trace(rho.matrix(), 2, 2, Subsystem::A).trace() - 1.0) <= 1e-12);
      CHECK(std::abs(partial_trace(rho.matrix(), 2, 2, Subsystem::B).trace() - 1.0) <= 1e-12);
    }

    // Non-normalized factors come back scaled by the other factor's trace.
    const ComplexMatrix x = ginibre(2, rng);
    const ComplexMatrix y = ginibre(2, rng);
    CHECK(max_abs_diff(partial_trace(kron(x, y), 2, 2, Subsystem::A), x * y.trace()) < 1e-13);

    CHECK(code_of([&] { partial_trace(bell, 3, 2, Subsystem::A); }) ==
          ErrorCode::DimensionMismatch);
  }

  TEST_CASE("partial trace is linear") {
    Rng rng(8);
    const ComplexMatrix x = ginibre(6, rng);
    const ComplexMatrix y = ginibre(6, rng);
    const Complex c(0.3, -1.2);
    for (Subsystem keep : {Subsystem::A, Subsystem::B}) {
      const ComplexMatrix lhs = partial_trace(x + y * c, 2, 3, keep);
      const ComplexMatrix rhs = partial_trace(x, 2, 3, keep) + partial_trace(y, 2, 3, keep) * c;
      CHECK(max_abs_diff(lhs, rhs) < 1e-13);
    }
  }

  TEST_CASE("commutator") {
    CHECK(commutator(ComplexMatrix::diagonal({1, 2}), ComplexMatrix::diagonal({3, 4})) ==
          ComplexMatrix(2));
    CHECK(max_abs_diff(commutator(kPauliX, kPauliZ), kPauliY * Complex(0, -2)) == 0.0);
    CHECK(code_of([] { commutator(ComplexMatrix(2), ComplexMatrix(3)); }) ==
          ErrorCode::DimensionMismatch);
  }

  TEST_CASE("commutator norm invariant under joint conjugation") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
      const ComplexMatrix a = random_hermitian(3, rng);
      const ComplexMatrix b = random_hermitian(3, rng);
      const ComplexMatrix u = random_unitary(3, rng);
      const double before = commutator(a, b).frobenius_norm();
      const double after =
          commutator(u * a * u.adjoint(), u * b * u.adjoint()).frobenius_norm();
      CHECK(after == doctest::Approx(before).epsilon(1e-12));
      CHECK(operator_norm(commutator(u * a * u.adjoint(), u * b * u.adjoint())) ==
            doctest::Approx(operator_norm(commutator(a, b))).epsilon(1e-10));
    }
  }
}

TEST_SUITE("hermitian_eig") {
  TEST_CASE("diagonal input yields sorted eigenvalues and permutation vectors") {
    const HermitianEigen e = hermitian_eig(ComplexMatrix::diagonal({3, 1, 2}));
    CHECK(e.eigenvalues == std::vector<double>{1, 2, 3});
    for (std::size_t k = 0; k < 3; ++k) {
      int ones = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        const double m = std::abs(e.eigenvectors(i, k));
        CHECK((m == 0.0 || m == 1.0));
        ones += m == 1.0;
      }
      CHECK(ones == 1);
    }
    CHECK(std::abs(e.eigenvectors(1, 0)) == 1.0);
    CHECK(std::abs(e.eigenvectors(2, 1)) == 1.0);
    CHECK(std::abs(e.eigenvectors(0, 2)) == 1.0);
  }

  TEST_CASE("Pauli X") {
    const HermitianEigen e = hermitian_eig(kPauliX);
    CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(reconstruction_residual(kPauliX, e) <= 1e-15);
  }

  TEST_CASE("random Hermitian residuals") {
    Rng rng(5);
    for (std::size_t d : {1u, 2u, 3u, 8u, 16u, 32u, 64u}) {
      for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix m = random_hermitian(d, rng) * Complex(1.0 + 10.0 * trial);
        const HermitianEigen e = hermitian_eig(m);
        CHECK(reconstruction_residual(m, e) <= 1e-12);
        CHECK(unitarity_residual(e) <= 1e-12);
        CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
      }
    }
  }

  TEST_CASE("degenerate and complex-phase inputs") {
    Rng rng(9);
    const ComplexMatrix u = random_unitary(5, rng);
    const ComplexMatrix m = u * ComplexMatrix::diagonal({2, 2, 2, -1, -1}) * u.adjoint();
    const HermitianEigen e = hermitian_eig(m);
    CHECK(reconstruction_residual(m, e) <= 1e-12);
    CHECK(unitarity_residual(e) <= 1e-12);
    CHECK(e.eigenvalues[0] == doctest::Approx(-1).epsilon(1e-13));
    CHECK(e.eigenvalues[4] == doctest::Approx(2).epsilon(1e-13));

    const ComplexMatrix y{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
    CHECK(reconstruction_residual(y, hermitian_eig(y)) <= 1e-15);
    CHECK(hermitian_eig(ComplexMatrix(3)).eigenvalues == std::vector<double>(3, 0.0));
  }

  TEST_CASE("errors") {
    CHECK(code_of([] { hermitian_eig(ComplexMatrix{{0, 1}, {0, 0}}); }) ==
          ErrorCode::NotHermitian);
    Rng rng(1);
    const ComplexMatrix m = random_hermitian(6, rng);
    CHECK(code_of([&] { hermitian_eig(m, JacobiOptions{0, 1e-14}); }) ==
          ErrorCode::NoConvergence);
    // Tiny rounding asymmetry is absorbed.
    ComplexMatrix drift = m;
    drift(0, 1) += 1e-13;
    CHECK_NOTHROW(hermitian_eig(drift));
  }
}

TEST_SUITE("matrix_fn") {
  TEST_CASE("closed forms") {
    CHECK(matrix_log(ComplexMatrix::identity(4)) == ComplexMatrix(4));
    CHECK(max_abs_diff(matrix_sqrt(ComplexMatrix::diagonal({4, 9})),
                       ComplexMatrix::diagonal({2, 3})) == 0.0);
    CHECK(max_abs_diff(matrix_inv(ComplexMatrix::diagonal({4, 0.5})),
                       ComplexMatrix::diagonal({0.25, 2})) == 0.0);
    CHECK(max_abs_diff(matrix_pow(ComplexMatrix::diagonal({4, 9}), -0.5),
                       ComplexMatrix::diagonal({0.5, 1.0 / 3.0})) < 1e-16);
    CHECK(max_abs_diff(matrix_exp(ComplexMatrix(2)), ComplexMatrix::identity(2)) == 0.0);
  }

  TEST_CASE("round trips on random positive definite matrices") {
    Rng rng(17);
    for (std::size_t d : {2u, 3u, 4u, 8u}) {
      for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix m = sample_ginibre_density(d, rng).matrix() * Complex(3.0);
        CHECK(max_abs_diff(matrix_exp(matrix_log(m)), m) <= 1e-10);
        const ComplexMatrix half = matrix_pow(m, 0.5);
        CHECK(max_abs_diff(half * half, m) <= 1e-10);
        CHECK(max_abs_diff(matrix_sqrt(m), half) <= 1e-12);
        CHECK(max_abs_diff(matrix_inv(m) * m, ComplexMatrix::identity(d)) <= 1e-8);
        CHECK(matrix_log(m).hermiticity_defect() <= 1e-12);
      }
    }
  }

  TEST_CASE("singular inputs") {
    const ComplexMatrix singular = ComplexMatrix::diagonal({1, 0});
    CHECK(code_of([&] { matrix_log(singular); }) == ErrorCode::SingularOperator);
    CHECK(code_of([&] { matrix_inv(singular); }) == ErrorCode::SingularOperator);
    CHECK(code_of([&] { matrix_pow(singular, -0.5); }) == ErrorCode::SingularOperator);
    CHECK(code_of([&] { matrix_log(ComplexMatrix::diagonal({1, 1e-13})); }) ==
          ErrorCode::SingularOperator);
    CHECK(max_abs_diff(matrix_sqrt(ComplexMatrix::diagonal({1, -1e-13})),
                       ComplexMatrix::diagonal({1, 0})) == 0.0);
    CHECK(code_of([] { matrix_sqrt(ComplexMatrix::diagonal({1, -1e-6})); }) ==
          ErrorCode::SingularOperator);
  }
}

TEST_SUITE("norms") {
  TEST_CASE("closed forms") {
    const ComplexMatrix m = ComplexMatrix::diagonal({1, -2});
    CHECK(norm(m, NormKind::Trace) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(norm(m, NormKind::Operator) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(norm(m, NormKind::Frobenius) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    // Non-normal: singular values of [[0, 2], [0, 0]] are {2, 0}.
    const ComplexMatrix n{{0, 2}, {0, 0}};
    CHECK(trace_norm(n) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(operator_norm(n) == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("trace distance of states is at most 2 and unitaries have norm 1") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t d = 2 + trial % 4;
      const DensityMatrix rho = sample_ginibre_density(d, rng);
      const DensityMatrix sigma = sample_ginibre_density(d, rng);
      CHECK(trace_norm(rho.matrix() - sigma.matrix()) <= 2.0 + 1e-12);
      CHECK(operator_norm(random_unitary(d, rng)) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("Holder inequality |tr XY| <= ||X||_inf ||Y||_1") {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
      const ComplexMatrix x = ginibre(4, rng);
      const ComplexMatrix y = ginibre(4, rng);
      CHECK(std::abs(trace_product(x, y)) <=
            operator_norm(x) * trace_norm(y) * (1 + 1e-12));
    }
  }
}

TEST_SUITE("kms_inner") {
  TEST_CASE("identity pair gives the trace of rho") {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 2 + trial % 3;
      const DensityMatrix rho = sample_ginibre_density(d, rng);
      const Complex v = kms_inner(ComplexMatrix::identity(d), ComplexMatrix::identity(d),
                                  rho.matrix());
      CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(v.imag()) < 1e-14);
    }
  }

  TEST_CASE("self inner product is real and nonnegative") {
    Rng rng(6);
    for (int trial = 0; trial < 100; ++trial) {
      const DensityMatrix rho = sample_ginibre_density(3, rng);
      const ComplexMatrix a = ginibre(3, rng);
      const Complex v = kms_inner(a, a, rho.matrix());
      CHECK(v.real() >= 0.0);
      CHECK(std::abs(v.imag()) <= 1e-12 * std::max(1.0, v.real()));
    }
  }

  TEST_CASE("product inner product equals tr[eta_A x eta_B]") {
    // eta = sigma^{1/2} rho^{1/2} sigma^{-1} rho^{1/2} sigma^{1/2}, formed here
    // directly from spectral functions.
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      const DensityMatrix ra = sample_ginibre_density(2, rng);
      const DensityMatrix rb = sample_ginibre_density(2, rng);
      const DensityMatrix sa = sample_ginibre_density(2, rng);
      const DensityMatrix sb = sample_ginibre_density(2, rng);
      auto eta = [](const DensityMatrix& r, const DensityMatrix& s) {
        const ComplexMatrix sh = matrix_sqrt(s.matrix());
        const ComplexMatrix rh = matrix_sqrt(r.matrix());
        return sh * rh * matrix_inv(s.matrix()) * rh * sh;
      };
      const Complex lhs =
          kms_inner(kron(sa.matrix(), sb.matrix()),
                    kron(matrix_inv(sa.matrix()), matrix_inv(sb.matrix())),
                    kron(ra.matrix(), rb.matrix()));
      const Complex rhs = kron(eta(ra, sa), eta(rb, sb)).trace();
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }

  TEST_CASE("commuting marginals give 1") {
    Rng rng(44);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = bsqf::testing::commuting_pair(2, rng);
      const auto b = bsqf::testing::commuting_pair(2, rng);
      const Complex v =
          kms_inner(kron(a.sigma.matrix(), b.sigma.matrix()),
                    kron(matrix_inv(a.sigma.matrix()), matrix_inv(b.sigma.matrix())),
                    kron(a.rho.matrix(), b.rho.matrix()));
      CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("dimension mismatch") {
    CHECK(code_of([] {
            kms_inner(ComplexMatrix(2), ComplexMatrix(2), ComplexMatrix::identity(3));
          }) == ErrorCode::DimensionMismatch);
  }
}
