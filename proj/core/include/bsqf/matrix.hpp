#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bsqf {

using Complex = std::complex<double>;

/// Dense square matrix of complex doubles, row-major.
///
/// Arithmetic is value-semantic; operands of binary operations must have equal
/// dimension (DimensionMismatch otherwise). Dimension is always >= 1.
class ComplexMatrix {
 public:
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);

  /// Takes ownership of row-major entries; entries.size() must equal dim*dim
  /// and every entry must be finite.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  /// Row-by-row literal, e.g. ComplexMatrix{{0, 1}, {1, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const noexcept;
  double frobenius_norm() const noexcept;
  bool all_finite() const noexcept;

  /// ||M - M^dagger||_F.
  double hermiticity_defect() const noexcept;

  /// (M + M^dagger) / 2.
  ComplexMatrix hermitian_part() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scalar) {
    lhs *= scalar;
    return lhs;
  }
  friend ComplexMatrix operator*(Complex scalar, ComplexMatrix rhs) {
    rhs *= scalar;
    return rhs;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs,
                                 const ComplexMatrix& rhs);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// tr(A B) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product: result((i*dB+k),(j*dB+l)) = A(i,j) * B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

/// Partial trace over the complement of `keep` for an operator on a
/// (d_a * d_b)-dimensional bipartite space.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_a,
                            std::size_t d_b, Subsystem keep);

}  // namespace bsqf
