#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sumdiff {

using Complex = std::complex<double>;

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t len);
  ComplexVector(std::initializer_list<Complex> entries);
  explicit ComplexVector(std::vector<Complex> entries);

  std::size_t size() const { return data_.size(); }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }
  std::span<const Complex> entries() const { return data_; }

  double norm() const;
  ComplexVector& operator*=(Complex s);

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<Complex> data_;
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const ComplexVector& a, const ComplexVector& b);

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);
  /// Matrix unit |row><col|.
  static ComplexMatrix unit(std::size_t dim, std::size_t row, std::size_t col);
  /// |a><b|.
  static ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * dim_ + c];
  }
  // Bounds-checked access; throws DimensionError.
  Complex& at(std::size_t r, std::size_t c);
  const Complex& at(std::size_t r, std::size_t c) const;

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix dagger() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  double max_abs() const;
  bool is_hermitian(double tol) const;
  bool is_diagonal(double tol = 0.0) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v);

/// Entrywise max |a - b|. Throws DimensionError on mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Vectorization with component (j, k) -> index j*d + k equal to <k|a|j>.
/// With this convention |unfold(A)><unfold(A)| = sum_jk |j><k| (x) A|j><k|A^dag.
ComplexVector unfold(const ComplexMatrix& a);
/// Inverse of unfold. Throws DimensionError if len is not a perfect square.
ComplexMatrix fold(const ComplexVector& v);

/// Eigenvalues sorted descending, eigenvectors unit norm with the
/// largest-magnitude component real and nonnegative.
struct EigenSystem {
  std::vector<double> values;
  std::vector<ComplexVector> vectors;

  std::size_t size() const { return values.size(); }
  /// sum_i values[i] |v_i><v_i|, in a space of dimension `dim`.
  ComplexMatrix reconstruct(std::size_t dim) const;
};

struct JacobiOptions {
  double tol = 1e-13;
  int max_sweeps = 100;
};

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws ContractError for non-Hermitian input and
/// ConvergenceError when `max_sweeps` is exceeded.
EigenSystem eig_hermitian(const ComplexMatrix& h, JacobiOptions opts = {});
EigenSystem eig_hermitian(const ComplexMatrix& h, double tol);

/// Closed-form eigensystem of z|r><c| + z*|c><r| in dimension `dim`.
/// Only the two nonzero eigenpairs (+|z|, -|z|) are returned.
EigenSystem eig_rank2_pair(Complex z, std::size_t r, std::size_t c, std::size_t dim);

/// Multiply `v` by a unit phase so its largest-magnitude entry is real and
/// nonnegative (first index wins ties).
void normalize_phase(ComplexVector& v);

enum class Subsystem { First, Second };

/// Transpose on the second tensor factor of an (dim_a*dim_b)-dim matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a,
                                std::size_t dim_b);

/// Reorders A (x) B into B (x) A for an (dim_a*dim_b)-dim matrix.
ComplexMatrix swap_factors(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);

/// Trace out the named factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem which);

/// Smallest eigenvalue via Jacobi; convenience for PSD checks.
double min_eigenvalue(const ComplexMatrix& h);

}  // namespace sumdiff
