#include "sumdiff/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sumdiff/errors.hpp"

namespace sumdiff {

ComplexVector::ComplexVector(std::size_t len) : data_(len) {}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : data_(entries) {}

ComplexVector::ComplexVector(std::vector<Complex> entries)
    : data_(std::move(entries)) {}

double ComplexVector::norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexVector& ComplexVector::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("inner: length mismatch");
  }
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()), data_() {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw DimensionError("ComplexMatrix: rows must form a square matrix");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t row,
                                  std::size_t col) {
  ComplexMatrix m(dim);
  m.at(row, col) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector& a,
                                   const ComplexVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("outer: length mismatch");
  }
  ComplexMatrix m(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < b.size(); ++c) m(r, c) = a[r] * std::conj(b[c]);
  }
  return m;
}

Complex& ComplexMatrix::at(std::size_t r, std::size_t c) {
  if (r >= dim_ || c >= dim_) {
    throw DimensionError("ComplexMatrix::at: index out of range");
  }
  return (*this)(r, c);
}

const Complex& ComplexMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= dim_ || c >= dim_) {
    throw DimensionError("ComplexMatrix::at: index out of range");
  }
  return (*this)(r, c);
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  }
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c);
  }
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m(*this);
  for (auto& z : m.data_) z = std::conj(z);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    }
  }
  return true;
}

bool ComplexMatrix::is_diagonal(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (r != c && std::abs((*this)(r, c)) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw DimensionError("matrix +: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw DimensionError("matrix -: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrix *: dimension mismatch");
  const std::size_t n = a.dim();
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex(0.0)) continue;
      for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  }
  return m;
}

ComplexMatrix operator*(ComplexMatrix a, Complex s) {
  a *= s;
  return a;
}

ComplexMatrix operator*(Complex s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.dim() != v.size()) {
    throw DimensionError("matrix-vector *: dimension mismatch");
  }
  ComplexVector out(v.size());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < a.dim(); ++c) s += a(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("max_abs_diff: dimension mismatch");
  }
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix m(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t k = 0; k < na; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < nb; ++j) {
        for (std::size_t l = 0; l < nb; ++l) m(i * nb + j, k * nb + l) = aik * b(j, l);
      }
    }
  }
  return m;
}

ComplexVector unfold(const ComplexMatrix& a) {
  const std::size_t d = a.dim();
  ComplexVector v(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) v[j * d + k] = a(k, j);
  }
  return v;
}

ComplexMatrix fold(const ComplexVector& v) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) {
    throw DimensionError("fold: length " + std::to_string(v.size()) +
                         " is not a perfect square");
  }
  ComplexMatrix a(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) a(k, j) = v[j * d + k];
  }
  return a;
}

ComplexMatrix EigenSystem::reconstruct(std::size_t dim) const {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < values.size(); ++i) {
    m += values[i] * ComplexMatrix::outer(vectors[i], vectors[i]);
  }
  return m;
}

void normalize_phase(ComplexVector& v) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    // Strict comparison with a relative slack so near-ties resolve to the
    // first index deterministically.
    const double a = std::abs(v[i]);
    if (a > best_abs * (1.0 + 1e-12)) {
      best = i;
      best_abs = a;
    }
  }
  if (best_abs <= 0.0) return;
  v *= std::conj(v[best]) / best_abs;
  v[best] = best_abs;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      if (r != c) s += std::norm(a(r, c));
    }
  }
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

EigenSystem sorted_system(std::vector<double> values,
                          std::vector<ComplexVector> vectors) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  EigenSystem es;
  es.values.reserve(values.size());
  es.vectors.reserve(values.size());
  for (auto i : order) {
    es.values.push_back(values[i]);
    normalize_phase(vectors[i]);
    es.vectors.push_back(std::move(vectors[i]));
  }
  return es;
}

}  // namespace

EigenSystem eig_hermitian(const ComplexMatrix& h, double tol) {
  return eig_hermitian(h, JacobiOptions{.tol = tol});
}

EigenSystem eig_hermitian(const ComplexMatrix& h, JacobiOptions opts) {
  const std::size_t n = h.dim();
  if (n == 0) throw DimensionError("eig_hermitian: empty matrix");
  const double scale = std::max(1.0, h.max_abs());
  if (!h.is_hermitian(std::max(opts.tol, 1e-12) * scale)) {
    throw ContractError("eig_hermitian: input is not Hermitian");
  }

  ComplexMatrix a = 0.5 * (h + h.dagger());
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = opts.tol * std::max(1.0, frobenius_norm(a));

  bool converged = false;
  for (int sweep = 0; sweep <= opts.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) < threshold) {
      converged = true;
      break;
    }
    if (sweep == opts.max_sweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const Complex phase = apq / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("eig_hermitian: no convergence after " +
                           std::to_string(opts.max_sweeps) + " sweeps");
  }

  std::vector<double> values(n);
  std::vector<ComplexVector> vectors(n, ComplexVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = a(i, i).real();
    for (std::size_t k = 0; k < n; ++k) vectors[i][k] = v(k, i);
  }
  return sorted_system(std::move(values), std::move(vectors));
}

EigenSystem eig_rank2_pair(Complex z, std::size_t r, std::size_t c,
                           std::size_t dim) {
  if (r == c) throw ContractError("eig_rank2_pair: r == c");
  if (r >= dim || c >= dim) throw DimensionError("eig_rank2_pair: index out of range");
  const double mag = std::abs(z);
  if (mag == 0.0) throw ContractError("eig_rank2_pair: z == 0");
  const Complex back_phase = std::conj(z) / mag;  // e^{-i arg z}
  const double h = 1.0 / std::sqrt(2.0);

  ComplexVector plus(dim);
  ComplexVector minus(dim);
  plus[r] = h;
  plus[c] = h * back_phase;
  minus[r] = h;
  minus[c] = -h * back_phase;
  normalize_phase(plus);
  normalize_phase(minus);

  EigenSystem es;
  es.values = {mag, -mag};
  es.vectors = {std::move(plus), std::move(minus)};
  return es;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a,
                                std::size_t dim_b) {
  if (m.dim() != dim_a * dim_b) {
    throw DimensionError("partial_transpose: dim != dim_a * dim_b");
  }
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < dim_a; ++i) {
    for (std::size_t j = 0; j < dim_b; ++j) {
      for (std::size_t k = 0; k < dim_a; ++k) {
        for (std::size_t l = 0; l < dim_b; ++l) {
          out(i * dim_b + l, k * dim_b + j) = m(i * dim_b + j, k * dim_b + l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix swap_factors(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (m.dim() != dim_a * dim_b) throw DimensionError("swap_factors: dim != dim_a * dim_b");
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < dim_a; ++i) {
    for (std::size_t j = 0; j < dim_b; ++j) {
      for (std::size_t k = 0; k < dim_a; ++k) {
        for (std::size_t l = 0; l < dim_b; ++l) {
          out(j * dim_a + i, l * dim_a + k) = m(i * dim_b + j, k * dim_b + l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem which) {
  if (m.dim() != dim_a * dim_b) {
    throw DimensionError("partial_trace: dim != dim_a * dim_b");
  }
  if (which == Subsystem::First) {
    ComplexMatrix out(dim_b);
    for (std::size_t j = 0; j < dim_b; ++j) {
      for (std::size_t l = 0; l < dim_b; ++l) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < dim_a; ++i) s += m(i * dim_b + j, i * dim_b + l);
        out(j, l) = s;
      }
    }
    return out;
  }
  ComplexMatrix out(dim_a);
  for (std::size_t i = 0; i < dim_a; ++i) {
    for (std::size_t k = 0; k < dim_a; ++k) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < dim_b; ++j) s += m(i * dim_b + j, k * dim_b + j);
      out(i, k) = s;
    }
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix& h) {
  return eig_hermitian(h).values.back();
}

}  // namespace sumdiff
