#include "commexp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "commexp/errors.hpp"

namespace commexp {

CMatrix::CMatrix(int n) : n_(n) {
  if (n < 1 || n > 3) throw std::invalid_argument("CMatrix: dimension must be 1, 2 or 3");
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diag(std::initializer_list<Complex> entries) {
  CMatrix m(static_cast<int>(entries.size()));
  int i = 0;
  for (Complex v : entries) m(i, i) = v, ++i;
  return m;
}

CMatrix CMatrix::from_rows(int n, std::initializer_list<Complex> entries) {
  if (static_cast<int>(entries.size()) != n * n)
    throw std::invalid_argument("CMatrix::from_rows: need n*n entries");
  CMatrix m(n);
  int k = 0;
  for (Complex v : entries) {
    m(k / n, k % n) = v;
    ++k;
  }
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (n_ != o.n_) throw std::invalid_argument("CMatrix: dimension mismatch");
  for (int k = 0; k < 9; ++k) e_[k] += o.e_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (n_ != o.n_) throw std::invalid_argument("CMatrix: dimension mismatch");
  for (int k = 0; k < 9; ++k) e_[k] -= o.e_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& v : e_) v *= s;
  return *this;
}

CMatrix CMatrix::operator-() const {
  CMatrix r = *this;
  for (auto& v : r.e_) v = -v;
  return r;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("CMatrix: dimension mismatch");
  CMatrix r(a.n_);
  for (int i = 0; i < a.n_; ++i)
    for (int j = 0; j < a.n_; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < a.n_; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix pow_int(const CMatrix& m, int k) {
  CMatrix r = CMatrix::identity(m.dim());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

CMatrix adjoint(const CMatrix& m) {
  CMatrix r(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

Complex trace(const CMatrix& m) {
  Complex t = 0.0;
  for (int i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

Complex det(const CMatrix& m) {
  switch (m.dim()) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    default:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
}

CMatrix adjugate(const CMatrix& m) {
  CMatrix r(m.dim());
  switch (m.dim()) {
    case 1:
      r(0, 0) = 1.0;
      return r;
    case 2:
      r(0, 0) = m(1, 1);
      r(0, 1) = -m(0, 1);
      r(1, 0) = -m(1, 0);
      r(1, 1) = m(0, 0);
      return r;
    default:
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          // Cofactor C_ji: delete row j, column i, signed.
          int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
          int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
          // Cyclic index choice absorbs the (-1)^(i+j) sign.
          r(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
        }
      return r;
  }
}

CMatrix inverse(const CMatrix& m) {
  Complex d = det(m);
  double scale = std::pow(1.0 + max_abs(m), m.dim());
  if (std::abs(d) <= 1e-14 * scale)
    throw SingularMatrixError("inverse: matrix is numerically singular");
  return adjugate(m) * (1.0 / d);
}

double max_abs(const CMatrix& m) {
  double r = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol_entry) {
  if (a.dim() != b.dim()) return false;
  double scale = 1.0 + std::max(max_abs(a), max_abs(b));
  double dev = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) dev = std::max(dev, std::abs(a(i, j) - b(i, j)));
  return dev <= tol_entry * scale;
}

bool approx_zero(const CMatrix& m, double tol_entry, double scale) {
  return max_abs(m) <= tol_entry * scale;
}

bool all_finite(const CMatrix& m) {
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

}  // namespace commexp
