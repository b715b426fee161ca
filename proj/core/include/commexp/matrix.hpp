#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <vector>

namespace commexp {

using Complex = std::complex<double>;

// Tolerance bundle shared by every numerical decision in the library.
//   eps_entry: entrywise comparison threshold, relative to 1 + max norm of the operands
//   eps_eig:   eigenvalue coincidence / lattice-membership threshold (absolute)
//   eps_rank:  singular value threshold, relative to the largest singular value
struct Tolerances {
  double eps_entry = 1e-9;
  double eps_eig = 1e-7;
  double eps_rank = 1e-9;

  bool valid() const {
    return eps_entry > 0.0 && eps_eig > 0.0 && eps_rank > 0.0;
  }
};

// Dense complex square matrix of runtime dimension 1, 2 or 3.
// Fixed-capacity storage, row-major. Value semantics throughout.
class CMatrix {
 public:
  CMatrix() : n_(1) {}
  explicit CMatrix(int n);

  static CMatrix zero(int n) { return CMatrix(n); }
  static CMatrix identity(int n);
  static CMatrix diag(std::initializer_list<Complex> entries);
  // Row-major entry list, n*n entries.
  static CMatrix from_rows(int n, std::initializer_list<Complex> entries);

  int dim() const { return n_; }

  Complex& operator()(int i, int j) { return e_[i * 3 + j]; }
  const Complex& operator()(int i, int j) const { return e_[i * 3 + j]; }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  CMatrix operator-() const;

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  int n_;
  // Unused slots stay zero so dimension-oblivious loops over 3x3 are harmless.
  std::array<Complex, 9> e_{};
};

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix pow_int(const CMatrix& m, int k);
CMatrix adjoint(const CMatrix& m);

Complex trace(const CMatrix& m);
Complex det(const CMatrix& m);
// Transposed cofactor matrix; adjugate(m) * m == det(m) * I.
CMatrix adjugate(const CMatrix& m);
// Exact closed-form inverse via adjugate; throws SingularMatrixError.
CMatrix inverse(const CMatrix& m);

double max_abs(const CMatrix& m);
double frobenius_norm(const CMatrix& m);

// max |a_ij - b_ij| <= tol_entry * (1 + max(max_abs(a), max_abs(b)))
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol_entry);
// max |m_ij| <= tol_entry * scale
bool approx_zero(const CMatrix& m, double tol_entry, double scale);

bool all_finite(const CMatrix& m);

}  // namespace commexp
