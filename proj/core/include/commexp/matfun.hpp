#pragma once

#include <string>
#include <vector>

#include "commexp/eigen.hpp"
#include "commexp/matrix.hpp"

namespace commexp {

// Matrix exponential. Eigenvector diagonalization when all eigenvalue
// clusters are simple, otherwise the semisimple/nilpotent split
// exp(S) * exp(N) with exp(S) assembled from spectral projectors and
// exp(N) a terminating series.
CMatrix expm(const CMatrix& m, const Tolerances& tol = {});

// Principal matrix logarithm: the primary function induced by the scalar
// branch Im log in (-pi, pi]. Eigenvalues whose argument lies within eps_eig
// of -pi are assigned to the +pi side, so the branch choice near the negative
// real axis is deterministic. Throws SingularMatrixError on (numerically)
// singular input. When a multiple eigenvalue sits near the branch boundary
// the computation is ill conditioned; a warning is appended to *notes if
// given.
CMatrix logm_principal(const CMatrix& m, const Tolerances& tol = {},
                       std::vector<std::string>* notes = nullptr);

// m = s + n with s diagonalizable, n nilpotent, s n == n s.
// Both parts are polynomials in m (spectral projector construction).
struct JCDecomp {
  CMatrix s;
  CMatrix n;
};
JCDecomp jordan_chevalley(const CMatrix& m, const Tolerances& tol = {});

// a = f + delta where f = logm_principal(expm(a)) and delta = a - f.
// exp(f) == exp(a), exp(delta) == I, both commute, spectrum of delta lies
// in 2*i*pi*Z and the spectrum of f lies in the principal horizontal band.
struct LogSplit {
  CMatrix f;
  CMatrix delta;
};
LogSplit log_split(const CMatrix& a, const Tolerances& tol = {});

// Least-squares membership of p in the polynomial algebra generated by "of"
// (span of I, of, ..., of^(dim-1), Gram-Schmidt with column dropping).
// representable iff the Frobenius residual is below
// eps_eig * (1 + ||p||_F); coeff[k] multiplies of^k when representable.
struct PolyWitness {
  bool representable = false;
  std::vector<Complex> coeff;
  double residual = 0.0;
};
PolyWitness poly_in_matrix_witness(const CMatrix& p, const CMatrix& of,
                                   const Tolerances& tol = {});

namespace detail {

// Both exponential paths, exposed so tests can cross-check them directly.
CMatrix expm_via_eigenvectors(const CMatrix& m, const Tolerances& tol);
CMatrix expm_via_jc(const CMatrix& m, const Tolerances& tol);

}  // namespace detail

}  // namespace commexp
