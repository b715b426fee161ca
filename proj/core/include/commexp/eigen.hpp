#pragma once

#include <vector>

#include "commexp/matrix.hpp"

namespace commexp {

// Monic characteristic polynomial det(zI - M).
// coeff[k] multiplies z^k; coeff[n] == 1.
struct CharPoly {
  int n = 1;
  std::vector<Complex> coeff;

  Complex eval(Complex z) const;
  Complex eval_deriv(Complex z) const;
};

CharPoly char_poly(const CMatrix& m);

// All n eigenvalues with algebraic multiplicity, sorted by (Re, Im).
// Closed-form roots (quadratic formula / Cardano with deflation), Newton
// polished. Near-coincident roots that verifiably belong to a multiple root
// of the stored polynomial are snapped to a common refined value, so exact
// multiple eigenvalues come out exactly equal.
using Spectrum = std::vector<Complex>;
Spectrum eigenvalues(const CMatrix& m, const Tolerances& tol = {});

// Groups indices of a spectrum into clusters by transitive closure of
// |lambda_i - lambda_j| <= eps_eig. Clusters are ordered by first member.
std::vector<std::vector<int>> eigen_clusters(const Spectrum& s, double eps_eig);

// Singular values in descending order (one-sided Jacobi, high relative accuracy).
std::vector<double> singular_values(const CMatrix& m);

// Number of singular values strictly above eps_rank * sigma_max.
int rank_eps(const CMatrix& m, const Tolerances& tol = {});

// True iff m^n vanishes at the eps_entry * ||m||^n scale.
bool is_nilpotent(const CMatrix& m, const Tolerances& tol = {});

// True iff every eigenvalue cluster of multiplicity k satisfies
// rank_eps(m - lambda I) == n - k.
bool is_diagonalizable(const CMatrix& m, const Tolerances& tol = {});

namespace detail {

// One-sided Jacobi SVD on an arbitrary tall matrix given as column vectors.
// Returns singular values (descending) and, if requested, the matching right
// singular vectors (columns, orthonormal).
struct JacobiSVD {
  std::vector<double> sigma;
  std::vector<std::vector<Complex>> v_columns;
};
JacobiSVD jacobi_svd(std::vector<std::vector<Complex>> columns, bool want_v);

}  // namespace detail

}  // namespace commexp
