#pragma once

#include <optional>
#include <vector>

#include "commexp/eigen.hpp"
#include "commexp/matrix.hpp"

namespace commexp {

// |z - 2*i*pi*k| < eps_eig for the nearest integer k.
bool in_2pi_z(Complex z, const Tolerances& tol = {});

// No two spectrum members differ by a nonzero integer multiple of 2*i*pi
// (within eps_eig). Equal members are not a violation.
bool is_2pi_cf(const Spectrum& s, const Tolerances& tol = {});

// Witness for eigenvalue-pairing linearity: eigenvalues of x*a + y*b are
// x*lambda[i] + y*mu[perm[i]] identically in (x, y).
struct EigenPairing {
  Spectrum lambda;
  Spectrum mu;
  std::vector<int> perm;
};

// Tests every pairing of the two spectra against char_poly(x*a + y*b) on the
// integer grid x, y in {1..n+1}; the degree bound makes grid agreement
// equivalent to the polynomial identity. Returns the lexicographically
// smallest passing permutation, or absent.
std::optional<EigenPairing> property_l(const CMatrix& a, const CMatrix& b,
                                       const Tolerances& tol = {});

// Same grid test restricted to one given pairing.
bool pairing_matches(const CMatrix& a, const CMatrix& b,
                     const EigenPairing& pairing, const Tolerances& tol = {});

// McCoy-style simultaneous-triangularizability heuristic: w * (ab - ba) must
// be nilpotent for every word w over {a, b} up to length 2*dim. Sufficient at
// these dimensions because the word algebra is spanned well below that bound.
bool is_st_heuristic(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});

// Basis of {x : xa == ax and xb == bx}, via the nullspace of the stacked
// Sylvester operator (singular value thresholding at eps_rank). Always
// contains the identity direction.
std::vector<CMatrix> commutant_basis(const CMatrix& a, const CMatrix& b,
                                     const Tolerances& tol = {});

// No nontrivial idempotent commutes with both matrices: every commutant basis
// element and 20 deterministic random combinations x satisfy that
// x - (trace(x)/dim) I is nilpotent, i.e. the commutant is local.
bool is_indecomposable(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});

}  // namespace commexp
