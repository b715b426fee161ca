#pragma once

#include <optional>
#include <string>
#include <vector>

#include "commexp/matrix.hpp"
#include "commexp/spectral.hpp"

namespace commexp {

// Max pairwise Frobenius distance between exp(t*a + b), exp(t*a)*exp(b) and
// exp(b)*exp(t*a), divided by 1 + the largest Frobenius norm of the three.
double exp_triple_deviation(const CMatrix& a, const CMatrix& b, double t,
                            const Tolerances& tol = {});

// The three products agree within eps_entry at the product scale.
bool exp_triple_equal(const CMatrix& a, const CMatrix& b, double t = 1.0,
                      const Tolerances& tol = {});

struct SweepRecord {
  long t = 0;
  double deviation = 0.0;
  bool pass = false;
};

// Evaluates the triple equality at every integer t in [1, tmax].
std::vector<SweepRecord> sweep_table(const CMatrix& a, const CMatrix& b,
                                     int tmax, const Tolerances& tol = {});

// Positive integers where the triple equality fails. `members` lists the
// failures actually found; `candidates` lists the eigenvalue-collision
// integers the solver derives (empty for the sweep-only path); `complete`
// is set only when theory certifies there are no failures outside `members`.
struct ExceptionalSet {
  std::vector<long> members;
  std::vector<long> candidates;
  long sweep_bound = 0;
  bool complete = false;
};

// Brute-force sweep over [1, tmax]. Never complete: a finite sweep alone
// proves nothing beyond its bound.
ExceptionalSet condition1_sweep(const CMatrix& a, const CMatrix& b, int tmax,
                                const Tolerances& tol = {});

// Collision solver. Preconditions (throws PreconditionError): the triple
// equality holds at t = 1 and `pairing` passes the linear-spectrum grid
// test. Candidates are the positive integers t with t*lambda_i + mu_i =
// t*lambda_j + mu_j for some i != j; every candidate is verified by direct
// exponential comparison, as is all of [1, tmax]. Completeness is certified
// through the log-split semisimple parts: failures can occur only where
// t*Delta + Theta is defective, which is confined to the candidate set
// unless a collision persists for all t (then a generic-t diagonalizability
// certificate is required).
ExceptionalSet exceptional_set_solver(const CMatrix& a, const CMatrix& b,
                                      const EigenPairing& pairing, int tmax,
                                      const Tolerances& tol = {});

// Right-hand side of the dimension <= 3 equivalence: the triple equality at
// t = 1 together with an eigenvalue pairing. Equivalent to the finiteness
// of the exceptional set.
bool condition3_verdict(const CMatrix& a, const CMatrix& b,
                        const Tolerances& tol = {});

// a = sigma I + delta + f, b = tau I + theta + g with square-zero commuting
// nilpotents f, g and unit-exponential semisimple parts delta, theta.
struct StarDecomp {
  Complex sigma;
  Complex tau;
  CMatrix delta;
  CMatrix theta;
  CMatrix f;
  CMatrix g;
};

// Checks every StarDecomp invariant against (a, b): reconstruction of both
// inputs, f^2 = g^2 = fg = gf = 0, exp(delta) = exp(theta) =
// exp(delta + theta) = I, [f, theta] = [delta, g], delta f = f delta,
// theta g = g theta, and the triple equality at t = 1.
bool star_verify(const StarDecomp& d, const CMatrix& a, const CMatrix& b,
                 const Tolerances& tol = {});

// Recovers a StarDecomp from a 3x3 pair: sigma is the multiplicity >= 2
// eigenvalue of logm_principal(expm(a)), f the rest of that log, delta the
// log-split remainder; likewise tau, g, theta from b. Preconditions (throws
// PreconditionError): dimension 3, triple equality at t = 1, ab != ba,
// indecomposable. Returns absent with a diagnostic when the log has three
// separate eigenvalues or the candidate fails verification.
std::optional<StarDecomp> star_decompose(const CMatrix& a, const CMatrix& b,
                                         const Tolerances& tol = {},
                                         std::vector<std::string>* notes = nullptr);

struct AnalysisReport {
  int dim = 0;
  Tolerances tolerances;
  bool commute = false;
  bool triple_equal = false;
  std::optional<EigenPairing> property_l;
  bool st = false;
  bool indecomposable = false;
  bool condition3 = false;
  ExceptionalSet exceptional;
  std::optional<StarDecomp> star;
  std::vector<std::string> notes;
};

// Full workup: commutation, triple equality, property L, the ST heuristic,
// indecomposability, the exceptional set (solver when its preconditions
// hold, plain sweep otherwise), and a star decomposition for non-commuting
// indecomposable 3x3 pairs with equal exponentials. The sweep and the
// solver verdicts are cross-validated; any disagreement is recorded as a
// "cross-check failure:" note, never silently resolved.
AnalysisReport analyze(const CMatrix& a, const CMatrix& b, int tmax = 50,
                       const Tolerances& tol = {});

}  // namespace commexp
