#include "commexp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "commexp/errors.hpp"
#include "commexp/matfun.hpp"

namespace commexp {

namespace {

// Crossing data of the paired eigenvalue lines t -> t*lambda + mu.
struct CollisionScan {
  std::vector<long> candidates;   // integers t >= 1 where two lines meet
  std::vector<double> abscissas;  // real parts of all finite crossing times
  bool permanent = false;         // some pair of lines coincides for all t
};

CollisionScan scan_collisions(const EigenPairing& p, double eps_eig) {
  CollisionScan sc;
  const int n = static_cast<int>(p.lambda.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Complex li = p.lambda[i], lj = p.lambda[j];
      Complex mi = p.mu[p.perm[i]], mj = p.mu[p.perm[j]];
      Complex dl = li - lj;
      Complex dm = mj - mi;
      double ce = eps_eig * (1.0 + std::max({std::abs(li), std::abs(lj),
                                             std::abs(mi), std::abs(mj)}));
      if (std::abs(dl) <= ce) {
        // Parallel lines: identical when the offsets also agree.
        if (std::abs(dm) <= ce) sc.permanent = true;
        continue;
      }
      Complex tc = dm / dl;
      sc.abscissas.push_back(tc.real());
      long k = std::lround(tc.real());
      if (k >= 1 && std::abs(dm - static_cast<double>(k) * dl) <= ce)
        sc.candidates.push_back(k);
    }
  }
  std::sort(sc.candidates.begin(), sc.candidates.end());
  sc.candidates.erase(std::unique(sc.candidates.begin(), sc.candidates.end()),
                      sc.candidates.end());
  return sc;
}

// Diagonalizability of t*da + db at generic t, tested at three distinct
// samples clear of every crossing abscissa. Each k x k minor of
// t*da + db - nu(t)*I is a polynomial of degree <= 2 in t along a linear
// eigenvalue nu(t), so rank deficiency at three points forces it everywhere.
bool generic_diagonalizable(const CMatrix& da, const CMatrix& db, int tmax,
                            const std::vector<double>& avoid,
                            const Tolerances& tol) {
  for (int s = 0; s < 3; ++s) {
    double t = tmax + 11.3 + 12.4 * s;
    bool moved = true;
    while (moved) {
      moved = false;
      for (double x : avoid) {
        if (std::abs(t - x) < 0.25) {
          t += 0.37;
          moved = true;
        }
      }
    }
    if (!is_diagonalizable(t * da + db, tol)) return false;
  }
  return true;
}

}  // namespace

double exp_triple_deviation(const CMatrix& a, const CMatrix& b, double t,
                            const Tolerances& tol) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("exp_triple_deviation: dimension mismatch");
  CMatrix ta = t * a;
  CMatrix ea = expm(ta, tol);
  CMatrix eb = expm(b, tol);
  CMatrix sum = expm(ta + b, tol);
  CMatrix ab = ea * eb;
  CMatrix ba = eb * ea;
  double scale = 1.0 + std::max({frobenius_norm(sum), frobenius_norm(ab),
                                 frobenius_norm(ba)});
  double dev = std::max({frobenius_norm(sum - ab), frobenius_norm(sum - ba),
                         frobenius_norm(ab - ba)});
  return dev / scale;
}

bool exp_triple_equal(const CMatrix& a, const CMatrix& b, double t,
                      const Tolerances& tol) {
  return exp_triple_deviation(a, b, t, tol) <= tol.eps_entry;
}

std::vector<SweepRecord> sweep_table(const CMatrix& a, const CMatrix& b,
                                     int tmax, const Tolerances& tol) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("sweep_table: dimension mismatch");
  if (tmax < 1) throw std::invalid_argument("sweep_table: tmax must be >= 1");
  std::vector<SweepRecord> out;
  out.reserve(tmax);
  for (int t = 1; t <= tmax; ++t) {
    double dev = exp_triple_deviation(a, b, static_cast<double>(t), tol);
    out.push_back({t, dev, dev <= tol.eps_entry});
  }
  return out;
}

ExceptionalSet condition1_sweep(const CMatrix& a, const CMatrix& b, int tmax,
                                const Tolerances& tol) {
  ExceptionalSet es;
  es.sweep_bound = tmax;
  for (const SweepRecord& r : sweep_table(a, b, tmax, tol))
    if (!r.pass) es.members.push_back(r.t);
  return es;
}

ExceptionalSet exceptional_set_solver(const CMatrix& a, const CMatrix& b,
                                      const EigenPairing& pairing, int tmax,
                                      const Tolerances& tol) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("exceptional_set_solver: dimension mismatch");
  if (tmax < 1)
    throw std::invalid_argument("exceptional_set_solver: tmax must be >= 1");
  if (!exp_triple_equal(a, b, 1.0, tol))
    throw PreconditionError("exceptional_set_solver: triple equality fails at t = 1");
  if (!pairing_matches(a, b, pairing, tol))
    throw PreconditionError("exceptional_set_solver: pairing fails the linear-spectrum test");

  ExceptionalSet es;
  es.sweep_bound = tmax;

  CollisionScan sc = scan_collisions(pairing, tol.eps_eig);
  std::set<long> candset(sc.candidates.begin(), sc.candidates.end());

  std::set<long> members;
  std::set<long> beyond;  // candidates past the sweep bound, verified below
  for (long c : sc.candidates)
    if (c > tmax) beyond.insert(c);
  for (long t = 1; t <= tmax; ++t)
    if (!exp_triple_equal(a, b, static_cast<double>(t), tol)) members.insert(t);

  // Failures can only happen where t*Delta + Theta is defective, Delta and
  // Theta being the log-split semisimple parts (spectra in 2 i pi Z). That
  // is confined to the crossing candidates unless two eigenvalue lines
  // coincide identically, in which case defectiveness must be ruled out at
  // generic t.
  bool certified = false;
  if (approx_zero(commutator(a, b), tol.eps_entry, 1.0 + max_abs(a) * max_abs(b))) {
    certified = true;  // commuting pair: the identity holds for every t
  } else {
    try {
      CMatrix da = log_split(a, tol).delta;
      CMatrix db = log_split(b, tol).delta;
      auto pl2 = property_l(da, db, tol);
      if (pl2) {
        CollisionScan sc2 = scan_collisions(*pl2, tol.eps_eig);
        for (long c : sc2.candidates) {
          candset.insert(c);
          if (c > tmax) beyond.insert(c);
        }
        if (!sc2.permanent) {
          certified = true;
        } else if (approx_zero(commutator(da, db), tol.eps_entry,
                               1.0 + max_abs(da) * max_abs(db))) {
          certified = true;  // simultaneously diagonalizable: exp is I for all t
        } else {
          std::vector<double> avoid = sc2.abscissas;
          avoid.insert(avoid.end(), sc.abscissas.begin(), sc.abscissas.end());
          certified = generic_diagonalizable(da, db, tmax, avoid, tol);
        }
      }
    } catch (const SingularMatrixError&) {
      certified = false;  // log split unavailable; no claim beyond the sweep
    }
  }

  for (long c : beyond)
    if (!exp_triple_equal(a, b, static_cast<double>(c), tol)) members.insert(c);

  es.members.assign(members.begin(), members.end());
  es.candidates.assign(candset.begin(), candset.end());
  es.complete = certified;
  return es;
}

bool condition3_verdict(const CMatrix& a, const CMatrix& b,
                        const Tolerances& tol) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("condition3_verdict: dimension mismatch");
  return exp_triple_equal(a, b, 1.0, tol) && property_l(a, b, tol).has_value();
}

bool star_verify(const StarDecomp& d, const CMatrix& a, const CMatrix& b,
                 const Tolerances& tol) {
  if (a.dim() != 3 || b.dim() != 3) return false;
  if (d.delta.dim() != 3 || d.theta.dim() != 3 || d.f.dim() != 3 || d.g.dim() != 3)
    return false;

  const CMatrix id = CMatrix::identity(3);
  if (!approx_equal(a, d.sigma * id + d.delta + d.f, tol.eps_entry)) return false;
  if (!approx_equal(b, d.tau * id + d.theta + d.g, tol.eps_entry)) return false;

  const double nf = max_abs(d.f), ng = max_abs(d.g);
  const double nd = max_abs(d.delta), nt = max_abs(d.theta);
  if (!approx_zero(d.f * d.f, tol.eps_entry, 1.0 + nf * nf)) return false;
  if (!approx_zero(d.g * d.g, tol.eps_entry, 1.0 + ng * ng)) return false;
  if (!approx_zero(d.f * d.g, tol.eps_entry, 1.0 + nf * ng)) return false;
  if (!approx_zero(d.g * d.f, tol.eps_entry, 1.0 + nf * ng)) return false;
  if (!approx_zero(commutator(d.delta, d.f), tol.eps_entry, 1.0 + nd * nf)) return false;
  if (!approx_zero(commutator(d.theta, d.g), tol.eps_entry, 1.0 + nt * ng)) return false;
  if (!approx_zero(commutator(d.f, d.theta) - commutator(d.delta, d.g),
                   tol.eps_entry, 1.0 + nf * nt + nd * ng))
    return false;
  if (!approx_equal(expm(d.delta, tol), id, tol.eps_entry)) return false;
  if (!approx_equal(expm(d.theta, tol), id, tol.eps_entry)) return false;
  if (!approx_equal(expm(d.delta + d.theta, tol), id, tol.eps_entry)) return false;
  return exp_triple_equal(a, b, 1.0, tol);
}

namespace {

// sigma is the repeated eigenvalue of logm(expm(m)); peel it off the log to
// get the square-zero part, keep the log-split remainder as the semisimple
// 2 i pi Z part.
bool star_split_one(const CMatrix& m, const Tolerances& tol, const char* which,
                    Complex& scalar_out, CMatrix& nil_out, CMatrix& semi_out,
                    std::vector<std::string>* notes) {
  LogSplit ls = log_split(m, tol);
  Spectrum sf = eigenvalues(ls.f, tol);
  auto clusters = eigen_clusters(sf, tol.eps_eig);
  const std::vector<int>* rep = nullptr;
  for (const auto& c : clusters)
    if (c.size() >= 2) rep = &c;
  if (!rep) {
    if (notes)
      notes->push_back(std::string("star split of ") + which +
                       ": log has three separate eigenvalues, no repeated one to take as the scalar");
    return false;
  }
  Complex sigma{};
  for (int i : *rep) sigma += sf[i];
  sigma /= static_cast<double>(rep->size());
  scalar_out = sigma;
  nil_out = ls.f - sigma * CMatrix::identity(3);
  semi_out = ls.delta;
  return true;
}

}  // namespace

std::optional<StarDecomp> star_decompose(const CMatrix& a, const CMatrix& b,
                                         const Tolerances& tol,
                                         std::vector<std::string>* notes) {
  if (a.dim() != 3 || b.dim() != 3)
    throw PreconditionError("star_decompose: dimension must be 3");
  if (!exp_triple_equal(a, b, 1.0, tol))
    throw PreconditionError("star_decompose: exponential identity fails at t = 1");
  if (approx_zero(commutator(a, b), tol.eps_entry, 1.0 + max_abs(a) * max_abs(b)))
    throw PreconditionError("star_decompose: pair commutes");
  if (!is_indecomposable(a, b, tol))
    throw PreconditionError("star_decompose: pair is decomposable");

  StarDecomp d;
  if (!star_split_one(a, tol, "A", d.sigma, d.f, d.delta, notes)) return std::nullopt;
  if (!star_split_one(b, tol, "B", d.tau, d.g, d.theta, notes)) return std::nullopt;
  if (!star_verify(d, a, b, tol)) {
    if (notes) notes->push_back("star decomposition candidate failed verification");
    return std::nullopt;
  }
  return d;
}

AnalysisReport analyze(const CMatrix& a, const CMatrix& b, int tmax,
                       const Tolerances& tol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("analyze: dimension mismatch");
  if (tmax < 1) throw std::invalid_argument("analyze: tmax must be >= 1");

  AnalysisReport r;
  r.dim = a.dim();
  r.tolerances = tol;
  r.commute = approx_zero(commutator(a, b), tol.eps_entry, 1.0 + max_abs(a) * max_abs(b));
  r.triple_equal = exp_triple_equal(a, b, 1.0, tol);
  r.property_l = property_l(a, b, tol);
  r.st = is_st_heuristic(a, b, tol);
  r.indecomposable = is_indecomposable(a, b, tol);
  r.condition3 = r.triple_equal && r.property_l.has_value();

  ExceptionalSet sweep = condition1_sweep(a, b, tmax, tol);
  if (r.condition3) {
    try {
      r.exceptional = exceptional_set_solver(a, b, *r.property_l, tmax, tol);
    } catch (const PreconditionError& e) {
      r.exceptional = sweep;
      r.notes.push_back(std::string("cross-check failure: solver rejected a condition3 pair: ") + e.what());
    }
    std::vector<long> in_range;
    for (long m : r.exceptional.members)
      if (m <= tmax) in_range.push_back(m);
    if (in_range != sweep.members)
      r.notes.push_back("cross-check failure: solver and sweep disagree inside the sweep bound");
    if (r.exceptional.complete) {
      for (long m : sweep.members)
        if (!std::binary_search(r.exceptional.candidates.begin(),
                                r.exceptional.candidates.end(), m))
          r.notes.push_back("cross-check failure: sweep failure at t = " + std::to_string(m) +
                            " outside the collision candidates");
    }
  } else {
    r.exceptional = sweep;
    if (r.property_l.has_value() && sweep.members.empty())
      r.notes.push_back("cross-check failure: condition3 false with property L present and a clean sweep");
  }

  if (r.dim == 3 && r.triple_equal && !r.commute && r.indecomposable)
    r.star = star_decompose(a, b, tol, &r.notes);
  return r;
}

}  // namespace commexp
