#include "commexp/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "commexp/analysis.hpp"
#include "commexp/catalog.hpp"
#include "commexp/eigen.hpp"
#include "commexp/errors.hpp"
#include "commexp/matfun.hpp"
#include "commexp/rng.hpp"
#include "commexp/spectral.hpp"

namespace commexp {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Recorder {
  SelftestSummary s;

  void note(bool ok, const char* name, std::uint64_t seed, std::string detail) {
    if (ok) {
      ++s.passed;
      return;
    }
    ++s.failed;
    s.violations.push_back({name, seed, std::move(detail)});
  }
};

bool matches_with_assignment(const Spectrum& actual, const Spectrum& predicted, double tol) {
  const int n = static_cast<int>(actual.size());
  std::vector<int> rho(n);
  std::iota(rho.begin(), rho.end(), 0);
  do {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = std::abs(predicted[j] - actual[rho[j]]) <= tol;
    if (ok) return true;
  } while (std::next_permutation(rho.begin(), rho.end()));
  return false;
}

bool notes_clean(const AnalysisReport& r) {
  for (const std::string& s : r.notes) {
    if (s.rfind("cross-check failure:", 0) == 0) return false;
  }
  return true;
}

}  // namespace

CMatrix expm_series(const CMatrix& m) {
  const int n = m.dim();
  int squarings = 0;
  for (double norm = frobenius_norm(m); norm > 0.25; norm *= 0.5) ++squarings;

  CMatrix x = m * Complex(std::ldexp(1.0, -squarings), 0.0);
  CMatrix sum = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = term * x * Complex(1.0 / k, 0.0);
    sum += term;
    if (frobenius_norm(term) <= 1e-20 * (1.0 + frobenius_norm(sum))) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

bool property_l_bruteforce(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("property_l_bruteforce: dimension mismatch");
  }
  const int n = a.dim();
  const Spectrum la = eigenvalues(a, tol);
  const Spectrum mu = eigenvalues(b, tol);

  // Fixed sample points with magnitudes in [0.5, 2]; 25 samples at n <= 3
  // vastly overdetermine the polynomial identity.
  Rng rng(0x7f4a7c15eb1d0a3fULL);
  std::vector<std::pair<Complex, Complex>> samples;
  std::vector<Spectrum> actual;
  for (int i = 0; i < 25; ++i) {
    Complex x = 2.0 * rng.disk_annulus(0.25);
    Complex y = 2.0 * rng.disk_annulus(0.25);
    samples.emplace_back(x, y);
    actual.push_back(eigenvalues(x * a + y * b, tol));
  }

  const double match_tol = 1e-6 * (1.0 + frobenius_norm(a) + frobenius_norm(b));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < 25 && ok; ++i) {
      Spectrum predicted(n);
      for (int j = 0; j < n; ++j) {
        predicted[j] = samples[i].first * la[j] + samples[i].second * mu[perm[j]];
      }
      ok = matches_with_assignment(actual[i], predicted, match_tol);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

SelftestSummary run_selftest(int seeds, int tmax, const Tolerances& tol0, bool inject_fault) {
  if (seeds < 1) throw std::invalid_argument("run_selftest: seeds must be >= 1");
  if (tmax < 1) throw std::invalid_argument("run_selftest: tmax must be >= 1");

  Tolerances tol = tol0;
  if (inject_fault) tol.eps_entry = 0.0;

  Recorder rec;

  // Golden facts for the fixed pairs.
  for (const NamedPair& np : catalog()) {
    AnalysisReport r = analyze(np.a, np.b, tmax, tol);
    const NamedPairExpect& e = np.expected;
    auto flag = [&](const char* what, const std::optional<bool>& want, bool got) {
      if (want) rec.note(got == *want, "catalog-flags", 0, np.name + ": " + what);
    };
    flag("commute", e.commute, r.commute);
    flag("triple_equal", e.triple_equal, r.triple_equal);
    flag("property_l", e.has_property_l, r.property_l.has_value());
    flag("st", e.st, r.st);
    flag("indecomposable", e.indecomposable, r.indecomposable);
    flag("condition3", e.condition3, r.condition3);
    if (e.exceptional_members) {
      rec.note(r.exceptional.members == *e.exceptional_members, "catalog-exceptional", 0,
               np.name);
    }
    rec.note(notes_clean(r), "catalog-crosscheck", 0, np.name);
  }

  for (int s0 = 1; s0 <= seeds; ++s0) {
    const auto seed = static_cast<std::uint64_t>(s0);

    // Spectral exponential against the series oracle.
    {
      Rng rng(0x6a09e667f3bcc909ULL + 0x9e3779b97f4a7c15ULL * seed);
      for (int rep = 0; rep < 4; ++rep) {
        int n = rng.int_range(1, 3);
        CMatrix m = rng.matrix(n, 1.5);
        CMatrix e1 = expm(m, tol);
        CMatrix e2 = expm_series(m);
        double dev = frobenius_norm(e1 - e2) / (1.0 + frobenius_norm(e2));
        rec.note(dev <= 1e-9, "expm-series", seed, "relative deviation " + fmt(dev));
      }
    }

    // Log-splitting invariants.
    {
      Rng rng(0xbb67ae8584caa73bULL + 0x9e3779b97f4a7c15ULL * seed);
      for (int rep = 0; rep < 3; ++rep) {
        int n = rng.int_range(2, 3);
        CMatrix m = rng.matrix(n, 2.0);
        LogSplit ls = log_split(m, tol);
        CMatrix em = expm(m, tol);
        double scale = 1.0 + frobenius_norm(m);
        rec.note(frobenius_norm(ls.f + ls.delta - m) <= 1e-7 * scale, "log-split-sum", seed,
                 "f + delta differs from the input");
        rec.note(
            frobenius_norm(expm(ls.delta, tol) - CMatrix::identity(n)) <= 1e-7 * (1.0 + n),
            "log-split-unit-exp", seed, "exp(delta) differs from the identity");
        rec.note(frobenius_norm(commutator(ls.f, ls.delta)) <=
                     1e-7 * (1.0 + frobenius_norm(ls.f) * frobenius_norm(ls.delta)),
                 "log-split-commute", seed, "f and delta do not commute");
        rec.note(frobenius_norm(expm(ls.f, tol) - em) <= 1e-7 * (1.0 + frobenius_norm(em)),
                 "log-split-same-exp", seed, "exp(f) differs from exp(input)");
        bool band = true;
        for (const Complex& w : eigenvalues(ls.f, tol)) {
          band = band && w.imag() > -kPi - 1e-7 && w.imag() <= kPi + 1e-7;
        }
        rec.note(band, "log-split-band", seed, "spectrum of f leaves the principal band");
        bool lattice = true;
        for (const Complex& w : eigenvalues(ls.delta, tol)) lattice = lattice && in_2pi_z(w, tol);
        rec.note(lattice, "log-split-lattice", seed,
                 "spectrum of delta leaves the 2 i pi lattice");
        rec.note(poly_in_matrix_witness(ls.f, m, tol).representable, "log-split-poly", seed,
                 "f is not a polynomial in the input");
        LogSplit ls2 = log_split(m, tol);
        bool same = true;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            same = same && ls.f(i, j) == ls2.f(i, j) && ls.delta(i, j) == ls2.delta(i, j);
          }
        }
        rec.note(same, "log-split-deterministic", seed, "recomputation changed bits");
      }
    }

    // Pencil linear-spectrum test against the multiset oracle.
    {
      Rng rng(0x3c6ef372fe94f82bULL + 0x9e3779b97f4a7c15ULL * seed);
      auto agree = [&](const char* family, const CMatrix& a, const CMatrix& b) {
        bool fast = property_l(a, b, tol).has_value();
        bool slow = property_l_bruteforce(a, b, tol);
        rec.note(fast == slow, "property-l-oracle", seed, std::string(family) + " disagreed");
      };
      auto st = gen_st_pair(2 + s0 % 2, seed);
      agree("st", st.first, st.second);
      auto cm = gen_commuting_pair(1 + s0 % 3, seed);
      agree("commuting", cm.first, cm.second);
      auto pp = gen_prop21_pair(2 + s0 % 2, seed);
      agree("prop21", pp.first, pp.second);
      StarSample ss = gen_star_pair(seed);
      agree("star", ss.a, ss.b);
      CMatrix r3a = rng.matrix(3, 1.0);
      CMatrix r3b = rng.matrix(3, 1.0);
      agree("random", r3a, r3b);
      CMatrix r2a = rng.matrix(2, 1.0);
      CMatrix r2b = rng.matrix(2, 1.0);
      agree("random", r2a, r2b);
    }

    // Generator families.
    try {
      auto [a, b] = gen_st_pair(2 + s0 % 2, seed);
      rec.note(property_l(a, b, tol).has_value(), "gen-st-property-l", seed,
               "triangularizable pair without the pairing");
      rec.note(is_st_heuristic(a, b, tol), "gen-st-heuristic", seed,
               "heuristic missed a triangularizable pair");
    } catch (const std::exception& e) {
      rec.note(false, "gen-st-exception", seed, e.what());
    }
    try {
      auto [a, b] = gen_prop21_pair(2 + s0 % 2, seed);
      AnalysisReport r = analyze(a, b, tmax, tol);
      rec.note(r.condition3, "gen-prop21-condition3", seed, "equivalence verdict false");
      rec.note(r.exceptional.members.empty(), "gen-prop21-clean", seed,
               "unexpected exceptional integer");
      rec.note(notes_clean(r), "gen-prop21-crosscheck", seed, "cross-check note present");
    } catch (const std::exception& e) {
      rec.note(false, "gen-prop21-exception", seed, e.what());
    }
    try {
      StarSample ss = gen_star_pair(seed);
      rec.note(star_verify(ss.d, ss.a, ss.b, tol), "gen-star-verify", seed,
               "generated decomposition rejected");
      rec.note(exp_triple_equal(ss.a, ss.b, 1.0, tol), "gen-star-triple", seed,
               "triple equality fails at t = 1");
      std::optional<StarDecomp> d2 = star_decompose(ss.a, ss.b, tol);
      bool recovered = d2.has_value() && std::abs(d2->sigma - ss.d.sigma) <= 1e-6 &&
                       std::abs(d2->tau - ss.d.tau) <= 1e-6 &&
                       approx_equal(d2->delta, ss.d.delta, 1e-6) &&
                       approx_equal(d2->theta, ss.d.theta, 1e-6) &&
                       approx_equal(d2->f, ss.d.f, 1e-6) && approx_equal(d2->g, ss.d.g, 1e-6);
      rec.note(recovered, "gen-star-roundtrip", seed, "decomposition not recovered");
    } catch (const std::exception& e) {
      rec.note(false, "gen-star-exception", seed, e.what());
    }
    try {
      auto [a, b] = gen_commuting_pair(1 + s0 % 3, seed);
      rec.note(approx_zero(commutator(a, b), tol.eps_entry,
                           1.0 + max_abs(a) * max_abs(b)),
               "gen-commuting-commutator", seed, "pair does not commute");
      rec.note(exp_triple_equal(a, b, 1.0, tol), "gen-commuting-triple", seed,
               "triple equality fails at t = 1");
      rec.note(property_l(a, b, tol).has_value(), "gen-commuting-property-l", seed,
               "commuting pair without the pairing");
    } catch (const std::exception& e) {
      rec.note(false, "gen-commuting-exception", seed, e.what());
    }

    // Semisimple + nilpotent decomposition.
    {
      Rng rng(0xa54ff53a5f1d36f1ULL + 0x9e3779b97f4a7c15ULL * seed);
      for (int rep = 0; rep < 2; ++rep) {
        int n = rng.int_range(2, 3);
        CMatrix m = rng.matrix(n, 1.2);
        if (rep == 1) {
          // Defective input: one Jordan block of size two under a mild
          // similarity.
          Complex c = rng.unit_disk();
          Complex d = c + 1.0 + rng.unit_disk();
          m = CMatrix::diag(n == 2 ? std::initializer_list<Complex>{c, c}
                                   : std::initializer_list<Complex>{c, c, d});
          m(0, 1) = 1.0;
          CMatrix p = CMatrix::identity(n) + rng.matrix(n, 0.2);
          m = p * m * inverse(p);
        }
        JCDecomp jc = jordan_chevalley(m, tol);
        double scale = 1.0 + frobenius_norm(m);
        rec.note(frobenius_norm(jc.s + jc.n - m) <= 1e-9 * scale, "jc-sum", seed,
                 "s + n differs from the input");
        rec.note(frobenius_norm(commutator(jc.s, jc.n)) <= 1e-7 * scale * scale, "jc-commute",
                 seed, "parts do not commute");
        rec.note(is_nilpotent(jc.n, tol), "jc-nilpotent", seed, "n is not nilpotent");
        rec.note(is_diagonalizable(jc.s, tol), "jc-semisimple", seed, "s is not semisimple");
        Spectrum sm = eigenvalues(m, tol);
        Spectrum s2 = eigenvalues(jc.s, tol);
        bool same_spec = matches_with_assignment(sm, s2, 1e-6 * scale);
        rec.note(same_spec, "jc-spectrum", seed, "spectrum changed");
      }
    }
  }

  return rec.s;
}

}  // namespace commexp
