#include "commexp/catalog.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "commexp/eigen.hpp"
#include "commexp/errors.hpp"
#include "commexp/rng.hpp"
#include "commexp/spectral.hpp"

namespace commexp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxRounds = 1000;

void require_dim(int n, const char* who) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument(std::string(who) + ": dimension must be between 1 and 3");
  }
}

// Random matrix with singular-value condition number at most max_cond.
CMatrix random_similarity(Rng& rng, int n, double max_cond) {
  for (int round = 0; round < kMaxRounds; ++round) {
    CMatrix p = rng.matrix(n, 1.0);
    std::vector<double> sv = singular_values(p);
    if (sv.back() > 0.0 && sv.front() <= max_cond * sv.back()) return p;
  }
  throw GenerationError("random_similarity: no well-conditioned draw");
}

// Near-identity similarity; small spread keeps the conditioning tight so
// conjugation loses at most a couple of digits.
CMatrix near_identity_similarity(Rng& rng, int n, double spread, double max_cond) {
  for (int round = 0; round < kMaxRounds; ++round) {
    CMatrix p = CMatrix::identity(n) + rng.matrix(n, spread);
    std::vector<double> sv = singular_values(p);
    if (sv.back() > 0.0 && sv.front() <= max_cond * sv.back()) return p;
  }
  throw GenerationError("near_identity_similarity: no well-conditioned draw");
}

// n distinct integers in [lo, hi].
std::vector<int> distinct_ints(Rng& rng, int n, int lo, int hi) {
  std::vector<int> out;
  while (static_cast<int>(out.size()) < n) {
    int v = rng.int_range(lo, hi);
    bool fresh = true;
    for (int u : out) fresh = fresh && (u != v);
    if (fresh) out.push_back(v);
  }
  return out;
}

CMatrix basis_unit(int n, int i, int j) {
  CMatrix e = CMatrix::zero(n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

const std::vector<NamedPair>& catalog() {
  static const std::vector<NamedPair> entries = [] {
    const Complex tp(0.0, 2.0 * kPi);  // 2 i pi

    CMatrix a0 = CMatrix::diag({tp, 2.0 * tp, Complex{}});
    CMatrix b0 = CMatrix::from_rows(3, {2.0 * tp, tp,       tp,
                                        tp,       3.0 * tp, -2.0 * tp,
                                        tp,       tp,       Complex{}});

    std::vector<NamedPair> v;

    {
      NamedPair p;
      p.name = "tu";
      p.a = a0;
      p.b = b0;
      p.expected.commute = false;
      p.expected.triple_equal = true;
      p.expected.has_property_l = true;
      p.expected.st = false;
      p.expected.indecomposable = true;
      p.expected.condition3 = true;
      p.expected.exceptional_members = std::vector<long>{};
      v.push_back(std::move(p));
    }
    {
      NamedPair p;
      p.name = "tu-scaled";
      p.a = a0;
      p.b = -2.0 * b0;
      p.expected.commute = false;
      p.expected.triple_equal = true;
      p.expected.has_property_l = true;
      p.expected.condition3 = true;
      p.expected.exceptional_members = std::vector<long>{2, 3, 4};
      v.push_back(std::move(p));
    }
    {
      NamedPair p;
      p.name = "dim2-remark";
      const Complex ip(0.0, kPi);
      p.a = CMatrix::diag({ip, -ip});
      p.b = CMatrix::from_rows(2, {Complex(0.0, -11.0 * kPi), Complex(6.0 * kPi, 0.0),
                                   Complex(16.0 * kPi, 0.0),  Complex(0.0, 11.0 * kPi)});
      p.expected.commute = false;
      p.expected.triple_equal = true;
      p.expected.has_property_l = false;
      p.expected.condition3 = false;
      v.push_back(std::move(p));
    }

    return v;
  }();
  return entries;
}

std::pair<CMatrix, CMatrix> gen_st_pair(int n, std::uint64_t seed) {
  require_dim(n, "gen_st_pair");
  Rng rng(seed ^ 0x5b8af3201dd9c44bULL);
  CMatrix t1 = rng.upper_triangular(n, 1.0);
  CMatrix t2 = rng.upper_triangular(n, 1.0);
  CMatrix p = random_similarity(rng, n, 20.0);
  CMatrix pi = inverse(p);
  return {p * t1 * pi, p * t2 * pi};
}

std::pair<CMatrix, CMatrix> gen_prop21_pair(int n, std::uint64_t seed) {
  require_dim(n, "gen_prop21_pair");
  Rng rng(seed ^ 0x93c467e37db0c7a5ULL);
  const Complex tp(0.0, 2.0 * kPi);

  for (int round = 0; round < kMaxRounds; ++round) {
    std::vector<int> ka = distinct_ints(rng, n, -5, 5);
    std::vector<int> kb = distinct_ints(rng, n, -5, 5);

    // Lines t -> 2 i pi (t ka_i + kb_i); a crossing of lines i and j at a
    // positive integer t means an exceptional value, which this family must
    // not have. The abscissa is the exact rational below.
    bool clean = true;
    for (int i = 0; i < n && clean; ++i) {
      for (int j = i + 1; j < n && clean; ++j) {
        int num = kb[j] - kb[i];
        int den = ka[i] - ka[j];
        if (num % den == 0 && num / den >= 1) clean = false;
      }
    }
    if (!clean) continue;

    CMatrix a = CMatrix::zero(n);
    CMatrix b = CMatrix::zero(n);
    for (int i = 0; i < n; ++i) {
      a(i, i) = tp * static_cast<double>(ka[i]);
      b(i, i) = tp * static_cast<double>(kb[i]);
      for (int j = i + 1; j < n; ++j) b(i, j) = 3.0 * rng.unit_disk();
    }
    return {a, b};
  }
  throw GenerationError("gen_prop21_pair: no crossing-free spectrum in 1000 rounds");
}

StarSample gen_star_pair(std::uint64_t seed) {
  Rng rng(seed ^ 0xd1b54a32d192ed03ULL);
  const Complex tp(0.0, 2.0 * kPi);

  for (int round = 0; round < kMaxRounds; ++round) {
    const int k = rng.int_range(-4, 4);
    int m = k;
    while (m == k) m = rng.int_range(-4, 4);
    const int p = rng.int_range(-4, 4);
    int q = p;
    // k + p == m + q would put a repeated eigenvalue under the coupling and
    // break diagonalizability of delta + theta, which the invariants need.
    while (q == p || k + p == m + q) q = rng.int_range(-4, 4);

    const Complex f = 2.0 * rng.disk_annulus(0.4);
    const Complex g = 2.0 * rng.disk_annulus(0.4);
    const Complex zeta = 2.0 * rng.disk_annulus(0.4);
    const Complex sigma(rng.symmetric(), 1.2 * rng.symmetric());
    const Complex tau(rng.symmetric(), 1.2 * rng.symmetric());

    CMatrix delta0 = CMatrix::diag({tp * static_cast<double>(k),
                                    tp * static_cast<double>(k),
                                    tp * static_cast<double>(m)});
    CMatrix theta0 = CMatrix::diag({tp * static_cast<double>(p),
                                    tp * static_cast<double>(p),
                                    tp * static_cast<double>(q)});
    theta0(2, 1) = zeta;
    CMatrix f0 = f * basis_unit(3, 0, 1);
    CMatrix g0 = g * basis_unit(3, 0, 1);

    CMatrix a0 = sigma * CMatrix::identity(3) + delta0 + f0;
    CMatrix b0 = tau * CMatrix::identity(3) + theta0 + g0;

    CMatrix pm = near_identity_similarity(rng, 3, 0.4, 10.0);
    CMatrix pmi = inverse(pm);

    StarSample s;
    s.a = pm * a0 * pmi;
    s.b = pm * b0 * pmi;
    s.d.sigma = sigma;
    s.d.tau = tau;
    s.d.delta = pm * delta0 * pmi;
    s.d.theta = pm * theta0 * pmi;
    s.d.f = pm * f0 * pmi;
    s.d.g = pm * g0 * pmi;

    if (star_verify(s.d, s.a, s.b, Tolerances{})) return s;
  }
  throw GenerationError("gen_star_pair: no verifiable draw in 1000 rounds");
}

std::pair<CMatrix, CMatrix> gen_commuting_pair(int n, std::uint64_t seed) {
  require_dim(n, "gen_commuting_pair");
  Rng rng(seed ^ 0x2545f4914f6cdd1dULL);
  CMatrix x = rng.matrix(n, 0.9);
  CMatrix b = CMatrix::identity(n) * rng.unit_disk();
  CMatrix xp = CMatrix::identity(n);
  for (int d = 1; d <= 3; ++d) {
    xp = xp * x;
    b += xp * rng.unit_disk();
  }
  return {x, b};
}

}  // namespace commexp
