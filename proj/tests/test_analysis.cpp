#include "doctest.h"

#include <cmath>

#include "commexp/analysis.hpp"
#include "commexp/catalog.hpp"
#include "commexp/errors.hpp"
#include "commexp/matfun.hpp"
#include "commexp/rng.hpp"

using namespace commexp;

namespace {

bool has_crosscheck_note(const AnalysisReport& r) {
  for (const auto& s : r.notes)
    if (s.rfind("cross-check failure:", 0) == 0) return true;
  return false;
}

std::vector<long> in_range_failures(const CMatrix& a, const CMatrix& b, int lo, int hi) {
  std::vector<long> out;
  for (const SweepRecord& rec : sweep_table(a, b, hi)) {
    if (!rec.pass && rec.t >= lo) out.push_back(rec.t);
  }
  return out;
}

}  // namespace

TEST_CASE("triple deviation and equality") {
  const auto& tu = catalog()[0];
  for (int t : {1, 7, 50}) {
    CHECK(exp_triple_deviation(tu.a, tu.b, t) < 1e-10);
    CHECK(exp_triple_equal(tu.a, tu.b, t));
  }

  // Generic dense pairs fail at t = 1 by a visible margin.
  Rng rng(0xbe5466cf34e90c6cULL);
  CMatrix a = rng.matrix(3, 1.0);
  CMatrix b = rng.matrix(3, 1.0);
  CHECK(exp_triple_deviation(a, b, 1.0) > 1e-3);
  CHECK_FALSE(exp_triple_equal(a, b));
}

TEST_CASE("sweep table") {
  const auto& sc = catalog()[1];  // scaled pair with failures at 2, 3, 4
  auto table = sweep_table(sc.a, sc.b, 6);
  REQUIRE(table.size() == 6);
  for (const auto& rec : table) {
    bool should_fail = rec.t >= 2 && rec.t <= 4;
    CHECK(rec.pass == !should_fail);
    if (should_fail) CHECK(rec.deviation > 1e-3);
  }

  ExceptionalSet es = condition1_sweep(sc.a, sc.b, 50);
  CHECK(es.members == std::vector<long>{2, 3, 4});
  CHECK(es.sweep_bound == 50);
  CHECK_FALSE(es.complete);
  CHECK(es.candidates.empty());

  CHECK_THROWS_AS(sweep_table(sc.a, sc.b, 0), std::invalid_argument);
}

TEST_CASE("collision solver on the fixed pairs") {
  const auto& tu = catalog()[0];
  auto pl = property_l(tu.a, tu.b);
  REQUIRE(pl.has_value());
  ExceptionalSet es = exceptional_set_solver(tu.a, tu.b, *pl, 50);
  CHECK(es.members.empty());
  CHECK(es.candidates.empty());
  CHECK(es.complete);

  const auto& sc = catalog()[1];
  auto pl2 = property_l(sc.a, sc.b);
  REQUIRE(pl2.has_value());
  ExceptionalSet es2 = exceptional_set_solver(sc.a, sc.b, *pl2, 50);
  CHECK(es2.members == std::vector<long>{2, 3, 4});
  CHECK(es2.candidates == std::vector<long>{2, 3, 4});
  CHECK(es2.complete);

  // A short sweep bound still finds the full set: candidates beyond the
  // bound are verified directly.
  ExceptionalSet es3 = exceptional_set_solver(sc.a, sc.b, *pl2, 1);
  CHECK(es3.members == std::vector<long>{2, 3, 4});
  CHECK(es3.complete);
}

TEST_CASE("solver preconditions are reported") {
  Rng rng(0xc0ac29b7c97c50ddULL);
  CMatrix a = rng.matrix(3, 1.0);
  CMatrix b = rng.matrix(3, 1.0);
  // Dense random pairs fail the triple equality at t = 1.
  EigenPairing p;
  p.lambda = eigenvalues(a);
  p.mu = eigenvalues(b);
  p.perm = {0, 1, 2};
  CHECK_THROWS_AS(exceptional_set_solver(a, b, p, 10), PreconditionError);

  // Valid triple equality but a pairing that fails the grid test.
  const auto& tu = catalog()[0];
  EigenPairing bad;
  bad.lambda = eigenvalues(tu.a);
  bad.mu = eigenvalues(tu.b);
  bad.perm = {1, 0, 2};
  CHECK_THROWS_AS(exceptional_set_solver(tu.a, tu.b, bad, 10), PreconditionError);
}

TEST_CASE("equivalence verdict") {
  const auto& entries = catalog();
  CHECK(condition3_verdict(entries[0].a, entries[0].b));
  CHECK(condition3_verdict(entries[1].a, entries[1].b));
  CHECK_FALSE(condition3_verdict(entries[2].a, entries[2].b));
}

TEST_CASE("star verification accepts the generator and rejects tampering") {
  StarSample s = gen_star_pair(21);
  CHECK(star_verify(s.d, s.a, s.b));

  // Wrong scalar part: reconstruction fails.
  StarDecomp bad = s.d;
  bad.sigma += 0.5;
  CHECK_FALSE(star_verify(bad, s.a, s.b));

  // A nilpotent part that does not commute with delta.
  StarDecomp bad2 = s.d;
  bad2.f = CMatrix::zero(3);
  bad2.f(2, 0) = 1.0;
  CHECK_FALSE(star_verify(bad2, s.a, s.b));
}

TEST_CASE("star decomposition round-trips the generator") {
  for (std::uint64_t seed : {3ULL, 5ULL, 8ULL}) {
    StarSample s = gen_star_pair(seed);
    auto d = star_decompose(s.a, s.b);
    REQUIRE(d.has_value());
    CHECK(std::abs(d->sigma - s.d.sigma) < 1e-8);
    CHECK(std::abs(d->tau - s.d.tau) < 1e-8);
    CHECK(approx_equal(d->delta, s.d.delta, 1e-8));
    CHECK(approx_equal(d->theta, s.d.theta, 1e-8));
    CHECK(approx_equal(d->f, s.d.f, 1e-8));
    CHECK(approx_equal(d->g, s.d.g, 1e-8));
  }
}

TEST_CASE("star decomposition of the fixed pair is the trivial one") {
  const auto& tu = catalog()[0];
  auto d = star_decompose(tu.a, tu.b);
  REQUIRE(d.has_value());
  CHECK(std::abs(d->sigma) < 1e-9);
  CHECK(std::abs(d->tau) < 1e-9);
  CHECK(max_abs(d->f) < 1e-9);
  CHECK(max_abs(d->g) < 1e-9);
  CHECK(approx_equal(d->delta, tu.a, 1e-9));
  CHECK(approx_equal(d->theta, tu.b, 1e-9));
}

TEST_CASE("star decomposition preconditions") {
  const auto& entries = catalog();
  // Dimension 2 is rejected.
  CHECK_THROWS_AS(star_decompose(entries[2].a, entries[2].b), PreconditionError);

  // Commuting pairs are rejected.
  auto cm = gen_commuting_pair(3, 4);
  CHECK_THROWS_AS(star_decompose(cm.first, cm.second), PreconditionError);

  // Failing triple equality is rejected.
  Rng rng(0x3f84d5b5b5470917ULL);
  CMatrix a = rng.matrix(3, 1.0);
  CMatrix b = rng.matrix(3, 1.0);
  CHECK_THROWS_AS(star_decompose(a, b), PreconditionError);
}

TEST_CASE("analyze on the fixed pairs") {
  const auto& entries = catalog();

  AnalysisReport r0 = analyze(entries[0].a, entries[0].b);
  CHECK(r0.dim == 3);
  CHECK_FALSE(r0.commute);
  CHECK(r0.triple_equal);
  CHECK(r0.property_l.has_value());
  CHECK_FALSE(r0.st);
  CHECK(r0.indecomposable);
  CHECK(r0.condition3);
  CHECK(r0.exceptional.members.empty());
  CHECK(r0.exceptional.complete);
  REQUIRE(r0.star.has_value());
  CHECK(max_abs(r0.star->f) < 1e-9);
  CHECK_FALSE(has_crosscheck_note(r0));

  AnalysisReport r1 = analyze(entries[1].a, entries[1].b);
  CHECK(r1.condition3);
  CHECK(r1.exceptional.members == std::vector<long>{2, 3, 4});
  CHECK(r1.exceptional.complete);
  CHECK_FALSE(has_crosscheck_note(r1));

  AnalysisReport r2 = analyze(entries[2].a, entries[2].b);
  CHECK(r2.dim == 2);
  CHECK(r2.triple_equal);
  CHECK_FALSE(r2.property_l.has_value());
  CHECK_FALSE(r2.condition3);
  CHECK_FALSE(r2.exceptional.complete);
  CHECK_FALSE(r2.exceptional.members.empty());
  CHECK_FALSE(r2.star.has_value());
  CHECK_FALSE(has_crosscheck_note(r2));
  CHECK(r2.exceptional.members == in_range_failures(entries[2].a, entries[2].b, 1, 50));
}

TEST_CASE("analyze across the generator families") {
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    auto st = gen_st_pair(3, seed);
    AnalysisReport r = analyze(st.first, st.second, 20);
    CHECK(r.st);
    CHECK(r.property_l.has_value());
    CHECK_FALSE(r.condition3);  // dense triangular draws break the equality
    CHECK_FALSE(has_crosscheck_note(r));

    auto cm = gen_commuting_pair(3, seed);
    AnalysisReport rc = analyze(cm.first, cm.second, 20);
    CHECK(rc.commute);
    CHECK(rc.triple_equal);
    CHECK(rc.condition3);
    CHECK(rc.exceptional.members.empty());
    CHECK(rc.exceptional.complete);  // commuting pairs never fail
    CHECK_FALSE(has_crosscheck_note(rc));

    StarSample ss = gen_star_pair(seed);
    AnalysisReport rs = analyze(ss.a, ss.b, 20);
    CHECK(rs.condition3);
    CHECK(rs.star.has_value());
    CHECK(rs.exceptional.complete);
    CHECK_FALSE(has_crosscheck_note(rs));

    auto pp = gen_prop21_pair(3, seed);
    AnalysisReport rp = analyze(pp.first, pp.second, 20);
    CHECK(rp.condition3);
    CHECK(rp.exceptional.members.empty());
    CHECK(rp.exceptional.complete);
    CHECK_FALSE(has_crosscheck_note(rp));
  }
}

TEST_CASE("analyze validates arguments") {
  const auto& tu = catalog()[0];
  CHECK_THROWS_AS(analyze(tu.a, tu.b, 0), std::invalid_argument);
  CHECK_THROWS_AS(analyze(tu.a, CMatrix::identity(2)), std::invalid_argument);
}
