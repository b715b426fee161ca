#include "doctest.h"

#include <string>

#include "commexp/analysis.hpp"
#include "commexp/catalog.hpp"
#include "commexp/errors.hpp"
#include "commexp/json_io.hpp"
#include "commexp/selfcheck.hpp"

using namespace commexp;

namespace {

bool same_matrix(const CMatrix& x, const CMatrix& y) {
  if (x.dim() != y.dim()) return false;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j)
      if (x(i, j) != y(i, j)) return false;
  return true;
}

bool same_report(const AnalysisReport& a, const AnalysisReport& b) {
  if (a.dim != b.dim) return false;
  if (a.tolerances.eps_entry != b.tolerances.eps_entry) return false;
  if (a.tolerances.eps_eig != b.tolerances.eps_eig) return false;
  if (a.tolerances.eps_rank != b.tolerances.eps_rank) return false;
  if (a.commute != b.commute || a.triple_equal != b.triple_equal) return false;
  if (a.property_l.has_value() != b.property_l.has_value()) return false;
  if (a.property_l) {
    if (a.property_l->lambda != b.property_l->lambda) return false;
    if (a.property_l->mu != b.property_l->mu) return false;
    if (a.property_l->perm != b.property_l->perm) return false;
  }
  if (a.st != b.st || a.indecomposable != b.indecomposable) return false;
  if (a.condition3 != b.condition3) return false;
  if (a.exceptional.members != b.exceptional.members) return false;
  if (a.exceptional.candidates != b.exceptional.candidates) return false;
  if (a.exceptional.sweep_bound != b.exceptional.sweep_bound) return false;
  if (a.exceptional.complete != b.exceptional.complete) return false;
  if (a.star.has_value() != b.star.has_value()) return false;
  if (a.star) {
    if (a.star->sigma != b.star->sigma || a.star->tau != b.star->tau) return false;
    if (!same_matrix(a.star->delta, b.star->delta)) return false;
    if (!same_matrix(a.star->theta, b.star->theta)) return false;
    if (!same_matrix(a.star->f, b.star->f)) return false;
    if (!same_matrix(a.star->g, b.star->g)) return false;
  }
  return a.notes == b.notes;
}

}  // namespace

TEST_CASE("pair parsing accepts the documented format") {
  auto [a, b] = parse_pair_json(
      R"({"A": [[[0, 1], [2, 0]], [[0, 0], [-1, -1]]], "B": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]})");
  CHECK(a.dim() == 2);
  CHECK(a(0, 0) == Complex(0.0, 1.0));
  CHECK(a(0, 1) == Complex(2.0, 0.0));
  CHECK(a(1, 1) == Complex(-1.0, -1.0));
  CHECK(b(1, 1) == Complex(1.0, 0.0));
}

TEST_CASE("pair parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_pair_json("not json"), ValidationError);
  CHECK_THROWS_AS(parse_pair_json("[1, 2]"), ValidationError);
  CHECK_THROWS_AS(parse_pair_json(R"({"A": [[[0,0]]]})"), ValidationError);

  // Non-square.
  CHECK_THROWS_AS(parse_pair_json(R"({"A": [[[0,0],[0,0]]], "B": [[[0,0]]]})"), ValidationError);

  // Dimension 4.
  std::string row4 = "[[0,0],[0,0],[0,0],[0,0]]";
  std::string m4 = "[" + row4 + "," + row4 + "," + row4 + "," + row4 + "]";
  try {
    parse_pair_json(R"({"A": )" + m4 + R"(, "B": )" + m4 + "}");
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("dimension must be <= 3") != std::string::npos);
  }

  // Unequal dimensions.
  CHECK_THROWS_AS(parse_pair_json(R"({"A": [[[0,0]]], "B": [[[0,0],[0,0]],[[0,0],[0,0]]]})"),
                  ValidationError);

  // Entry magnitude cap.
  CHECK_THROWS_AS(parse_pair_json(R"({"A": [[[2e6,0]]], "B": [[[0,0]]]})"), ValidationError);

  // Entries must be [re, im] pairs.
  CHECK_THROWS_AS(parse_pair_json(R"({"A": [[3]], "B": [[[0,0]]]})"), ValidationError);
}

TEST_CASE("report emission round-trips losslessly") {
  const auto& entries = catalog();
  for (const NamedPair& np : entries) {
    AnalysisReport r = analyze(np.a, np.b, 25);
    std::string text = emit_report_json(r);
    AnalysisReport back = parse_report_json(text);
    CHECK(same_report(r, back));
    // Stability: a second emit of the parsed report is byte-identical.
    CHECK(emit_report_json(back) == text);
  }
}

TEST_CASE("report of a structured pair keeps the decomposition") {
  StarSample s = gen_star_pair(9);
  AnalysisReport r = analyze(s.a, s.b, 12);
  REQUIRE(r.star.has_value());
  AnalysisReport back = parse_report_json(emit_report_json(r));
  REQUIRE(back.star.has_value());
  CHECK(back.star->sigma == r.star->sigma);
  CHECK(same_matrix(back.star->f, r.star->f));
  REQUIRE(back.property_l.has_value());
  CHECK(back.property_l->perm == r.property_l->perm);
}

TEST_CASE("sweep lines") {
  const auto& sc = catalog()[1];
  auto table = sweep_table(sc.a, sc.b, 5);
  std::string lines = emit_sweep_json_lines(table);
  // One line per t, each a JSON object.
  int newlines = 0;
  for (char c : lines) newlines += c == '\n';
  CHECK(newlines == 5);
  CHECK(lines.find("\"t\":1") != std::string::npos);
  CHECK(lines.find("\"t\":5") != std::string::npos);
  CHECK(lines.find("\"pass\":false") != std::string::npos);
  CHECK(lines.find("\"max_deviation\":") != std::string::npos);
}

TEST_CASE("catalog emitters") {
  const auto& entries = catalog();
  std::string names = emit_catalog_names_json(entries);
  CHECK(names == R"(["tu","tu-scaled","dim2-remark"])");

  std::string tu = emit_named_pair_json(entries[0]);
  CHECK(tu.find("\"name\":\"tu\"") != std::string::npos);
  CHECK(tu.find("6.2831853071795862") != std::string::npos);
  CHECK(tu.find("\"expected\":{") != std::string::npos);
  CHECK(tu.find("\"condition3\":true") != std::string::npos);
  CHECK(tu.find("\"exceptional_members\":[]") != std::string::npos);
}

TEST_CASE("selftest emitter") {
  SelftestSummary s;
  s.passed = 5;
  s.failed = 1;
  s.violations.push_back({"some-suite", 7, "entry\"quoted\""});
  std::string text = emit_selftest_json(s);
  CHECK(text.find("\"pass\":5") != std::string::npos);
  CHECK(text.find("\"fail\":1") != std::string::npos);
  CHECK(text.find("\"seed\":7") != std::string::npos);
  CHECK(text.find("\\\"quoted\\\"") != std::string::npos);
}
