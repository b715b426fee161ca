#pragma once

#include <string>
#include <utility>
#include <vector>

#include "commexp/analysis.hpp"
#include "commexp/catalog.hpp"
#include "commexp/matrix.hpp"
#include "commexp/selfcheck.hpp"

namespace commexp {

// Input format: {"A": [[[re,im],...],...], "B": ...}. Every entry is a
// two-element [re, im] array; matrices must be square, of equal dimension
// between 1 and 3, with finite entries of magnitude at most 1e6.
// Throws ValidationError on anything else.
std::pair<CMatrix, CMatrix> parse_pair_json(const std::string& text);

// Report round-trip: parse_report_json(emit_report_json(r)) reproduces r
// bit for bit (doubles are emitted with shortest round-trip formatting).
std::string emit_report_json(const AnalysisReport& r);
AnalysisReport parse_report_json(const std::string& text);

// One JSON object per line: {"t": ..., "max_deviation": ..., "pass": ...}.
std::string emit_sweep_json_lines(const std::vector<SweepRecord>& table);

// ["tu", "tu-scaled", ...]
std::string emit_catalog_names_json(const std::vector<NamedPair>& entries);

// {"name": ..., "A": ..., "B": ..., "expected": {...}}
std::string emit_named_pair_json(const NamedPair& p);

// {"pass": ..., "fail": ..., "details": [{"name", "seed", "detail"}, ...]}
std::string emit_selftest_json(const SelftestSummary& s);

}  // namespace commexp
