#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commexp/analysis.hpp"
#include "commexp/matrix.hpp"

namespace commexp {

// Facts asserted for a fixed pair; only the asserted ones are present.
// Reproduced by analyze() in the golden suite.
struct NamedPairExpect {
  std::optional<bool> commute;
  std::optional<bool> triple_equal;
  std::optional<bool> has_property_l;
  std::optional<bool> st;
  std::optional<bool> indecomposable;
  std::optional<bool> condition3;
  std::optional<std::vector<long>> exceptional_members;
};

struct NamedPair {
  std::string name;
  CMatrix a;
  CMatrix b;
  NamedPairExpect expected;
};

// Fixed study pairs: "tu", "tu-scaled", "dim2-remark".
const std::vector<NamedPair>& catalog();

// Simultaneously triangularizable pair p t1 p^-1, p t2 p^-1 with random
// upper-triangular t's and a random similarity of condition number <= 20.
std::pair<CMatrix, CMatrix> gen_st_pair(int n, std::uint64_t seed);

// a diagonal and b upper triangular, each with n distinct eigenvalues in
// 2 i pi Z, rejection-sampled so no two paired eigenvalue lines
// t -> t a_ii + b_ii cross at a positive integer. The identity then holds
// for every positive integer t.
std::pair<CMatrix, CMatrix> gen_prop21_pair(int n, std::uint64_t seed);

struct StarSample {
  CMatrix a;
  CMatrix b;
  StarDecomp d;
};

// Structured decomposition with nonzero square-zero parts: delta has one
// repeated eigenvalue pair in 2 i pi Z, f and g live on its eigenspace,
// theta carries a subdiagonal coupling that keeps the pair from commuting.
// The whole tuple is conjugated by a random well-conditioned similarity and
// rejection-sampled until star_verify accepts it at default tolerances.
StarSample gen_star_pair(std::uint64_t seed);

// (x, p(x)) for a random cubic p: the baseline commuting family.
std::pair<CMatrix, CMatrix> gen_commuting_pair(int n, std::uint64_t seed);

}  // namespace commexp
