#include "doctest.h"

#include "commexp/catalog.hpp"
#include "commexp/errors.hpp"
#include "commexp/matrix.hpp"

using namespace commexp;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("construction and indexing") {
  CMatrix z = CMatrix::zero(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(z(i, j) == Complex{});

  CMatrix id = CMatrix::identity(2);
  CHECK(id(0, 0) == Complex{1.0});
  CHECK(id(0, 1) == Complex{});
  CHECK(id.dim() == 2);

  CMatrix d = CMatrix::diag({Complex{1.0}, Complex{2.0}});
  CHECK(d(1, 1) == Complex{2.0});

  CMatrix r = CMatrix::from_rows(2, {Complex{1.0}, Complex{2.0}, Complex{3.0}, Complex{4.0}});
  CHECK(r(1, 0) == Complex{3.0});
}

TEST_CASE("arithmetic") {
  CMatrix a = CMatrix::from_rows(2, {Complex{1.0}, Complex{2.0}, Complex{3.0}, Complex{4.0}});
  CMatrix b = CMatrix::identity(2);

  CMatrix s = a + b;
  CHECK(s(0, 0) == Complex{2.0});
  CHECK((a - a)(1, 1) == Complex{});

  CMatrix p = a * a;
  CHECK(p(0, 0) == Complex{7.0});
  CHECK(p(0, 1) == Complex{10.0});
  CHECK(p(1, 0) == Complex{15.0});
  CHECK(p(1, 1) == Complex{22.0});

  CHECK((2.0 * a)(1, 0) == Complex{6.0});
  CHECK((a * Complex{0.0, 1.0})(0, 0) == Complex{0.0, 1.0});
  CHECK((-a)(0, 1) == Complex{-2.0});

  CHECK(trace(a) == Complex{5.0});
  CHECK(pow_int(a, 0)(0, 0) == Complex{1.0});
  CHECK(pow_int(a, 2)(0, 0) == p(0, 0));

  CMatrix h = adjoint(CMatrix::from_rows(2, {Complex{1.0, 2.0}, Complex{}, Complex{}, Complex{}}));
  CHECK(h(0, 0) == Complex{1.0, -2.0});
}

TEST_CASE("dimension mismatch throws") {
  CMatrix a = CMatrix::identity(2);
  CMatrix b = CMatrix::identity(3);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("determinant, adjugate, inverse") {
  CMatrix m = CMatrix::from_rows(3, {Complex{2.0}, Complex{0.0}, Complex{1.0},
                                     Complex{0.0}, Complex{3.0}, Complex{0.0},
                                     Complex{1.0}, Complex{0.0}, Complex{1.0}});
  CHECK(det(m).real() == doctest::Approx(3.0));

  CMatrix mi = inverse(m);
  CMatrix should_be_id = m * mi;
  CHECK(max_abs(should_be_id - CMatrix::identity(3)) < 1e-14);

  // adjugate = det * inverse
  CMatrix adj = adjugate(m);
  CHECK(max_abs(adj - mi * det(m)) < 1e-14);

  CMatrix sing = CMatrix::from_rows(2, {Complex{1.0}, Complex{2.0}, Complex{2.0}, Complex{4.0}});
  CHECK_THROWS_AS(inverse(sing), SingularMatrixError);
}

TEST_CASE("commutator of the fixed pair") {
  const auto& tu = catalog()[0];
  CMatrix c = commutator(tu.a, tu.b);
  // (lambda_i - lambda_j) * b_ij for a diagonal left factor; entry (0, 1)
  // is (2 i pi - 4 i pi) * 2 i pi = 4 pi^2.
  CHECK(c(0, 1).real() == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-12));
  CHECK(c(0, 1).imag() == doctest::Approx(0.0));
  CHECK(c(0, 0) == Complex{});
  CHECK(commutator(tu.a, tu.a)(0, 1) == Complex{});
}

TEST_CASE("norms and comparisons") {
  CMatrix m = CMatrix::from_rows(2, {Complex{3.0}, Complex{}, Complex{}, Complex{4.0}});
  CHECK(frobenius_norm(m) == doctest::Approx(5.0));
  CHECK(max_abs(m) == doctest::Approx(4.0));
  CHECK(all_finite(m));

  CMatrix n = m;
  n(0, 0) += 1e-12;
  CHECK(approx_equal(m, n, 1e-9));
  CHECK_FALSE(approx_equal(m, n, 1e-14));

  CHECK(approx_zero(CMatrix::zero(2), 1e-9, 1.0));
  CHECK_FALSE(approx_zero(m, 1e-9, 1.0));
}
