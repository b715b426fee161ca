#include "commexp/eigen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace commexp {

namespace {

constexpr double kMachEps = 2.220446049250313e-16;

// Rounding-error scale for evaluating p at |z| = az: sum |c_k| az^k + 1.
double eval_scale(const CharPoly& p, double az) {
  double pw = 1.0, acc = 1.0;
  for (int k = 0; k <= p.n; ++k) {
    acc += std::abs(p.coeff[k]) * pw;
    pw *= az;
  }
  return acc;
}

double deriv_scale(const CharPoly& p, double az) {
  double pw = 1.0, acc = 1.0;
  for (int k = 1; k <= p.n; ++k) {
    acc += static_cast<double>(k) * std::abs(p.coeff[k]) * pw;
    pw *= az;
  }
  return acc;
}

Complex eval_deriv2_half(const CharPoly& p, Complex z) {
  // p''(z) / 2
  if (p.n == 3) return 3.0 * z + p.coeff[2];
  if (p.n == 2) return Complex(1.0, 0.0);
  return Complex(0.0, 0.0);
}

Complex newton_polish(const CharPoly& p, Complex z, int iters) {
  double best = std::abs(p.eval(z));
  for (int it = 0; it < iters; ++it) {
    Complex df = p.eval_deriv(z);
    if (std::abs(df) == 0.0) break;
    Complex z2 = z - p.eval(z) / df;
    double r2 = std::abs(p.eval(z2));
    if (r2 >= best) break;
    z = z2;
    best = r2;
  }
  return z;
}

// Newton iteration on p', used to refine a suspected double root: the double
// root of p is a simple root of p', so convergence is quadratic there.
Complex newton_on_deriv(const CharPoly& p, Complex z, int iters) {
  for (int it = 0; it < iters; ++it) {
    Complex d2 = 2.0 * eval_deriv2_half(p, z);
    if (std::abs(d2) == 0.0) break;
    z = z - p.eval_deriv(z) / d2;
  }
  return z;
}

// Roots of z^2 + b z + c, with the usual cancellation-avoiding sign choice.
std::array<Complex, 2> quad_roots(Complex b, Complex c) {
  Complex s = std::sqrt(b * b - 4.0 * c);
  Complex bp = (std::real(std::conj(b) * s) >= 0.0) ? b + s : b - s;
  if (std::abs(bp) == 0.0) return {Complex{}, Complex{}};
  Complex r1 = -0.5 * bp;
  return {r1, c / r1};
}

// Roots of z^3 + a z^2 + b z + c (Cardano on the depressed cubic; the larger
// resolvent root is taken first so the deflated companion v = -p/(3u) is
// computed without cancellation).
std::array<Complex, 3> cubic_roots(Complex a, Complex b, Complex c) {
  if (c == Complex{}) {
    // Exactly singular matrices keep an exact zero eigenvalue.
    auto q = quad_roots(a, b);
    return {Complex{}, q[0], q[1]};
  }
  Complex sh = a / 3.0;
  Complex p = b - a * a / 3.0;
  Complex q = c - a * b / 3.0 + 2.0 * a * a * a / 27.0;
  if (std::abs(p) == 0.0 && std::abs(q) == 0.0) return {-sh, -sh, -sh};
  Complex disc = 0.25 * q * q + p * p * p / 27.0;
  Complex s = std::sqrt(disc);
  Complex h = -0.5 * q;
  Complex u3 = (std::real(std::conj(h) * s) >= 0.0) ? h + s : h - s;
  Complex u = std::pow(u3, 1.0 / 3.0);
  Complex v = (std::abs(u) == 0.0) ? Complex{} : -p / (3.0 * u);
  const Complex w1(-0.5, 0.8660254037844386);
  const Complex w2(-0.5, -0.8660254037844386);
  return {u + v - sh, w1 * u + w2 * v - sh, w2 * u + w1 * v - sh};
}

// Closed-form root finders scatter the copies of a multiple root over a disc
// of radius ~eps^(1/k). When a near-coincident group verifiably represents a
// true multiple root of the stored polynomial (tiny p and p' at the refined
// common value), all members are snapped to that value, so downstream
// eps_eig clustering and Jordan-structure decisions become deterministic.
void snap_multiple_roots(const CharPoly& p, Spectrum& r) {
  const double kVerify = 256.0 * kMachEps;
  double s = 1.0;
  for (Complex z : r) s = std::max(s, std::abs(z));
  s += 1.0;

  if (p.n == 3) {
    double d01 = std::abs(r[0] - r[1]);
    double d02 = std::abs(r[0] - r[2]);
    double d12 = std::abs(r[1] - r[2]);
    double detect3 = 64.0 * std::cbrt(kMachEps) * s;
    if (d01 <= detect3 && d02 <= detect3 && d12 <= detect3) {
      Complex lam = -p.coeff[2] / 3.0;  // exact root mean via the trace
      if (std::abs(p.eval(lam)) <= kVerify * eval_scale(p, std::abs(lam)) &&
          std::abs(p.eval_deriv(lam)) <= kVerify * deriv_scale(p, std::abs(lam))) {
        r[0] = r[1] = r[2] = lam;
        return;
      }
    }
    double detect2 = 64.0 * std::sqrt(kMachEps) * s;
    std::array<std::pair<double, std::pair<int, int>>, 3> pr{
        {{d01, {0, 1}}, {d02, {0, 2}}, {d12, {1, 2}}}};
    std::sort(pr.begin(), pr.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [d, ij] : pr) {
      if (d > detect2) break;
      Complex lam = newton_on_deriv(p, 0.5 * (r[ij.first] + r[ij.second]), 4);
      if (std::abs(p.eval(lam)) <= kVerify * eval_scale(p, std::abs(lam)) &&
          std::abs(p.eval_deriv(lam)) <= kVerify * deriv_scale(p, std::abs(lam))) {
        r[ij.first] = r[ij.second] = lam;
        return;
      }
    }
  } else if (p.n == 2) {
    if (std::abs(r[0] - r[1]) <= 64.0 * std::sqrt(kMachEps) * s) {
      Complex lam = -0.5 * p.coeff[1];
      if (std::abs(p.eval(lam)) <= kVerify * eval_scale(p, std::abs(lam))) {
        r[0] = r[1] = lam;
      }
    }
  }
}

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

Complex CharPoly::eval(Complex z) const {
  Complex r = coeff[n];
  for (int k = n - 1; k >= 0; --k) r = r * z + coeff[k];
  return r;
}

Complex CharPoly::eval_deriv(Complex z) const {
  Complex r = static_cast<double>(n) * coeff[n];
  for (int k = n - 1; k >= 1; --k) r = r * z + static_cast<double>(k) * coeff[k];
  return r;
}

CharPoly char_poly(const CMatrix& m) {
  CharPoly p;
  p.n = m.dim();
  p.coeff.assign(p.n + 1, Complex{});
  p.coeff[p.n] = 1.0;
  switch (m.dim()) {
    case 1:
      p.coeff[0] = -m(0, 0);
      break;
    case 2:
      p.coeff[1] = -trace(m);
      p.coeff[0] = det(m);
      break;
    default: {
      Complex m01 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
      Complex m02 = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
      Complex m12 = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
      p.coeff[2] = -trace(m);
      p.coeff[1] = m01 + m02 + m12;
      p.coeff[0] = -det(m);
      break;
    }
  }
  return p;
}

Spectrum eigenvalues(const CMatrix& m, const Tolerances& tol) {
  (void)tol;  // root refinement is driven by machine precision, not by tol
  CharPoly p = char_poly(m);
  Spectrum roots;
  switch (p.n) {
    case 1:
      roots = {-p.coeff[0]};
      break;
    case 2: {
      auto r = quad_roots(p.coeff[1], p.coeff[0]);
      roots = {r[0], r[1]};
      break;
    }
    default: {
      auto r = cubic_roots(p.coeff[2], p.coeff[1], p.coeff[0]);
      roots = {r[0], r[1], r[2]};
      break;
    }
  }
  for (Complex& z : roots) z = newton_polish(p, z, 3);
  snap_multiple_roots(p, roots);
  std::sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

std::vector<std::vector<int>> eigen_clusters(const Spectrum& s, double eps_eig) {
  const int n = static_cast<int>(s.size());
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = nc;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < n; ++a) {
        if (comp[a] != nc) continue;
        for (int b = 0; b < n; ++b) {
          if (comp[b] < 0 && std::abs(s[a] - s[b]) <= eps_eig) {
            comp[b] = nc;
            grew = true;
          }
        }
      }
    }
    ++nc;
  }
  std::vector<std::vector<int>> out(nc);
  for (int i = 0; i < n; ++i) out[comp[i]].push_back(i);
  return out;
}

namespace detail {

JacobiSVD jacobi_svd(std::vector<std::vector<Complex>> columns, bool want_v) {
  const int nc = static_cast<int>(columns.size());
  std::vector<std::vector<Complex>> v;
  if (want_v) {
    v.assign(nc, std::vector<Complex>(nc, Complex{}));
    for (int i = 0; i < nc; ++i) v[i][i] = 1.0;
  }
  const double off_tol = 1e-14;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool converged = true;
    for (int i = 0; i < nc; ++i) {
      for (int j = i + 1; j < nc; ++j) {
        double a = 0.0, b = 0.0;
        Complex g{};
        for (size_t k = 0; k < columns[i].size(); ++k) {
          a += std::norm(columns[i][k]);
          b += std::norm(columns[j][k]);
          g += std::conj(columns[i][k]) * columns[j][k];
        }
        double ag = std::abs(g);
        if (a == 0.0 || b == 0.0 || ag <= off_tol * std::sqrt(a * b)) continue;
        converged = false;
        Complex ph = std::polar(1.0, -std::arg(g));
        double tau = (b - a) / (2.0 * ag);
        double t = ((tau >= 0.0) ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double cs = 1.0 / std::sqrt(1.0 + t * t);
        double sn = cs * t;
        for (size_t k = 0; k < columns[i].size(); ++k) {
          Complex ui = columns[i][k];
          Complex vj = ph * columns[j][k];
          columns[i][k] = cs * ui - sn * vj;
          columns[j][k] = sn * ui + cs * vj;
        }
        if (want_v) {
          for (int k = 0; k < nc; ++k) {
            Complex ui = v[i][k];
            Complex vj = ph * v[j][k];
            v[i][k] = cs * ui - sn * vj;
            v[j][k] = sn * ui + cs * vj;
          }
        }
      }
    }
    if (converged) break;
  }

  std::vector<int> order(nc);
  std::vector<double> norms(nc);
  for (int i = 0; i < nc; ++i) {
    order[i] = i;
    double s = 0.0;
    for (const Complex& x : columns[i]) s += std::norm(x);
    norms[i] = std::sqrt(s);
  }
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (norms[x] != norms[y]) return norms[x] > norms[y];
    return x < y;
  });

  JacobiSVD out;
  out.sigma.resize(nc);
  if (want_v) out.v_columns.resize(nc);
  for (int i = 0; i < nc; ++i) {
    out.sigma[i] = norms[order[i]];
    if (want_v) out.v_columns[i] = std::move(v[order[i]]);
  }
  return out;
}

}  // namespace detail

std::vector<double> singular_values(const CMatrix& m) {
  const int n = m.dim();
  std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) cols[j][i] = m(i, j);
  return detail::jacobi_svd(std::move(cols), false).sigma;
}

int rank_eps(const CMatrix& m, const Tolerances& tol) {
  auto sv = singular_values(m);
  if (sv.empty() || sv[0] == 0.0) return 0;
  int r = 0;
  for (double s : sv)
    if (s > tol.eps_rank * sv[0]) ++r;
  return r;
}

bool is_nilpotent(const CMatrix& m, const Tolerances& tol) {
  double nm = frobenius_norm(m);
  double pw = 1.0;
  for (int k = 0; k < m.dim(); ++k) pw *= nm;
  return frobenius_norm(pow_int(m, m.dim())) <= tol.eps_entry * pw;
}

bool is_diagonalizable(const CMatrix& m, const Tolerances& tol) {
  const int n = m.dim();
  if (n == 1) return true;
  Spectrum s = eigenvalues(m, tol);
  double smax = 0.0;
  for (Complex z : s) smax = std::max(smax, std::abs(z));
  // The cluster radius must dominate the rank_eps floor of the shifted
  // matrix (eps_rank * ||m||), or a multiple root split by root-finding
  // noise lands in singleton clusters whose rank expectation is one too
  // high while the shift itself sits below the rank threshold.
  auto clusters = eigen_clusters(s, tol.eps_eig * (1.0 + smax));
  for (const auto& cl : clusters) {
    Complex lam{};
    for (int idx : cl) lam += s[idx];
    lam /= static_cast<double>(cl.size());
    CMatrix shifted = m - lam * CMatrix::identity(n);
    if (rank_eps(shifted, tol) != n - static_cast<int>(cl.size())) return false;
  }
  return true;
}

}  // namespace commexp
