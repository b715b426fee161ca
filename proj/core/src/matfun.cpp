#include "commexp/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "commexp/errors.hpp"

namespace commexp {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

struct SpectralData {
  Spectrum eig;                            // sorted, multiple roots snapped
  std::vector<std::vector<int>> clusters;  // index groups at eps_eig
  std::vector<Complex> rep;                // cluster means
  std::vector<int> mult;
};

SpectralData spectral_data(const CMatrix& m, const Tolerances& tol) {
  SpectralData sd;
  sd.eig = eigenvalues(m, tol);
  sd.clusters = eigen_clusters(sd.eig, tol.eps_eig);
  for (const auto& cl : sd.clusters) {
    Complex mean{};
    for (int idx : cl) mean += sd.eig[idx];
    mean /= static_cast<double>(cl.size());
    sd.rep.push_back(mean);
    sd.mult.push_back(static_cast<int>(cl.size()));
  }
  return sd;
}

// Projectors onto the generalized eigenspaces, as polynomials in m
// (Hermite interpolation on the cluster representatives). Cases are
// enumerable because dim <= 3.
std::vector<CMatrix> projectors(const CMatrix& m, const SpectralData& sd) {
  const int n = m.dim();
  const CMatrix id = CMatrix::identity(n);
  const int nc = static_cast<int>(sd.rep.size());
  if (nc == 1) return {id};
  if (nc == 2) {
    Complex l0 = sd.rep[0], l1 = sd.rep[1];
    if (sd.mult[0] == 1 && sd.mult[1] == 1) {
      CMatrix p0 = (m - l1 * id) * (1.0 / (l0 - l1));
      return {p0, id - p0};
    }
    // One double, one simple. p(z) = (z - mu) * (1/(lam - mu) - (z - lam)/(lam - mu)^2)
    // interpolates 1 at lam to first order and 0 at mu.
    int di = (sd.mult[0] == 2) ? 0 : 1;
    Complex lam = sd.rep[di], mu = sd.rep[1 - di];
    Complex d = lam - mu;
    CMatrix pd = (m - mu * id) * ((id * (1.0 / d)) - (m - lam * id) * (1.0 / (d * d)));
    std::vector<CMatrix> out(2, CMatrix(n));
    out[di] = pd;
    out[1 - di] = id - pd;
    return out;
  }
  // Three simple clusters: Lagrange.
  std::vector<CMatrix> out;
  for (int k = 0; k < nc; ++k) {
    CMatrix p = id;
    for (int j = 0; j < nc; ++j) {
      if (j == k) continue;
      p = p * ((m - sd.rep[j] * id) * (1.0 / (sd.rep[k] - sd.rep[j])));
    }
    out.push_back(p);
  }
  return out;
}

// f applied to m as a primary matrix function:
//   sum_k sum_{j<mult_k} f^(j)(rep_k)/j! (m - rep_k I)^j P_k.
// Terms beyond the true Jordan block size are annihilated by the projector
// product, so using the algebraic multiplicity as the derivative order is safe.
template <typename F0, typename F1, typename F2>
CMatrix apply_primary(const CMatrix& m, const SpectralData& sd, F0 f0, F1 f1, F2 f2) {
  const int n = m.dim();
  const CMatrix id = CMatrix::identity(n);
  auto pk = projectors(m, sd);
  CMatrix out(n);
  for (size_t k = 0; k < pk.size(); ++k) {
    Complex lam = sd.rep[k];
    CMatrix term = f0(lam) * pk[k];
    if (sd.mult[k] >= 2) {
      CMatrix n1 = (m - lam * id) * pk[k];
      term += f1(lam) * n1;
      if (sd.mult[k] >= 3) term += f2(lam) * ((m - lam * id) * n1);
    }
    out += term;
  }
  return out;
}

}  // namespace

namespace detail {

CMatrix expm_via_eigenvectors(const CMatrix& m, const Tolerances& tol) {
  const int n = m.dim();
  if (n == 1) {
    CMatrix r(1);
    r(0, 0) = std::exp(m(0, 0));
    return r;
  }
  Spectrum eig = eigenvalues(m, tol);
  const CMatrix id = CMatrix::identity(n);
  CMatrix v(n);
  for (int k = 0; k < n; ++k) {
    // Columns of adjugate(m - lam I) span the kernel: (m - lam I) adj = det * I = 0.
    CMatrix adj = adjugate(m - eig[k] * id);
    int best = 0;
    double bn = -1.0;
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += std::norm(adj(i, j));
      if (s > bn) {
        bn = s;
        best = j;
      }
    }
    if (!(bn > 0.0)) return expm_via_jc(m, tol);
    double inv = 1.0 / std::sqrt(bn);
    for (int i = 0; i < n; ++i) v(i, k) = adj(i, best) * inv;
  }
  Complex dv = det(v);
  if (std::abs(dv) <= 1e-12) return expm_via_jc(m, tol);  // columns were normalized
  CMatrix d(n);
  for (int k = 0; k < n; ++k) d(k, k) = std::exp(eig[k]);
  return v * d * (adjugate(v) * (1.0 / dv));
}

CMatrix expm_via_jc(const CMatrix& m, const Tolerances& tol) {
  const int n = m.dim();
  const CMatrix id = CMatrix::identity(n);
  auto sd = spectral_data(m, tol);
  auto pk = projectors(m, sd);
  CMatrix s(n), es(n);
  for (size_t k = 0; k < pk.size(); ++k) {
    s += sd.rep[k] * pk[k];
    es += std::exp(sd.rep[k]) * pk[k];
  }
  CMatrix nil = m - s;
  CMatrix en = id + nil;
  if (n >= 3) en += (nil * nil) * 0.5;
  return es * en;
}

}  // namespace detail

CMatrix expm(const CMatrix& m, const Tolerances& tol) {
  Spectrum eig = eigenvalues(m, tol);
  auto clusters = eigen_clusters(eig, tol.eps_eig);
  if (static_cast<int>(clusters.size()) == m.dim())
    return detail::expm_via_eigenvectors(m, tol);
  return detail::expm_via_jc(m, tol);
}

CMatrix logm_principal(const CMatrix& m, const Tolerances& tol,
                       std::vector<std::string>* notes) {
  auto sd = spectral_data(m, tol);
  double mx = 0.0, mn = 0.0;
  for (Complex z : sd.eig) mx = std::max(mx, std::abs(z));
  mn = mx;
  for (Complex z : sd.eig) mn = std::min(mn, std::abs(z));
  if (mx == 0.0 || mn <= 1e-12 * (1.0 + mx))
    throw SingularMatrixError("logm_principal: matrix is numerically singular");

  if (notes) {
    for (size_t k = 0; k < sd.rep.size(); ++k) {
      if (sd.mult[k] >= 2 && std::abs(std::abs(std::arg(sd.rep[k])) - kPi) <= tol.eps_eig) {
        notes->push_back(
            "logm_principal: multiple eigenvalue near the branch boundary, "
            "result is ill conditioned");
      }
    }
  }

  auto f0 = [&](Complex z) {
    Complex w = std::log(z);
    // Branch boundary: arguments within eps_eig of -pi go to the +pi side.
    if (w.imag() < -kPi + tol.eps_eig) w += Complex(0.0, 2.0 * kPi);
    return w;
  };
  auto f1 = [](Complex z) { return 1.0 / z; };
  auto f2 = [](Complex z) { return -1.0 / (2.0 * z * z); };
  return apply_primary(m, sd, f0, f1, f2);
}

JCDecomp jordan_chevalley(const CMatrix& m, const Tolerances& tol) {
  const int n = m.dim();
  auto sd = spectral_data(m, tol);
  if (static_cast<int>(sd.rep.size()) == n) {
    // All eigenvalues simple: m is its own semisimple part.
    return {m, CMatrix(n)};
  }
  auto pk = projectors(m, sd);
  CMatrix s(n);
  for (size_t k = 0; k < pk.size(); ++k) s += sd.rep[k] * pk[k];
  return {s, m - s};
}

LogSplit log_split(const CMatrix& a, const Tolerances& tol) {
  CMatrix f = logm_principal(expm(a, tol), tol);
  return {f, a - f};
}

PolyWitness poly_in_matrix_witness(const CMatrix& p, const CMatrix& of,
                                   const Tolerances& tol) {
  if (p.dim() != of.dim()) throw std::invalid_argument("poly_in_matrix_witness: dimension mismatch");
  const int n = p.dim();
  const int n2 = n * n;
  const int nb = n;  // I, of, ..., of^(n-1); higher powers are dependent by Cayley-Hamilton

  auto flatten = [&](const CMatrix& m) {
    std::vector<Complex> v(n2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i * n + j] = m(i, j);
    return v;
  };
  auto dot = [&](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    Complex s{};
    for (int i = 0; i < n2; ++i) s += std::conj(x[i]) * y[i];
    return s;
  };
  auto nrm = [&](const std::vector<Complex>& x) { return std::sqrt(std::abs(dot(x, x))); };

  std::vector<std::vector<Complex>> basis;
  CMatrix pw = CMatrix::identity(n);
  for (int k = 0; k < nb; ++k) {
    basis.push_back(flatten(pw));
    pw = pw * of;
  }

  // Modified Gram-Schmidt with one reorthogonalization pass; near-dependent
  // columns are dropped so coefficient recovery stays well posed.
  std::vector<std::vector<Complex>> q;
  std::vector<int> kept;
  std::vector<std::vector<Complex>> r(nb, std::vector<Complex>(nb, Complex{}));
  for (int k = 0; k < nb; ++k) {
    std::vector<Complex> w = basis[k];
    double before = nrm(w);
    for (int pass = 0; pass < 2; ++pass) {
      for (size_t j = 0; j < q.size(); ++j) {
        Complex c = dot(q[j], w);
        r[kept[j]][k] += c;
        for (int i = 0; i < n2; ++i) w[i] -= c * q[j][i];
      }
    }
    double after = nrm(w);
    if (after <= 1e-13 * (before + 1.0)) continue;  // dependent direction
    for (int i = 0; i < n2; ++i) w[i] *= (1.0 / after);
    r[k][k] = after;
    q.push_back(std::move(w));
    kept.push_back(k);
  }

  std::vector<Complex> target = flatten(p);
  std::vector<Complex> proj(q.size());
  std::vector<Complex> resid = target;
  for (size_t j = 0; j < q.size(); ++j) {
    proj[j] = dot(q[j], target);
    for (int i = 0; i < n2; ++i) resid[i] -= proj[j] * q[j][i];
  }

  PolyWitness out;
  out.residual = nrm(resid);
  out.representable = out.residual <= tol.eps_eig * (1.0 + frobenius_norm(p));
  if (out.representable) {
    // Back substitution on the retained upper-triangular factor.
    out.coeff.assign(nb, Complex{});
    for (int j = static_cast<int>(kept.size()) - 1; j >= 0; --j) {
      Complex c = proj[j];
      for (int l = j + 1; l < static_cast<int>(kept.size()); ++l)
        c -= r[kept[j]][kept[l]] * out.coeff[kept[l]];
      out.coeff[kept[j]] = c / r[kept[j]][kept[j]];
    }
  }
  return out;
}

}  // namespace commexp
