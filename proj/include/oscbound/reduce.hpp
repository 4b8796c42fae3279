#pragma once

// System-to-scalar-equation reduction. A first-order system x' = A(t)x with
// polynomial (or rational, A = N/chi) coefficient matrix is eliminated to an
// n-th order scalar equation for y = x_1 through the chain of row vectors
//
//   xi_0 = (1,0,...,0),   xi_{k+1} = d(xi_k)/dt + xi_k * A,
//
// which encode y^{(k)} = xi_k * x. The n+1 chain vectors live in an
// n-dimensional space, so they satisfy one linear relation; its coefficients
// are signed n x n wedge determinants and give the scalar equation.
//
// Rational matrices are tracked denominator-free: xi_k = eta_k / chi^k with
// polynomial eta_k, via eta_{k+1} = eta_k'*chi - k*eta_k*chi' + eta_k*N.
// (Induction: differentiate eta_k/chi^k and add (eta_k/chi^k)(N/chi); both
// sides land on the common denominator chi^{k+1}.)
//
// The same code path serves the exact ring (MPoly over Q, universal or
// specialized at rational parameter values) and the floating ring (CPoly).

#include <stdexcept>
#include <vector>

#include "oscbound/mpoly.hpp"
#include "oscbound/rat.hpp"
#include "oscbound/unipoly.hpp"

namespace oscbound {

struct DegenerateChain : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ring adapters shared by MPoly and CPoly code paths
inline MPoly ring_dt(const MPoly &p) { return p.derivative(0); }
inline CPoly ring_dt(const CPoly &p) { return p.derivative(); }
inline double ring_norm_d(const MPoly &p) { return p.l1_norm().get_d(); }
inline double ring_norm_d(const CPoly &p) { return p.l1_norm(); }
inline bool ring_is_zero(const MPoly &p, double /*scale*/, double /*tau*/) {
  return p.is_zero();
}
inline bool ring_is_zero(const CPoly &p, double scale, double tau) {
  return p.l1_norm() <= tau * scale + 1e-300;
}
inline bool ring_is_one(const MPoly &p) {
  return p.term_count() == 1 && !p.is_zero() && p.degree() == 0 &&
         p.terms().begin()->second == Rat(1);
}
inline bool ring_is_one(const CPoly &p) {
  return p.degree() == 0 && p.coeff(0) == cplx(1.0);
}
inline MPoly ring_scale_int(const MPoly &p, long k) { return p.scaled(Rat(k)); }
inline CPoly ring_scale_int(const CPoly &p, long k) {
  return p.scaled(cplx(double(k)));
}

template <class P>
struct SysMat {
  int n = 0;
  std::vector<P> e;  // row-major n*n
  P &at(int i, int j) { return e[size_t(i) * n + j]; }
  const P &at(int i, int j) const { return e[size_t(i) * n + j]; }
};

template <class P>
struct XiChain {
  int n = 0;
  int m = 1;  // declared degree parameter: deg_t of the matrix is <= m-1
  // eta[k] has n entries and equals xi_k * chi^k; chi == 1 for polynomial A
  std::vector<std::vector<P>> eta;
  P chi;
  bool rational = false;
};

enum class EqMode { universal, specialized };

// a[j] multiplies y^{(n-j)}; the stored coefficients satisfy
// sum_j a_j * xi_{n-j} = 0 identically (asserted in exact mode).
template <class P>
struct Principal {
  int n = 0;
  EqMode mode = EqMode::specialized;
  std::vector<P> a;
  Rat content_removed = Rat(1);
  int chi_power_removed = 0;
};

template <class P>
struct DegeneracyResult {
  int k = 0;        // minimal stage with xi_0..xi_k dependent over C(t)
  bool generic = true;  // k == n
  Principal<P> eq;  // order-k equation from xi_0..xi_k
};

// --- determinants (Laplace cofactor expansion; dimensions here are <= 6) ---

template <class P>
P poly_det(const std::vector<std::vector<const P *>> &m) {
  size_t d = m.size();
  if (d == 1) return *m[0][0];
  P acc;
  bool first = true;
  for (size_t i = 0; i < d; ++i) {
    if (m[i][0]->is_zero()) continue;
    std::vector<std::vector<const P *>> sub;
    sub.reserve(d - 1);
    for (size_t r = 0; r < d; ++r) {
      if (r == i) continue;
      std::vector<const P *> row(m[r].begin() + 1, m[r].end());
      sub.push_back(std::move(row));
    }
    P term = *m[i][0] * poly_det(sub);
    if (i % 2 == 1) term = -term;
    if (first) {
      acc = std::move(term);
      first = false;
    } else {
      acc = acc + term;
    }
  }
  if (first) {
    // entire first column zero: determinant vanishes; build a zero of the ring
    P z = *m[0][0] - *m[0][0];
    return z;
  }
  return acc;
}

// --- chain construction ---

template <class P>
XiChain<P> xi_chain_rational(const SysMat<P> &N, const P &chi, int m) {
  int n = N.n;
  if (n <= 0 || N.e.size() != size_t(n) * size_t(n))
    throw std::invalid_argument("xi_chain: matrix shape");
  XiChain<P> ch;
  ch.n = n;
  ch.m = m;
  ch.chi = chi;
  ch.rational = !ring_is_one(chi);

  P zero = N.e[0] - N.e[0];
  std::vector<P> row(size_t(n), zero);
  // xi_0 = (1,0,...,0): eta_0 likewise (chi^0 = 1)
  {
    P e1 = zero;
    if constexpr (std::is_same_v<P, MPoly>) {
      e1 = MPoly::constant(N.e[0].vars(), Rat(1));
    } else {
      e1 = CPoly::constant(cplx(1.0));
    }
    row[0] = e1;
  }
  ch.eta.push_back(row);

  P dchi = ring_dt(chi);
  for (int k = 0; k < n; ++k) {
    const auto &cur = ch.eta.back();
    std::vector<P> nxt(size_t(n), zero);
    for (int j = 0; j < n; ++j) {
      P acc = ring_dt(cur[size_t(j)]);
      if (ch.rational) {
        acc = acc * chi;
        if (k > 0) acc = acc - ring_scale_int(cur[size_t(j)] * dchi, k);
      }
      for (int i = 0; i < n; ++i) {
        if (cur[size_t(i)].is_zero() || N.at(i, j).is_zero()) continue;
        acc = acc + cur[size_t(i)] * N.at(i, j);
      }
      nxt[size_t(j)] = std::move(acc);
    }
    ch.eta.push_back(std::move(nxt));
  }
  return ch;
}

template <class P>
XiChain<P> xi_chain(const SysMat<P> &A, int m) {
  P one;
  if constexpr (std::is_same_v<P, MPoly>) {
    one = MPoly::constant(A.e.at(0).vars(), Rat(1));
  } else {
    one = CPoly::constant(cplx(1.0));
  }
  return xi_chain_rational(A, one, m);
}

// universal polynomial system: A(t,lambda) with entries
// sum_{k<m} l_{k*n^2+i*n+j+1} t^k, the full n^2*m-parameter family
XiChain<MPoly> universal_poly_chain(int n, int m);

// universal hypergeometric pencil (tE - B) x' = C x with symbolic B, C
// (2n^2 parameters, B entries first, row-major); chain carries chi = det(tE-B)
XiChain<MPoly> universal_hypergeom_chain(int n);

namespace detail {

// Trial division by chi (monic in t for exact inputs). Returns true and
// writes the quotient when the division is exact (to tolerance in float mode).
bool try_divide_chi(const MPoly &num, const MPoly &chi, MPoly *quot);
bool try_divide_chi(const CPoly &num, const CPoly &chi, CPoly *quot);

}  // namespace detail

// --- principal equation ---

template <class P>
struct Principal;
template <class P>
void normalize_principal(Principal<P> &eq, const XiChain<P> &ch, double tau);

// Wedge determinants of the n+1 chain rows. W[i] = det of the n x n matrix
// formed by the eta rows with row i omitted; a_j uses i = n-j and the sign
// (-1)^{n-j}, which makes sum_j a_j xi_{n-j} = 0 hold with all plus signs
// (cofactor identity for n+1 vectors in n-space).
template <class P>
std::vector<P> chain_wedges(const XiChain<P> &ch) {
  int n = ch.n;
  std::vector<P> w;
  w.reserve(size_t(n) + 1);
  for (int omit = 0; omit <= n; ++omit) {
    std::vector<std::vector<const P *>> rows;
    rows.reserve(size_t(n));
    for (int i = 0; i <= n; ++i) {
      if (i == omit) continue;
      std::vector<const P *> row(static_cast<size_t>(n), nullptr);
      for (int j = 0; j < n; ++j) row[size_t(j)] = &ch.eta[size_t(i)][size_t(j)];
      rows.push_back(std::move(row));
    }
    w.push_back(poly_det(rows));
  }
  return w;
}

template <class P>
Principal<P> principal_equation(const XiChain<P> &ch, double tau = 1e-10) {
  int n = ch.n;
  std::vector<P> w = chain_wedges(ch);

  double lead_scale = 1.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += ring_norm_d(ch.eta[size_t(i)][size_t(j)]);
    lead_scale *= std::max(s, 1e-30);
  }
  if (ring_is_zero(w[size_t(n)], lead_scale, tau))
    throw DegenerateChain("leading wedge xi_0^...^xi_{n-1} vanishes");

  Principal<P> eq;
  eq.n = n;
  if constexpr (std::is_same_v<P, MPoly>) {
    eq.mode = ch.eta[0][0].nvars() > 1 ? EqMode::universal : EqMode::specialized;
  } else {
    eq.mode = EqMode::specialized;
  }

  // a_j = (-1)^{n-j} * W[n-j] * chi^{n-j}
  eq.a.resize(size_t(n) + 1);
  for (int j = 0; j <= n; ++j) {
    P c = w[size_t(n - j)];
    if (ch.rational) {
      for (int rep = 0; rep < n - j; ++rep) c = c * ch.chi;
    }
    if ((n - j) % 2 == 1) c = -c;
    eq.a[size_t(j)] = std::move(c);
  }

  // exact-mode assertion of the annihilation identity on the eta rows:
  // sum_i (-1)^i W[i] eta_i = 0 component-by-component
  if constexpr (std::is_same_v<P, MPoly>) {
    for (int col = 0; col < n; ++col) {
      MPoly acc = w[0] * ch.eta[0][size_t(col)];
      for (int i = 1; i <= n; ++i) {
        MPoly t = w[size_t(i)] * ch.eta[size_t(i)][size_t(col)];
        acc = (i % 2 == 1) ? acc - t : acc + t;
      }
      if (!acc.is_zero())
        throw std::logic_error("annihilation identity failed in exact mode");
    }
  }

  normalize_principal(eq, ch, tau);
  return eq;
}

template <class P>
void normalize_principal(Principal<P> &eq, const XiChain<P> &ch, double tau) {
  // remove the maximal common chi power
  if (ch.rational) {
    bool progress = true;
    while (progress) {
      std::vector<P> q(eq.a.size());
      progress = true;
      for (size_t j = 0; j < eq.a.size() && progress; ++j) {
        if (eq.a[j].is_zero()) {
          q[j] = eq.a[j];
          continue;
        }
        progress = detail::try_divide_chi(eq.a[j], ch.chi, &q[j]);
      }
      if (progress) {
        eq.a = std::move(q);
        eq.chi_power_removed += 1;
      }
    }
  }
  // exact mode: remove the rational content across all coefficients, with
  // the sign chosen so the first nonzero coefficient leads with a positive
  // rational (the equation is only defined up to a common factor)
  if constexpr (std::is_same_v<P, MPoly>) {
    ContentAccumulator acc;
    for (const auto &p : eq.a)
      for (const auto &[e, c] : p.terms()) acc.add(c);
    if (!acc.empty()) {
      Rat g = acc.value();
      for (const auto &p : eq.a) {
        if (p.is_zero()) continue;
        if (p.terms().begin()->second < 0) g = -g;
        break;
      }
      if (g != 1) {
        for (auto &p : eq.a) p = p.divided_by(g);
        eq.content_removed = g;
      }
    }
  }
  (void)tau;
}

// --- degeneracy detection over C(t) ---

// Dependence of xi_0..xi_k over the rational-function field is equivalent to
// all (k+1)x(k+1) minors of the stacked rows vanishing identically; row
// scaling by chi powers does not change that, so the test runs on the eta
// rows. In float mode a minor counts as zero when its l1 norm is below
// tau * (product of its row norms).
template <class P>
DegeneracyResult<P> detect_degeneracy(const XiChain<P> &ch, double tau = 1e-10) {
  int n = ch.n;
  auto minor_det = [&](const std::vector<int> &rows, const std::vector<int> &cols) {
    std::vector<std::vector<const P *>> m(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
      m[r].resize(cols.size());
      for (size_t c = 0; c < cols.size(); ++c)
        m[r][c] = &ch.eta[size_t(rows[r])][size_t(cols[c])];
    }
    return poly_det(m);
  };
  auto row_scale = [&](const std::vector<int> &rows) {
    double s = 1.0;
    for (int i : rows) {
      double rs = 0.0;
      for (int j = 0; j < n; ++j) rs += ring_norm_d(ch.eta[size_t(i)][size_t(j)]);
      s *= std::max(rs, 1e-30);
    }
    return s;
  };

  auto combinations = [](int total, int pick) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(static_cast<size_t>(pick), 0);
    for (int i = 0; i < pick; ++i) idx[size_t(i)] = i;
    while (true) {
      out.push_back(idx);
      int i = pick - 1;
      while (i >= 0 && idx[size_t(i)] == total - pick + i) --i;
      if (i < 0) break;
      idx[size_t(i)]++;
      for (int j = i + 1; j < pick; ++j) idx[size_t(j)] = idx[size_t(j - 1)] + 1;
    }
    return out;
  };

  for (int k = 1; k < n; ++k) {
    std::vector<int> rows(size_t(k) + 1);
    for (int i = 0; i <= k; ++i) rows[size_t(i)] = i;
    double scale = row_scale(rows);
    bool dependent = true;
    for (const auto &cols : combinations(n, k + 1)) {
      if (!ring_is_zero(minor_det(rows, cols), scale, tau)) {
        dependent = false;
        break;
      }
    }
    if (!dependent) continue;

    // dependent at stage k: find k independent columns of the first k rows
    DegeneracyResult<P> res;
    res.k = k;
    res.generic = false;
    std::vector<int> head(static_cast<size_t>(k), 0);
    for (int i = 0; i < k; ++i) head[size_t(i)] = i;
    double head_scale = row_scale(head);
    std::vector<int> pivot_cols;
    for (const auto &cols : combinations(n, k)) {
      if (!ring_is_zero(minor_det(head, cols), head_scale, tau)) {
        pivot_cols = cols;
        break;
      }
    }
    if (pivot_cols.empty())
      throw std::logic_error("degeneracy stage inconsistent: no pivot columns");

    res.eq.n = k;
    if constexpr (std::is_same_v<P, MPoly>) {
      res.eq.mode =
          ch.eta[0][0].nvars() > 1 ? EqMode::universal : EqMode::specialized;
    }
    res.eq.a.resize(size_t(k) + 1);
    for (int j = 0; j <= k; ++j) {
      std::vector<int> sub;
      for (int i = 0; i <= k; ++i)
        if (i != k - j) sub.push_back(i);
      P c = minor_det(sub, pivot_cols);
      if (ch.rational) {
        for (int rep = 0; rep < k - j; ++rep) c = c * ch.chi;
      }
      if ((k - j) % 2 == 1) c = -c;
      res.eq.a[size_t(j)] = std::move(c);
    }
    normalize_principal(res.eq, ch, tau);
    return res;
  }

  DegeneracyResult<P> res;
  res.k = n;
  res.generic = true;
  res.eq = principal_equation(ch, tau);
  return res;
}

// --- Lemma-style certificates (exact polynomial chains only) ---

struct WedgeInfo {
  int omitted_row = 0;
  long degree = 0;       // total degree in (t, lambda); -1 when the wedge is 0
  Rat norm;              // exact l1 norm
  long rowsum_degree_bound = 0;  // provable bound: sum of row degree bounds
};

struct CertificateReport {
  int n = 0, m = 0;
  bool integral = false;
  bool xi_degrees_ok = false;
  bool wedge_degree_ok = false;  // against the stated n(n-1)m/2 bound
  bool wedge_norm_ok = false;
  long stated_degree_bound = 0;  // n(n-1)m/2
  Rat norm_bound;                // n! (2nm)^{n^2}
  std::vector<long> xi_degrees;
  std::vector<WedgeInfo> wedges;
  bool all_pass() const {
    return integral && xi_degrees_ok && wedge_degree_ok && wedge_norm_ok;
  }
};

CertificateReport verify_iter_certificates(const XiChain<MPoly> &ch);

// --- norm profile of a specialized equation ---

struct NormProfile {
  std::vector<double> b;  // l1 norms of a_j as univariate polynomials
  std::vector<double> c;  // sums of squared coefficient moduli
  bool sigma_flag = false;
};

NormProfile norm_profile(const Principal<CPoly> &eq, double tau = 1e-10);

struct NormProfileExact {
  std::vector<Rat> b, c;
  bool sigma_flag = false;
};

// requires univariate (specialized at rational lambda) exact equations
NormProfileExact norm_profile_exact(const Principal<MPoly> &eq);

// numeric specialization of an exact equation
Principal<CPoly> specialize_equation(const Principal<MPoly> &eq,
                                     const std::vector<cplx> &lambda);

}  // namespace oscbound
