#include "oscbound/reduce.hpp"

#include <gmpxx.h>

#include <string>

namespace oscbound {

XiChain<MPoly> universal_poly_chain(int n, int m) {
  if (n <= 0 || m <= 0) throw std::invalid_argument("universal chain: n, m >= 1");
  long params = long(n) * n * m;
  if (params > 40)
    throw BudgetExceeded("universal polynomial family needs " +
                         std::to_string(params) +
                         " parameters; the exact-mode budget is n^2*m <= 40");
  VarsPtr vars = lambda_vars(size_t(params));
  SysMat<MPoly> A;
  A.n = n;
  A.e.assign(size_t(n) * size_t(n), MPoly(vars));
  // entry (i,j) = sum_{k<m} l_{k*n^2 + i*n + j + 1} * t^k
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MPoly acc(vars);
      for (int k = 0; k < m; ++k) {
        Expo e(vars->size(), 0);
        e[0] = uint32_t(k);
        e[size_t(k) * size_t(n) * size_t(n) + size_t(i) * size_t(n) +
          size_t(j) + 1] = 1;
        acc.add_term(e, Rat(1));
      }
      A.at(i, j) = std::move(acc);
    }
  return xi_chain(A, m);
}

XiChain<MPoly> universal_hypergeom_chain(int n) {
  if (n <= 0) throw std::invalid_argument("universal chain: n >= 1");
  long params = 2L * n * n;
  if (params > 40)
    throw BudgetExceeded("universal hypergeometric family needs " +
                         std::to_string(params) +
                         " parameters; the exact-mode budget is 2*n^2 <= 40");
  VarsPtr vars = lambda_vars(size_t(params));
  auto sym = [&](size_t flat) {
    Expo e(vars->size(), 0);
    e[flat + 1] = 1;
    MPoly p(vars);
    p.add_term(e, Rat(1));
    return p;
  };
  // pencil tE - B, with B entries l_1..l_{n^2} and C entries l_{n^2+1}..
  std::vector<MPoly> pencil(size_t(n) * size_t(n), MPoly(vars));
  MPoly t = MPoly::variable(vars, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MPoly p = -sym(size_t(i) * size_t(n) + size_t(j));
      if (i == j) p = p + t;
      pencil[size_t(i) * size_t(n) + size_t(j)] = std::move(p);
    }

  auto minor_det = [&](const std::vector<MPoly> &mat, int omit_r, int omit_c) {
    std::vector<std::vector<const MPoly *>> rows;
    for (int r = 0; r < n; ++r) {
      if (r == omit_r) continue;
      std::vector<const MPoly *> row;
      for (int c = 0; c < n; ++c) {
        if (c == omit_c) continue;
        row.push_back(&mat[size_t(r) * size_t(n) + size_t(c)]);
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty()) return MPoly::constant(vars, Rat(1));
    return poly_det(rows);
  };

  // chi = det(tE - B); N = adj(tE - B) * C, both polynomial
  MPoly chi;
  {
    std::vector<std::vector<const MPoly *>> rows(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
      rows[size_t(r)].resize(size_t(n));
      for (int c = 0; c < n; ++c)
        rows[size_t(r)][size_t(c)] = &pencil[size_t(r) * size_t(n) + size_t(c)];
    }
    chi = poly_det(rows);
  }
  std::vector<MPoly> adj(size_t(n) * size_t(n), MPoly(vars));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MPoly cof = minor_det(pencil, j, i);  // adjugate transposes cofactors
      if ((i + j) % 2 == 1) cof = -cof;
      adj[size_t(i) * size_t(n) + size_t(j)] = std::move(cof);
    }

  SysMat<MPoly> N;
  N.n = n;
  N.e.assign(size_t(n) * size_t(n), MPoly(vars));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MPoly acc(vars);
      for (int k = 0; k < n; ++k)
        acc = acc + adj[size_t(i) * size_t(n) + size_t(k)] *
                        sym(size_t(n) * size_t(n) + size_t(k) * size_t(n) +
                            size_t(j));
      N.at(i, j) = std::move(acc);
    }
  return xi_chain_rational(N, chi, 1);
}

namespace detail {

bool try_divide_chi(const MPoly &num, const MPoly &chi, MPoly *quot) {
  // univariate-in-t long division; requires the t-leading coefficient of chi
  // to be a nonzero constant (true for the pencil determinant, monic in t)
  long d = chi.deg_var(0);
  if (d < 0) return false;
  MPoly lead = chi.coeff_of_power(0, uint32_t(d));
  if (lead.degree() != 0) return false;
  Rat lc = lead.terms().begin()->second;

  const VarsPtr &vars = num.vars();
  MPoly rem = num;
  MPoly q(vars);
  while (!rem.is_zero()) {
    long k = rem.deg_var(0);
    if (k < d) return false;
    MPoly cn = rem.coeff_of_power(0, uint32_t(k));
    MPoly qterm(vars);
    for (const auto &[e, c] : cn.terms()) {
      Expo e2 = e;
      e2[0] = uint32_t(k - d);
      qterm.add_term(e2, c / lc);
    }
    q = q + qterm;
    rem = rem - qterm * chi;
    if (!rem.is_zero() && rem.deg_var(0) >= k)
      throw std::logic_error("chi division failed to reduce degree");
  }
  *quot = std::move(q);
  return true;
}

bool try_divide_chi(const CPoly &num, const CPoly &chi, CPoly *quot) {
  long d = chi.degree();
  if (d < 0) return false;
  if (d == 0) {
    *quot = num.scaled(cplx(1.0) / chi.coeff(0));
    return true;
  }
  long nd = num.degree();
  if (nd < d) return false;
  std::vector<cplx> rem = num.coeffs();
  std::vector<cplx> q(size_t(nd - d) + 1, cplx(0.0));
  cplx lc = chi.coeff(size_t(d));
  for (long k = nd; k >= d; --k) {
    cplx f = rem[size_t(k)] / lc;
    q[size_t(k - d)] = f;
    if (f == cplx(0.0)) continue;
    for (long j = 0; j <= d; ++j) rem[size_t(k - d + j)] -= f * chi.coeff(size_t(j));
    rem[size_t(k)] = cplx(0.0);  // eliminate rounding residue at the pivot
  }
  double rem_norm = 0.0;
  for (long j = 0; j < d; ++j) rem_norm += std::abs(rem[size_t(j)]);
  if (rem_norm > 1e-8 * (num.l1_norm() + 1e-300)) return false;
  *quot = CPoly(std::move(q));
  return true;
}

}  // namespace detail

CertificateReport verify_iter_certificates(const XiChain<MPoly> &ch) {
  if (ch.rational)
    throw std::invalid_argument(
        "certificates apply to polynomial-matrix chains only");
  CertificateReport rep;
  rep.n = ch.n;
  rep.m = ch.m;

  rep.integral = true;
  rep.xi_degrees_ok = true;
  for (int k = 0; k <= ch.n; ++k) {
    long dk = -1;
    for (const auto &p : ch.eta[size_t(k)]) {
      if (!p.is_integral()) rep.integral = false;
      dk = std::max(dk, p.degree());
    }
    rep.xi_degrees.push_back(dk);
    if (dk > long(k) * ch.m) rep.xi_degrees_ok = false;
  }

  rep.stated_degree_bound = long(ch.n) * (ch.n - 1) * ch.m / 2;
  {
    mpz_class fact, pw, base(2L * ch.n * ch.m);
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(ch.n));
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(),
               static_cast<unsigned long>(long(ch.n) * ch.n));
    rep.norm_bound = Rat(fact * pw);
  }

  rep.wedge_degree_ok = true;
  rep.wedge_norm_ok = true;
  std::vector<MPoly> w = chain_wedges(ch);
  for (int j = 0; j <= ch.n; ++j) {
    // a_j omits row n-j; report per-wedge data indexed by the omitted row
    int omit = ch.n - j;
    WedgeInfo wi;
    wi.omitted_row = omit;
    const MPoly &wj = w[size_t(omit)];
    wi.degree = wj.degree();
    wi.norm = wj.is_zero() ? Rat(0) : wj.l1_norm();
    long rs = 0;
    for (int i = 0; i <= ch.n; ++i)
      if (i != omit) rs += long(i) * ch.m;
    wi.rowsum_degree_bound = rs;
    if (wi.degree > rep.stated_degree_bound) rep.wedge_degree_ok = false;
    if (wi.norm > rep.norm_bound) rep.wedge_norm_ok = false;
    rep.wedges.push_back(std::move(wi));
  }
  return rep;
}

NormProfile norm_profile(const Principal<CPoly> &eq, double tau) {
  NormProfile np;
  for (const auto &p : eq.a) {
    np.b.push_back(p.l1_norm());
    np.c.push_back(p.sum_sq_moduli());
  }
  double bmax = 0.0;
  for (double v : np.b) bmax = std::max(bmax, v);
  np.sigma_flag = np.b.empty() || np.b[0] < tau * bmax || bmax == 0.0;
  return np;
}

NormProfileExact norm_profile_exact(const Principal<MPoly> &eq) {
  NormProfileExact np;
  for (const auto &p : eq.a) {
    if (!p.is_zero() && p.nvars() > 1 && p.degree() != p.deg_var(0))
      throw std::invalid_argument("norm profile needs a specialized equation");
    np.b.push_back(p.is_zero() ? Rat(0) : p.l1_norm());
    Rat ssq(0);
    for (const auto &[e, c] : p.terms()) ssq += c * c;
    np.c.push_back(ssq);
  }
  np.sigma_flag = np.b.empty() || np.b[0] == 0;
  return np;
}

Principal<CPoly> specialize_equation(const Principal<MPoly> &eq,
                                     const std::vector<cplx> &lambda) {
  Principal<CPoly> out;
  out.n = eq.n;
  out.mode = EqMode::specialized;
  out.content_removed = eq.content_removed;
  out.chi_power_removed = eq.chi_power_removed;
  for (const auto &p : eq.a) out.a.push_back(p.specialize(lambda));
  return out;
}

}  // namespace oscbound
