#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "oscbound/mpoly.hpp"
#include "oscbound/reduce.hpp"
#include "oscbound/rng.hpp"

using namespace oscbound;

namespace {

// system matrix over Q[t] from integer coefficient lists: entry (i,j) is
// sum_k coeffs[i][j][k] t^k
SysMat<MPoly> poly_system(const VarsPtr &vars,
                          const std::vector<std::vector<std::vector<long>>> &c) {
  SysMat<MPoly> A;
  A.n = int(c.size());
  A.e.assign(c.size() * c.size(), MPoly(vars));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c.size(); ++j) {
      MPoly p(vars);
      for (size_t k = 0; k < c[i][j].size(); ++k) {
        if (c[i][j][k] == 0) continue;
        Expo e(vars->size(), 0);
        e[0] = uint32_t(k);
        p.add_term(e, Rat(c[i][j][k]));
      }
      A.at(int(i), int(j)) = std::move(p);
    }
  return A;
}

// independent characteristic-polynomial oracle: Faddeev-LeVerrier over Q.
// returns (c_0=1, c_1, ..., c_n) with char(u) = sum_j c_j u^{n-j}
std::vector<Rat> charpoly_fl(const std::vector<std::vector<Rat>> &A) {
  size_t n = A.size();
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> c(n + 1, Rat(0));
  c[0] = Rat(1);
  // M_1 = A; c_k = -tr(A * (M_{k-1} + c_{k-1} I)) / k
  std::vector<std::vector<Rat>> Mk(n, std::vector<Rat>(n, Rat(0)));
  for (size_t k = 1; k <= n; ++k) {
    // Mk = A * (M + c_{k-1} I)
    std::vector<std::vector<Rat>> base = M;
    for (size_t i = 0; i < n; ++i) base[i][i] += c[k - 1];
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rat s(0);
        for (size_t l = 0; l < n; ++l) s += A[i][l] * base[l][j];
        Mk[i][j] = s;
      }
    Rat tr(0);
    for (size_t i = 0; i < n; ++i) tr += Mk[i][i];
    c[k] = -tr / Rat(long(k));
    M = Mk;
  }
  return c;
}

MPoly int_const(const VarsPtr &vars, long v) {
  return MPoly::constant(vars, Rat(v));
}

}  // namespace

TEST_CASE("chain on the nilpotent shift matrix") {
  VarsPtr vars = make_vars({"t"});
  auto A = poly_system(vars, {{{0}, {1}}, {{0}, {0}}});
  XiChain<MPoly> ch = xi_chain(A, 1);
  REQUIRE(ch.eta.size() == 3);
  CHECK(ch.eta[0][0] == int_const(vars, 1));
  CHECK(ch.eta[0][1].is_zero());
  CHECK(ch.eta[1][0].is_zero());
  CHECK(ch.eta[1][1] == int_const(vars, 1));
  CHECK(ch.eta[2][0].is_zero());
  CHECK(ch.eta[2][1].is_zero());

  Principal<MPoly> eq = principal_equation(ch);
  CHECK(eq.a[0] == int_const(vars, 1));
  CHECK(eq.a[1].is_zero());
  CHECK(eq.a[2].is_zero());
}

TEST_CASE("chain on the Airy companion matrix") {
  VarsPtr vars = make_vars({"t"});
  auto A = poly_system(vars, {{{0}, {1}}, {{0, 1}, {0}}});
  XiChain<MPoly> ch = xi_chain(A, 2);
  MPoly t = MPoly::variable(vars, 0);
  CHECK(ch.eta[1][0].is_zero());
  CHECK(ch.eta[1][1] == int_const(vars, 1));
  CHECK(ch.eta[2][0] == t);
  CHECK(ch.eta[2][1].is_zero());

  Principal<MPoly> eq = principal_equation(ch);
  CHECK(eq.a[0] == int_const(vars, 1));
  CHECK(eq.a[1].is_zero());
  CHECK(eq.a[2] == -t);

  CertificateReport rep = verify_iter_certificates(ch);
  CHECK(rep.integral);
  CHECK(rep.xi_degrees_ok);
  CHECK(rep.wedge_degree_ok);
  CHECK(rep.wedge_norm_ok);
  CHECK(rep.all_pass());
}

TEST_CASE("constant matrices power the chain") {
  Rng rng(314);
  for (int it = 0; it < 50; ++it) {
    int n = int(rng.uniform_int(2, 5));
    VarsPtr vars = make_vars({"t"});
    const size_t un = size_t(n);
    std::vector<std::vector<std::vector<long>>> c(
        un, std::vector<std::vector<long>>(un));
    std::vector<std::vector<Rat>> Aq(un, std::vector<Rat>(un));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long v = rng.uniform_int(-3, 3);
        c[size_t(i)][size_t(j)] = {v};
        Aq[size_t(i)][size_t(j)] = Rat(v);
      }
    auto A = poly_system(vars, c);
    XiChain<MPoly> ch = xi_chain(A, 1);

    // xi_k = xi_0 A^k
    std::vector<Rat> row(size_t(n), Rat(0));
    row[0] = Rat(1);
    for (int k = 0; k <= n; ++k) {
      for (int j = 0; j < n; ++j) {
        const MPoly &entry = ch.eta[size_t(k)][size_t(j)];
        Rat expect = row[size_t(j)];
        if (expect == 0) {
          CHECK(entry.is_zero());
        } else {
          CHECK(entry == MPoly::constant(vars, expect));
        }
      }
      std::vector<Rat> next(size_t(n), Rat(0));
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) next[size_t(j)] += row[size_t(i)] * Aq[size_t(i)][size_t(j)];
      row = next;
    }
  }
}

TEST_CASE("constant-matrix equation matches the characteristic polynomial") {
  Rng rng(2718);
  int done = 0, attempts = 0;
  while (done < 40 && attempts < 400) {
    ++attempts;
    int n = int(rng.uniform_int(2, 5));
    VarsPtr vars = make_vars({"t"});
    const size_t un = size_t(n);
    std::vector<std::vector<std::vector<long>>> c(
        un, std::vector<std::vector<long>>(un));
    std::vector<std::vector<Rat>> Aq(un, std::vector<Rat>(un));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long v = rng.uniform_int(-3, 3);
        c[size_t(i)][size_t(j)] = {v};
        Aq[size_t(i)][size_t(j)] = Rat(v);
      }
    XiChain<MPoly> ch = xi_chain(poly_system(vars, c), 1);
    Principal<MPoly> eq;
    try {
      eq = principal_equation(ch);
    } catch (const DegenerateChain &) {
      continue;  // Krylov-degenerate draw; proportionality is ill-posed
    }
    ++done;

    std::vector<Rat> cp = charpoly_fl(Aq);
    // exact proportionality via cross products, plus joint nonvanishing
    bool some = false;
    for (size_t i = 0; i <= size_t(n); ++i) {
      Rat ai = eq.a[i].is_zero() ? Rat(0) : eq.a[i].terms().begin()->second;
      CHECK(eq.a[i].degree() <= 0);
      for (size_t j = 0; j <= size_t(n); ++j) {
        Rat aj = eq.a[j].is_zero() ? Rat(0) : eq.a[j].terms().begin()->second;
        CHECK(ai * cp[j] == aj * cp[i]);
      }
      if (ai != 0) some = true;
    }
    CHECK(some);
  }
  CHECK(done == 40);
}

TEST_CASE("annihilation identity holds exactly on random systems") {
  Rng rng(424242);
  int done = 0, attempts = 0;
  while (done < 100 && attempts < 500) {
    ++attempts;
    int n = int(rng.uniform_int(2, 4));
    int m = int(rng.uniform_int(1, 3));
    VarsPtr vars = make_vars({"t"});
    const size_t un = size_t(n);
    std::vector<std::vector<std::vector<long>>> c(
        un, std::vector<std::vector<long>>(un));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        c[size_t(i)][size_t(j)].resize(size_t(m));
        for (int k = 0; k < m; ++k)
          c[size_t(i)][size_t(j)][size_t(k)] = rng.uniform_int(-3, 3);
      }
    XiChain<MPoly> ch = xi_chain(poly_system(vars, c), m);
    Principal<MPoly> eq;
    try {
      eq = principal_equation(ch);
    } catch (const DegenerateChain &) {
      continue;
    }
    ++done;

    // re-verify sum_j a_j xi_{n-j} = 0 externally, component by component
    for (int col = 0; col < n; ++col) {
      MPoly acc(vars);
      for (int j = 0; j <= n; ++j)
        acc = acc + eq.a[size_t(j)] * ch.eta[size_t(n - j)][size_t(col)];
      CHECK(acc.is_zero());
    }

    CertificateReport rep = verify_iter_certificates(ch);
    CHECK(rep.integral);
    CHECK(rep.xi_degrees_ok);
    CHECK(rep.wedge_norm_ok);
  }
  CHECK(done == 100);
}

TEST_CASE("corrupted chains fail the integrality certificate") {
  VarsPtr vars = make_vars({"t"});
  auto A = poly_system(vars, {{{0}, {1}}, {{0, 1}, {0}}});
  XiChain<MPoly> ch = xi_chain(A, 2);
  for (auto &p : ch.eta[1]) p = p.scaled(Rat(1, 2));
  CertificateReport rep = verify_iter_certificates(ch);
  CHECK_FALSE(rep.integral);
}

TEST_CASE("stated wedge degree bound has a genuine violation") {
  // A = [[t, 1+t], [1+t, 0]]: n = 2, m = 2, every entry l1-norm <= 2,
  // yet det(xi_1, xi_2) = -(t^3 + 3t^2 + 3t + 2) has degree 3 > n(n-1)m/2 = 2
  VarsPtr vars = make_vars({"t"});
  auto A = poly_system(vars, {{{0, 1}, {1, 1}}, {{1, 1}, {0}}});
  XiChain<MPoly> ch = xi_chain(A, 2);
  CertificateReport rep = verify_iter_certificates(ch);
  CHECK(rep.integral);
  CHECK(rep.xi_degrees_ok);
  CHECK(rep.wedge_norm_ok);
  CHECK(rep.stated_degree_bound == 2);
  long maxdeg = -1;
  for (const auto &w : rep.wedges) maxdeg = std::max(maxdeg, w.degree);
  CHECK(maxdeg == 3);
  CHECK_FALSE(rep.wedge_degree_ok);
  // the per-coefficient row-sum bound does hold
  for (const auto &w : rep.wedges) CHECK(w.degree <= w.rowsum_degree_bound);

  // cross-check the equation itself: (1+t) y'' - (t^2+t+1) y' - (t^3+...) y
  Principal<MPoly> eq = principal_equation(ch);
  MPoly t = MPoly::variable(vars, 0);
  MPoly one = int_const(vars, 1);
  CHECK(eq.a[0] == one + t);
  CHECK(eq.a[1] == -(t * t + t + one));
  CHECK(eq.a[2] == -(t * t * t + t * t.scaled(Rat(3)) + t.scaled(Rat(3)) +
                     int_const(vars, 2)));
}

TEST_CASE("degeneracy detection on the stock examples") {
  VarsPtr vars = make_vars({"t"});

  // A = [[0,1],[0,0]]: generic, k = 2, equation y'' = 0
  {
    XiChain<MPoly> ch = xi_chain(poly_system(vars, {{{0}, {1}}, {{0}, {0}}}), 1);
    DegeneracyResult<MPoly> res = detect_degeneracy(ch, 0.0);
    CHECK(res.generic);
    CHECK(res.k == 2);
    CHECK(res.eq.a[0] == int_const(vars, 1));
    CHECK(res.eq.a[1].is_zero());
    CHECK(res.eq.a[2].is_zero());
  }

  // A = 0: xi_1 = 0, degenerate at k = 1, equation y' = 0
  {
    XiChain<MPoly> ch = xi_chain(poly_system(vars, {{{0}, {0}}, {{0}, {0}}}), 1);
    DegeneracyResult<MPoly> res = detect_degeneracy(ch, 0.0);
    CHECK_FALSE(res.generic);
    CHECK(res.k == 1);
    REQUIRE(res.eq.a.size() == 2);
    CHECK(res.eq.a[0] == int_const(vars, 1));
    CHECK(res.eq.a[1].is_zero());
  }

  // A = diag(1,1): xi_1 = xi_0, degenerate at k = 1, equation y' - y = 0
  {
    XiChain<MPoly> ch = xi_chain(poly_system(vars, {{{1}, {0}}, {{0}, {1}}}), 1);
    DegeneracyResult<MPoly> res = detect_degeneracy(ch, 0.0);
    CHECK_FALSE(res.generic);
    CHECK(res.k == 1);
    CHECK(res.eq.a[0] == int_const(vars, 1));
    CHECK(res.eq.a[1] == int_const(vars, -1));
  }

  // A = diag(t, 1): xi_1 = (t, 0) is dependent on xi_0 over C(t) though not
  // over C; y = x_1 = exp(t^2/2) satisfies the order-1 equation y' = t y
  {
    XiChain<MPoly> ch = xi_chain(poly_system(vars, {{{0, 1}, {0}}, {{0}, {1}}}), 2);
    DegeneracyResult<MPoly> res = detect_degeneracy(ch, 0.0);
    CHECK_FALSE(res.generic);
    CHECK(res.k == 1);
    MPoly t = MPoly::variable(vars, 0);
    // a_0 y' + a_1 y = 0 proportional to y' - t y
    CHECK(res.eq.a[0] == int_const(vars, 1));
    CHECK(res.eq.a[1] == -t);
  }
}

TEST_CASE("degenerate leading wedge raises") {
  VarsPtr vars = make_vars({"t"});
  XiChain<MPoly> ch = xi_chain(poly_system(vars, {{{0}, {0}}, {{1}, {0}}}), 1);
  CHECK_THROWS_AS(principal_equation(ch), DegenerateChain);
}

TEST_CASE("rational chain tracks eta over a scalar denominator") {
  // x' = N/chi x with chi = t, N = [[0, t], [0, -1]] encodes y'' + y'/t = 0
  VarsPtr vars = make_vars({"t"});
  MPoly t = MPoly::variable(vars, 0);
  SysMat<MPoly> N;
  N.n = 2;
  N.e.assign(4, MPoly(vars));
  N.at(0, 1) = t;
  N.at(1, 1) = int_const(vars, -1);
  XiChain<MPoly> ch = xi_chain_rational(N, t, 1);
  CHECK(ch.rational);
  CHECK(ch.eta[1][0].is_zero());
  CHECK(ch.eta[1][1] == t);
  CHECK(ch.eta[2][0].is_zero());
  CHECK(ch.eta[2][1] == -t);

  Principal<MPoly> eq = principal_equation(ch);
  // t y'' + y' = 0 after clearing the maximal chi power
  CHECK(eq.chi_power_removed == 2);
  CHECK(eq.a[0] == t);
  CHECK(eq.a[1] == int_const(vars, 1));
  CHECK(eq.a[2].is_zero());
}

TEST_CASE("norm profile of specialized equations") {
  Principal<CPoly> eq;
  eq.n = 2;
  eq.a = {CPoly::constant(cplx(1.0)), CPoly(),
          CPoly(std::vector<cplx>{cplx(0.0), cplx(-1.0)})};
  NormProfile np = norm_profile(eq);
  REQUIRE(np.b.size() == 3);
  CHECK(np.b[0] == 1.0);
  CHECK(np.b[1] == 0.0);
  CHECK(np.b[2] == 1.0);
  CHECK(np.c[0] == 1.0);
  CHECK(np.c[1] == 0.0);
  CHECK(np.c[2] == 1.0);
  CHECK_FALSE(np.sigma_flag);

  Principal<CPoly> quad;
  quad.n = 0;
  quad.a = {CPoly(std::vector<cplx>{cplx(1.0), cplx(-4.0), cplx(3.0)})};
  NormProfile np2 = norm_profile(quad);
  CHECK(np2.b[0] == 8.0);
  CHECK(np2.c[0] == 26.0);

  Principal<CPoly> zero;
  zero.n = 1;
  zero.a = {CPoly(), CPoly()};
  CHECK(norm_profile(zero).sigma_flag);

  // c_j <= b_j^2 <= (#coeffs) c_j
  Rng rng(5);
  for (int it = 0; it < 100; ++it) {
    std::vector<cplx> c(size_t(rng.uniform_int(1, 9)));
    for (auto &v : c) v = cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
    CPoly p(std::move(c));
    if (p.is_zero()) continue;
    double b = p.l1_norm(), cc = p.sum_sq_moduli();
    CHECK(cc <= b * b * (1 + 1e-12));
    CHECK(b * b <= double(p.degree() + 1) * cc * (1 + 1e-12));
  }
}

TEST_CASE("universal polynomial chain") {
  XiChain<MPoly> ch = universal_poly_chain(2, 1);
  // A = [[l1, l2], [l3, l4]]: xi_1 = (l1, l2)
  VarsPtr vars = ch.eta[0][0].vars();
  CHECK(ch.eta[1][0] == MPoly::variable(vars, 1));
  CHECK(ch.eta[1][1] == MPoly::variable(vars, 2));

  Principal<MPoly> eq = principal_equation(ch);
  CHECK(eq.mode == EqMode::universal);
  CHECK_FALSE(eq.a[0].is_zero());

  CertificateReport rep = verify_iter_certificates(ch);
  CHECK(rep.integral);
  CHECK(rep.xi_degrees_ok);
  CHECK(rep.wedge_norm_ok);

  CHECK_THROWS_AS(universal_poly_chain(4, 3), BudgetExceeded);
}

TEST_CASE("universal hypergeometric chain") {
  XiChain<MPoly> ch = universal_hypergeom_chain(2);
  CHECK(ch.rational);
  CHECK(ch.chi.deg_var(0) == 2);
  Principal<MPoly> eq = principal_equation(ch);
  CHECK_FALSE(eq.a[0].is_zero());
  CHECK_THROWS_AS(universal_hypergeom_chain(5), BudgetExceeded);
}
