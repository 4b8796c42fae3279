#include "oscbound/models.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oscbound {

namespace {

void check_square_blocks(int n, size_t count,
                         const std::vector<std::vector<cplx>> &blocks,
                         const char *what) {
  if (n <= 0) throw std::invalid_argument("system dimension must be positive");
  if (blocks.size() != count)
    throw std::invalid_argument(std::string(what) + ": wrong matrix count");
  for (const auto &b : blocks)
    if (b.size() != size_t(n) * size_t(n))
      throw std::invalid_argument(std::string(what) + ": matrix is not n x n");
}

// exact blocks mirror the floating ones when present
void check_exact_mirror(bool exact, size_t count, size_t entries,
                        const std::vector<std::vector<Rat>> &blocks,
                        const char *what) {
  if (!exact) return;
  if (blocks.size() != count)
    throw std::invalid_argument(std::string(what) +
                                ": exact matrix count mismatch");
  for (const auto &b : blocks)
    if (b.size() != entries)
      throw std::invalid_argument(std::string(what) + ": exact matrix shape");
}

MPoly rat_const(const VarsPtr &vars, const Rat &v) {
  return MPoly::constant(vars, v);
}

}  // namespace

void validate(const PolySystem &s) {
  if (s.m < 1) throw std::invalid_argument("polynomial system needs m >= 1");
  check_square_blocks(s.n, size_t(s.m), s.coeff, "poly system");
  check_exact_mirror(s.exact, size_t(s.m), size_t(s.n) * size_t(s.n),
                     s.coeff_exact, "poly system");
}

void validate(const FuchsSystem &s) {
  if (s.m < 1) throw std::invalid_argument("Fuchsian system needs m >= 1 poles");
  if (s.poles.size() != size_t(s.m))
    throw std::invalid_argument("Fuchsian system: pole count mismatch");
  check_square_blocks(s.n, size_t(s.m), s.residues, "Fuchsian system");
  check_exact_mirror(s.exact, size_t(s.m), size_t(s.n) * size_t(s.n),
                     s.residues_exact, "Fuchsian system");
  if (s.exact && s.poles_exact.size() != size_t(s.m))
    throw std::invalid_argument("Fuchsian system: exact pole count mismatch");

  double scale = 0.0;
  for (const auto &p : s.poles) scale = std::max(scale, std::abs(p));
  double tol = 1e-9 * (1.0 + scale);
  for (size_t i = 0; i < s.poles.size(); ++i)
    for (size_t j = i + 1; j < s.poles.size(); ++j)
      if (std::abs(s.poles[i] - s.poles[j]) < tol)
        throw std::invalid_argument("Fuchsian system has repeated poles");
}

void validate(const HypergeomSystem &s) {
  if (s.n <= 0) throw std::invalid_argument("system dimension must be positive");
  size_t e = size_t(s.n) * size_t(s.n);
  if (s.B.size() != e || s.C.size() != e)
    throw std::invalid_argument("hypergeometric system: B, C must be n x n");
  if (s.exact && (s.B_exact.size() != e || s.C_exact.size() != e))
    throw std::invalid_argument("hypergeometric system: exact matrix shape");
}

bool infinity_singular(const FuchsSystem &s) {
  size_t e = size_t(s.n) * size_t(s.n);
  if (s.exact) {
    for (size_t idx = 0; idx < e; ++idx) {
      Rat sum(0);
      for (const auto &blk : s.residues_exact) sum += blk[idx];
      if (sum != 0) return true;
    }
    return false;
  }
  double scale = 0.0;
  for (const auto &blk : s.residues)
    for (const auto &v : blk) scale = std::max(scale, std::abs(v));
  for (size_t idx = 0; idx < e; ++idx) {
    cplx sum(0.0);
    for (const auto &blk : s.residues) sum += blk[idx];
    if (std::abs(sum) > 1e-12 * (1.0 + scale)) return true;
  }
  return false;
}

std::vector<cplx> lambda_vector(const PolySystem &s) {
  std::vector<cplx> out;
  out.reserve(size_t(s.m) * size_t(s.n) * size_t(s.n));
  for (const auto &blk : s.coeff) out.insert(out.end(), blk.begin(), blk.end());
  return out;
}

std::vector<cplx> lambda_vector(const FuchsSystem &s) {
  std::vector<cplx> out;
  out.reserve(size_t(s.m) * (size_t(s.n) * size_t(s.n) + 1));
  for (const auto &blk : s.residues)
    out.insert(out.end(), blk.begin(), blk.end());
  out.insert(out.end(), s.poles.begin(), s.poles.end());
  return out;
}

std::vector<cplx> lambda_vector(const HypergeomSystem &s) {
  std::vector<cplx> out;
  out.reserve(2 * size_t(s.n) * size_t(s.n));
  out.insert(out.end(), s.B.begin(), s.B.end());
  out.insert(out.end(), s.C.begin(), s.C.end());
  return out;
}

double matrix_norm(const std::vector<cplx> &m, int n, MatrixNorm nk) {
  switch (nk) {
    case MatrixNorm::rowsum: {
      double best = 0.0;
      for (int i = 0; i < n; ++i) {
        double rs = 0.0;
        for (int j = 0; j < n; ++j) rs += std::abs(m[size_t(i) * n + j]);
        best = std::max(best, rs);
      }
      return best;
    }
    case MatrixNorm::maxentry: {
      double best = 0.0;
      for (const auto &v : m) best = std::max(best, std::abs(v));
      return best;
    }
    case MatrixNorm::frobenius: {
      double s = 0.0;
      for (const auto &v : m) s += std::norm(v);
      return std::sqrt(s);
    }
  }
  return 0.0;
}

double magnitude(const PolySystem &s, MatrixNorm nk) {
  double best = 0.0;
  for (const auto &blk : s.coeff) best = std::max(best, matrix_norm(blk, s.n, nk));
  return best;
}

double magnitude(const FuchsSystem &s, MatrixNorm nk) {
  double best = 0.0;
  for (const auto &blk : s.residues)
    best = std::max(best, matrix_norm(blk, s.n, nk));
  for (const auto &p : s.poles) best = std::max(best, std::abs(p));
  return best;
}

double magnitude(const HypergeomSystem &s, MatrixNorm nk) {
  return std::max(matrix_norm(s.B, s.n, nk), matrix_norm(s.C, s.n, nk));
}

// --- conversions to (numerator, denominator) form ---

namespace {

// adjugate and determinant of tE - B over an arbitrary polynomial ring,
// by cofactor expansion (n stays small)
template <class P, class MakeEntry>
void pencil_adj_det(int n, MakeEntry entry, std::vector<P> *adj, P *det) {
  std::vector<P> pencil(size_t(n) * size_t(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pencil[size_t(i) * n + j] = entry(i, j);

  auto sub_det = [&](int omit_r, int omit_c) {
    std::vector<std::vector<const P *>> rows;
    for (int r = 0; r < n; ++r) {
      if (r == omit_r) continue;
      std::vector<const P *> row;
      for (int c = 0; c < n; ++c) {
        if (c == omit_c) continue;
        row.push_back(&pencil[size_t(r) * n + c]);
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty()) return pencil[0] - pencil[0];  // placeholder, unused
    return poly_det(rows);
  };

  {
    std::vector<std::vector<const P *>> rows(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
      rows[size_t(r)].resize(size_t(n));
      for (int c = 0; c < n; ++c) rows[size_t(r)][size_t(c)] = &pencil[size_t(r) * n + c];
    }
    *det = poly_det(rows);
  }

  adj->assign(size_t(n) * size_t(n), pencil[0] - pencil[0]);
  if (n == 1) return;  // adj of a 1x1 matrix is (1); callers set it directly
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      P cof = sub_det(j, i);
      if ((i + j) % 2 == 1) cof = -cof;
      (*adj)[size_t(i) * n + j] = std::move(cof);
    }
}

}  // namespace

RationalSystemC hypergeom_to_rational(const HypergeomSystem &h) {
  validate(h);
  int n = h.n;
  CPoly t = CPoly::variable();
  std::vector<CPoly> adj;
  CPoly det;
  pencil_adj_det<CPoly>(
      n,
      [&](int i, int j) {
        CPoly p = CPoly::constant(-h.B[size_t(i) * n + j]);
        if (i == j) p = p + t;
        return p;
      },
      &adj, &det);
  if (n == 1) adj[0] = CPoly::constant(cplx(1.0));

  RationalSystemC out;
  out.chi = det;
  out.num.n = n;
  out.num.e.assign(size_t(n) * size_t(n), CPoly());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CPoly acc;
      for (int k = 0; k < n; ++k)
        acc = acc + adj[size_t(i) * n + k].scaled(h.C[size_t(k) * n + j]);
      out.num.at(i, j) = std::move(acc);
    }
  return out;
}

RationalSystemX hypergeom_to_rational_exact(const HypergeomSystem &h) {
  validate(h);
  if (!h.exact)
    throw std::invalid_argument("exact conversion requires exact input");
  int n = h.n;
  VarsPtr vars = make_vars({"t"});
  MPoly t = MPoly::variable(vars, 0);
  std::vector<MPoly> adj;
  MPoly det;
  pencil_adj_det<MPoly>(
      n,
      [&](int i, int j) {
        MPoly p = -rat_const(vars, h.B_exact[size_t(i) * n + j]);
        if (i == j) p = p + t;
        return p;
      },
      &adj, &det);
  if (n == 1) adj[0] = rat_const(vars, Rat(1));

  // the adjugate identity adj(tE-B)*(tE-B) = det * E, checked exactly
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MPoly acc(vars);
      for (int k = 0; k < n; ++k) {
        MPoly pkj = -rat_const(vars, h.B_exact[size_t(k) * n + j]);
        if (k == j) pkj = pkj + t;
        acc = acc + adj[size_t(i) * n + k] * pkj;
      }
      MPoly expect = (i == j) ? det : MPoly(vars);
      if (!(acc == expect))
        throw std::logic_error("adjugate identity failed");
    }

  RationalSystemX out;
  out.chi = det;
  out.num.n = n;
  out.num.e.assign(size_t(n) * size_t(n), MPoly(vars));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MPoly acc(vars);
      for (int k = 0; k < n; ++k)
        acc = acc + adj[size_t(i) * n + k].scaled(h.C_exact[size_t(k) * n + j]);
      out.num.at(i, j) = std::move(acc);
    }
  return out;
}

RationalSystemC fuchs_to_rational(const FuchsSystem &f) {
  validate(f);
  int n = f.n, m = f.m;
  CPoly chi = CPoly::constant(cplx(1.0));
  for (const auto &p : f.poles)
    chi = chi * CPoly(std::vector<cplx>{-p, cplx(1.0)});

  RationalSystemC out;
  out.chi = chi;
  out.num.n = n;
  out.num.e.assign(size_t(n) * size_t(n), CPoly());
  for (int k = 0; k < m; ++k) {
    CPoly cof = CPoly::constant(cplx(1.0));
    for (int l = 0; l < m; ++l) {
      if (l == k) continue;
      cof = cof * CPoly(std::vector<cplx>{-f.poles[size_t(l)], cplx(1.0)});
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cplx a = f.residues[size_t(k)][size_t(i) * n + j];
        if (a == cplx(0.0)) continue;
        out.num.at(i, j) = out.num.at(i, j) + cof.scaled(a);
      }
  }
  return out;
}

RationalSystemX fuchs_to_rational_exact(const FuchsSystem &f) {
  validate(f);
  if (!f.exact)
    throw std::invalid_argument("exact conversion requires exact input");
  int n = f.n, m = f.m;
  VarsPtr vars = make_vars({"t"});
  MPoly t = MPoly::variable(vars, 0);

  MPoly chi = rat_const(vars, Rat(1));
  for (const auto &p : f.poles_exact) chi = chi * (t - rat_const(vars, p));

  RationalSystemX out;
  out.chi = chi;
  out.num.n = n;
  out.num.e.assign(size_t(n) * size_t(n), MPoly(vars));
  for (int k = 0; k < m; ++k) {
    MPoly cof = rat_const(vars, Rat(1));
    for (int l = 0; l < m; ++l) {
      if (l == k) continue;
      cof = cof * (t - rat_const(vars, f.poles_exact[size_t(l)]));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Rat &a = f.residues_exact[size_t(k)][size_t(i) * n + j];
        if (a == 0) continue;
        out.num.at(i, j) = out.num.at(i, j) + cof.scaled(a);
      }
  }
  return out;
}

SysMat<CPoly> poly_system_matrix(const PolySystem &s) {
  validate(s);
  SysMat<CPoly> A;
  A.n = s.n;
  A.e.assign(size_t(s.n) * size_t(s.n), CPoly());
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) {
      std::vector<cplx> c(size_t(s.m));
      for (int k = 0; k < s.m; ++k) c[size_t(k)] = s.coeff[size_t(k)][size_t(i) * s.n + j];
      A.at(i, j) = CPoly(std::move(c));
    }
  return A;
}

SysMat<MPoly> poly_system_matrix_exact(const PolySystem &s) {
  validate(s);
  if (!s.exact)
    throw std::invalid_argument("exact conversion requires exact input");
  VarsPtr vars = make_vars({"t"});
  SysMat<MPoly> A;
  A.n = s.n;
  A.e.assign(size_t(s.n) * size_t(s.n), MPoly(vars));
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) {
      MPoly p(vars);
      for (int k = 0; k < s.m; ++k) {
        const Rat &v = s.coeff_exact[size_t(k)][size_t(i) * s.n + j];
        if (v == 0) continue;
        Expo e(1, 0);
        e[0] = uint32_t(k);
        p.add_term(e, v);
      }
      A.at(i, j) = std::move(p);
    }
  return A;
}

// --- reductions ---

Reduction<CPoly> poly_reduce(const PolySystem &s, double tau) {
  Reduction<CPoly> out;
  out.chain = xi_chain(poly_system_matrix(s), s.m);
  out.deg = detect_degeneracy(out.chain, tau);
  return out;
}

Reduction<MPoly> poly_reduce_exact(const PolySystem &s) {
  Reduction<MPoly> out;
  out.chain = xi_chain(poly_system_matrix_exact(s), s.m);
  out.deg = detect_degeneracy(out.chain, 0.0);
  return out;
}

Reduction<CPoly> fuchs_reduce(const FuchsSystem &f, double tau) {
  RationalSystemC rs = fuchs_to_rational(f);
  Reduction<CPoly> out;
  out.chain = xi_chain_rational(rs.num, rs.chi, f.m);
  out.deg = detect_degeneracy(out.chain, tau);
  return out;
}

Reduction<MPoly> fuchs_reduce_exact(const FuchsSystem &f) {
  RationalSystemX rs = fuchs_to_rational_exact(f);
  Reduction<MPoly> out;
  out.chain = xi_chain_rational(rs.num, rs.chi, f.m);
  out.deg = detect_degeneracy(out.chain, 0.0);
  return out;
}

Reduction<CPoly> hypergeom_reduce(const HypergeomSystem &h, double tau) {
  RationalSystemC rs = hypergeom_to_rational(h);
  Reduction<CPoly> out;
  out.chain = xi_chain_rational(rs.num, rs.chi, 1);
  out.deg = detect_degeneracy(out.chain, tau);
  return out;
}

Reduction<MPoly> hypergeom_reduce_exact(const HypergeomSystem &h) {
  RationalSystemX rs = hypergeom_to_rational_exact(h);
  Reduction<MPoly> out;
  out.chain = xi_chain_rational(rs.num, rs.chi, 1);
  out.deg = detect_degeneracy(out.chain, 0.0);
  return out;
}

// --- singular points and clearance ---

std::vector<cplx> singular_points(const FuchsSystem &f) { return f.poles; }

std::vector<cplx> singular_points(const HypergeomSystem &h) {
  int n = h.n;
  Eigen::MatrixXcd B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = h.B[size_t(i) * n + j];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(B, /*computeEigenvectors=*/false);
  std::vector<cplx> out(static_cast<size_t>(n), cplx(0.0));
  for (int i = 0; i < n; ++i) out[size_t(i)] = es.eigenvalues()(i);
  // deterministic order for reporting
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

namespace {

ClearanceReport clearance_for(const std::vector<cplx> &points, cplx center,
                              double r, double factor) {
  if (r <= 0.0) throw std::invalid_argument("disk radius must be positive");
  ClearanceReport rep;
  rep.factor = factor;
  rep.required = factor * r;
  rep.min_distance = std::numeric_limits<double>::infinity();
  for (const auto &p : points)
    rep.min_distance = std::min(rep.min_distance, std::abs(p - center));
  rep.clear = rep.min_distance > rep.required;
  return rep;
}

}  // namespace

ClearanceReport singularity_clearance(const FuchsSystem &f, cplx center,
                                      double r, double factor) {
  return clearance_for(singular_points(f), center, r, factor);
}

ClearanceReport singularity_clearance(const HypergeomSystem &h, cplx center,
                                      double r, double factor) {
  return clearance_for(singular_points(h), center, r, factor);
}

}  // namespace oscbound
