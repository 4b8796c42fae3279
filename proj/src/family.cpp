#include "oscbound/family.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "oscbound/reduce.hpp"

namespace oscbound {

VarsPtr teps_vars() {
  static const VarsPtr v = make_vars({"t", "eps"});
  return v;
}

MPoly eps_shift_down(const MPoly &p, long k) {
  if (k < 0) throw std::invalid_argument("eps_shift_down: negative power");
  if (k == 0) return p;
  if (p.nvars() <= kEpsVar)
    throw std::invalid_argument("eps_shift_down: ring has no parameter");
  MPoly r(p.vars());
  for (const auto &[e, c] : p.terms()) {
    if (long(e[kEpsVar]) < k)
      throw std::invalid_argument("eps_shift_down: insufficient order");
    Expo ne = e;
    ne[kEpsVar] -= uint32_t(k);
    r.add_term(ne, c);
  }
  return r;
}

MPoly eps_at_zero(const MPoly &p) { return p.coeff_of_power(kEpsVar, 0); }

int rat_matrix_rank(std::vector<std::vector<Rat>> rows) {
  if (rows.empty()) return 0;
  size_t nr = rows.size(), nc = rows[0].size();
  int rank = 0;
  for (size_t col = 0; col < nc && size_t(rank) < nr; ++col) {
    size_t piv = size_t(rank);
    while (piv < nr && rows[piv][col] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(rows[size_t(rank)], rows[piv]);
    for (size_t r = size_t(rank) + 1; r < nr; ++r) {
      if (rows[r][col] == 0) continue;
      Rat f = rows[r][col] / rows[size_t(rank)][col];
      for (size_t c = col; c < nc; ++c)
        rows[r][c] -= f * rows[size_t(rank)][c];
    }
    ++rank;
  }
  return rank;
}

// --- constant-rank spanning families ---------------------------------------

namespace {

bool vec_is_zero(const EpsVec &v) {
  for (const auto &p : v)
    if (!p.is_zero()) return false;
  return true;
}

long vec_eps_ord(const EpsVec &v) {
  long best = kNuInf;
  for (const auto &p : v) {
    long o = p.ord_var(kEpsVar);
    if (o >= 0 && o < best) best = o;
  }
  return best;
}

// divide out the rational content, first nonzero component leading positive
EpsVec content_normalized(EpsVec v) {
  ContentAccumulator acc;
  for (const auto &p : v)
    for (const auto &[e, c] : p.terms()) acc.add(c);
  if (acc.empty()) return v;
  Rat g = acc.value();
  for (const auto &p : v) {
    if (p.is_zero()) continue;
    if (p.terms().begin()->second < 0) g = -g;
    break;
  }
  if (g != 1)
    for (auto &p : v) p = p.divided_by(g);
  return v;
}

// value of a parameter-only polynomial at eps = 0
Rat at_zero_value(const MPoly &p) {
  std::vector<Rat> pt(p.nvars(), Rat(0));
  return p.eval_rat(pt);
}

// Row indices forming an invertible block of the n x k matrix [w_j(0)]:
// Gaussian elimination at eps = 0, first usable row per column.
std::vector<int> pivot_rows_at_zero(const std::vector<EpsVec> &ws, int n) {
  int k = int(ws.size());
  std::vector<std::vector<Rat>> m(size_t(n), std::vector<Rat>(size_t(k), Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < k; ++b) m[size_t(i)][size_t(b)] = at_zero_value(ws[size_t(b)][size_t(i)]);
  std::vector<bool> used(size_t(n), false);
  std::vector<int> piv;
  piv.reserve(size_t(k));
  for (int b = 0; b < k; ++b) {
    int row = -1;
    for (int i = 0; i < n; ++i) {
      if (!used[size_t(i)] && m[size_t(i)][size_t(b)] != 0) {
        row = i;
        break;
      }
    }
    if (row < 0)
      throw std::logic_error("constant_rank_span: basis degenerated at eps=0");
    used[size_t(row)] = true;
    piv.push_back(row);
    for (int i = 0; i < n; ++i) {
      if (i == row || m[size_t(i)][size_t(b)] == 0) continue;
      Rat f = m[size_t(i)][size_t(b)] / m[size_t(row)][size_t(b)];
      for (int c = b; c < k; ++c)
        m[size_t(i)][size_t(c)] -= f * m[size_t(row)][size_t(c)];
    }
  }
  return piv;
}

MPoly mat_det(const std::vector<std::vector<MPoly>> &m) {
  std::vector<std::vector<const MPoly *>> view(m.size());
  for (size_t r = 0; r < m.size(); ++r) {
    view[r].resize(m[r].size());
    for (size_t c = 0; c < m[r].size(); ++c) view[r][c] = &m[r][c];
  }
  return poly_det(view);
}

}  // namespace

SpanBasis constant_rank_span(const std::vector<EpsVec> &v) {
  SpanBasis out;
  if (v.empty()) return out;
  size_t n = v[0].size();
  if (n == 0) throw std::invalid_argument("constant_rank_span: empty vectors");
  for (const auto &vec : v) {
    if (vec.size() != n)
      throw std::invalid_argument("constant_rank_span: mixed vector sizes");
    for (const auto &p : vec)
      if (p.deg_var(0) > 0)
        throw std::invalid_argument(
            "constant_rank_span: components must not involve t");
  }

  std::vector<int> piv;  // pivot rows of the accepted basis at eps = 0
  for (const auto &r : v) {
    EpsVec d;
    if (out.w.empty()) {
      d = r;
    } else {
      // Cramer solve of the pivot-row block: the denominator-free residual
      // delta * r - sum_b det_b * w_b vanishes on the pivot rows and equals
      // delta * (r - projection of r onto span{w_b} parallel to the
      // complementary coordinate subspace); delta(0) != 0.
      size_t k = out.w.size();
      std::vector<std::vector<MPoly>> block(k, std::vector<MPoly>(k));
      for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b)
          block[a][b] = out.w[b][size_t(piv[a])];
      MPoly delta = mat_det(block);
      std::vector<MPoly> cof(k);
      for (size_t b = 0; b < k; ++b) {
        std::vector<std::vector<MPoly>> rep = block;
        for (size_t a = 0; a < k; ++a) rep[a][b] = r[size_t(piv[a])];
        cof[b] = mat_det(rep);
      }
      d.resize(n);
      for (size_t i = 0; i < n; ++i) {
        MPoly acc = delta * r[i];
        for (size_t b = 0; b < k; ++b) acc = acc - cof[b] * out.w[b][i];
        d[i] = std::move(acc);
      }
      for (size_t a = 0; a < k; ++a)
        if (!d[size_t(piv[a])].is_zero())
          throw std::logic_error("constant_rank_span: residual off complement");
    }
    if (vec_is_zero(d)) continue;  // in the span for every eps
    long nu = vec_eps_ord(d);
    EpsVec w(n);
    for (size_t i = 0; i < n; ++i) w[i] = eps_shift_down(d[i], nu);
    out.w.push_back(content_normalized(std::move(w)));
    piv = pivot_rows_at_zero(out.w, int(n));
  }
  out.rank = int(out.w.size());
  return out;
}

// --- truncated power series -------------------------------------------------

ZSeries ZSeries::constant(const Rat &x, int trunc) {
  if (trunc <= 0) throw std::invalid_argument("ZSeries: truncation order");
  ZSeries s(trunc);
  s.c_[0] = x;
  return s;
}

ZSeries ZSeries::variable(int trunc) { return monomial(Rat(1), 1, trunc); }

ZSeries ZSeries::monomial(const Rat &x, long k, int trunc) {
  if (trunc <= 0 || k < 0) throw std::invalid_argument("ZSeries: monomial");
  ZSeries s(trunc);
  if (x == 0) return s;
  if (k >= trunc) {
    s.exact_ = false;  // cut away, visibly
    return s;
  }
  s.c_[size_t(k)] = x;
  return s;
}

ZSeries ZSeries::from_coeffs(std::vector<Rat> c, int trunc) {
  if (trunc <= 0) throw std::invalid_argument("ZSeries: truncation order");
  ZSeries s(trunc);
  for (size_t i = 0; i < c.size(); ++i) {
    if (int(i) < trunc) {
      s.c_[i] = std::move(c[i]);
    } else if (c[i] != 0) {
      s.exact_ = false;
    }
  }
  return s;
}

ZSeries ZSeries::truncated(std::vector<Rat> c, int trunc) {
  ZSeries s = from_coeffs(std::move(c), trunc);
  s.exact_ = false;
  return s;
}

bool ZSeries::zero_to_trunc() const {
  for (const auto &x : c_)
    if (x != 0) return false;
  return true;
}

bool ZSeries::is_zero() const { return exact_ && zero_to_trunc(); }

long ZSeries::ord() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return long(i);
  return exact_ ? kNuInf : long(c_.size());
}

ZSeries ZSeries::binop(const ZSeries &o, int sign) const {
  if (c_.empty() || o.c_.empty())
    throw std::invalid_argument("ZSeries: uninitialized operand");
  int nt = std::min(trunc(), o.trunc());
  ZSeries r(nt);
  for (int i = 0; i < nt; ++i) {
    if (sign > 0)
      r.c_[size_t(i)] = c_[size_t(i)] + o.c_[size_t(i)];
    else
      r.c_[size_t(i)] = c_[size_t(i)] - o.c_[size_t(i)];
  }
  r.exact_ = exact_ && o.exact_;
  for (int i = nt; r.exact_ && i < trunc(); ++i)
    if (c_[size_t(i)] != 0) r.exact_ = false;
  for (int i = nt; r.exact_ && i < o.trunc(); ++i)
    if (o.c_[size_t(i)] != 0) r.exact_ = false;
  return r;
}

ZSeries ZSeries::operator+(const ZSeries &o) const { return binop(o, +1); }
ZSeries ZSeries::operator-(const ZSeries &o) const { return binop(o, -1); }

ZSeries ZSeries::operator*(const ZSeries &o) const {
  if (c_.empty() || o.c_.empty())
    throw std::invalid_argument("ZSeries: uninitialized operand");
  int nt = std::min(trunc(), o.trunc());
  ZSeries r(nt);
  if (is_zero() || o.is_zero()) return r;
  long da = -1, db = -1;  // highest stored nonzero indices
  for (int i = 0; i < trunc(); ++i)
    if (c_[size_t(i)] != 0) da = i;
  for (int i = 0; i < o.trunc(); ++i)
    if (o.c_[size_t(i)] != 0) db = i;
  for (int i = 0; i <= std::min<long>(da, nt - 1); ++i) {
    if (c_[size_t(i)] == 0) continue;
    for (int j = 0; j <= std::min<long>(db, nt - 1 - i); ++j) {
      if (o.c_[size_t(j)] == 0) continue;
      r.c_[size_t(i + j)] += c_[size_t(i)] * o.c_[size_t(j)];
    }
  }
  r.exact_ = exact_ && o.exact_ && da + db < nt;
  return r;
}

ZSeries ZSeries::operator-() const { return scaled(Rat(-1)); }

ZSeries ZSeries::scaled(const Rat &s) const {
  if (c_.empty()) throw std::invalid_argument("ZSeries: uninitialized operand");
  if (s == 0) return ZSeries(trunc());  // exactly zero regardless of flags
  ZSeries r = *this;
  for (auto &x : r.c_) x *= s;
  return r;
}

bool ZSeries::operator==(const ZSeries &o) const {
  return exact_ == o.exact_ && c_ == o.c_;
}

ZSeries ZSeries::shifted_up(long k) const {
  if (k < 0) throw std::invalid_argument("ZSeries: negative shift");
  if (c_.empty()) throw std::invalid_argument("ZSeries: uninitialized operand");
  ZSeries r(trunc());
  r.exact_ = exact_;
  for (int i = 0; i < trunc(); ++i) {
    if (c_[size_t(i)] == 0) continue;
    if (i + k >= long(trunc())) {
      r.exact_ = false;  // nonzero coefficient pushed past the truncation
    } else {
      r.c_[size_t(i + k)] = c_[size_t(i)];
    }
  }
  return r;
}

ZSeries ZSeries::shifted_down(long k) const {
  if (k < 0) throw std::invalid_argument("ZSeries: negative shift");
  if (c_.empty()) throw std::invalid_argument("ZSeries: uninitialized operand");
  if (k > trunc()) throw std::domain_error("ZSeries: shift past truncation");
  for (long i = 0; i < k; ++i)
    if (c_[size_t(i)] != 0)
      throw std::domain_error("ZSeries: nonzero low-order coefficients");
  ZSeries r(trunc());
  r.exact_ = exact_;
  for (long i = k; i < trunc(); ++i) r.c_[size_t(i - k)] = c_[size_t(i)];
  return r;
}

ZSeries ZSeries::inverse() const {
  if (c_.empty() || c_[0] == 0)
    throw std::domain_error("ZSeries: inverse of a non-unit");
  ZSeries r(trunc());
  r.c_[0] = 1 / c_[0];
  for (int k = 1; k < trunc(); ++k) {
    Rat acc(0);
    for (int i = 1; i <= k; ++i) acc += c_[size_t(i)] * r.c_[size_t(k - i)];
    r.c_[size_t(k)] = -acc / c_[0];
  }
  long deg = -1;
  for (int i = 0; i < trunc(); ++i)
    if (c_[size_t(i)] != 0) deg = i;
  r.exact_ = exact_ && deg == 0;  // only constants invert exactly
  return r;
}

std::string ZSeries::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < trunc(); ++i) {
    if (c_[size_t(i)] == 0) continue;
    if (any) os << " + ";
    os << rat_to_string(c_[size_t(i)]);
    if (i > 0) os << "*z^" << i;
    any = true;
  }
  if (!any) os << "0";
  if (!exact_) os << " + O(z^" << trunc() << ")";
  return os.str();
}

// --- series matrices and the local Smith form -------------------------------

SeriesMat series_mat(int rows, int cols, int trunc) {
  if (rows <= 0 || cols <= 0 || trunc <= 0)
    throw std::invalid_argument("series_mat: shape");
  SeriesMat m;
  m.rows = rows;
  m.cols = cols;
  m.e.assign(size_t(rows) * size_t(cols), ZSeries(trunc));
  return m;
}

SeriesMat series_identity(int n, int trunc) {
  SeriesMat m = series_mat(n, n, trunc);
  for (int i = 0; i < n; ++i) m.at(i, i) = ZSeries::constant(Rat(1), trunc);
  return m;
}

SeriesMat series_mat_mul(const SeriesMat &a, const SeriesMat &b) {
  if (a.cols != b.rows) throw std::invalid_argument("series_mat_mul: shape");
  int nt = std::min(a.e.at(0).trunc(), b.e.at(0).trunc());
  SeriesMat r = series_mat(a.rows, b.cols, nt);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      ZSeries acc(nt);
      for (int l = 0; l < a.cols; ++l) acc = acc + a.at(i, l) * b.at(l, j);
      r.at(i, j) = std::move(acc);
    }
  return r;
}

SeriesMat SmithLocalForm::diagonal(int rows, int cols) const {
  SeriesMat d = series_mat(rows, cols, trunc);
  for (int i = 0; i < rank && i < std::min(rows, cols); ++i)
    d.at(i, i) = ZSeries::monomial(Rat(1), orders[size_t(i)], trunc);
  return d;
}

namespace {

// exact inverse of the constant term, for seeding the series inverse
std::vector<std::vector<Rat>> rat_inverse(std::vector<std::vector<Rat>> m) {
  size_t n = m.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n)
      throw std::logic_error("series inverse: singular constant term");
    std::swap(m[col], m[piv]);
    std::swap(inv[col], inv[piv]);
    Rat d = m[col][col];
    for (size_t c = 0; c < n; ++c) {
      m[col][c] /= d;
      inv[col][c] /= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (size_t c = 0; c < n; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

// inverse of a series matrix with invertible constant term, coefficient by
// coefficient: Y_0 = M_0^{-1}, Y_c = -M_0^{-1} sum_{i>=1} M_i Y_{c-i}
SeriesMat series_mat_inverse(const SeriesMat &m) {
  if (m.rows != m.cols) throw std::invalid_argument("series inverse: shape");
  int n = m.rows, nt = m.e.at(0).trunc();
  std::vector<std::vector<Rat>> m0(size_t(n), std::vector<Rat>(size_t(n), Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m0[size_t(i)][size_t(j)] = m.at(i, j).coeff(0);
  auto y0 = rat_inverse(m0);

  // y[c][i][j]: coefficient matrices of the inverse
  std::vector<std::vector<std::vector<Rat>>> y(
      size_t(nt), std::vector<std::vector<Rat>>(size_t(n), std::vector<Rat>(size_t(n), Rat(0))));
  y[0] = y0;
  for (int c = 1; c < nt; ++c) {
    std::vector<std::vector<Rat>> rhs(size_t(n), std::vector<Rat>(size_t(n), Rat(0)));
    for (int i = 1; i <= c; ++i)
      for (int a = 0; a < n; ++a)
        for (int l = 0; l < n; ++l) {
          const Rat &mc = m.at(a, l).coeff(i);
          if (mc == 0) continue;
          for (int b = 0; b < n; ++b)
            rhs[size_t(a)][size_t(b)] += mc * y[size_t(c - i)][size_t(l)][size_t(b)];
        }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Rat acc(0);
        for (int l = 0; l < n; ++l)
          acc += y0[size_t(a)][size_t(l)] * rhs[size_t(l)][size_t(b)];
        y[size_t(c)][size_t(a)][size_t(b)] = -acc;
      }
  }

  // the inverse is a genuine series; its tail past the truncation is unknown
  SeriesMat r = series_mat(n, n, nt);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Rat> coeffs(size_t(nt), Rat(0));
      for (int c = 0; c < nt; ++c)
        coeffs[size_t(c)] = y[size_t(c)][size_t(i)][size_t(j)];
      r.at(i, j) = ZSeries::truncated(std::move(coeffs), nt);
    }
  return r;
}

}  // namespace

SmithLocalForm smith_local_form(const SeriesMat &x) {
  int n = x.rows, m = x.cols;
  if (n <= 0 || m <= 0 || x.e.size() != size_t(n) * size_t(m))
    throw std::invalid_argument("smith_local_form: matrix shape");
  int nt = x.e[0].trunc();
  for (const auto &s : x.e)
    if (s.trunc() != nt)
      throw std::invalid_argument("smith_local_form: mixed truncation orders");

  // Fraction-free reduction: work = L * X * R with polynomial row/column
  // operations only (row_i <- u * row_i - w * row_s never divides), so exact
  // inputs keep exact entries and rank deficiency stays provable. Units are
  // divided out at the end: work = D * diag(units), U = L^{-1},
  // V = diag(units) * R^{-1}.
  SeriesMat work = x;
  SeriesMat lmat = series_identity(n, nt);
  SeriesMat rmat = series_identity(m, nt);
  std::vector<long> orders;

  int steps = std::min(n, m);
  for (int s = 0; s < steps; ++s) {
    int pi = -1, pj = -1;
    long pord = kNuInf;
    bool unresolved = false;
    for (int i = s; i < n; ++i)
      for (int j = s; j < m; ++j) {
        const ZSeries &e = work.at(i, j);
        if (e.is_zero()) continue;
        long o = e.ord();
        if (o >= e.trunc()) {
          unresolved = true;
          continue;
        }
        if (o < pord) {
          pord = o;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) {
      if (unresolved)
        throw TruncationInsufficient(
            "smith_local_form: pivot order reaches the truncation order");
      break;  // remaining block is exactly zero
    }

    if (pi != s) {
      for (int j = 0; j < m; ++j) std::swap(work.at(s, j), work.at(pi, j));
      for (int j = 0; j < n; ++j) std::swap(lmat.at(s, j), lmat.at(pi, j));
    }
    if (pj != s) {
      for (int i = 0; i < n; ++i) std::swap(work.at(i, s), work.at(i, pj));
      for (int i = 0; i < m; ++i) std::swap(rmat.at(i, s), rmat.at(i, pj));
    }

    ZSeries unit = work.at(s, s).shifted_down(pord);
    for (int i = s + 1; i < n; ++i) {
      ZSeries e = work.at(i, s);
      if (e.is_zero()) continue;
      ZSeries w = e.shifted_down(pord);  // ord(e) >= pivot order
      for (int j = 0; j < m; ++j)
        work.at(i, j) = unit * work.at(i, j) - w * work.at(s, j);
      for (int j = 0; j < n; ++j)
        lmat.at(i, j) = unit * lmat.at(i, j) - w * lmat.at(s, j);
      work.at(i, s) = ZSeries(nt);  // cancels identically
    }
    for (int j = s + 1; j < m; ++j) {
      ZSeries e = work.at(s, j);
      if (e.is_zero()) continue;
      ZSeries w = e.shifted_down(pord);
      for (int i = 0; i < n; ++i)
        work.at(i, j) = unit * work.at(i, j) - w * work.at(i, s);
      for (int i = 0; i < m; ++i)
        rmat.at(i, j) = unit * rmat.at(i, j) - w * rmat.at(i, s);
      work.at(s, j) = ZSeries(nt);
    }
    orders.push_back(pord);
  }

  SmithLocalForm out;
  out.orders = orders;
  out.rank = int(orders.size());
  out.trunc = nt;
  out.U = series_mat_inverse(lmat);
  // absorb the leftover diagonal units into V: work = D * W
  SeriesMat w = series_identity(m, nt);
  for (int i = 0; i < out.rank; ++i)
    w.at(i, i) = work.at(i, i).shifted_down(orders[size_t(i)]);
  out.V = series_mat_mul(w, series_mat_inverse(rmat));
  return out;
}

// --- differential operator families -----------------------------------------

MPoly apply_op(const DiffOp &l, const MPoly &f) {
  if (l.a.empty()) throw std::invalid_argument("apply_op: empty operator");
  int n = l.order();
  std::vector<MPoly> df(size_t(n) + 1);
  df[0] = f;
  for (int k = 1; k <= n; ++k) df[size_t(k)] = df[size_t(k - 1)].derivative(0);
  MPoly acc(f.vars());
  for (int j = 0; j <= n; ++j) {
    if (l.a[size_t(j)].is_zero() || df[size_t(n - j)].is_zero()) continue;
    acc = acc + l.a[size_t(j)] * df[size_t(n - j)];
  }
  return acc;
}

DiffOp compose_ops(const DiffOp &l, const DiffOp &m) {
  if (l.a.empty() || m.a.empty())
    throw std::invalid_argument("compose_ops: empty operator");
  int nl = l.order(), nm = m.order();
  VarsPtr vars = l.a[0].vars();
  MPoly zero(vars);
  std::vector<MPoly> by_pow(size_t(nl + nm) + 1, zero);

  // Pascal's triangle rows up to nl, exact
  std::vector<std::vector<Rat>> binom(size_t(nl) + 1);
  for (int p = 0; p <= nl; ++p) {
    binom[size_t(p)].assign(size_t(p) + 1, Rat(1));
    for (int q = 1; q < p; ++q)
      binom[size_t(p)][size_t(q)] =
          binom[size_t(p - 1)][size_t(q - 1)] + binom[size_t(p - 1)][size_t(q)];
  }

  for (int p = 0; p <= nl; ++p) {
    const MPoly &cp = l.a[size_t(nl - p)];
    if (cp.is_zero()) continue;
    for (int q = 0; q <= nm; ++q) {
      const MPoly &dq = m.a[size_t(nm - q)];
      if (dq.is_zero()) continue;
      // d^p (dq d^q) = sum_r C(p,r) dq^{(r)} d^{p+q-r}
      MPoly der = dq;
      for (int r = 0; r <= p; ++r) {
        if (!der.is_zero())
          by_pow[size_t(p + q - r)] =
              by_pow[size_t(p + q - r)] + cp * der.scaled(binom[size_t(p)][size_t(r)]);
        der = der.derivative(0);
      }
    }
  }

  DiffOp out;
  out.a.resize(size_t(nl + nm) + 1, zero);
  for (int pw = 0; pw <= nl + nm; ++pw)
    out.a[size_t(nl + nm - pw)] = std::move(by_pow[size_t(pw)]);
  return out;
}

DiffOp first_order_annihilator(const MPoly &g) {
  if (g.is_zero())
    throw std::invalid_argument(
        "first_order_annihilator: g vanishes identically");
  DiffOp l;
  l.a = {g, -g.derivative(0)};
  return l;
}

namespace {

MPoly sign_content_normalized(const MPoly &p) {
  if (p.is_zero()) return p;
  Rat g = p.content();
  if (p.terms().begin()->second < 0) g = -g;
  return g == 1 ? p : p.divided_by(g);
}

}  // namespace

Annihilator annihilating_operator(const std::vector<MPoly> &f) {
  if (f.empty())
    throw std::invalid_argument("annihilating_operator: no input functions");
  Annihilator res;
  bool have = false;
  for (size_t k = 0; k < f.size(); ++k) {
    MPoly h = have ? apply_op(res.op, f[k]) : f[k];
    if (h.is_zero())
      throw DependentInputs(
          "annihilating_operator: input " + std::to_string(k + 1) +
          " is annihilated by the preceding operator");
    long nu = h.ord_var(kEpsVar);
    MPoly g = sign_content_normalized(eps_shift_down(h, nu));
    res.g.push_back(g);
    DiffOp l1 = first_order_annihilator(g);
    res.op = have ? compose_ops(l1, res.op) : l1;
    have = true;
  }
  for (const auto &fk : f)
    if (!apply_op(res.op, fk).is_zero())
      throw std::logic_error("annihilating_operator: annihilation failed");
  return res;
}

VanishingReport vanishing_orders(const DiffOp &op) {
  if (op.a.empty())
    throw std::invalid_argument("vanishing_orders: empty operator");
  size_t cnt = op.a.size();
  VanishingReport rep;
  rep.nu.resize(cnt);
  rep.ratio.assign(cnt, Rat(0));
  rep.ratio_finite.assign(cnt, false);

  for (size_t j = 0; j < cnt; ++j) {
    long o = op.a[j].ord_var(kEpsVar);
    rep.nu[j] = o < 0 ? kNuInf : o;
  }
  long nu0 = rep.nu[0];

  Rat b0(0);
  if (nu0 != kNuInf)
    b0 = eps_at_zero(eps_shift_down(op.a[0], nu0)).l1_norm();

  rep.verdict = true;
  for (size_t j = 0; j < cnt; ++j) {
    if (rep.nu[j] < nu0) rep.verdict = false;
    if (nu0 == kNuInf) {
      // leading coefficient identically zero: no finite comparison except 0/0
      rep.ratio_finite[j] = false;
      continue;
    }
    if (rep.nu[j] == kNuInf || rep.nu[j] > nu0) {
      rep.ratio[j] = 0;
      rep.ratio_finite[j] = true;
    } else if (rep.nu[j] == nu0) {
      rep.ratio[j] = eps_at_zero(eps_shift_down(op.a[j], nu0)).l1_norm() / b0;
      rep.ratio_finite[j] = true;
    }
  }
  return rep;
}

}  // namespace oscbound
