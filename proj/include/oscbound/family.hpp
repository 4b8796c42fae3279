#pragma once

// One-parameter analytic families of vectors and differential operators.
//
// Everything here lives over the two-variable exact ring Q[t, eps] (the
// layout produced by MPoly::substitute_params_ray): variable 0 is the time
// variable, variable 1 the deformation parameter. Polynomial inputs keep the
// whole machinery exact; genuinely truncated power-series arithmetic is
// confined to ZSeries, which backs the local Smith normal form below.
//
// Three groups of operations:
//
//  * constant_rank_span: given vectors v_1(eps)..v_m(eps), produce vectors
//    w_1..w_k of constant rank k that span the same subspace for eps != 0.
//    Each v is projected onto the span of the accepted w's parallel to the
//    coordinate complement of their span at eps = 0; the residual, cleared
//    of denominators by the pivot-block determinant and of its leading
//    eps power, joins the basis.
//
//  * smith_local_form: factor a matrix X(z) of truncated series as U D V
//    with U(0), V(0) invertible and D = diag(z^nu_1, ..., z^nu_k, 0, ...),
//    by fraction-free elimination on the entry of minimal z-order.
//
//  * annihilating operators: L_1 = g d/dt - g' kills g; composing such
//    factors inductively (in the Weyl algebra, d/dt * a = a * d/dt + a')
//    builds an order-n operator killing f_1..f_n whose leading coefficient
//    is the product of the extracted unit factors, hence nonzero at eps = 0.
//    vanishing_orders then compares the eps-orders nu_j of a coefficient
//    family p_j and the limits of the norm ratios ||p_j|| / ||p_0||.

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscbound/mpoly.hpp"
#include "oscbound/rat.hpp"

namespace oscbound {

struct TruncationInsufficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DependentInputs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// variables of the family ring: {"t", "eps"}
VarsPtr teps_vars();

// index of eps in the family ring
inline constexpr size_t kEpsVar = 1;

// eps-order sentinel for identically zero entries
inline constexpr long kNuInf = std::numeric_limits<long>::max();

// exact division by eps^k (every term must carry at least eps^k)
MPoly eps_shift_down(const MPoly &p, long k);

// p with eps set to 0 (still an element of the two-variable ring)
MPoly eps_at_zero(const MPoly &p);

// rank of an exact rational matrix (rows of equal length), by elimination
int rat_matrix_rank(std::vector<std::vector<Rat>> rows);

// --- constant-rank spanning families ---------------------------------------

// components of a vector are eps-only polynomials in the (t, eps) ring
using EpsVec = std::vector<MPoly>;

struct SpanBasis {
  std::vector<EpsVec> w;  // w[j](0) linearly independent, j < rank
  int rank = 0;
};

// Requires every component t-free; throws std::invalid_argument otherwise.
// Identically zero inputs and inputs dependent on the accepted basis for all
// eps are skipped, so rank can be any value in [0, min(n, m)].
SpanBasis constant_rank_span(const std::vector<EpsVec> &v);

// --- truncated power series and the local Smith form -----------------------

// Dense truncated power series over Q in one local variable z. A series
// stores exactly `trunc` coefficients. The `exact` flag means the series is
// a completely known polynomial (nothing was ever cut); arithmetic clears it
// whenever a genuine truncation happens, so precision loss is always
// visible, never silent.
class ZSeries {
 public:
  ZSeries() = default;
  explicit ZSeries(int trunc) : c_(static_cast<size_t>(trunc)), exact_(true) {}

  static ZSeries constant(const Rat &x, int trunc);
  static ZSeries variable(int trunc);                    // z
  static ZSeries monomial(const Rat &x, long k, int trunc);  // x * z^k
  // polynomial sum_i c[i] z^i; inexact (and cut) when c outgrows trunc
  static ZSeries from_coeffs(std::vector<Rat> c, int trunc);
  // known coefficients of a series whose tail beyond trunc is unknown
  static ZSeries truncated(std::vector<Rat> c, int trunc);

  int trunc() const { return static_cast<int>(c_.size()); }
  bool exact() const { return exact_; }
  const Rat &coeff(int k) const { return c_.at(static_cast<size_t>(k)); }
  Rat at_zero() const { return c_.empty() ? Rat(0) : c_[0]; }

  bool is_zero() const;        // exactly the zero series
  bool zero_to_trunc() const;  // all stored coefficients vanish
  // least index with nonzero coefficient; trunc() when zero to truncation
  // but not exactly zero; kNuInf for the exact zero series
  long ord() const;

  ZSeries operator+(const ZSeries &o) const;
  ZSeries operator-(const ZSeries &o) const;
  ZSeries operator*(const ZSeries &o) const;
  ZSeries operator-() const;
  ZSeries scaled(const Rat &s) const;
  bool operator==(const ZSeries &o) const;  // same trunc, coefficients, flag

  ZSeries shifted_up(long k) const;
  // divide by z^k; requires the k lowest stored coefficients to vanish
  ZSeries shifted_down(long k) const;
  // multiplicative inverse; requires coeff(0) != 0
  ZSeries inverse() const;

  std::string to_string() const;

 private:
  ZSeries binop(const ZSeries &o, int sign) const;
  std::vector<Rat> c_;
  bool exact_ = true;
};

struct SeriesMat {
  int rows = 0, cols = 0;
  std::vector<ZSeries> e;  // row-major
  ZSeries &at(int i, int j) { return e[size_t(i) * size_t(cols) + size_t(j)]; }
  const ZSeries &at(int i, int j) const {
    return e[size_t(i) * size_t(cols) + size_t(j)];
  }
};

// zero matrix whose entries all carry truncation order `trunc`
SeriesMat series_mat(int rows, int cols, int trunc);
SeriesMat series_identity(int n, int trunc);
SeriesMat series_mat_mul(const SeriesMat &a, const SeriesMat &b);

struct SmithLocalForm {
  SeriesMat U;               // rows x rows, U(0) invertible
  SeriesMat V;               // cols x cols, V(0) invertible
  std::vector<long> orders;  // nu_1 <= ... <= nu_k
  int rank = 0;
  int trunc = 0;
  // diag(z^nu_1, ..., z^nu_k, 0, ...) in the shape of the original matrix
  SeriesMat diagonal(int rows, int cols) const;
};

// U * D * V reproduces X to the truncation order carried by its entries.
// Throws TruncationInsufficient when the candidate pivot vanishes to the
// truncation order without being exactly zero.
SmithLocalForm smith_local_form(const SeriesMat &x);

// --- differential operator families -----------------------------------------

// L = sum_j a[j] d^{n-j}/dt^{n-j} with a[0] the leading coefficient,
// matching the coefficient layout of Principal equations.
struct DiffOp {
  std::vector<MPoly> a;
  int order() const { return static_cast<int>(a.size()) - 1; }
};

// sum_j a_j f^{(n-j)}
MPoly apply_op(const DiffOp &l, const MPoly &f);

// composition in the Weyl algebra: d/dt * a = a * d/dt + a'
DiffOp compose_ops(const DiffOp &l, const DiffOp &m);

// L_1 = g d/dt - g', the first-order operator with kernel spanned by g;
// throws std::invalid_argument when g is identically zero
DiffOp first_order_annihilator(const MPoly &g);

struct Annihilator {
  DiffOp op;                 // order n, kills every input exactly
  std::vector<MPoly> g;      // unit factor extracted at each induction step
};

// Builds the order-n operator killing f_1..f_n by composing first-order
// factors: at step k the remainder L_{k-1} f_k is written as eps^nu * g with
// g nonzero at eps = 0, and L_k = (g d/dt - g') o L_{k-1}. The leading
// coefficient of the result is the product of the g's. Throws
// DependentInputs when some L_{k-1} f_k vanishes identically.
Annihilator annihilating_operator(const std::vector<MPoly> &f);

struct VanishingReport {
  std::vector<long> nu;          // eps-order of each coefficient; kNuInf if 0
  std::vector<Rat> ratio;        // limit of ||p_j(., eps)|| / ||p_0(., eps)||
  std::vector<bool> ratio_finite;
  bool verdict = false;          // nu_j >= nu_0 for every j
};

// Vanishing orders of an operator family's coefficients and the eps -> 0
// limits of the l1-norm ratios against the leading coefficient. The limit
// is 0 when nu_j > nu_0 and ||q_j(., 0)|| / ||q_0(., 0)|| when nu_j = nu_0,
// with q_j = p_j / eps^{nu_j}; when nu_j < nu_0 the ratio diverges and
// ratio_finite[j] is cleared along with the verdict.
VanishingReport vanishing_orders(const DiffOp &op);

}  // namespace oscbound
