#pragma once

// Root-counting bounds: the disconjugacy criterion on intervals, the
// certified circle search backing the unit-disk zero bound, and the
// tower-of-exponents global bounds, kept in an overflow-safe iterated-log
// representation (the values themselves routinely exceed anything a double
// or even a bignum should materialize).

#include <string>
#include <vector>

#include "oscbound/reduce.hpp"
#include "oscbound/unipoly.hpp"

namespace oscbound {

struct BoundConstants {
  // every asymptotic constant is an explicit, configurable convention;
  // reports embed the values used
  double c_main = 1.0;   // exponent scale in the n^2*m towers
  double c_levin = 1.0;  // scale in the 2^{-c*d} minimum-modulus floor
  double c_var = 1.0;    // scale in the variation-of-argument zero bound
  double c_tower = 0.0;  // additive constant inside the four-story tower
  double c_ratio = 1.0;  // exponent scale in the coefficient-ratio bound
};

// A bound of the form base^(2^e) (kind double_exp), M^(2^2^2^2^x) (kind
// tower4), or a directly representable number (kind plain). Comparison works
// in iterated-log space: the canonical form is (depth, top) with
// value = exp2 applied `depth` times to `top`.
struct TowerBound {
  enum class Kind { plain, double_exp, tower4 };
  Kind kind = Kind::plain;
  std::string label;       // which bound produced this
  double base = 2.0;       // double_exp: >= 2; tower4: M
  double exponent_log2 = 0.0;  // double_exp: e in base^(2^e)
  double inner = 0.0;          // tower4: x in the innermost exponent
  double plain_value = 0.0;    // plain only
  BoundConstants constants;

  struct LogForm {
    int depth = 0;
    double top = 0.0;
  };
  LogForm log_form() const;
  // log10(log10(value)); +inf when even that does not fit a double
  double log10_log10() const;
};

// -1, 0, +1; total order consistent with the real values
int compare(const TowerBound &a, const TowerBound &b);
inline bool operator<(const TowerBound &a, const TowerBound &b) {
  return compare(a, b) < 0;
}
inline bool operator>(const TowerBound &a, const TowerBound &b) {
  return compare(a, b) > 0;
}

// --- interval disconjugacy ---

struct DisconjugacyReport {
  double sum = 0.0;  // sum_{j=1}^n b_j len^j / j!
  bool disconjugate = false;  // sum < 1: at most n-1 roots on the interval
  double margin = 0.0;        // 1 - sum
};

// b holds bounds for |a_j/a_0|, j = 1..n, on an interval of length len
DisconjugacyReport vallee_poussin_disconjugate(const std::vector<double> &b,
                                               double len);

// --- certified circle search in the annulus 1 < r < 2 ---

struct CircleSearch {
  double r_star = 0.0;   // radius with the best certified minimum modulus
  double m_hat = 0.0;    // certified lower bound for min_{|t|=r*} |a0|
  double theoretical_floor = 0.0;  // 2^{-c_levin * d}
  double argmin_angle = 0.0;
  long degree = 0;
  size_t samples_per_circle = 0;
};

// caller normalizes a0 to unit l1 norm; only a0 == 0 is rejected
CircleSearch circle_lower_bound(const CPoly &a0, const BoundConstants &bc,
                                ExecMode mode = ExecMode::parallel,
                                size_t samples_per_circle = 0);

// --- unit-disk zero bound for solutions of a scalar equation ---

struct ZeroBoundReport {
  double formula_bound = 0.0;       // K * n * 2^{c_var * d}
  double constructive_bound = 0.0;  // c_var * n * (1 + K * r*^d / m_hat)
  double K = 0.0;
  int n = 0;
  long d = 0;
  CircleSearch circle;
};

// eq must be specialized; coefficients are normalized to ||a_0|| = 1
// internally, K bounds the remaining coefficient norms after normalization
ZeroBoundReport zero_bound_unit_disk(const Principal<CPoly> &eq, double K,
                                     const BoundConstants &bc,
                                     ExecMode mode = ExecMode::parallel);

// --- tower bounds ---

TowerBound main_theorem_bound(int n, int m, double M, const BoundConstants &bc);
TowerBound ratio_bound(int n, int m, double M, const BoundConstants &bc);
TowerBound fuchsian_bound(int n, int m, double M, const BoundConstants &bc);
TowerBound hypergeometric_bound(int n, double M, const BoundConstants &bc);
// requires M > 2 and m >= 2
TowerBound meander_bound(int n, int m, double M, const BoundConstants &bc);

}  // namespace oscbound
