#pragma once

// Dense univariate polynomials over complex doubles, plus the sampled
// circle-scan primitive that backs the certified minimum-modulus search.

#include <complex>
#include <vector>

namespace oscbound {

using cplx = std::complex<double>;

class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }
  static CPoly constant(cplx v) { return CPoly({v}); }
  static CPoly variable() { return CPoly({cplx(0.0), cplx(1.0)}); }

  // coefficient of t^k; zero beyond the stored range
  cplx coeff(size_t k) const { return k < c_.size() ? c_[k] : cplx(0.0); }
  const std::vector<cplx> &coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  CPoly operator+(const CPoly &o) const;
  CPoly operator-(const CPoly &o) const;
  CPoly operator*(const CPoly &o) const;
  CPoly operator-() const;
  CPoly scaled(cplx s) const;

  CPoly derivative() const;
  cplx eval(cplx t) const;  // Horner

  double l1_norm() const;
  double sum_sq_moduli() const;

  // exact synthetic division by (t - root); remainder returned separately
  std::pair<CPoly, cplx> divide_linear(cplx root) const;

 private:
  void trim();
  std::vector<cplx> c_;
};

// One scan of |p| over equally spaced samples on the circle |t| = r.
//
// certified_min is min_k |p(z_k)| minus the Lipschitz slack
// (max_k |p'(z_k)|) * (2*pi*r / samples), clamped at zero: a lower bound for
// min_{|t|=r} |p| that is reliable once the sample grid resolves p'.
struct CircleScan {
  double r = 0.0;
  std::vector<double> angles;
  std::vector<cplx> values;
  double min_abs = 0.0;
  double max_abs = 0.0;
  double argmin_angle = 0.0;
  double max_abs_deriv = 0.0;
  double certified_min = 0.0;
};

enum class ExecMode { serial, parallel };

CircleScan eval_circle(const CPoly &p, double r, size_t samples,
                       ExecMode mode = ExecMode::parallel,
                       bool keep_samples = true);

}  // namespace oscbound
