#include "oscbound/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oscbound {

void CPoly::trim() {
  while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

CPoly CPoly::operator+(const CPoly &o) const {
  std::vector<cplx> r(std::max(c_.size(), o.c_.size()), cplx(0.0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return CPoly(std::move(r));
}

CPoly CPoly::operator-(const CPoly &o) const {
  std::vector<cplx> r(std::max(c_.size(), o.c_.size()), cplx(0.0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return CPoly(std::move(r));
}

CPoly CPoly::operator*(const CPoly &o) const {
  if (c_.empty() || o.c_.empty()) return CPoly();
  std::vector<cplx> r(c_.size() + o.c_.size() - 1, cplx(0.0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return CPoly(std::move(r));
}

CPoly CPoly::operator-() const {
  std::vector<cplx> r(c_);
  for (auto &v : r) v = -v;
  return CPoly(std::move(r));
}

CPoly CPoly::scaled(cplx s) const {
  std::vector<cplx> r(c_);
  for (auto &v : r) v *= s;
  return CPoly(std::move(r));
}

CPoly CPoly::derivative() const {
  if (c_.size() <= 1) return CPoly();
  std::vector<cplx> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * double(i);
  return CPoly(std::move(r));
}

cplx CPoly::eval(cplx t) const {
  cplx acc(0.0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
  return acc;
}

double CPoly::l1_norm() const {
  double s = 0.0;
  for (const auto &v : c_) s += std::abs(v);
  return s;
}

double CPoly::sum_sq_moduli() const {
  double s = 0.0;
  for (const auto &v : c_) s += std::norm(v);
  return s;
}

std::pair<CPoly, cplx> CPoly::divide_linear(cplx root) const {
  if (c_.empty()) return {CPoly(), cplx(0.0)};
  std::vector<cplx> q(c_.size() - 1, cplx(0.0));
  cplx carry = c_.back();
  for (size_t i = c_.size() - 1; i-- > 0;) {
    if (i < q.size()) q[i] = carry;
    carry = c_[i] + carry * root;
  }
  return {CPoly(std::move(q)), carry};
}

CircleScan eval_circle(const CPoly &p, double r, size_t samples, ExecMode mode,
                       bool keep_samples) {
  if (r <= 0.0) throw std::invalid_argument("eval_circle: r must be positive");
  size_t min_samples = 2 * static_cast<size_t>(std::max(0L, p.degree())) + 2;
  samples = std::max(samples, min_samples);

  CPoly dp = p.derivative();
  CircleScan scan;
  scan.r = r;

  std::vector<double> absv(samples), absd(samples);
  std::vector<cplx> vals(keep_samples ? samples : 0);

  const double step = 2.0 * std::numbers::pi / double(samples);
  auto body = [&](size_t k) {
    double th = step * double(k);
    cplx z = std::polar(r, th);
    cplx v = p.eval(z);
    absv[k] = std::abs(v);
    absd[k] = std::abs(dp.eval(z));
    if (keep_samples) vals[k] = v;
  };

  if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < long(samples); ++k) body(size_t(k));
  } else {
    for (size_t k = 0; k < samples; ++k) body(k);
  }

  // deterministic serial reduction; ties resolved by lowest index
  size_t argmin = 0;
  double mn = absv[0], mx = absv[0], md = absd[0];
  for (size_t k = 1; k < samples; ++k) {
    if (absv[k] < mn) {
      mn = absv[k];
      argmin = k;
    }
    if (absv[k] > mx) mx = absv[k];
    if (absd[k] > md) md = absd[k];
  }

  scan.min_abs = mn;
  scan.max_abs = mx;
  scan.argmin_angle = step * double(argmin);
  scan.max_abs_deriv = md;
  scan.certified_min = std::max(0.0, mn - md * (step * r));
  if (keep_samples) {
    scan.values = std::move(vals);
    scan.angles.resize(samples);
    for (size_t k = 0; k < samples; ++k) scan.angles[k] = step * double(k);
  }
  return scan;
}

}  // namespace oscbound
