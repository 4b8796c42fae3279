#include "oscbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oscbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// canonical form: smallest depth at which the top either is direct (depth 0)
// or exceeds 64 (so exp2 would still be finite but we stop pulling down once
// the value is humanly large; 2^64 fits a double exactly)
TowerBound::LogForm normalize(TowerBound::LogForm f) {
  while (f.depth > 0 && f.top <= 64.0) {
    f.top = std::exp2(f.top);
    f.depth -= 1;
  }
  return f;
}

}  // namespace

TowerBound::LogForm TowerBound::log_form() const {
  switch (kind) {
    case Kind::plain:
      return {0, plain_value};
    case Kind::double_exp: {
      // log2 log2 (base^(2^e)) = e + log2 log2 base, with base >= 2
      double l2 = exponent_log2 + std::log2(std::log2(std::max(base, 2.0)));
      return normalize({2, l2});
    }
    case Kind::tower4: {
      // value = M^q with q = exp2(exp2(exp2(exp2(inner)))):
      // log2 log2 value = exp2(exp2(exp2(inner))) + log2 log2 M.
      // Climb the tower until the next exp2 would overflow; the additive M
      // correction only survives at the depth where the sum is finite.
      double x = inner;
      double stories[4];
      int built = 0;
      for (; built < 3; ++built) {
        double nx = std::exp2(x);
        if (!std::isfinite(nx)) break;
        stories[built] = nx;
        x = nx;
      }
      if (built == 3) {
        double l2 = x + std::log2(std::log2(std::max(base, 2.0 + 1e-12)));
        return normalize({2, l2});
      }
      // exp2 overflowed after `built` stories: depth rises accordingly
      return normalize({2 + (3 - built), x});
    }
  }
  return {0, 0.0};
}

double TowerBound::log10_log10() const {
  LogForm f = log_form();
  // need L2 = log2 log2 value
  double l2;
  if (f.depth <= 2) {
    l2 = f.top;
    for (int i = f.depth; i < 2; ++i) {
      if (l2 <= 0.0) return -kInf;
      l2 = std::log2(l2);
    }
  } else {
    l2 = f.top;
    for (int i = f.depth; i > 2; --i) {
      l2 = std::exp2(l2);
      if (!std::isfinite(l2)) return kInf;
    }
  }
  // log10 log10 V = (log2 log2 V + log2(log10 2)) / log2 10
  return (l2 + std::log2(std::log10(2.0))) / std::log2(10.0);
}

int compare(const TowerBound &a, const TowerBound &b) {
  TowerBound::LogForm fa = a.log_form(), fb = b.log_form();
  auto raise = [](TowerBound::LogForm &f) {
    // exp2^d(top) = exp2^{d+1}(log2 top); callers check positivity
    f.top = std::log2(f.top);
    f.depth += 1;
  };
  while (fa.depth != fb.depth) {
    if (fa.depth < fb.depth) {
      if (fa.top <= 0.0) return -1;  // deeper side is astronomically larger
      raise(fa);
    } else {
      if (fb.top <= 0.0) return 1;
      raise(fb);
    }
  }
  if (fa.top < fb.top) return -1;
  if (fa.top > fb.top) return 1;
  return 0;
}

DisconjugacyReport vallee_poussin_disconjugate(const std::vector<double> &b,
                                               double len) {
  if (len <= 0.0) throw std::invalid_argument("interval length must be positive");
  DisconjugacyReport rep;
  double pw = 1.0, fact = 1.0;
  for (size_t j = 1; j <= b.size(); ++j) {
    if (b[j - 1] < 0.0)
      throw std::invalid_argument("coefficient bounds must be nonnegative");
    pw *= len;
    fact *= double(j);
    rep.sum += b[j - 1] * pw / fact;
  }
  rep.disconjugate = rep.sum < 1.0;
  rep.margin = 1.0 - rep.sum;
  return rep;
}

CircleSearch circle_lower_bound(const CPoly &a0, const BoundConstants &bc,
                                ExecMode mode, size_t samples_per_circle) {
  if (a0.is_zero())
    throw std::invalid_argument("circle search requires a nonzero polynomial");
  long d = a0.degree();
  size_t samples = samples_per_circle
                       ? std::max<size_t>(samples_per_circle, size_t(2 * d + 2))
                       : std::max<size_t>(512, 16 * size_t(d + 1));

  // 64 radii strictly inside (1, 2), then one x4-refined pass around the best
  const double lo = 1.0 + 1.0 / 128.0, hi = 2.0 - 1.0 / 128.0;
  const double step = (hi - lo) / 63.0;
  struct Probe {
    double r = 0.0, certified = 0.0, sampled_min = 0.0, angle = 0.0;
  };
  auto scan_one = [&](double r, size_t nsamp) {
    CircleScan s = eval_circle(a0, r, nsamp, ExecMode::serial, false);
    return Probe{r, s.certified_min, s.min_abs, s.argmin_angle};
  };
  auto scan_grid = [&](const std::vector<double> &radii) {
    std::vector<Probe> out(radii.size());
    if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
      for (size_t i = 0; i < radii.size(); ++i) out[i] = scan_one(radii[i], samples);
    } else {
      for (size_t i = 0; i < radii.size(); ++i) out[i] = scan_one(radii[i], samples);
    }
    return out;
  };
  auto better = [](const Probe &x, const Probe &y) {
    // larger certificate wins; break ties by the optimistic sampled minimum,
    // then by the lower radius, so the scan order cannot matter
    if (x.certified != y.certified) return x.certified > y.certified;
    if (x.sampled_min != y.sampled_min) return x.sampled_min > y.sampled_min;
    return x.r < y.r;
  };
  auto best_of = [&](const std::vector<Probe> &probes) {
    size_t bi = 0;
    for (size_t i = 1; i < probes.size(); ++i)
      if (better(probes[i], probes[bi])) bi = i;
    return probes[bi];
  };

  std::vector<double> radii(64);
  for (size_t i = 0; i < 64; ++i) radii[i] = lo + double(i) * step;
  Probe best = best_of(scan_grid(radii));

  std::vector<double> fine;
  for (int i = -32; i <= 32; ++i) {
    double r = best.r + double(i) * (step / 16.0);
    if (r > 1.0 + 1e-6 && r < 2.0 - 1e-6) fine.push_back(r);
  }
  Probe refined = best_of(scan_grid(fine));
  if (better(refined, best)) best = refined;

  // The Lipschitz slack can swamp the sampled minimum at the base sampling
  // rate (high degree, wildly varying |a0|). The polynomial has at most d
  // roots, so the best radius sits at positive distance from all of them and
  // denser sampling must eventually certify a positive minimum there.
  size_t boosted = samples;
  while (best.certified <= 0.0 && boosted < (size_t(1) << 21)) {
    boosted *= 4;
    Probe retry = scan_one(best.r, boosted);
    if (retry.certified > best.certified) best = retry;
  }

  CircleSearch cs;
  cs.r_star = best.r;
  cs.m_hat = best.certified;
  cs.argmin_angle = best.angle;
  cs.theoretical_floor = std::exp2(-bc.c_levin * double(d));
  cs.degree = d;
  cs.samples_per_circle = samples;
  return cs;
}

ZeroBoundReport zero_bound_unit_disk(const Principal<CPoly> &eq, double K,
                                     const BoundConstants &bc, ExecMode mode) {
  if (K <= 0.0) throw std::invalid_argument("coefficient-ratio bound K must be positive");
  if (eq.a.empty() || eq.a[0].is_zero())
    throw std::invalid_argument("leading coefficient must be nonzero");

  double lead = eq.a[0].l1_norm();
  CPoly a0 = eq.a[0].scaled(cplx(1.0 / lead));
  long d = -1;
  for (const auto &p : eq.a) d = std::max(d, p.degree());

  ZeroBoundReport rep;
  rep.K = K;
  rep.n = eq.n;
  rep.d = d;
  rep.circle = circle_lower_bound(a0, bc, mode);
  rep.formula_bound = K * double(eq.n) * std::exp2(bc.c_var * double(d));
  rep.constructive_bound =
      bc.c_var * double(eq.n) *
      (1.0 + K * std::pow(rep.circle.r_star, double(d)) / rep.circle.m_hat);
  return rep;
}

namespace {

TowerBound double_exp_bound(const std::string &label, int n, int m, double M,
                            double c, const BoundConstants &bc) {
  if (n < 1 || m < 1 || M <= 0.0)
    throw std::invalid_argument(label + " bound requires n, m >= 1 and M > 0");
  TowerBound tb;
  tb.kind = TowerBound::Kind::double_exp;
  tb.label = label;
  tb.base = std::max(M, 2.0);
  tb.exponent_log2 = c * double(n) * double(n) * double(m);
  tb.constants = bc;
  return tb;
}

}  // namespace

TowerBound main_theorem_bound(int n, int m, double M, const BoundConstants &bc) {
  return double_exp_bound("main", n, m, M, bc.c_main, bc);
}

TowerBound ratio_bound(int n, int m, double M, const BoundConstants &bc) {
  return double_exp_bound("ratio", n, m, M, bc.c_ratio, bc);
}

TowerBound fuchsian_bound(int n, int m, double M, const BoundConstants &bc) {
  return double_exp_bound("fuchsian", n, m, M, bc.c_main, bc);
}

TowerBound hypergeometric_bound(int n, double M, const BoundConstants &bc) {
  return double_exp_bound("hypergeometric", n, 1, M, bc.c_main, bc);
}

TowerBound meander_bound(int n, int m, double M, const BoundConstants &bc) {
  if (M <= 2.0)
    throw std::invalid_argument("meander bound requires M > 2");
  if (m < 2 || n < 1)
    throw std::invalid_argument("meander bound requires m >= 2, n >= 1");
  TowerBound tb;
  tb.kind = TowerBound::Kind::tower4;
  tb.label = "meander";
  tb.base = M;
  tb.inner = 4.0 * double(n) * std::log(double(m)) + bc.c_tower;
  tb.constants = bc;
  return tb;
}

}  // namespace oscbound
