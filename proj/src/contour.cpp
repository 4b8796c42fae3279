#include "oscbound/contour.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

namespace oscbound {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double sup_norm(const std::vector<cplx> &v) {
  double m = 0.0;
  for (const cplx &z : v) m = std::max(m, std::abs(z));
  return m;
}

cplx dot(const std::vector<cplx> &c, const std::vector<cplx> &x) {
  cplx s = 0.0;
  for (size_t i = 0; i < c.size(); ++i) s += c[i] * x[i];
  return s;
}

// Taylor coefficients of p about t0 (repeated synthetic division).
std::vector<cplx> shift_to(const CPoly &p, cplx t0) {
  long d = p.degree();
  if (d < 0) return {cplx(0.0)};
  std::vector<cplx> b = p.coeffs();
  for (long i = 0; i <= d; ++i)
    for (long j = d - 1; j >= i; --j) b[size_t(j)] += t0 * b[size_t(j) + 1];
  return b;
}

// One Taylor model: series coefficients of x about t0 up to order p, for the
// system chi(t) x' = num(t) x. Recurrence in the local variable tau:
//   sum_i c_i (k-i+1) x_{k-i+1} = sum_i N_i x_{k-i}
// solved for x_{k+1}; needs c_0 = chi(t0) != 0.
std::vector<std::vector<cplx>> taylor_at(const SysMat<CPoly> &num,
                                         const CPoly &chi, cplx t0,
                                         const std::vector<cplx> &x0, int p) {
  const int n = num.n;
  std::vector<cplx> cs = shift_to(chi, t0);
  double cscale = 0.0;
  for (const cplx &z : cs) cscale += std::abs(z);
  if (std::abs(cs[0]) <= 1e-14 * (cscale + kTiny))
    throw PoleOnPath("system denominator vanishes on the path near t = " +
                     std::to_string(t0.real()) + (t0.imag() < 0 ? " - " : " + ") +
                     std::to_string(std::abs(t0.imag())) + "i");

  std::vector<std::vector<std::vector<cplx>>> ns(
      static_cast<size_t>(n), std::vector<std::vector<cplx>>(static_cast<size_t>(n)));
  long dn = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ns[size_t(i)][size_t(j)] = shift_to(num.at(i, j), t0);
      dn = std::max(dn, long(ns[size_t(i)][size_t(j)].size()) - 1);
    }
  const long dc = long(cs.size()) - 1;

  std::vector<std::vector<cplx>> xk(static_cast<size_t>(p) + 1,
                                    std::vector<cplx>(static_cast<size_t>(n), cplx(0.0)));
  xk[0] = x0;
  for (int k = 0; k < p; ++k) {
    std::vector<cplx> rhs(static_cast<size_t>(n), cplx(0.0));
    for (long i = 0; i <= std::min<long>(k, dn); ++i)
      for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) {
          const auto &e = ns[size_t(r)][size_t(col)];
          if (i < long(e.size()))
            rhs[size_t(r)] += e[size_t(i)] * xk[size_t(k - i)][size_t(col)];
        }
    for (long i = 1; i <= std::min<long>(k, dc); ++i)
      for (int r = 0; r < n; ++r)
        rhs[size_t(r)] -= cs[size_t(i)] * double(k - i + 1) * xk[size_t(k - i + 1)][size_t(r)];
    const cplx den = cs[0] * double(k + 1);
    for (int r = 0; r < n; ++r) xk[size_t(k) + 1][size_t(r)] = rhs[size_t(r)] / den;
  }
  return xk;
}

std::vector<cplx> eval_jet(const std::vector<std::vector<cplx>> &jet, cplx h) {
  const size_t n = jet[0].size();
  std::vector<cplx> out(n, cplx(0.0));
  for (size_t i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (size_t k = jet.size(); k-- > 0;) acc = acc * h + jet[k][i];
    out[i] = acc;
  }
  return out;
}

// Step length from the last two series terms: the largest h with
// a_p h^p + a_{p-1} h^{p-1} comfortably below the local budget.
double propose_step(const std::vector<std::vector<cplx>> &jet, double tol_abs) {
  const int p = int(jet.size()) - 1;
  const double ap = std::max(sup_norm(jet[size_t(p)]), kTiny);
  const double ap1 = std::max(sup_norm(jet[size_t(p) - 1]), kTiny);
  const double h1 = std::pow(tol_abs / ap, 1.0 / double(p));
  const double h2 = std::pow(tol_abs / ap1, 1.0 / double(p - 1));
  return 0.8 * std::min({h1, h2, 1e9});
}

double dist_to_singular(cplx t, const std::vector<cplx> &sing) {
  double d = std::numeric_limits<double>::infinity();
  for (const cplx &s : sing) d = std::min(d, std::abs(t - s));
  return d;
}

struct RunResult {
  std::vector<PathNode> nodes;
  std::vector<StepRecord> steps;
  std::vector<cplx> x_end;
  double local_error_sum = 0.0;
  double scale = 0.0;
  std::string failure;
};

// Single continuation pass. step_scale < 1 shrinks every accepted step (used
// by the verification re-run); collect_nodes=false keeps only the endpoint.
RunResult run_path(const SysMat<CPoly> &num, const CPoly &chi,
                   const std::vector<cplx> &sing, const std::vector<cplx> &x0,
                   const Path &path, double rel_tol, const ContourConfig &cfg,
                   double step_scale, bool collect_nodes) {
  RunResult rr;
  std::vector<cplx> x = x0;
  rr.scale = sup_norm(x0);
  size_t step_budget = 400000;

  for (const PathSeg &seg : path) {
    const bool is_line = seg.kind == PathSeg::Kind::line;
    const cplx dir = is_line && std::abs(seg.b - seg.a) > 0.0
                         ? (seg.b - seg.a) / std::abs(seg.b - seg.a)
                         : cplx(1.0);
    const double span = is_line ? std::abs(seg.b - seg.a)
                                : std::abs(seg.theta1 - seg.theta0);
    const double sgn = (!is_line && seg.theta1 < seg.theta0) ? -1.0 : 1.0;
    double pos = 0.0;
    auto at = [&](double s) -> cplx {
      if (is_line) return seg.a + dir * s;
      return seg.center + seg.radius * std::polar(1.0, seg.theta0 + sgn * s);
    };

    while (pos < span) {
      const cplx t = at(pos);
      if (!sing.empty()) {
        const double dmin = dist_to_singular(t, sing);
        if (dmin < 1e-9 * (1.0 + std::abs(t)))
          throw PoleOnPath("path passes through a singular point");
      }
      auto jet = taylor_at(num, chi, t, x, cfg.order);
      if (collect_nodes) rr.nodes.push_back({t, jet});
      const double xnorm = std::max(sup_norm(x), 1e-290);
      rr.scale = std::max(rr.scale, xnorm);

      double h = propose_step(jet, rel_tol * xnorm / 1024.0);
      if (!sing.empty()) h = std::min(h, 0.45 * dist_to_singular(t, sing));
      if (cfg.hmax > 0.0) h = std::min(h, cfg.hmax);
      h *= step_scale;
      // advance in the segment parameter; for arcs the parameter is the
      // angle, bounded so chords hug the arc
      double dp = is_line ? h : std::min(h / seg.radius, 0.392699081698724);
      dp = std::min(dp, span - pos);
      const cplx tn = at(pos + dp);
      const cplx chord = tn - t;
      if (std::abs(chord) < 1e-13 * (1.0 + std::abs(t)) && span - pos > 1e-12) {
        rr.failure = "step-underflow";
        rr.x_end = x;
        return rr;
      }
      x = eval_jet(jet, chord);
      const int p = cfg.order;
      const double le = sup_norm(jet[size_t(p)]) * std::pow(std::abs(chord), p) +
                        sup_norm(jet[size_t(p) - 1]) * std::pow(std::abs(chord), p - 1);
      rr.local_error_sum += le;
      rr.steps.push_back({t, std::abs(chord), le});
      pos += dp;
      if (--step_budget == 0) {
        rr.failure = "step-limit";
        rr.x_end = x;
        return rr;
      }
    }
  }
  if (collect_nodes && !path.empty()) {
    const PathSeg &last = path.back();
    const cplx tend = last.kind == PathSeg::Kind::line
                          ? last.b
                          : last.center + last.radius * std::polar(1.0, last.theta1);
    rr.nodes.push_back({tend, taylor_at(num, chi, tend, x, cfg.order)});
  }
  rr.scale = std::max(rr.scale, sup_norm(x));
  rr.x_end = x;
  return rr;
}

void check_rel_tol(double rel_tol) {
  if (!(rel_tol > 1e-14 && rel_tol < 1e-4))
    throw std::invalid_argument("rel_tol must lie strictly between 1e-14 and 1e-4");
}

void preflight_poles(const Path &path, const std::vector<cplx> &sing) {
  for (const PathSeg &seg : path)
    for (int i = 0; i <= 128; ++i) {
      const cplx t = seg.point(double(i) / 128.0);
      for (const cplx &s : sing)
        if (std::abs(t - s) < 1e-9 * (1.0 + std::abs(s)))
          throw PoleOnPath("path passes through a singular point");
    }
}

}  // namespace

// --- paths ---

cplx PathSeg::point(double s) const {
  if (kind == Kind::line) return a + (b - a) * s;
  return center + radius * std::polar(1.0, theta0 + (theta1 - theta0) * s);
}

double PathSeg::length() const {
  if (kind == Kind::line) return std::abs(b - a);
  return radius * std::abs(theta1 - theta0);
}

PathSeg line_seg(cplx a, cplx b) {
  PathSeg s;
  s.kind = PathSeg::Kind::line;
  s.a = a;
  s.b = b;
  return s;
}

PathSeg arc_seg(cplx center, double radius, double theta0, double theta1) {
  PathSeg s;
  s.kind = PathSeg::Kind::arc;
  s.center = center;
  s.radius = radius;
  s.theta0 = theta0;
  s.theta1 = theta1;
  s.a = s.point(0.0);
  s.b = s.point(1.0);
  return s;
}

Path circle_path(cplx center, double r) {
  return {arc_seg(center, r, 0.0, kTwoPi)};
}

// --- integration ---

PathSolution integrate(const SysMat<CPoly> &num, const CPoly &chi,
                       const std::vector<cplx> &sing,
                       const std::vector<cplx> &x0, const Path &path,
                       double rel_tol, const ContourConfig &cfg) {
  check_rel_tol(rel_tol);
  if (int(x0.size()) != num.n)
    throw std::invalid_argument("initial value dimension mismatch");

  PathSolution sol;
  sol.path = path;
  sol.rel_tol = rel_tol;

  RunResult main = run_path(num, chi, sing, x0, path, rel_tol, cfg, 1.0, true);
  sol.nodes = std::move(main.nodes);
  sol.steps = std::move(main.steps);
  sol.local_error_sum = main.local_error_sum;
  sol.scale = main.scale;
  sol.failure = main.failure;
  if (!sol.failure.empty()) return sol;

  RunResult half = run_path(num, chi, sing, x0, path, rel_tol, cfg, 0.5, false);
  if (!half.failure.empty()) {
    sol.failure = half.failure;
    return sol;
  }
  double diff = 0.0;
  for (size_t i = 0; i < main.x_end.size(); ++i)
    diff = std::max(diff, std::abs(main.x_end[i] - half.x_end[i]));
  sol.global_error_estimate = diff;
  sol.ok = diff <= rel_tol * std::max(sol.scale, 1e-290);
  return sol;
}

PathSolution integrate(const PolySystem &s, const std::vector<cplx> &x0,
                       const Path &path, double rel_tol,
                       const ContourConfig &cfg) {
  validate(s);
  return integrate(poly_system_matrix(s), CPoly::constant(1.0), {}, x0, path,
                   rel_tol, cfg);
}

PathSolution integrate(const FuchsSystem &f, const std::vector<cplx> &x0,
                       const Path &path, double rel_tol,
                       const ContourConfig &cfg) {
  validate(f);
  preflight_poles(path, f.poles);
  RationalSystemC rs = fuchs_to_rational(f);
  return integrate(rs.num, rs.chi, f.poles, x0, path, rel_tol, cfg);
}

PathSolution integrate(const HypergeomSystem &h, const std::vector<cplx> &x0,
                       const Path &path, double rel_tol,
                       const ContourConfig &cfg) {
  validate(h);
  std::vector<cplx> sing = singular_points(h);
  preflight_poles(path, sing);
  RationalSystemC rs = hypergeom_to_rational(h);
  return integrate(rs.num, rs.chi, sing, x0, path, rel_tol, cfg);
}

// --- zero counting ---

const char *to_string(DiskStatus s) {
  switch (s) {
    case DiskStatus::ok: return "ok";
    case DiskStatus::contour_too_close: return "contour-too-close";
    case DiskStatus::integration_failed: return "integration-failed";
    case DiskStatus::identically_zero: return "identically-zero";
  }
  return "unknown";
}

namespace {

// factors within [0.97, 1.03]: the original radius plus eight perturbations
const double kRadiusSchedule[9] = {1.0,  0.99, 1.01,  0.98, 1.02,
                                   0.97, 1.03, 0.995, 1.005};

struct SampleFailed : std::runtime_error {
  explicit SampleFailed(const std::string &what) : std::runtime_error(what) {}
};

struct ContourScan {
  double winding = 0.0;
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = 0.0;
  size_t samples = 0;
  bool too_close = false;  // hit a numerical zero or an unresolvable span
};

// Uniform grid around the circle plus recursive bisection of every span whose
// principal-branch argument increment is not safely below pi/2. The sample
// loop is closed with the angle-0 value, so the increments telescope to an
// exact multiple of 2 pi unless a span slips past the control.
ContourScan scan_winding(const std::function<cplx(double)> &yat, size_t base) {
  ContourScan sc;

  std::function<bool(double, cplx, double, cplx, int)> span =
      [&](double th0, cplx y0, double th1, cplx y1, int depth) -> bool {
    if (std::abs(y0) < kTiny || std::abs(y1) < kTiny) {
      sc.too_close = true;
      return false;
    }
    const double darg = std::arg(y1 / y0);
    if (std::abs(darg) < 1.5707963267948966) {
      sc.winding += darg;
      return true;
    }
    if (depth >= 48) {
      sc.too_close = true;
      return false;
    }
    const double tm = 0.5 * (th0 + th1);
    const cplx ym = yat(tm);
    ++sc.samples;
    sc.ymin = std::min(sc.ymin, std::abs(ym));
    sc.ymax = std::max(sc.ymax, std::abs(ym));
    return span(th0, y0, tm, ym, depth + 1) && span(tm, ym, th1, y1, depth + 1);
  };

  std::vector<cplx> grid(base + 1);
  for (size_t i = 0; i < base; ++i) {
    grid[i] = yat(kTwoPi * double(i) / double(base));
    sc.ymin = std::min(sc.ymin, std::abs(grid[i]));
    sc.ymax = std::max(sc.ymax, std::abs(grid[i]));
  }
  grid[base] = grid[0];
  sc.samples = base;

  for (size_t i = 0; i < base; ++i)
    if (!span(kTwoPi * double(i) / double(base), grid[i],
              kTwoPi * double(i + 1) / double(base), grid[i + 1], 0))
      break;
  return sc;
}

// Shared status decision for one scanned contour. zero_scale calibrates the
// absolute floor below which y counts as identically zero.
DiskReport report_from_scan(const ContourScan &sc, cplx center, double rr,
                            const std::vector<cplx> &c,
                            const ContourConfig &cfg, double zero_scale,
                            bool *retry) {
  DiskReport rep;
  rep.center = center;
  rep.r = rr;
  rep.c = c;
  rep.samples = sc.samples;
  rep.min_modulus_on_contour = sc.too_close ? 0.0 : sc.ymin;
  rep.max_modulus_on_contour = sc.ymax;
  *retry = false;

  if (sc.ymax < cfg.zero_floor * std::max(1.0, zero_scale)) {
    rep.status = DiskStatus::identically_zero;
    return rep;
  }
  if (sc.too_close || sc.ymin < cfg.delta * sc.ymax) {
    rep.status = DiskStatus::contour_too_close;
    *retry = true;
    return rep;
  }

  rep.winding = sc.winding;
  const double turns = sc.winding / kTwoPi;
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) > cfg.winding_tol || nearest < -0.5) {
    rep.status = DiskStatus::integration_failed;
    return rep;
  }
  rep.zero_count = long(nearest);
  rep.status = DiskStatus::ok;
  return rep;
}

// Each contour sample comes from its own radial continuation out of the disk
// center. Rays never cross the modulus humps that a march around the circle
// would have to traverse, so every sample is accurate relative to its own
// magnitude; carrying the state around the contour instead would amplify the
// locally negligible solution mode by the full dynamic range of the circuit
// and lose the winding for strongly oscillatory systems.
DiskReport count_zeros_core(const SysMat<CPoly> &num, const CPoly &chi,
                            const std::vector<cplx> &sing,
                            const std::vector<cplx> &x0,
                            const std::vector<cplx> &c, cplx center, double r,
                            double rel_tol, const ContourConfig &cfg) {
  check_rel_tol(rel_tol);
  if (!(r > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (int(x0.size()) != num.n || c.size() != x0.size())
    throw std::invalid_argument("dimension mismatch");

  const double x0_scale = sup_norm(x0);
  DiskReport last;
  const int attempts = std::min(cfg.radius_attempts + 1, 9);
  for (int k = 0; k < attempts; ++k) {
    const double rr = r * kRadiusSchedule[k];
    auto yat = [&](double th) -> cplx {
      const cplx target = center + rr * std::polar(1.0, th);
      RunResult ray = run_path(num, chi, sing, x0, {line_seg(center, target)},
                               rel_tol, cfg, 1.0, false);
      if (!ray.failure.empty()) throw SampleFailed(ray.failure);
      return dot(c, ray.x_end);
    };

    try {
      ContourScan sc = scan_winding(yat, 128);
      bool retry = false;
      DiskReport rep = report_from_scan(sc, center, rr, c, cfg, x0_scale, &retry);
      if (!retry) return rep;
      last = rep;
    } catch (const SampleFailed &) {
      last = DiskReport{};
      last.center = center;
      last.r = rr;
      last.c = c;
      last.status = DiskStatus::integration_failed;
      return last;
    }
  }
  return last;
}

}  // namespace

DiskReport count_zeros_disk(const PolySystem &s, const std::vector<cplx> &x0,
                            const std::vector<cplx> &c, cplx center, double r,
                            double rel_tol, const ContourConfig &cfg) {
  validate(s);
  return count_zeros_core(poly_system_matrix(s), CPoly::constant(1.0), {}, x0,
                          c, center, r, rel_tol, cfg);
}

DiskReport count_zeros_disk(const FuchsSystem &f, const std::vector<cplx> &x0,
                            const std::vector<cplx> &c, cplx center, double r,
                            double rel_tol, const ContourConfig &cfg) {
  validate(f);
  preflight_poles(circle_path(center, r * 1.03), f.poles);
  RationalSystemC rs = fuchs_to_rational(f);
  return count_zeros_core(rs.num, rs.chi, f.poles, x0, c, center, r, rel_tol, cfg);
}

DiskReport count_zeros_disk(const HypergeomSystem &h, const std::vector<cplx> &x0,
                            const std::vector<cplx> &c, cplx center, double r,
                            double rel_tol, const ContourConfig &cfg) {
  validate(h);
  std::vector<cplx> sing = singular_points(h);
  preflight_poles(circle_path(center, r * 1.03), sing);
  RationalSystemC rs = hypergeom_to_rational(h);
  return count_zeros_core(rs.num, rs.chi, sing, x0, c, center, r, rel_tol, cfg);
}

DiskReport count_zeros_disk(const CPoly &p, cplx center, double r,
                            const ContourConfig &cfg) {
  if (!(r > 0.0)) throw std::invalid_argument("disk radius must be positive");

  if (p.is_zero()) {
    DiskReport rep;
    rep.center = center;
    rep.r = r;
    rep.status = DiskStatus::identically_zero;
    return rep;
  }

  const size_t base = std::max<size_t>(256, 16 * size_t(p.degree() + 1));
  const int attempts = std::min(cfg.radius_attempts + 1, 9);
  DiskReport last;
  for (int k = 0; k < attempts; ++k) {
    const double rr = r * kRadiusSchedule[k];
    auto yat = [&](double th) { return p.eval(center + rr * std::polar(1.0, th)); };
    ContourScan sc = scan_winding(yat, base);
    bool retry = false;
    DiskReport rep = report_from_scan(sc, center, rr, {}, cfg, p.l1_norm(), &retry);
    if (!retry) return rep;
    last = rep;
  }
  return last;
}

// --- residual ---

double residual_check(const std::vector<CPoly> &a, const PathSolution &sol) {
  if (a.empty()) throw std::invalid_argument("empty equation");
  const size_t n = a.size() - 1;
  if (sol.nodes.empty()) throw std::invalid_argument("empty solution");
  if (sol.nodes.front().jet.size() <= n)
    throw std::invalid_argument("solution jets too short for the equation order");

  double bsum = 0.0;
  for (const CPoly &aj : a) bsum += aj.l1_norm();

  double worst = 0.0;
  for (const PathNode &node : sol.nodes) {
    // y^{(k)} = k! * (Taylor coefficient k of component 1)
    std::vector<cplx> yd(n + 1);
    double fact = 1.0;
    for (size_t k = 0; k <= n; ++k) {
      if (k > 0) fact *= double(k);
      yd[k] = fact * node.jet[k][0];
    }
    cplx acc = 0.0;
    double dmax = 0.0;
    for (size_t j = 0; j <= n; ++j) {
      acc += a[j].eval(node.t) * yd[n - j];
      dmax = std::max(dmax, std::abs(yd[j]));
    }
    const double den = bsum * dmax + kTiny;
    worst = std::max(worst, std::abs(acc) / den);
  }
  return worst;
}

double residual_check(const Principal<CPoly> &eq, const PathSolution &sol) {
  return residual_check(eq.a, sol);
}

// --- root oracle ---

std::vector<cplx> poly_roots(const CPoly &p) {
  const long d = p.degree();
  if (d < 0) throw std::invalid_argument("zero polynomial has no root set");
  std::vector<cplx> roots;
  if (d == 0) return roots;

  // exact deflation of the t^k factor
  long ord = 0;
  while (ord <= d && p.coeff(ord) == cplx(0.0)) ++ord;
  for (long i = 0; i < ord; ++i) roots.push_back(cplx(0.0));
  const long dq = d - ord;
  if (dq == 0) return roots;

  std::vector<cplx> q(static_cast<size_t>(dq) + 1);
  for (long i = 0; i <= dq; ++i) q[size_t(i)] = p.coeff(i + ord);

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(dq, dq);
  for (long i = 1; i < dq; ++i) comp(i, i - 1) = 1.0;
  for (long i = 0; i < dq; ++i) comp(i, dq - 1) = -q[size_t(i)] / q[size_t(dq)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);

  auto pv = [&](cplx z) {
    cplx acc = 0.0;
    for (size_t i = q.size(); i-- > 0;) acc = acc * z + q[i];
    return acc;
  };
  auto pdv = [&](cplx z) {
    cplx acc = 0.0;
    for (size_t i = q.size(); i-- > 1;) acc = acc * z + double(i) * q[i];
    return acc;
  };

  for (long i = 0; i < dq; ++i) {
    cplx z = es.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const cplx dv = pdv(z);
      if (std::abs(dv) < kTiny) break;
      const cplx zn = z - pv(z) / dv;
      if (std::abs(pv(zn)) >= std::abs(pv(z))) break;
      z = zn;
    }
    roots.push_back(z);
  }
  return roots;
}

long oracle_count(const CPoly &p, cplx center, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("disk radius must be positive");
  long count = 0;
  for (const cplx &z : poly_roots(p)) {
    const double dist = std::abs(z - center);
    if (std::abs(dist - r) < 1e-9)
      throw BoundaryAmbiguous("root within 1e-9 of the disk boundary");
    if (dist < r) ++count;
  }
  return count;
}

}  // namespace oscbound
