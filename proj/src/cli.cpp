#include "oscbound/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "oscbound/contour.hpp"
#include "oscbound/family.hpp"
#include "oscbound/reduce.hpp"
#include "oscbound/rng.hpp"

namespace oscbound {

namespace {

// disk used by the sweep harness: strictly inside the unit disk where the
// bounds live, so small contour-radius perturbations cannot leave it
constexpr double kSweepDiskR = 0.9;
constexpr double kResidualTol = 1e-8;

const char *norm_name(MatrixNorm nk) {
  switch (nk) {
    case MatrixNorm::rowsum: return "rowsum";
    case MatrixNorm::maxentry: return "maxentry";
    case MatrixNorm::frobenius: return "frobenius";
  }
  return "rowsum";
}

void check_config(const RunConfig &cfg) {
  auto bad = [](const std::string &msg) { throw InputError(msg); };
  if (cfg.rel_tol < 1e-14 || cfg.rel_tol > 1e-2)
    bad("--rel-tol must lie in [1e-14, 1e-2]");
  if (cfg.tau <= 0 || cfg.tau > 1e-4) bad("--tau must lie in (0, 1e-4]");
  if (cfg.delta < 1e-14 || cfg.delta > 1e-2)
    bad("--delta must lie in [1e-14, 1e-2]");
  if (cfg.trunc < 0 || cfg.trunc > 512) bad("--trunc must lie in [0, 512]");
  if (cfg.clearance_factor < 1.0) bad("--clearance-factor must be >= 1");
  if (cfg.interval_len <= 0 || cfg.interval_len > 2.0)
    bad("--interval-len must lie in (0, 2]");
  if (cfg.draws < 0 || cfg.draws > 100000) bad("--draws must lie in [0, 100000]");
  if (cfg.sweep_n < 1 || cfg.sweep_n > 6) bad("--n must lie in [1, 6]");
  if (cfg.sweep_m < 1 || cfg.sweep_m > 6) bad("--m must lie in [1, 6]");
  if (cfg.entry_bound < 1 || cfg.entry_bound > 1000)
    bad("--entry-bound must lie in [1, 1000]");
  if (cfg.omega_max < 0 || cfg.omega_max > 200)
    bad("--omega-max must lie in [0, 200]");
}

Json envelope(const RunConfig &cfg) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["command"] = cfg.command;
  j["config"] = config_to_json(cfg);
  return j;
}

void write_report(const RunConfig &cfg, const Json &report) {
  if (cfg.output.empty()) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  write_json_file(cfg.output, report);
}

std::vector<cplx> cvec_from_json(const Json &arr, const char *what) {
  if (!arr.is_array() || arr.empty())
    throw InputError(std::string(what) + " must be a non-empty array");
  std::vector<cplx> v;
  for (const Json &e : arr) v.push_back(complex_from_json(e));
  return v;
}

// family-module inputs live in the (t, eps) ring; accept polynomials written
// over any subset of those variables and extend the exponents
MPoly to_family_ring(const MPoly &p) {
  VarsPtr tv = teps_vars();
  if (p.vars() && *p.vars() == *tv) return p;
  MPoly out(tv);
  if (p.is_zero()) return out;
  const VarList &names = *p.vars();
  std::vector<size_t> slot(names.size());
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == "t")
      slot[i] = 0;
    else if (names[i] == "eps")
      slot[i] = 1;
    else
      throw InputError("family polynomials may use only \"t\" and \"eps\"");
  }
  for (const auto &[e, c] : p.terms()) {
    Expo ext(2, 0);
    for (size_t i = 0; i < e.size(); ++i) ext[slot[i]] += e[i];
    out.add_term(ext, c);
  }
  return out;
}

// certified lower bound for |p| on the real segment [-len/2, len/2]: sampled
// minimum minus a Lipschitz slack (the l1 norm of p' bounds |p'| on |x| <= 1)
double interval_floor(const CPoly &p, double len, size_t samples = 2048) {
  if (p.is_zero()) return 0.0;
  double half = len / 2.0;
  double minv = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < samples; ++k) {
    double x = samples == 1 ? 0.0
                            : -half + len * double(k) / double(samples - 1);
    minv = std::min(minv, std::abs(p.eval(cplx(x, 0.0))));
  }
  double lip = p.derivative().l1_norm();
  double slack = lip * (len / double(samples - 1)) / 2.0;
  return std::max(0.0, minv - slack);
}

PolySystem oscillator_system(double omega) {
  PolySystem s;
  s.n = 2;
  s.m = 1;
  s.coeff = {{cplx(0.0), cplx(1.0), cplx(-omega * omega), cplx(0.0)}};
  return s;
}

// zeros of cos(omega t) in |t| < r sit at (2k+1) pi / (2 omega), doubled by
// the +- symmetry
long cos_zero_count(double omega, double r) {
  long k = 0;
  while ((2.0 * double(k) + 1.0) * std::numbers::pi / (2.0 * omega) < r) ++k;
  return 2 * k;
}

TowerBound plain_count(long count) {
  TowerBound t;
  t.kind = TowerBound::Kind::plain;
  t.label = "measured count";
  t.plain_value = double(count);
  return t;
}

// ratio bound K for zero_bound_unit_disk; clamped away from zero because the
// bound is monotone in K and the API rejects K = 0
double ratio_K(const NormProfile &prof) {
  double k = 0.0;
  for (size_t j = 1; j < prof.b.size(); ++j)
    k = std::max(k, prof.b[j] / prof.b[0]);
  return std::max(k, 1e-12);
}

struct DisconjugacyJson {
  Json j;
  bool verdict = false;
};

DisconjugacyJson disconjugacy_block(const Principal<CPoly> &eq,
                                    const NormProfile &prof, double len) {
  DisconjugacyJson out;
  double floor = interval_floor(eq.a[0], len);
  out.j["interval_len"] = len;
  out.j["a0_floor"] = floor;
  if (floor <= 0.0) {
    out.j["applicable"] = false;
    return out;
  }
  std::vector<double> b;
  for (size_t j = 1; j < prof.b.size(); ++j) b.push_back(prof.b[j] / floor);
  DisconjugacyReport rep = vallee_poussin_disconjugate(b, len);
  out.j["applicable"] = true;
  out.j["sum"] = rep.sum;
  out.j["disconjugate"] = rep.disconjugate;
  out.j["margin"] = rep.margin;
  out.verdict = rep.disconjugate;
  return out;
}

// --- derive / certify plumbing ---

struct ExactReduction {
  Reduction<MPoly> red;
  std::string kind;
  int n = 0;
};

ExactReduction reduce_exact_input(const SystemVariant &sv) {
  ExactReduction out;
  if (std::holds_alternative<PolySystem>(sv)) {
    const auto &s = std::get<PolySystem>(sv);
    if (!s.exact) throw InputError("this command needs exact (decimal string) entries");
    out.red = poly_reduce_exact(s);
    out.kind = "poly";
    out.n = s.n;
  } else if (std::holds_alternative<FuchsSystem>(sv)) {
    const auto &s = std::get<FuchsSystem>(sv);
    if (!s.exact) throw InputError("this command needs exact (decimal string) entries");
    out.red = fuchs_reduce_exact(s);
    out.kind = "fuchs";
    out.n = s.n;
  } else {
    const auto &s = std::get<HypergeomSystem>(sv);
    if (!s.exact) throw InputError("this command needs exact (decimal string) entries");
    out.red = hypergeom_reduce_exact(s);
    out.kind = "hypergeom";
    out.n = s.n;
  }
  return out;
}

// completes the combination vector c to an invertible matrix T with first
// row c, so that y = c.x becomes the first coordinate of the system in the
// variables T x; the derived equation then annihilates exactly that y
PolySystem conjugate_by_combination(const PolySystem &s,
                                    const std::vector<cplx> &c) {
  int n = s.n;
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, n);
  int pivot = -1;
  for (int j = 0; j < n; ++j) {
    T(0, j) = c[static_cast<size_t>(j)];
    if (pivot < 0 && std::abs(c[static_cast<size_t>(j)]) > 0.0) pivot = j;
  }
  if (pivot < 0) throw InputError("combination vector is zero");
  int row = 1;
  for (int j = 0; j < n; ++j) {
    if (j == pivot) continue;
    T(row, j) = 1.0;
    ++row;
  }
  Eigen::MatrixXcd Tinv = T.inverse();
  PolySystem out;
  out.n = n;
  out.m = s.m;
  for (int k = 0; k < s.m; ++k) {
    Eigen::MatrixXcd A(n, n);
    for (int r = 0; r < n; ++r)
      for (int cc = 0; cc < n; ++cc)
        A(r, cc) = s.coeff[static_cast<size_t>(k)]
                          [static_cast<size_t>(r) * static_cast<size_t>(n) +
                           static_cast<size_t>(cc)];
    Eigen::MatrixXcd B = T * A * Tinv;
    std::vector<cplx> blk(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int r = 0; r < n; ++r)
      for (int cc = 0; cc < n; ++cc)
        blk[static_cast<size_t>(r) * static_cast<size_t>(n) +
            static_cast<size_t>(cc)] = B(r, cc);
    out.coeff.push_back(std::move(blk));
  }
  return out;
}

ZSeries retruncated(const ZSeries &s, int trunc) {
  std::vector<Rat> c(static_cast<size_t>(trunc), Rat(0));
  bool lost = false;
  for (int k = 0; k < s.trunc(); ++k) {
    if (k < trunc)
      c[static_cast<size_t>(k)] = s.coeff(k);
    else if (s.coeff(k) != 0)
      lost = true;
  }
  bool exact = s.exact() && !lost && trunc >= s.trunc();
  if (exact) return ZSeries::from_coeffs(std::move(c), trunc);
  return ZSeries::truncated(std::move(c), trunc);
}

// one sweep row; everything needed to recreate the draw is recorded
struct SweepRow {
  Json j;
  bool violated = false;
  bool failed = false;
};

SweepRow sweep_row_for(const PolySystem &s, const std::vector<cplx> &x0,
                       const std::vector<cplx> &c, const RunConfig &cfg,
                       double expected, bool have_expected) {
  SweepRow row;
  std::vector<std::string> violations;
  try {
    PolySystem conj = conjugate_by_combination(s, c);
    double M = magnitude(conj, cfg.norm);
    Reduction<CPoly> red = poly_reduce(conj, cfg.tau);
    const Principal<CPoly> &eq = red.deg.eq;
    NormProfile prof = norm_profile(eq, cfg.tau);
    ZeroBoundReport zb =
        zero_bound_unit_disk(eq, ratio_K(prof), cfg.constants, ExecMode::serial);
    TowerBound tower = main_theorem_bound(s.n, s.m, std::max(M, 1.0), cfg.constants);

    ContourConfig ccfg;
    ccfg.delta = cfg.delta;
    DiskReport dr =
        count_zeros_disk(s, x0, c, cplx(0.0), kSweepDiskR, cfg.rel_tol, ccfg);

    DisconjugacyJson vp = disconjugacy_block(eq, prof, cfg.interval_len);

    row.j["order"] = red.deg.k;
    row.j["generic"] = red.deg.generic;
    row.j["M"] = M;
    row.j["constructive_bound"] = zb.constructive_bound;
    row.j["formula_bound"] = zb.formula_bound;
    row.j["tower_exponent_log2"] = tower.exponent_log2;
    double ll = tower.log10_log10();
    row.j["tower_log10_log10"] = std::isfinite(ll) ? Json(ll) : Json();
    row.j["disconjugacy"] = vp.j;
    row.j["status"] = to_string(dr.status);
    row.j["r"] = dr.r;

    if (dr.status == DiskStatus::ok) {
      long measured = dr.zero_count;
      row.j["measured"] = measured;
      if (double(measured) > zb.constructive_bound)
        violations.push_back("measured count exceeds the constructive bound");
      if (double(measured) > zb.formula_bound)
        violations.push_back("measured count exceeds the formula bound");
      if (compare(plain_count(measured), tower) > 0)
        violations.push_back("measured count exceeds the tower bound");
      if (have_expected && double(measured) != expected)
        violations.push_back("measured count differs from the closed form");
    } else {
      row.j["measured"] = Json();
      row.failed = dr.status == DiskStatus::integration_failed;
      if (have_expected) row.failed = true;
    }
  } catch (const std::exception &e) {
    row.j["status"] = std::string("error: ") + e.what();
    row.j["measured"] = Json();
    row.failed = true;
  }
  row.violated = !violations.empty();
  row.j["violations"] = violations;
  return row;
}

std::string csv_cell(const Json &v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_sweep_csv(const std::string &path, const Json &rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "draw,omega,expected,status,measured,constructive_bound,"
         "formula_bound,tower_log10_log10,disconjugate,violations\n";
  for (const Json &r : rows) {
    Json vp = r["disconjugacy"];
    std::string verdict =
        vp.is_object() && vp.value("applicable", false)
            ? (vp["disconjugate"].get<bool>() ? "true" : "false")
            : "";
    std::string viol;
    for (const Json &v : r["violations"]) {
      if (!viol.empty()) viol += "; ";
      viol += v.get<std::string>();
    }
    out << csv_cell(r["draw"]) << ',' << csv_cell(r.value("omega", Json()))
        << ',' << csv_cell(r.value("expected", Json())) << ','
        << csv_cell(r["status"]) << ',' << csv_cell(r["measured"]) << ','
        << csv_cell(r["constructive_bound"]) << ','
        << csv_cell(r["formula_bound"]) << ','
        << csv_cell(r["tower_log10_log10"]) << ',' << verdict << ',' << viol
        << '\n';
  }
}

}  // namespace

Json config_to_json(const RunConfig &cfg) {
  Json j;
  j["command"] = cfg.command;
  j["input"] = cfg.input;
  j["output"] = cfg.output;
  j["csv"] = cfg.csv;
  j["seed"] = cfg.seed;
  j["rel_tol"] = cfg.rel_tol;
  j["tau"] = cfg.tau;
  j["delta"] = cfg.delta;
  j["trunc"] = cfg.trunc;
  j["constants"] = constants_to_json(cfg.constants);
  j["norm"] = norm_name(cfg.norm);
  j["clearance_factor"] = cfg.clearance_factor;
  j["interval_len"] = cfg.interval_len;
  j["draws"] = cfg.draws;
  j["sweep_n"] = cfg.sweep_n;
  j["sweep_m"] = cfg.sweep_m;
  j["entry_bound"] = cfg.entry_bound;
  j["omega_max"] = cfg.omega_max;
  return j;
}

Json run_derive(const RunConfig &cfg) {
  check_config(cfg);
  Json in = load_json_file(cfg.input);
  Json out = envelope(cfg);
  std::string kind = in.at("kind").get<std::string>();
  if (kind == "universal") {
    int n = in.at("n").get<int>();
    int m = in.at("m").get<int>();
    XiChain<MPoly> ch = universal_poly_chain(n, m);
    out["kind"] = "universal";
    out["equation"] = principal_to_json(principal_equation(ch));
    out["certificates"] = certificates_to_json(verify_iter_certificates(ch));
    return out;
  }
  ExactReduction er = reduce_exact_input(system_from_json(in));
  out["kind"] = er.kind;
  out["equation"] = principal_to_json(er.red.deg.eq);
  Json deg;
  deg["k"] = er.red.deg.k;
  deg["generic"] = er.red.deg.generic;
  out["degeneracy"] = std::move(deg);
  // the iteration certificates are statements about polynomial chains; a
  // rational chain (Fuchsian or hypergeometric input) has none
  if (er.red.chain.rational)
    out["certificates"] = Json();
  else
    out["certificates"] = certificates_to_json(verify_iter_certificates(er.red.chain));
  return out;
}

Json run_certify(const RunConfig &cfg) {
  check_config(cfg);
  Json in = load_json_file(cfg.input);
  Json out = envelope(cfg);
  SystemVariant sv = system_from_json(in);
  ExactReduction er = reduce_exact_input(sv);
  bool cert_ok = true;
  out["kind"] = er.kind;
  out["equation"] = principal_to_json(er.red.deg.eq);
  if (er.red.chain.rational) {
    // no polynomial iteration certificates exist for rational chains; the
    // certification then rests on the residual alone
    out["certificates"] = Json();
  } else {
    CertificateReport cert = verify_iter_certificates(er.red.chain);
    out["certificates"] = certificates_to_json(cert);
    cert_ok = cert.all_pass();
  }

  // numerical cross-check: integrate x' = A x around a disk of radius 1/2
  // and plug y = x_1 into the derived scalar equation
  const double radius = 0.5;
  Path path = {line_seg(cplx(0.0), cplx(radius)),
               arc_seg(cplx(0.0), radius, 0.0, 2.0 * std::numbers::pi)};
  ContourConfig ccfg;
  ccfg.delta = cfg.delta;
  ccfg.hmax = 0.05;  // force enough residual sample nodes
  std::vector<cplx> x0(static_cast<size_t>(er.n), cplx(0.0));
  x0[0] = cplx(1.0);

  PathSolution sol;
  if (std::holds_alternative<PolySystem>(sv)) {
    sol = integrate(std::get<PolySystem>(sv), x0, path, cfg.rel_tol, ccfg);
  } else if (std::holds_alternative<FuchsSystem>(sv)) {
    const auto &f = std::get<FuchsSystem>(sv);
    ClearanceReport cl =
        singularity_clearance(f, cplx(0.0), radius, cfg.clearance_factor);
    out["clearance"] = clearance_to_json(cl);
    if (!cl.clear)
      throw InputError("integration disk is too close to the system's poles");
    sol = integrate(f, x0, path, cfg.rel_tol, ccfg);
  } else {
    const auto &h = std::get<HypergeomSystem>(sv);
    ClearanceReport cl =
        singularity_clearance(h, cplx(0.0), radius, cfg.clearance_factor);
    out["clearance"] = clearance_to_json(cl);
    if (!cl.clear)
      throw InputError("integration disk is too close to the system's poles");
    sol = integrate(h, x0, path, cfg.rel_tol, ccfg);
  }
  if (!sol.failure.empty())
    throw NumericalError("integration failed: " + sol.failure);

  Principal<CPoly> eqf = specialize_equation(er.red.deg.eq, {});
  double res = residual_check(eqf, sol);
  out["residual"] = res;
  out["residual_tol"] = kResidualTol;
  out["pass"] = cert_ok && res <= kResidualTol;
  return out;
}

Json run_bound(const RunConfig &cfg) {
  check_config(cfg);
  Json in = load_json_file(cfg.input);
  Json out = envelope(cfg);
  SystemVariant sv = system_from_json(in);
  Json towers = Json::array();
  bool unit_disk_clear = true;

  if (std::holds_alternative<PolySystem>(sv)) {
    const auto &s = std::get<PolySystem>(sv);
    double M = std::max(magnitude(s, cfg.norm), 1.0);
    out["kind"] = "poly";
    out["n"] = s.n;
    out["m"] = s.m;
    out["M"] = M;
    towers.push_back(bound_to_json(main_theorem_bound(s.n, s.m, M, cfg.constants)));
    towers.push_back(bound_to_json(ratio_bound(s.n, s.m, M, cfg.constants)));
    if (M > 2.0 && s.m >= 2)
      towers.push_back(bound_to_json(meander_bound(s.n, s.m, M, cfg.constants)));
  } else if (std::holds_alternative<FuchsSystem>(sv)) {
    const auto &f = std::get<FuchsSystem>(sv);
    double M = std::max(magnitude(f, cfg.norm), 1.0);
    out["kind"] = "fuchs";
    out["n"] = f.n;
    out["m"] = f.m;
    out["M"] = M;
    towers.push_back(bound_to_json(fuchsian_bound(f.n, f.m, M, cfg.constants)));
    ClearanceReport cl =
        singularity_clearance(f, cplx(0.0), 1.0, cfg.clearance_factor);
    out["clearance"] = clearance_to_json(cl);
    unit_disk_clear = cl.clear;
  } else {
    const auto &h = std::get<HypergeomSystem>(sv);
    double M = std::max(magnitude(h, cfg.norm), 1.0);
    out["kind"] = "hypergeom";
    out["n"] = h.n;
    out["M"] = M;
    TowerBound hg = hypergeometric_bound(h.n, M, cfg.constants);
    // the same system, read as a Fuchsian one, has up to n poles (the
    // eigenvalues of B); the dedicated bound should always be the smaller
    TowerBound fs = fuchsian_bound(h.n, h.n, M, cfg.constants);
    towers.push_back(bound_to_json(hg));
    towers.push_back(bound_to_json(fs));
    Json cmp;
    cmp["hypergeom_exponent_log2"] = hg.exponent_log2;
    cmp["fuchsian_exponent_log2"] = fs.exponent_log2;
    cmp["hypergeom_smaller"] = hg.exponent_log2 < fs.exponent_log2;
    out["comparison"] = std::move(cmp);
    ClearanceReport cl =
        singularity_clearance(h, cplx(0.0), 1.0, cfg.clearance_factor);
    out["clearance"] = clearance_to_json(cl);
    unit_disk_clear = cl.clear;
  }
  out["towers"] = std::move(towers);

  // unit-disk equation analysis: reduce, profile, and apply the per-equation
  // bounds; skipped when singular points crowd the disk
  if (!unit_disk_clear) {
    out["equation_skipped"] = "unit disk is too close to singular points";
    return out;
  }
  try {
    Reduction<CPoly> red;
    if (std::holds_alternative<PolySystem>(sv))
      red = poly_reduce(std::get<PolySystem>(sv), cfg.tau);
    else if (std::holds_alternative<FuchsSystem>(sv))
      red = fuchs_reduce(std::get<FuchsSystem>(sv), cfg.tau);
    else
      red = hypergeom_reduce(std::get<HypergeomSystem>(sv), cfg.tau);
    const Principal<CPoly> &eq = red.deg.eq;
    NormProfile prof = norm_profile(eq, cfg.tau);
    Json eqb;
    eqb["order"] = red.deg.k;
    eqb["generic"] = red.deg.generic;
    eqb["norm_profile"] = norm_profile_to_json(prof);
    eqb["zero_bound"] = zero_bound_to_json(
        zero_bound_unit_disk(eq, ratio_K(prof), cfg.constants));
    eqb["disconjugacy"] = disconjugacy_block(eq, prof, cfg.interval_len).j;
    out["equation_bounds"] = std::move(eqb);
  } catch (const std::exception &e) {
    out["equation_error"] = e.what();
  }
  return out;
}

Json run_count(const RunConfig &cfg) {
  check_config(cfg);
  Json in = load_json_file(cfg.input);
  Json out = envelope(cfg);
  const Json &disks = in.at("disks");
  if (!disks.is_array() || disks.empty())
    throw InputError("\"disks\" must be a non-empty array");

  ContourConfig ccfg;
  ccfg.delta = cfg.delta;
  Json reports = Json::array();
  int failed = 0;
  auto push = [&](const DiskReport &r) {
    if (r.status == DiskStatus::integration_failed) ++failed;
    reports.push_back(disk_report_to_json(r));
  };

  if (in.contains("poly")) {
    std::vector<cplx> coeffs =
        cvec_from_json(in.at("poly").at("coeffs"), "\"coeffs\"");
    CPoly p{std::move(coeffs)};
    for (const Json &d : disks)
      push(count_zeros_disk(p, complex_from_json(d.at("center")),
                            d.at("r").get<double>(), ccfg));
  } else {
    SystemVariant sv = system_from_json(in.at("system"));
    std::vector<cplx> x0 = cvec_from_json(in.at("x0"), "\"x0\"");
    std::vector<cplx> c = cvec_from_json(in.at("c"), "\"c\"");
    for (const Json &d : disks) {
      cplx center = complex_from_json(d.at("center"));
      double r = d.at("r").get<double>();
      std::visit(
          [&](const auto &s) {
            push(count_zeros_disk(s, x0, c, center, r, cfg.rel_tol, ccfg));
          },
          sv);
    }
  }
  out["reports"] = std::move(reports);
  out["failed_disks"] = failed;
  return out;
}

Json run_sweep(const RunConfig &cfg) {
  check_config(cfg);
  Json out = envelope(cfg);

  // draw every input up front from the single seeded generator, so the
  // worker pool cannot influence what any row computes
  struct Draw {
    PolySystem s;
    std::vector<cplx> x0, c;
    std::vector<long> ints;
    double expected = 0.0;
    bool have_expected = false;
    long omega = 0;
  };
  std::vector<Draw> draws;
  if (cfg.omega_max > 0) {
    for (int w = 1; w <= cfg.omega_max; ++w) {
      Draw d;
      d.s = oscillator_system(double(w));
      d.x0 = {cplx(1.0), cplx(0.0)};
      d.c = {cplx(1.0), cplx(0.0)};
      d.expected = double(cos_zero_count(double(w), kSweepDiskR));
      d.have_expected = true;
      d.omega = w;
      draws.push_back(std::move(d));
    }
  } else {
    Rng rng(cfg.seed);
    long M = cfg.entry_bound;
    for (int i = 0; i < cfg.draws; ++i) {
      Draw d;
      d.s.n = cfg.sweep_n;
      d.s.m = cfg.sweep_m;
      size_t nn = static_cast<size_t>(d.s.n) * static_cast<size_t>(d.s.n);
      for (int k = 0; k < d.s.m; ++k) {
        std::vector<cplx> blk(nn);
        for (size_t e = 0; e < nn; ++e) {
          long v = rng.uniform_int(-M, M);
          d.ints.push_back(v);
          blk[e] = cplx(double(v), 0.0);
        }
        d.s.coeff.push_back(std::move(blk));
      }
      auto draw_vec = [&](std::vector<cplx> &dst) {
        for (;;) {
          dst.clear();
          bool nonzero = false;
          for (int e = 0; e < d.s.n; ++e) {
            long v = rng.uniform_int(-M, M);
            dst.push_back(cplx(double(v), 0.0));
            nonzero = nonzero || v != 0;
          }
          if (nonzero) break;
        }
        for (cplx v : dst) d.ints.push_back(long(v.real()));
      };
      draw_vec(d.x0);
      draw_vec(d.c);
      draws.push_back(std::move(d));
    }
  }

  std::vector<SweepRow> rows(draws.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < draws.size(); ++i) {
    const Draw &d = draws[i];
    rows[i] = sweep_row_for(d.s, d.x0, d.c, cfg, d.expected, d.have_expected);
    rows[i].j["draw"] = i;
    if (d.have_expected) {
      rows[i].j["omega"] = d.omega;
      rows[i].j["expected"] = d.expected;
    } else {
      rows[i].j["entries"] = d.ints;
    }
  }

  Json table = Json::array();
  Json violations = Json::array();
  int failed = 0;
  for (const SweepRow &r : rows) {
    table.push_back(r.j);
    if (r.failed) ++failed;
    if (r.violated) {
      Json v;
      v["draw"] = r.j["draw"];
      v["violations"] = r.j["violations"];
      violations.push_back(std::move(v));
    }
  }
  out["rows"] = std::move(table);
  out["violations"] = violations;
  out["failed_rows"] = failed;
  out["total_rows"] = draws.size();
  if (!cfg.csv.empty()) write_sweep_csv(cfg.csv, out["rows"]);
  return out;
}

Json run_family(const RunConfig &cfg) {
  check_config(cfg);
  Json in = load_json_file(cfg.input);
  Json out = envelope(cfg);

  if (in.contains("functions")) {
    std::vector<MPoly> fs;
    for (const Json &p : in.at("functions"))
      fs.push_back(to_family_ring(poly_from_json(p)));
    Annihilator an = annihilating_operator(fs);
    out["annihilator"] = annihilator_to_json(an);
    out["vanishing"] = vanishing_to_json(vanishing_orders(an.op));
    return out;
  }
  if (in.contains("vectors")) {
    std::vector<EpsVec> vs;
    for (const Json &vec : in.at("vectors")) {
      EpsVec v;
      for (const Json &p : vec) v.push_back(to_family_ring(poly_from_json(p)));
      vs.push_back(std::move(v));
    }
    out["span"] = span_basis_to_json(constant_rank_span(vs));
    return out;
  }
  if (in.contains("operator")) {
    DiffOp op = diffop_from_json(in.at("operator"));
    for (MPoly &a : op.a) a = to_family_ring(a);
    out["vanishing"] = vanishing_to_json(vanishing_orders(op));
    return out;
  }
  if (in.contains("arc")) {
    // restrict the universal equation to the ray lambda(eps) = eps * lambda0
    const Json &arc = in.at("arc");
    int n = arc.at("n").get<int>();
    int m = arc.at("m").get<int>();
    XiChain<MPoly> ch = universal_poly_chain(n, m);
    Principal<MPoly> eq = principal_equation(ch);
    std::vector<Rat> lambda0;
    for (const Json &s : arc.at("lambda0"))
      lambda0.push_back(parse_decimal_rat(s.get<std::string>()));
    size_t want = static_cast<size_t>(n) * static_cast<size_t>(n) *
                  static_cast<size_t>(m);
    if (lambda0.size() != want)
      throw InputError("\"lambda0\" must list n*n*m rationals");
    DiffOp op;
    for (const MPoly &a : eq.a) op.a.push_back(a.substitute_params_ray(lambda0));
    out["operator"] = diffop_to_json(op);
    out["vanishing"] = vanishing_to_json(vanishing_orders(op));
    return out;
  }
  throw InputError(
      "family input needs \"functions\", \"vectors\", \"operator\", or \"arc\"");
}

Json run_smith(const RunConfig &cfg) {
  check_config(cfg);
  Json in = load_json_file(cfg.input);
  Json out = envelope(cfg);
  SeriesMat x =
      series_mat_from_json(in.contains("matrix") ? in.at("matrix") : in);
  if (cfg.trunc > 0)
    for (ZSeries &e : x.e) e = retruncated(e, cfg.trunc);
  SmithLocalForm f = smith_local_form(x);
  out["smith"] = smith_to_json(f);

  // stored-coefficient reconstruction check of U * D * V against the input
  SeriesMat udv = series_mat_mul(series_mat_mul(f.U, f.diagonal(x.rows, x.cols)), f.V);
  bool ok = true;
  for (size_t i = 0; i < x.e.size(); ++i)
    for (int k = 0; k < x.e[i].trunc() && ok; ++k)
      ok = udv.e[i].coeff(k) == x.e[i].coeff(k);
  out["reconstruction_ok"] = ok;
  return out;
}

int report_exit_code(const std::string &command, const Json &report) {
  if (command == "sweep" && !report.at("violations").empty()) return 4;
  if (command == "count" && report.at("failed_disks").get<int>() > 0) return 3;
  if (command == "certify" && !report.at("pass").get<bool>()) return 3;
  return 0;
}

int run_cli(const std::vector<std::string> &args) {
  RunConfig cfg;
  CLI::App app{"oscillation bounds, reductions, and zero counts for linear ODE systems"};
  app.require_subcommand(1);

  std::map<std::string, MatrixNorm> norms{
      {"rowsum", MatrixNorm::rowsum},
      {"maxentry", MatrixNorm::maxentry},
      {"frobenius", MatrixNorm::frobenius}};

  auto add_common = [&](CLI::App *sub, bool needs_input) {
    auto *opt = sub->add_option("--input", cfg.input, "input JSON document");
    if (needs_input) opt->required();
    sub->add_option("--output", cfg.output, "report path (default: stdout)");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--rel-tol", cfg.rel_tol, "contour integration tolerance");
    sub->add_option("--tau", cfg.tau, "float-mode rank threshold");
    sub->add_option("--delta", cfg.delta, "contour safety offset");
    sub->add_option("--trunc", cfg.trunc, "series truncation override");
    sub->add_option("--c-main", cfg.constants.c_main, "main tower constant");
    sub->add_option("--c-levin", cfg.constants.c_levin, "circle-floor constant");
    sub->add_option("--c-var", cfg.constants.c_var, "variation constant");
    sub->add_option("--c-tower", cfg.constants.c_tower, "tower offset constant");
    sub->add_option("--c-ratio", cfg.constants.c_ratio, "ratio-bound constant");
    sub->add_option("--norm", cfg.norm, "matrix norm")
        ->transform(CLI::CheckedTransformer(norms, CLI::ignore_case));
    sub->add_option("--clearance-factor", cfg.clearance_factor,
                    "required singularity clearance as a multiple of r");
    sub->add_option("--interval-len", cfg.interval_len,
                    "real interval length for the disconjugacy test");
  };

  add_common(app.add_subcommand("derive", "derive the scalar equation and certificates"), true);
  add_common(app.add_subcommand("bound", "evaluate every applicable zero bound"), true);
  add_common(app.add_subcommand("count", "count zeros in disks by the argument principle"), true);
  CLI::App *sweep = app.add_subcommand("sweep", "randomized bound-vs-count harness");
  add_common(sweep, false);
  sweep->add_option("--draws", cfg.draws, "number of random draws");
  sweep->add_option("--n", cfg.sweep_n, "system dimension");
  sweep->add_option("--m", cfg.sweep_m, "number of coefficient matrices");
  sweep->add_option("--entry-bound", cfg.entry_bound,
                    "integer entries are drawn from [-M, M]");
  sweep->add_option("--omega-max", cfg.omega_max,
                    "scan the oscillator family for omega = 1..N instead");
  sweep->add_option("--csv", cfg.csv, "also write the rows as CSV");
  add_common(app.add_subcommand("family", "span, annihilator, and vanishing-order reports"), true);
  add_common(app.add_subcommand("smith", "local Smith normal form of a series matrix"), true);
  add_common(app.add_subcommand("certify", "derive, verify certificates, and check the residual"), true);

  std::vector<const char *> argv;
  argv.push_back("oscbound");
  for (const std::string &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    Json report;
    if (cfg.command == "derive") report = run_derive(cfg);
    else if (cfg.command == "bound") report = run_bound(cfg);
    else if (cfg.command == "count") report = run_count(cfg);
    else if (cfg.command == "sweep") report = run_sweep(cfg);
    else if (cfg.command == "family") report = run_family(cfg);
    else if (cfg.command == "smith") report = run_smith(cfg);
    else report = run_certify(cfg);
    write_report(cfg, report);
    return report_exit_code(cfg.command, report);
  } catch (const BudgetExceeded &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const TruncationInsufficient &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const BoundaryAmbiguous &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const DependentInputs &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::runtime_error &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace oscbound
