#include "oscbound/json_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace oscbound {

namespace {

Json rat_term(const Expo &e, const Rat &c) {
  Json t;
  t["exp"] = e;
  t["num"] = c.get_num().get_str();
  t["den"] = c.get_den().get_str();
  return t;
}

Rat term_value(const Json &t) {
  Int num(t.at("num").get<std::string>());
  Int den(t.at("den").get<std::string>());
  if (den == 0) throw std::invalid_argument("polynomial term with denominator 0");
  Rat c(num, den);
  c.canonicalize();
  return c;
}

const char *mode_name(EqMode m) {
  return m == EqMode::universal ? "universal" : "specialized";
}

EqMode mode_value(const std::string &s) {
  if (s == "universal") return EqMode::universal;
  if (s == "specialized") return EqMode::specialized;
  throw std::invalid_argument("unknown equation mode \"" + s + "\"");
}

// Collects matrix entries in read order and enforces that one document never
// mixes exact (decimal string) and floating-point (number) entries.
class EntryParser {
 public:
  cplx read(const Json &e) {
    const Json &re = e.at("re");
    const Json &im = e.at("im");
    if (re.is_string() != im.is_string())
      throw std::invalid_argument("matrix entry mixes string and number parts");
    if (re.is_string()) {
      ++exact_n_;
      Rat r = parse_decimal_rat(re.get<std::string>());
      Rat i = parse_decimal_rat(im.get<std::string>());
      if (i != 0)
        throw std::invalid_argument(
            "exact entries must be real (imaginary part \"0\")");
      exact.push_back(r);
      return cplx(r.get_d(), 0.0);
    }
    if (!re.is_number() || !im.is_number())
      throw std::invalid_argument("matrix entry parts must be strings or numbers");
    ++float_n_;
    return cplx(re.get<double>(), im.get<double>());
  }

  // call once after every entry has been read
  bool finish_exact() const {
    if (exact_n_ > 0 && float_n_ > 0)
      throw std::invalid_argument(
          "document mixes exact and floating-point entries");
    return exact_n_ > 0;
  }

  std::vector<Rat> exact;  // in read order, only meaningful when all-exact

 private:
  size_t exact_n_ = 0;
  size_t float_n_ = 0;
};

Json exact_entry(const Rat &re) {
  Json j;
  j["re"] = rat_to_string(re);
  j["im"] = "0";
  return j;
}

Json float_entry(cplx z) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

// n x n row-major block as nested arrays of entries
Json block_to_json(int n, const std::vector<cplx> *flt,
                   const std::vector<Rat> *ex) {
  Json rows = Json::array();
  for (int r = 0; r < n; ++r) {
    Json row = Json::array();
    for (int c = 0; c < n; ++c) {
      size_t idx = static_cast<size_t>(r) * static_cast<size_t>(n) +
                   static_cast<size_t>(c);
      row.push_back(ex ? exact_entry((*ex)[idx]) : float_entry((*flt)[idx]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<cplx> block_from_json(const Json &rows, int n, EntryParser &ep) {
  if (!rows.is_array() || rows.size() != static_cast<size_t>(n))
    throw std::invalid_argument("matrix block must have n rows");
  std::vector<cplx> out;
  out.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (const Json &row : rows) {
    if (!row.is_array() || row.size() != static_cast<size_t>(n))
      throw std::invalid_argument("matrix row must have n entries");
    for (const Json &e : row) out.push_back(ep.read(e));
  }
  return out;
}

// splits the flat exact-entry stream back into blocks of the given sizes
std::vector<std::vector<Rat>> split_exact(const std::vector<Rat> &flat,
                                          size_t nblocks, size_t block) {
  std::vector<std::vector<Rat>> out(nblocks);
  size_t pos = 0;
  for (size_t k = 0; k < nblocks; ++k) {
    out[k].assign(flat.begin() + static_cast<long>(pos),
                  flat.begin() + static_cast<long>(pos + block));
    pos += block;
  }
  return out;
}

PolySystem poly_system_from_json(const Json &j) {
  PolySystem s;
  s.n = j.at("n").get<int>();
  s.m = j.at("m").get<int>();
  const Json &blocks = j.at("coeff");
  if (!blocks.is_array() || blocks.size() != static_cast<size_t>(s.m))
    throw std::invalid_argument("\"coeff\" must hold m matrices");
  EntryParser ep;
  for (const Json &b : blocks) s.coeff.push_back(block_from_json(b, s.n, ep));
  s.exact = ep.finish_exact();
  if (s.exact) {
    size_t nn = static_cast<size_t>(s.n) * static_cast<size_t>(s.n);
    s.coeff_exact = split_exact(ep.exact, static_cast<size_t>(s.m), nn);
  }
  validate(s);
  return s;
}

FuchsSystem fuchs_system_from_json(const Json &j) {
  FuchsSystem s;
  s.n = j.at("n").get<int>();
  s.m = j.at("m").get<int>();
  const Json &poles = j.at("poles");
  const Json &res = j.at("residues");
  if (!poles.is_array() || poles.size() != static_cast<size_t>(s.m))
    throw std::invalid_argument("\"poles\" must hold m points");
  if (!res.is_array() || res.size() != static_cast<size_t>(s.m))
    throw std::invalid_argument("\"residues\" must hold m matrices");
  EntryParser ep;
  for (const Json &p : poles) s.poles.push_back(ep.read(p));
  for (const Json &b : res) s.residues.push_back(block_from_json(b, s.n, ep));
  s.exact = ep.finish_exact();
  if (s.exact) {
    s.poles_exact.assign(ep.exact.begin(),
                         ep.exact.begin() + static_cast<long>(s.m));
    std::vector<Rat> rest(ep.exact.begin() + static_cast<long>(s.m),
                          ep.exact.end());
    size_t nn = static_cast<size_t>(s.n) * static_cast<size_t>(s.n);
    s.residues_exact = split_exact(rest, static_cast<size_t>(s.m), nn);
  }
  validate(s);
  return s;
}

HypergeomSystem hypergeom_system_from_json(const Json &j) {
  HypergeomSystem s;
  s.n = j.at("n").get<int>();
  EntryParser ep;
  s.B = block_from_json(j.at("B"), s.n, ep);
  s.C = block_from_json(j.at("C"), s.n, ep);
  s.exact = ep.finish_exact();
  if (s.exact) {
    size_t nn = static_cast<size_t>(s.n) * static_cast<size_t>(s.n);
    s.B_exact.assign(ep.exact.begin(), ep.exact.begin() + static_cast<long>(nn));
    s.C_exact.assign(ep.exact.begin() + static_cast<long>(nn), ep.exact.end());
  }
  validate(s);
  return s;
}

Json wedge_to_json(const WedgeInfo &w) {
  Json j;
  j["omitted_row"] = w.omitted_row;
  j["degree"] = w.degree;
  j["norm"] = rat_to_string(w.norm);
  j["rowsum_degree_bound"] = w.rowsum_degree_bound;
  return j;
}

long eps_order_of(const MPoly &p) {
  if (p.is_zero()) return kNuInf;
  if (p.nvars() <= kEpsVar) return 0;
  return p.ord_var(kEpsVar);
}

Json nullable_order(long o) {
  return o == kNuInf ? Json() : Json(o);
}

}  // namespace

Json poly_to_json(const MPoly &p) {
  Json terms = Json::array();
  for (const auto &[e, c] : p.terms()) terms.push_back(rat_term(e, c));
  Json j;
  j["vars"] = p.vars() ? *p.vars() : VarList{};
  j["terms"] = std::move(terms);
  return j;
}

MPoly poly_from_json(const Json &j) {
  VarList names = j.at("vars").get<VarList>();
  if (names.empty() && j.at("terms").empty()) return MPoly();
  MPoly p(make_vars(std::move(names)));
  for (const Json &t : j.at("terms")) {
    Expo e = t.at("exp").get<Expo>();
    if (e.size() != p.nvars())
      throw std::invalid_argument(
          "term exponent length does not match the variable list");
    p.add_term(e, term_value(t));
  }
  return p;
}

Json principal_to_json(const Principal<MPoly> &eq) {
  Json a = Json::array();
  for (const MPoly &ai : eq.a) a.push_back(poly_to_json(ai));
  Json j;
  j["n"] = eq.n;
  j["mode"] = mode_name(eq.mode);
  j["a"] = std::move(a);
  j["content_removed"] = rat_to_string(eq.content_removed);
  j["chi_power_removed"] = eq.chi_power_removed;
  return j;
}

Principal<MPoly> principal_from_json(const Json &j) {
  Principal<MPoly> eq;
  eq.n = j.at("n").get<int>();
  eq.mode = mode_value(j.at("mode").get<std::string>());
  for (const Json &p : j.at("a")) eq.a.push_back(poly_from_json(p));
  if (eq.a.size() != static_cast<size_t>(eq.n) + 1)
    throw std::invalid_argument("equation of order n must carry n+1 coefficients");
  eq.content_removed = parse_decimal_rat(j.at("content_removed").get<std::string>());
  eq.chi_power_removed = j.value("chi_power_removed", 0);
  return eq;
}

Json degeneracy_to_json(const DegeneracyResult<MPoly> &d) {
  Json j;
  j["k"] = d.k;
  j["generic"] = d.generic;
  j["equation"] = principal_to_json(d.eq);
  return j;
}

Json system_to_json(const PolySystem &s) {
  Json blocks = Json::array();
  for (int k = 0; k < s.m; ++k)
    blocks.push_back(block_to_json(
        s.n, s.exact ? nullptr : &s.coeff[static_cast<size_t>(k)],
        s.exact ? &s.coeff_exact[static_cast<size_t>(k)] : nullptr));
  Json j;
  j["kind"] = "poly";
  j["n"] = s.n;
  j["m"] = s.m;
  j["coeff"] = std::move(blocks);
  return j;
}

Json system_to_json(const FuchsSystem &s) {
  Json poles = Json::array();
  for (int k = 0; k < s.m; ++k)
    poles.push_back(s.exact ? exact_entry(s.poles_exact[static_cast<size_t>(k)])
                            : float_entry(s.poles[static_cast<size_t>(k)]));
  Json res = Json::array();
  for (int k = 0; k < s.m; ++k)
    res.push_back(block_to_json(
        s.n, s.exact ? nullptr : &s.residues[static_cast<size_t>(k)],
        s.exact ? &s.residues_exact[static_cast<size_t>(k)] : nullptr));
  Json j;
  j["kind"] = "fuchs";
  j["n"] = s.n;
  j["m"] = s.m;
  j["poles"] = std::move(poles);
  j["residues"] = std::move(res);
  return j;
}

Json system_to_json(const HypergeomSystem &s) {
  Json j;
  j["kind"] = "hypergeom";
  j["n"] = s.n;
  j["B"] = block_to_json(s.n, s.exact ? nullptr : &s.B,
                         s.exact ? &s.B_exact : nullptr);
  j["C"] = block_to_json(s.n, s.exact ? nullptr : &s.C,
                         s.exact ? &s.C_exact : nullptr);
  return j;
}

SystemVariant system_from_json(const Json &j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "poly") return poly_system_from_json(j);
  if (kind == "fuchs") return fuchs_system_from_json(j);
  if (kind == "hypergeom") return hypergeom_system_from_json(j);
  throw std::invalid_argument("unknown system kind \"" + kind + "\"");
}

Json complex_to_json(cplx z) { return float_entry(z); }

cplx complex_from_json(const Json &j) {
  EntryParser ep;
  return ep.read(j);
}

Json constants_to_json(const BoundConstants &bc) {
  Json j;
  j["c_main"] = bc.c_main;
  j["c_levin"] = bc.c_levin;
  j["c_var"] = bc.c_var;
  j["c_tower"] = bc.c_tower;
  j["c_ratio"] = bc.c_ratio;
  return j;
}

BoundConstants constants_from_json(const Json &j) {
  BoundConstants bc;
  bc.c_main = j.value("c_main", bc.c_main);
  bc.c_levin = j.value("c_levin", bc.c_levin);
  bc.c_var = j.value("c_var", bc.c_var);
  bc.c_tower = j.value("c_tower", bc.c_tower);
  bc.c_ratio = j.value("c_ratio", bc.c_ratio);
  return bc;
}

Json bound_to_json(const TowerBound &b) {
  Json j;
  j["bound_kind"] = b.label;
  switch (b.kind) {
    case TowerBound::Kind::plain:
      j["form"] = "plain";
      j["plain_value"] = b.plain_value;
      break;
    case TowerBound::Kind::double_exp:
      j["form"] = "double_exp";
      break;
    case TowerBound::Kind::tower4:
      j["form"] = "tower4";
      j["inner"] = b.inner;
      break;
  }
  j["base"] = b.base;
  j["exponent_log2"] = b.exponent_log2;
  j["constants"] = constants_to_json(b.constants);
  double ll = b.log10_log10();
  j["log10_log10_value"] = std::isfinite(ll) ? Json(ll) : Json();
  return j;
}

Json disconjugacy_to_json(const DisconjugacyReport &r) {
  Json j;
  j["sum"] = r.sum;
  j["disconjugate"] = r.disconjugate;
  j["margin"] = r.margin;
  return j;
}

Json norm_profile_to_json(const NormProfile &p) {
  Json j;
  j["b"] = p.b;
  j["c"] = p.c;
  j["sigma_flag"] = p.sigma_flag;
  return j;
}

Json zero_bound_to_json(const ZeroBoundReport &r) {
  Json circle;
  circle["r_star"] = r.circle.r_star;
  circle["m_hat"] = r.circle.m_hat;
  circle["theoretical_floor"] = r.circle.theoretical_floor;
  circle["argmin_angle"] = r.circle.argmin_angle;
  circle["degree"] = r.circle.degree;
  circle["samples_per_circle"] = r.circle.samples_per_circle;
  Json j;
  j["formula_bound"] = r.formula_bound;
  j["constructive_bound"] = r.constructive_bound;
  j["K"] = r.K;
  j["n"] = r.n;
  j["d"] = r.d;
  j["circle"] = std::move(circle);
  return j;
}

Json clearance_to_json(const ClearanceReport &r) {
  Json j;
  j["clear"] = r.clear;
  j["min_distance"] = r.min_distance;
  j["required"] = r.required;
  j["factor"] = r.factor;
  return j;
}

Json certificates_to_json(const CertificateReport &r) {
  Json wedges = Json::array();
  for (const WedgeInfo &w : r.wedges) wedges.push_back(wedge_to_json(w));
  Json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["integral"] = r.integral;
  j["xi_degrees_ok"] = r.xi_degrees_ok;
  j["wedge_degree_ok"] = r.wedge_degree_ok;
  j["wedge_norm_ok"] = r.wedge_norm_ok;
  j["stated_degree_bound"] = r.stated_degree_bound;
  j["norm_bound"] = rat_to_string(r.norm_bound);
  j["xi_degrees"] = r.xi_degrees;
  j["wedges"] = std::move(wedges);
  j["all_pass"] = r.all_pass();
  return j;
}

Json path_to_json(const Path &path) {
  Json segs = Json::array();
  for (const PathSeg &s : path) {
    Json e;
    if (s.kind == PathSeg::Kind::line) {
      e["type"] = "line";
      e["a"] = complex_to_json(s.a);
      e["b"] = complex_to_json(s.b);
    } else {
      e["type"] = "arc";
      e["center"] = complex_to_json(s.center);
      e["radius"] = s.radius;
      e["theta0"] = s.theta0;
      e["theta1"] = s.theta1;
    }
    segs.push_back(std::move(e));
  }
  Json j;
  j["segments"] = std::move(segs);
  return j;
}

Json disk_report_to_json(const DiskReport &r) {
  Json comb = Json::array();
  for (cplx v : r.c) comb.push_back(complex_to_json(v));
  Json j;
  j["center"] = complex_to_json(r.center);
  j["r"] = r.r;
  j["c"] = std::move(comb);
  j["zero_count"] = r.zero_count;
  j["winding"] = r.winding;
  j["min_modulus_on_contour"] = r.min_modulus_on_contour;
  j["max_modulus_on_contour"] = r.max_modulus_on_contour;
  j["status"] = to_string(r.status);
  j["samples"] = r.samples;
  j["contour"] = path_to_json(circle_path(r.center, r.r));
  return j;
}

Json series_to_json(const ZSeries &s) {
  Json terms = Json::array();
  for (int k = 0; k < s.trunc(); ++k) {
    Rat c = s.coeff(k);
    if (c == 0) continue;
    terms.push_back(rat_term(Expo{static_cast<uint32_t>(k)}, c));
  }
  Json j;
  j["vars"] = Json::array({"z"});
  j["terms"] = std::move(terms);
  j["trunc"] = s.trunc();
  j["exact"] = s.exact();
  j["eps_order"] = nullable_order(s.ord());
  return j;
}

ZSeries series_from_json(const Json &j) {
  int trunc = j.at("trunc").get<int>();
  if (trunc <= 0) throw std::invalid_argument("series needs trunc >= 1");
  std::vector<Rat> coeffs(static_cast<size_t>(trunc), Rat(0));
  for (const Json &t : j.at("terms")) {
    Expo e = t.at("exp").get<Expo>();
    if (e.size() != 1)
      throw std::invalid_argument("series terms are univariate");
    if (e[0] >= static_cast<uint32_t>(trunc))
      throw std::invalid_argument("series term beyond the truncation order");
    coeffs[e[0]] = term_value(t);
  }
  if (j.value("exact", true)) return ZSeries::from_coeffs(std::move(coeffs), trunc);
  return ZSeries::truncated(std::move(coeffs), trunc);
}

Json series_mat_to_json(const SeriesMat &m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(series_to_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  Json j;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  j["entries"] = std::move(rows);
  return j;
}

SeriesMat series_mat_from_json(const Json &j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  const Json &entries = j.at("entries");
  if (!entries.is_array() || entries.size() != static_cast<size_t>(rows))
    throw std::invalid_argument("entry grid does not match \"rows\"");
  int trunc = -1;
  SeriesMat m;
  m.rows = rows;
  m.cols = cols;
  for (const Json &row : entries) {
    if (!row.is_array() || row.size() != static_cast<size_t>(cols))
      throw std::invalid_argument("entry row does not match \"cols\"");
    for (const Json &e : row) {
      ZSeries s = series_from_json(e);
      if (trunc < 0) trunc = s.trunc();
      if (s.trunc() != trunc)
        throw std::invalid_argument("matrix entries share one truncation order");
      m.e.push_back(std::move(s));
    }
  }
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("series matrix needs positive dimensions");
  return m;
}

Json smith_to_json(const SmithLocalForm &f) {
  Json j;
  j["rank"] = f.rank;
  j["trunc"] = f.trunc;
  j["orders"] = f.orders;
  j["U"] = series_mat_to_json(f.U);
  j["V"] = series_mat_to_json(f.V);
  return j;
}

SmithLocalForm smith_from_json(const Json &j) {
  SmithLocalForm f;
  f.rank = j.at("rank").get<int>();
  f.trunc = j.at("trunc").get<int>();
  f.orders = j.at("orders").get<std::vector<long>>();
  f.U = series_mat_from_json(j.at("U"));
  f.V = series_mat_from_json(j.at("V"));
  return f;
}

Json diffop_to_json(const DiffOp &op) {
  Json coeffs = Json::array();
  for (const MPoly &ai : op.a) {
    Json p = poly_to_json(ai);
    p["eps_order"] = nullable_order(eps_order_of(ai));
    coeffs.push_back(std::move(p));
  }
  Json j;
  j["order"] = op.order();
  j["a"] = std::move(coeffs);
  return j;
}

DiffOp diffop_from_json(const Json &j) {
  DiffOp op;
  for (const Json &p : j.at("a")) op.a.push_back(poly_from_json(p));
  if (op.a.empty()) throw std::invalid_argument("operator carries no coefficients");
  if (op.a.front().is_zero())
    throw std::invalid_argument("operator leading coefficient is zero");
  return op;
}

Json annihilator_to_json(const Annihilator &an) {
  Json g = Json::array();
  for (const MPoly &gi : an.g) g.push_back(poly_to_json(gi));
  Json j;
  j["operator"] = diffop_to_json(an.op);
  j["g"] = std::move(g);
  return j;
}

Json vanishing_to_json(const VanishingReport &r) {
  Json nu = Json::array();
  for (long v : r.nu) nu.push_back(nullable_order(v));
  Json ratio = Json::array();
  for (const Rat &q : r.ratio) ratio.push_back(rat_to_string(q));
  Json j;
  j["nu"] = std::move(nu);
  j["ratio"] = std::move(ratio);
  j["ratio_finite"] = r.ratio_finite;
  j["verdict"] = r.verdict;
  return j;
}

Json span_basis_to_json(const SpanBasis &b) {
  Json w = Json::array();
  for (const EpsVec &v : b.w) {
    Json comps = Json::array();
    for (const MPoly &p : v) comps.push_back(poly_to_json(p));
    w.push_back(std::move(comps));
  }
  Json j;
  j["rank"] = b.rank;
  j["w"] = std::move(w);
  return j;
}

Json load_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

void write_json_file(const std::string &path, const Json &j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace oscbound
