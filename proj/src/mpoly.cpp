#include "oscbound/mpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace oscbound {

VarsPtr make_vars(VarList names) {
  return std::make_shared<const VarList>(std::move(names));
}

VarsPtr lambda_vars(size_t count) {
  VarList v;
  v.reserve(count + 1);
  v.push_back("t");
  for (size_t i = 1; i <= count; ++i) v.push_back("l_" + std::to_string(i));
  return make_vars(std::move(v));
}

MPoly MPoly::constant(VarsPtr vars, Rat c) {
  MPoly p(std::move(vars));
  if (c != 0) p.terms_.emplace(Expo(p.nvars(), 0), std::move(c));
  return p;
}

MPoly MPoly::variable(VarsPtr vars, size_t idx) {
  MPoly p(std::move(vars));
  if (idx >= p.nvars()) throw std::out_of_range("MPoly::variable index");
  Expo e(p.nvars(), 0);
  e[idx] = 1;
  p.terms_.emplace(std::move(e), Rat(1));
  return p;
}

void MPoly::add_term(const Expo &e, const Rat &c) {
  if (e.size() != nvars()) throw std::invalid_argument("exponent length mismatch");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MPoly::check_compatible(const MPoly &o) const {
  if (vars_ == o.vars_) return;
  if (vars_ && o.vars_ && *vars_ == *o.vars_) return;
  throw std::invalid_argument("MPoly variable-list mismatch");
}

MPoly MPoly::operator+(const MPoly &o) const {
  check_compatible(o);
  MPoly r(*this);
  for (const auto &[e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-(const MPoly &o) const {
  check_compatible(o);
  MPoly r(*this);
  for (const auto &[e, c] : o.terms_) r.add_term(e, Rat(-c));
  return r;
}

MPoly MPoly::operator*(const MPoly &o) const {
  check_compatible(o);
  MPoly r(vars_);
  Expo e(nvars());
  for (const auto &[ea, ca] : terms_) {
    for (const auto &[eb, cb] : o.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, Rat(ca * cb));
    }
  }
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto &[e, c] : r.terms_) c = -c;
  return r;
}

MPoly MPoly::scaled(const Rat &s) const {
  if (s == 0) return MPoly(vars_);
  MPoly r(*this);
  for (auto &[e, c] : r.terms_) c *= s;
  return r;
}

bool MPoly::operator==(const MPoly &o) const {
  check_compatible(o);
  return terms_ == o.terms_;
}

MPoly MPoly::derivative(size_t var) const {
  MPoly r(vars_);
  for (const auto &[e, c] : terms_) {
    if (e[var] == 0) continue;
    Expo d(e);
    d[var] -= 1;
    r.add_term(d, Rat(c * e[var]));
  }
  return r;
}

long MPoly::degree() const {
  if (terms_.empty()) return -1;
  uint64_t d = 0;
  for (auto v : terms_.begin()->first) d += v;  // leading term is max-degree
  return long(d);
}

long MPoly::deg_var(size_t var) const {
  if (terms_.empty()) return -1;
  uint32_t d = 0;
  for (const auto &[e, c] : terms_) d = std::max(d, e[var]);
  return long(d);
}

long MPoly::ord_var(size_t var) const {
  if (terms_.empty()) return -1;
  uint32_t d = UINT32_MAX;
  for (const auto &[e, c] : terms_) d = std::min(d, e[var]);
  return long(d);
}

Rat MPoly::l1_norm() const {
  Rat s(0);
  for (const auto &[e, c] : terms_) s += rat_abs(c);
  return s;
}

bool MPoly::is_integral() const {
  for (const auto &[e, c] : terms_)
    if (!is_integer(c)) return false;
  return true;
}

Rat MPoly::content() const {
  ContentAccumulator acc;
  for (const auto &[e, c] : terms_) acc.add(c);
  return acc.value();
}

MPoly MPoly::divided_by(const Rat &s) const {
  if (s == 0) throw std::invalid_argument("division by zero scalar");
  return scaled(Rat(1 / s));
}

MPoly MPoly::coeff_of_power(size_t var, uint32_t k) const {
  MPoly r(vars_);
  for (const auto &[e, c] : terms_) {
    if (e[var] != k) continue;
    Expo d(e);
    d[var] = 0;
    r.add_term(d, c);
  }
  return r;
}

MPoly MPoly::drop_var(size_t var) const {
  if (deg_var(var) > 0) throw std::logic_error("drop_var: variable still present");
  VarList names(*vars_);
  names.erase(names.begin() + long(var));
  MPoly r(make_vars(std::move(names)));
  for (const auto &[e, c] : terms_) {
    Expo d(e);
    d.erase(d.begin() + long(var));
    r.add_term(d, c);
  }
  return r;
}

Rat MPoly::eval_rat(const std::vector<Rat> &point) const {
  if (point.size() != nvars()) throw std::invalid_argument("eval point size");
  Rat s(0);
  for (const auto &[e, c] : terms_) {
    Rat term(c);
    for (size_t i = 0; i < e.size(); ++i) {
      for (uint32_t k = 0; k < e[i]; ++k) term *= point[i];
    }
    s += term;
  }
  return s;
}

CPoly MPoly::specialize(const std::vector<cplx> &lambda) const {
  if (nvars() == 0) return CPoly();
  if (lambda.size() + 1 != nvars())
    throw std::invalid_argument("specialize: lambda length mismatch");
  long dt = deg_var(0);
  std::vector<cplx> out(size_t(std::max(0L, dt) + 1), cplx(0.0));
  for (const auto &[e, c] : terms_) {
    cplx v(c.get_d());
    for (size_t i = 1; i < e.size(); ++i) {
      for (uint32_t k = 0; k < e[i]; ++k) v *= lambda[i - 1];
    }
    out[e[0]] += v;
  }
  return CPoly(std::move(out));
}

MPoly MPoly::substitute_params(const std::vector<Rat> &lambda) const {
  if (lambda.size() + 1 != nvars())
    throw std::invalid_argument("substitute_params: lambda length mismatch");
  auto tvars = make_vars({(*vars_)[0]});
  MPoly r(tvars);
  for (const auto &[e, c] : terms_) {
    Rat v(c);
    for (size_t i = 1; i < e.size(); ++i) {
      for (uint32_t k = 0; k < e[i]; ++k) v *= lambda[i - 1];
    }
    r.add_term(Expo{e[0]}, v);
  }
  return r;
}

MPoly MPoly::substitute_params_ray(const std::vector<Rat> &lambda0) const {
  if (lambda0.size() + 1 != nvars())
    throw std::invalid_argument("substitute_params_ray: lambda length mismatch");
  auto teps = make_vars({(*vars_)[0], "eps"});
  MPoly r(teps);
  for (const auto &[e, c] : terms_) {
    Rat v(c);
    uint64_t total = 0;
    for (size_t i = 1; i < e.size(); ++i) {
      total += e[i];
      for (uint32_t k = 0; k < e[i]; ++k) v *= lambda0[i - 1];
    }
    r.add_term(Expo{e[0], uint32_t(total)}, v);
  }
  return r;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    Rat a = rat_abs(c);
    bool has_var = false;
    for (size_t i = 0; i < e.size(); ++i) has_var |= e[i] > 0;
    if (a != 1 || !has_var) os << rat_to_string(a);
    bool printed = (a != 1 || !has_var);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << (*vars_)[i];
      if (e[i] > 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

}  // namespace oscbound
