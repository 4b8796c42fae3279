#pragma once

// Sparse exact multivariate polynomials over arbitrary-precision rationals.
// Convention: when a ring has the time variable at all, it is variable 0
// ("t"); parameters follow ("l_1", "l_2", ... or "eps"). Terms are kept in
// descending graded-lexicographic order with earlier variables heavier, so
// begin() is the leading term and equality is structural.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "oscbound/rat.hpp"
#include "oscbound/unipoly.hpp"

namespace oscbound {

using Expo = std::vector<uint32_t>;

struct GradedLexDesc {
  bool operator()(const Expo &a, const Expo &b) const {
    uint64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da > db;
    return a > b;  // lexicographic, variable 0 heaviest
  }
};

using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;

VarsPtr make_vars(VarList names);
// ["t", "l_1", ..., "l_count"]
VarsPtr lambda_vars(size_t count);

class MPoly {
 public:
  MPoly() = default;  // zero polynomial over the empty ring
  explicit MPoly(VarsPtr vars) : vars_(std::move(vars)) {}

  static MPoly constant(VarsPtr vars, Rat c);
  static MPoly variable(VarsPtr vars, size_t idx);

  const VarsPtr &vars() const { return vars_; }
  size_t nvars() const { return vars_ ? vars_->size() : 0; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Expo, Rat, GradedLexDesc> &terms() const { return terms_; }

  void add_term(const Expo &e, const Rat &c);  // accumulates, drops zeros

  MPoly operator+(const MPoly &o) const;
  MPoly operator-(const MPoly &o) const;
  MPoly operator*(const MPoly &o) const;
  MPoly operator-() const;
  MPoly scaled(const Rat &s) const;
  bool operator==(const MPoly &o) const;

  MPoly derivative(size_t var) const;

  // total degree; -1 for zero
  long degree() const;
  long deg_var(size_t var) const;
  // least exponent of `var` over all terms; -1 for zero
  long ord_var(size_t var) const;

  Rat l1_norm() const;
  bool is_integral() const;  // every coefficient has denominator 1

  // positive rational content (gcd of numerators / lcm of denominators)
  Rat content() const;  // throws on zero polynomial
  MPoly divided_by(const Rat &s) const;

  // terms whose exponent of `var` equals k, with that exponent zeroed out
  MPoly coeff_of_power(size_t var, uint32_t k) const;
  // drop variable `var` entirely (requires deg_var == 0)
  MPoly drop_var(size_t var) const;

  Rat eval_rat(const std::vector<Rat> &point) const;

  // numeric specialization of all variables after t; result univariate in t
  CPoly specialize(const std::vector<cplx> &lambda) const;
  // exact specialization of all variables after t at rational values
  MPoly substitute_params(const std::vector<Rat> &lambda) const;
  // restriction to the ray lambda = eps*lambda0: result lives in (t, eps)
  MPoly substitute_params_ray(const std::vector<Rat> &lambda0) const;

  std::string to_string() const;

 private:
  void check_compatible(const MPoly &o) const;
  VarsPtr vars_;
  std::map<Expo, Rat, GradedLexDesc> terms_;
};

}  // namespace oscbound
