#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oscbound/mpoly.hpp"
#include "oscbound/rat.hpp"
#include "oscbound/rng.hpp"
#include "oscbound/unipoly.hpp"

using namespace oscbound;

namespace {

MPoly random_mpoly(Rng &rng, const VarsPtr &vars, long max_deg, long max_terms,
                   long coeff_range) {
  MPoly p(vars);
  long nterms = rng.uniform_int(1, max_terms);
  for (long i = 0; i < nterms; ++i) {
    Expo e(vars->size(), 0);
    long budget = max_deg;
    for (size_t v = 0; v < vars->size(); ++v) {
      long d = rng.uniform_int(0, budget);
      e[v] = uint32_t(d);
      budget -= d;
    }
    p.add_term(e, Rat(rng.uniform_int(-coeff_range, coeff_range)));
  }
  return p;
}

CPoly random_cpoly(Rng &rng, long deg) {
  std::vector<cplx> c(size_t(deg) + 1);
  for (auto &v : c) v = cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
  if (c.back() == cplx(0.0)) c.back() = cplx(1.0);
  return CPoly(std::move(c));
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_decimal_rat("-3") == Rat(-3));
  CHECK(parse_decimal_rat("1.25") == Rat(5, 4));
  CHECK(parse_decimal_rat("0.5") == Rat(1, 2));
  CHECK(parse_decimal_rat("-0.04") == Rat(-1, 25));
  CHECK(parse_decimal_rat("7/3") == Rat(7, 3));
  CHECK(parse_decimal_rat("123456789012345678901234567890") ==
        Rat(mpz_class("123456789012345678901234567890")));
  CHECK(rat_to_string(Rat(5, 4)) == "5/4");
  CHECK(rat_to_string(Rat(-3)) == "-3");
  CHECK(parse_decimal_rat(rat_to_string(Rat(-22, 7))) == Rat(-22, 7));
  CHECK_THROWS(parse_decimal_rat("1e5"));
  CHECK_THROWS(parse_decimal_rat(""));
}

TEST_CASE("content accumulator") {
  ContentAccumulator acc;
  CHECK(acc.empty());
  acc.add(Rat(6));
  acc.add(Rat(-4));
  acc.add(Rat(10));
  CHECK(acc.value() == Rat(2));
  ContentAccumulator acc2;
  acc2.add(Rat(1, 2));
  acc2.add(Rat(3, 4));
  CHECK(acc2.value() == Rat(1, 4));  // gcd(1,3)/lcm(2,4)
}

TEST_CASE("l1 norm on exact polynomials") {
  VarsPtr vars = make_vars({"t"});
  MPoly t = MPoly::variable(vars, 0);
  MPoly p = t * t.scaled(Rat(3)) - t.scaled(Rat(4)) + MPoly::constant(vars, Rat(1));
  CHECK(p.l1_norm() == Rat(8));
  CHECK(MPoly(vars).l1_norm() == Rat(0));

  MPoly f = t + MPoly::constant(vars, Rat(1));
  MPoly g = t - MPoly::constant(vars, Rat(1));
  CHECK((f * g).l1_norm() == Rat(2));
  CHECK(f.l1_norm() * g.l1_norm() == Rat(4));
}

TEST_CASE("arithmetic basics") {
  VarsPtr vars = lambda_vars(2);  // t, l_1, l_2
  MPoly t = MPoly::variable(vars, 0);
  MPoly l1 = MPoly::variable(vars, 1);
  MPoly l2 = MPoly::variable(vars, 2);

  MPoly p = t * t * l1;
  MPoly dp = p.derivative(0);
  CHECK(dp == t.scaled(Rat(2)) * l1);

  CHECK(t * t == [&] {
    MPoly q(vars);
    Expo e(3, 0);
    e[0] = 2;
    q.add_term(e, Rat(1));
    return q;
  }());

  MPoly r = t * l1 + l2 * l2;
  CHECK((r + (-r)).is_zero());
  CHECK((r - r).is_zero());
}

TEST_CASE("degrees, orders, content") {
  VarsPtr vars = lambda_vars(1);
  MPoly t = MPoly::variable(vars, 0);
  MPoly l1 = MPoly::variable(vars, 1);
  MPoly p = t * t * l1.scaled(Rat(6)) + t.scaled(Rat(-9));
  CHECK(p.degree() == 3);
  CHECK(p.deg_var(0) == 2);
  CHECK(p.deg_var(1) == 1);
  CHECK(p.ord_var(0) == 1);
  CHECK(p.content() == Rat(3));
  CHECK(p.divided_by(Rat(3)).l1_norm() == Rat(5));
  CHECK(p.is_integral());
  CHECK_FALSE(p.divided_by(Rat(4)).is_integral());
}

TEST_CASE("specialization to univariate complex") {
  VarsPtr vars = lambda_vars(2);
  MPoly t = MPoly::variable(vars, 0);
  MPoly l1 = MPoly::variable(vars, 1);
  MPoly l2 = MPoly::variable(vars, 2);

  CPoly u = (t * l1 + l2).specialize({cplx(2.0), cplx(0.0, 3.0)});
  CHECK(u.degree() == 1);
  CHECK(u.coeff(1) == cplx(2.0));
  CHECK(u.coeff(0) == cplx(0.0, 3.0));

  CPoly v = (t * t).specialize({cplx(5.0), cplx(7.0)});
  CHECK(v.degree() == 2);
  CHECK(v.coeff(2) == cplx(1.0));

  CPoly w = (t * l1 + l1 * l1).specialize({cplx(0.0), cplx(4.0)});
  CHECK(w.is_zero());
}

TEST_CASE("exact substitution and the eps ray") {
  VarsPtr vars = lambda_vars(2);
  MPoly t = MPoly::variable(vars, 0);
  MPoly l1 = MPoly::variable(vars, 1);
  MPoly l2 = MPoly::variable(vars, 2);
  MPoly p = t * l1 + l2 * l2;

  MPoly sp = p.substitute_params({Rat(2), Rat(-3)});
  CHECK(sp.nvars() == 1);
  CHECK(sp.eval_rat({Rat(5)}) == Rat(19));  // 5*2 + 9

  MPoly ray = p.substitute_params_ray({Rat(2), Rat(-3)});
  REQUIRE(ray.nvars() == 2);  // (t, eps)
  // t*l1 -> 2*t*eps ; l2^2 -> 9*eps^2
  CHECK(ray.eval_rat({Rat(1), Rat(1)}) == Rat(11));
  CHECK(ray.deg_var(1) == 2);
  CHECK(ray.ord_var(1) == 1);
}

TEST_CASE("multiplicativity, positivity, triangle inequality") {
  Rng rng(20260814);
  VarsPtr vars = lambda_vars(3);
  for (int it = 0; it < 200; ++it) {
    MPoly f = random_mpoly(rng, vars, 6, 6, 5);
    MPoly g = random_mpoly(rng, vars, 6, 6, 5);
    CHECK((f * g).l1_norm() <= f.l1_norm() * g.l1_norm());
    CHECK((f + g).l1_norm() <= f.l1_norm() + g.l1_norm());
    CHECK((f.l1_norm() == 0) == f.is_zero());
  }
}

TEST_CASE("circle scan on constants and powers") {
  CPoly one = CPoly::constant(cplx(1.0));
  CircleScan s = eval_circle(one, 1.5, 16);
  CHECK(s.certified_min >= 0.99);
  CHECK(s.certified_min <= 1.0 + 1e-12);

  CPoly t4 = [] {
    std::vector<cplx> c(5, cplx(0.0));
    c[4] = cplx(1.0);
    return CPoly(std::move(c));
  }();
  double target = std::pow(1.5, 4);
  CircleScan coarse = eval_circle(t4, 1.5, 16);
  CircleScan fine = eval_circle(t4, 1.5, 4096);
  CHECK(coarse.certified_min <= target + 1e-9);
  CHECK(fine.certified_min <= target + 1e-9);
  CHECK(fine.certified_min >= coarse.certified_min);
  CHECK(fine.certified_min >= 0.98 * target);
}

TEST_CASE("circle scan near-root case") {
  // p = t - 1 on |t| = 1.5: minimum modulus 0.5 at angle 0
  CPoly p(std::vector<cplx>{cplx(-1.0), cplx(1.0)});
  CircleScan s = eval_circle(p, 1.5, 2048);
  CHECK(s.certified_min <= 0.5 + 1e-9);
  CHECK(s.certified_min >= 0.49);
  CHECK(std::abs(std::remainder(s.argmin_angle, 2 * 3.14159265358979323846)) <
        0.01);
}

TEST_CASE("certified circle minimum is a true lower bound") {
  Rng rng(7);
  for (int it = 0; it < 20; ++it) {
    CPoly p = random_cpoly(rng, rng.uniform_int(1, 10));
    double r = rng.uniform(0.3, 2.5);
    CircleScan s = eval_circle(p, r, size_t(2 * p.degree() + 2) * 8);
    for (int k = 0; k < 1000; ++k) {
      double ang = rng.uniform(0.0, 2 * 3.14159265358979323846);
      double mod = std::abs(p.eval(std::polar(r, ang)));
      CHECK(s.certified_min <= mod + 1e-12);
    }
  }
}

TEST_CASE("serial and parallel circle scans agree bitwise") {
  Rng rng(99);
  for (int it = 0; it < 10; ++it) {
    CPoly p = random_cpoly(rng, 8);
    CircleScan a = eval_circle(p, 1.2, 512, ExecMode::parallel);
    CircleScan b = eval_circle(p, 1.2, 512, ExecMode::serial);
    REQUIRE(a.values.size() == b.values.size());
    for (size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
    CHECK(a.min_abs == b.min_abs);
    CHECK(a.certified_min == b.certified_min);
    CHECK(a.argmin_angle == b.argmin_angle);
  }
}

TEST_CASE("polynomial division helpers") {
  // (t - 2)(t + 3) = t^2 + t - 6
  CPoly p(std::vector<cplx>{cplx(-6.0), cplx(1.0), cplx(1.0)});
  auto [q, rem] = p.divide_linear(cplx(2.0));
  CHECK(std::abs(rem) < 1e-14);
  CHECK(q.degree() == 1);
  CHECK(std::abs(q.eval(cplx(-3.0))) < 1e-13);
}
