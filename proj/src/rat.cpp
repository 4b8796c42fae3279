#include "oscbound/rat.hpp"

namespace oscbound {

Rat parse_decimal_rat(const std::string &s) {
  if (s.empty()) throw std::invalid_argument("empty numeric string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    return Rat(Int(s));
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac_len = s.size() - dot - 1;
  if (frac_len == 0) return Rat(Int(digits));
  Int num(digits);
  Int den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat &q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

void ContentAccumulator::add(const Rat &q) {
  if (q == 0) return;
  Int num = abs(q.get_num());
  Int den = q.get_den();
  if (empty_) {
    num_gcd_ = num;
    den_lcm_ = den;
    empty_ = false;
    return;
  }
  mpz_gcd(num_gcd_.get_mpz_t(), num_gcd_.get_mpz_t(), num.get_mpz_t());
  mpz_lcm(den_lcm_.get_mpz_t(), den_lcm_.get_mpz_t(), den.get_mpz_t());
}

Rat ContentAccumulator::value() const {
  if (empty_) throw std::logic_error("content of all-zero sequence");
  Rat q(num_gcd_, den_lcm_);
  q.canonicalize();
  return q;
}

}  // namespace oscbound
