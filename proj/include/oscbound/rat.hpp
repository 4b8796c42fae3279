#pragma once

// Arbitrary-precision integer/rational helpers on top of GMP's C++ classes.
// All exact coefficient arithmetic in the library goes through these types.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace oscbound {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat_abs(const Rat &q) { return q < 0 ? Rat(-q) : q; }

inline bool is_integer(const Rat &q) { return q.get_den() == 1; }

// Parses a decimal string ("-3", "1.25", "0"), optionally a plain fraction
// "p/q", into an exact rational. Scientific notation is not accepted.
Rat parse_decimal_rat(const std::string &s);

// Renders a rational as a decimal string when the denominator is 1,
// otherwise as "num/den". Inverse of parse_decimal_rat on its image.
std::string rat_to_string(const Rat &q);

// gcd(|numerators|)/lcm(denominators): the positive rational content factor
// such that dividing by it leaves a primitive integer-coefficient sequence.
class ContentAccumulator {
 public:
  void add(const Rat &q);
  bool empty() const { return empty_; }
  Rat value() const;  // throws if empty

 private:
  Int num_gcd_ = 0;
  Int den_lcm_ = 1;
  bool empty_ = true;
};

}  // namespace oscbound
