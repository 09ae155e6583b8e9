#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace snlab {

// All arithmetic in this project is exact. Integers and rationals are
// GMP-backed so determinants, Smith pivots and LP pivots never overflow.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;
using ZVec = std::vector<Int>;
using ZMat = std::vector<ZVec>;

// Parses "p" or "p/q" (q a positive integer literal). Throws SyntaxError on
// anything else, including q == 0.
Rat parse_rat(const std::string& tok);

// Reduced text form: "p" when the denominator is 1, otherwise "p/q".
std::string format_rat(const Rat& r);

// Same value, but always with an explicit denominator ("3/1"). Used by the
// surface file writer, whose weight tokens are documented as p/q.
std::string format_rat_frac(const Rat& r);

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace snlab
