#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace multsec {

// Exact rational scalar. Always stored in lowest terms with positive
// denominator (maintained by the backing type).
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Parses "p" or "p/q" with optional sign. q must be nonzero.
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
}

inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace multsec
