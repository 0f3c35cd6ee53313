#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "stackamb/errors.hpp"

namespace stackamb {

// All payoffs and probabilities are exact rationals.  cpp_rational keeps the
// value in lowest terms with a positive denominator, which is exactly the
// representation invariant we need; no floating point enters the solver core.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int rat_sign(const Rat& r) { return r.sign(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

// Parses an exact rational literal.  Accepted forms:
//   integers        "3", "-17", "+4"
//   fractions       "a/b" with integer a, b and b != 0
//   finite decimals "0.5", "-12.25"  (converted with a power-of-ten
//                   denominator, never binary-rounded)
inline Rat parse_rational(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw SyntaxError("empty rational literal");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    bool den_negative = false;
    if (!den.empty() && (den.front() == '+' || den.front() == '-')) {
      den_negative = den.front() == '-';
      den.remove_prefix(1);
    }
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw SyntaxError("malformed fraction '" + std::string(text) + "'");
    Int n{std::string(num)};
    Int d{std::string(den)};
    if (d == 0) throw SyntaxError("zero denominator in '" + std::string(text) + "'");
    Rat r(n, d);
    if (negative != den_negative) r = -r;
    return r;
  }

  auto dot = s.find('.');
  if (dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (!detail::all_digits(whole) || !detail::all_digits(frac))
      throw SyntaxError("malformed decimal '" + std::string(text) + "'");
    Int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Int n = Int{std::string(whole)} * scale + Int{std::string(frac)};
    Rat r(n, scale);
    return negative ? Rat(-r) : r;
  }

  if (!detail::all_digits(s))
    throw SyntaxError("malformed rational '" + std::string(text) + "'");
  Rat r{Int{std::string(s)}};
  return negative ? Rat(-r) : r;
}

// Canonical machine form: "a" for integers, "a/b" otherwise.
inline std::string to_fraction_string(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

// Approximate decimal rendering for human-readable tables.  Exactness lives
// only in the fraction form.
inline std::string to_decimal_string(const Rat& r) {
  double d = r.convert_to<double>();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", d);
  return buf;
}

inline std::string format_vector(const std::vector<Rat>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_fraction_string(v[i]);
  }
  out += ")";
  return out;
}

}  // namespace stackamb
