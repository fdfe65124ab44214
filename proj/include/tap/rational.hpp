#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace tap {

using BigInt = boost::multiprecision::cpp_int;

// All times and rewards are exact rationals. The backend keeps values in
// canonical reduced form, so operator== is structural equality and there is
// no tolerance anywhere in the solver.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Canonical text form: "p" when the value is integral, "p/q" otherwise.
inline std::string format_rational(const Rational& r) {
  std::ostringstream out;
  out << rat_num(r);
  if (rat_den(r) != 1) out << '/' << rat_den(r);
  return out.str();
}

// Short decimal rendering used next to the exact form in logs and CSV.
inline std::string format_decimal(const Rational& r) {
  std::ostringstream out;
  out.precision(12);
  out << to_double(r);
  return out.str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline BigInt digits_to_int(std::string_view s) {
  BigInt v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace detail

// Accepts integers ("8", "-3"), fractions ("7/10", "-1/3") and plain decimal
// notation ("0.25", "1.5", "4."). Returns nullopt for anything else,
// including zero denominators.
inline std::optional<Rational> parse_rational(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) return std::nullopt;
    BigInt d = detail::digits_to_int(den);
    if (d == 0) return std::nullopt;
    value = Rational(detail::digits_to_int(num), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !detail::all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !detail::all_digits(frac)) return std::nullopt;
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt num = detail::digits_to_int(whole.empty() ? std::string_view("0") : whole) * scale +
                 (frac.empty() ? BigInt(0) : detail::digits_to_int(frac));
    value = Rational(num, scale);
  } else {
    if (!detail::all_digits(text)) return std::nullopt;
    value = Rational(detail::digits_to_int(text));
  }
  if (negative) value = -value;
  return value;
}

}  // namespace tap
