#ifndef WEBSK_NUMERIC_HPP
#define WEBSK_NUMERIC_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "websk/error.hpp"

namespace websk {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Parses "p", "-p" or "p/q" exactly.
inline Rational parse_rational(std::string_view s) {
  auto parse_int = [&](std::string_view part) {
    if (part.empty()) throw InputError("malformed rational '" + std::string(s) + "'");
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) throw InputError("malformed rational '" + std::string(s) + "'");
    for (std::size_t k = i; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9') throw InputError("malformed rational '" + std::string(s) + "'");
    Integer v(std::string(part.substr(i)));
    return part[0] == '-' ? Integer(-v) : v;
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  Integer den = parse_int(s.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
  return Rational(parse_int(s.substr(0, slash)), den);
}

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Parses an optionally signed decimal integer.
inline Integer parse_integer(std::string_view s) {
  Rational r = parse_rational(s);
  if (s.find('/') != std::string_view::npos) throw InputError("expected an integer, got '" + std::string(s) + "'");
  return numerator(r);
}

}  // namespace websk

#endif  // WEBSK_NUMERIC_HPP
