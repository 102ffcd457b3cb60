#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace afflog {

// All scalar arithmetic in the library is exact. There is no floating
// point anywhere in the pipeline. Expression templates are disabled so
// that every operation yields a plain Rational (std::max etc. just work).
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using Integer = boost::multiprecision::cpp_int;

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p/q" or "n" (optionally signed). Throws ParseError on malformed
/// input or a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical rendering: reduced, "p/q" with q > 1, plain integer otherwise.
std::string format_rational(const Rational& r);

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

inline Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace afflog
