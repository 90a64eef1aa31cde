#ifndef CTXLAB_RATIONAL_HPP
#define CTXLAB_RATIONAL_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "ctxlab/errors.hpp"

namespace ctxlab {

// All probabilities in the library are exact rationals.  Verdicts are
// knife-edge polytope memberships, so there is no floating point anywhere.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

// Canonical wire format is always "numerator/denominator", e.g. "3/4",
// "-1/2", "0/1", with the sign on the numerator and the fraction reduced.
inline std::string to_fraction(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

namespace detail {
inline bool is_integer_token(std::string_view text, bool allow_sign) {
    if (allow_sign && !text.empty() && text.front() == '-') text.remove_prefix(1);
    if (text.empty()) return false;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}
} // namespace detail

// Accepts "n/d" or a bare integer "n".  The result is reduced on construction
// (the GMP backend does not canonicalize strings like "2/4" by itself, so we
// build numerator and denominator separately and divide).
inline Rational parse_fraction(std::string_view text) {
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!detail::is_integer_token(num, /*allow_sign=*/true)) {
        throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
    }
    Rational value{Integer(std::string(num))};
    if (slash != std::string_view::npos) {
        std::string_view den = text.substr(slash + 1);
        if (!detail::is_integer_token(den, /*allow_sign=*/false)) {
            throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
        }
        Integer d{std::string(den)};
        if (d == 0) {
            throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        }
        value /= Rational(d);
    }
    return value;
}

} // namespace ctxlab

#endif // CTXLAB_RATIONAL_HPP
