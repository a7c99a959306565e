#pragma once

// Exact integer and rational types for weights, cusp orders and bound
// formulas. Everything downstream of these values gates a mathematical
// claim, so no floating point is used anywhere in the bookkeeping.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace etaq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rational_ceil(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);  // always > 0
    BigInt q = num / den;
    if (num > 0 && q * den != num) ++q;
    return q;
}

inline std::int64_t to_i64(const BigInt& v) {
    if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("value does not fit in 64 bits");
    return v.convert_to<std::int64_t>();
}

inline std::string to_string(const Rational& r) {
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

}  // namespace etaq
