#pragma once

// QSER1 binary coefficient dump.
//
// Layout: magic "QSER1", modulus (u64 LE), length (u64 LE), width byte w =
// ceil(bitlen(m-1) / 8), then `length` coefficients, each w bytes LE.
// Round-trips must be bit-exact; readers reject anything malformed.

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "etaq/modseries.hpp"

namespace etaq {

inline constexpr char kQserMagic[5] = {'Q', 'S', 'E', 'R', '1'};

inline unsigned qser_coeff_width(u64 modulus) {
    return (std::bit_width(modulus - 1) + 7) / 8;
}

namespace detail {

inline void put_u64_le(std::ostream& os, u64 v, unsigned bytes = 8) {
    for (unsigned i = 0; i < bytes; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline u64 get_u64_le(std::istream& is, unsigned bytes = 8) {
    u64 v = 0;
    for (unsigned i = 0; i < bytes; ++i) {
        int c = is.get();
        if (c == std::char_traits<char>::eof()) throw std::runtime_error("QSER1: truncated stream");
        v |= static_cast<u64>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return v;
}

}  // namespace detail

inline void write_qser(std::ostream& os, const ModSeries& s) {
    os.write(kQserMagic, sizeof(kQserMagic));
    detail::put_u64_le(os, s.modulus());
    detail::put_u64_le(os, s.length());
    const unsigned w = qser_coeff_width(s.modulus());
    os.put(static_cast<char>(w));
    for (u64 c : s.coeffs()) detail::put_u64_le(os, c, w);
    if (!os) throw std::runtime_error("QSER1: write failure");
}

inline ModSeries read_qser(std::istream& is) {
    char magic[5];
    is.read(magic, sizeof(magic));
    if (!is || std::string_view(magic, 5) != std::string_view(kQserMagic, 5))
        throw std::runtime_error("QSER1: magic mismatch");
    const u64 modulus = detail::get_u64_le(is);
    const u64 length = detail::get_u64_le(is);
    if (modulus < 2 || length == 0) throw std::runtime_error("QSER1: invalid header");
    const int w = is.get();
    if (w == std::char_traits<char>::eof()) throw std::runtime_error("QSER1: truncated stream");
    if (static_cast<unsigned>(w) != qser_coeff_width(modulus))
        throw std::runtime_error("QSER1: width byte does not match modulus");
    ModSeries s(modulus, length);
    auto& c = s.coeffs_mut();
    for (u64 i = 0; i < length; ++i) {
        const u64 v = detail::get_u64_le(is, static_cast<unsigned>(w));
        if (v >= modulus) throw std::runtime_error("QSER1: coefficient out of range");
        c[i] = v;
    }
    return s;
}

}  // namespace etaq
