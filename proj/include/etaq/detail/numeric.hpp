#pragma once

// Scalar modular arithmetic and small factorization helpers shared by the
// series kernel and the eta-quotient bookkeeping.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace etaq {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

namespace detail {

using u128 = unsigned __int128;
using i128 = __int128;

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;  // a, b < m <= 2^63 - 1, no overflow
    return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) {
    return a >= b ? a - b : a + (m - b);
}

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 pow_mod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * a % m);
        a = static_cast<u64>(static_cast<u128>(a) * a % m);
        e >>= 1;
    }
    return r;
}

// Reduce a signed value into [0, m).
inline u64 residue_of(i64 value, u64 m) {
    i64 r = value % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

// Inverse of a modulo m via extended gcd; returns false when gcd(a, m) != 1.
inline bool try_inv_mod(u64 a, u64 m, u64& out) {
    i128 r0 = static_cast<i128>(m), r1 = static_cast<i128>(a % m);
    i128 s0 = 0, s1 = 1;
    while (r1 != 0) {
        i128 q = r0 / r1;
        i128 r2 = r0 - q * r1;
        i128 s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) return false;
    if (s0 < 0) s0 += static_cast<i128>(m);
    out = static_cast<u64>(s0);
    return true;
}

inline u64 inv_mod(u64 a, u64 m) {
    u64 r;
    if (!try_inv_mod(a, m, r)) throw std::domain_error("inv_mod: value is not a unit");
    return r;
}

struct PrimePower {
    u64 prime;
    i64 exponent;
};

// Trial-division factorization; fine for levels and divisors (inputs fit the
// sizes this tool handles, well below 2^40).
inline std::vector<PrimePower> factorize(u64 n) {
    std::vector<PrimePower> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        i64 e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline std::vector<u64> divisors_of(u64 n) {
    std::vector<u64> small, large;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

}  // namespace detail
}  // namespace etaq
