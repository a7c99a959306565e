#pragma once

// Exact convolution backend for ModSeries multiplication.
//
// The product of two coefficient blocks with entries < m is computed as an
// integer convolution via number-theoretic transforms over a table of 32-bit
// primes, then reduced mod m. No-overflow requirement: every convolution
// coefficient is bounded by
//
//     min(len_a, len_b) * (m - 1)^2,
//
// so the selected prime product must exceed that bound. Primes are chosen per
// call from kNttPrimes until the bound is covered; with m < 2^63 and lengths
// up to 2^25 per operand the six table entries always suffice.

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "etaq/detail/numeric.hpp"

namespace etaq::detail {

struct NttPrime {
    u32 mod;
    u32 generator;  // quadratic nonresidue: g^((p-1)/2^s) has exact order 2^s
    int max_log2;   // 2^max_log2 divides p - 1
};

// Ordered by transform capacity so that any prefix of the table supports the
// same maximum length as its last element.
inline constexpr std::array<NttPrime, 6> kNttPrimes = {{
    {3221225473u, 5u, 30},   //  3 * 2^30 + 1
    {3489660929u, 3u, 28},   // 13 * 2^28 + 1
    {3892314113u, 3u, 27},   // 29 * 2^27 + 1
    {2013265921u, 31u, 27},  // 15 * 2^27 + 1
    {2281701377u, 3u, 27},   // 17 * 2^27 + 1
    {1811939329u, 13u, 26},  // 27 * 2^26 + 1
}};

constexpr bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s && witness; ++i) {
            x = static_cast<u64>(static_cast<u128>(x) * x % n);
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

constexpr bool ntt_table_is_valid() {
    for (const auto& pr : kNttPrimes) {
        if (!is_prime_u64(pr.mod)) return false;
        if (((pr.mod - 1) >> pr.max_log2) << pr.max_log2 != pr.mod - 1) return false;
        if (pow_mod(pr.generator, (pr.mod - 1) / 2, pr.mod) != pr.mod - 1) return false;
    }
    return true;
}
static_assert(ntt_table_is_valid(), "NTT prime table failed compile-time verification");

// Montgomery arithmetic mod an odd 32-bit prime, R = 2^32.
class Mont32 {
public:
    explicit Mont32(u32 mod)
        : mod_(mod),
          ninv_(compute_ninv(mod)),
          r2_(static_cast<u64>((static_cast<u128>(1) << 64) % mod)),
          one_(static_cast<u32>((static_cast<u64>(1) << 32) % mod)) {}

    u32 mod() const { return mod_; }
    u32 one() const { return one_; }
    u32 to(u64 x) const { return mul(static_cast<u32>(x % mod_), static_cast<u32>(r2_ % mod_)); }
    u32 from(u32 x) const { return redc(x); }
    u32 mul(u32 a, u32 b) const { return redc(static_cast<u64>(a) * b); }

    u32 add(u32 a, u32 b) const {
        u64 s = static_cast<u64>(a) + b;
        if (s >= mod_) s -= mod_;
        return static_cast<u32>(s);
    }
    u32 sub(u32 a, u32 b) const {
        return a >= b ? a - b : static_cast<u32>(static_cast<u64>(a) + mod_ - b);
    }

    u32 pow(u32 a, u64 e) const {
        u32 r = one_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u32 inv(u32 a) const { return pow(a, mod_ - 2); }

private:
    static constexpr u32 compute_ninv(u32 mod) {
        u32 inv = mod;  // correct mod 2^3 for odd mod; Newton doubles precision
        for (int i = 0; i < 4; ++i) inv *= 2 - mod * inv;
        return ~inv + 1;  // -mod^{-1} mod 2^32
    }

    u32 redc(u64 t) const {
        u32 m = static_cast<u32>(t) * ninv_;
        u64 mp = static_cast<u64>(m) * mod_;
        // t + mp == 0 mod 2^32; reconstruct the high word with the carry
        u64 r = (t >> 32) + (mp >> 32) + (((t & 0xffffffffu) + (mp & 0xffffffffu)) >> 32);
        if (r >= mod_) r -= mod_;
        return static_cast<u32>(r);
    }

    u32 mod_;
    u32 ninv_;
    u64 r2_;
    u32 one_;
};

// In-place iterative Cooley-Tukey transform; a.size() must be a power of two
// not exceeding the prime's capacity. Values are in Montgomery form.
inline void ntt(std::vector<u32>& a, bool inverse, const Mont32& M, u32 generator) {
    const std::size_t n = a.size();
    if (n <= 1) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const u32 p = M.mod();
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 exponent = (p - 1) / len;
        if (inverse) exponent = (p - 1) - exponent;
        const u32 wlen = M.pow(M.to(generator), exponent);
        const std::size_t half = len >> 1;
        for (std::size_t i = 0; i < n; i += len) {
            u32 w = M.one();
            for (std::size_t j = 0; j < half; ++j) {
                const u32 u = a[i + j];
                const u32 v = M.mul(w, a[i + j + half]);
                a[i + j] = M.add(u, v);
                a[i + j + half] = M.sub(u, v);
                w = M.mul(w, wlen);
            }
        }
    }

    if (inverse) {
        const u32 inv_n = M.inv(M.to(static_cast<u64>(n)));
        for (auto& x : a) x = M.mul(x, inv_n);
    }
}

// Number of table primes required so that their product exceeds
// min_len * (modulus - 1)^2. Conservative comparison in bit lengths: the
// bound is < 2^(bw(min_len) + 2 bw(m-1)) and each prime is >= 2^(bw(p)-1).
inline int primes_needed(std::size_t min_len, u64 modulus) {
    const int need = std::bit_width(static_cast<u64>(min_len)) +
                     2 * std::bit_width(modulus - 1);
    int have = 0;
    for (std::size_t i = 0; i < kNttPrimes.size(); ++i) {
        have += std::bit_width(static_cast<u64>(kNttPrimes[i].mod)) - 1;
        if (have >= need) return static_cast<int>(i) + 1;
    }
    throw std::length_error("convolution bound exceeds the CRT prime table");
}

// Exact convolution of (a, len_a) and (b, len_b) with entries < m, reduced
// mod m; only the first out_len coefficients are returned.
inline std::vector<u64> convolve_mod(const u64* a, std::size_t len_a,
                                     const u64* b, std::size_t len_b,
                                     u64 m, std::size_t out_len) {
    const std::size_t full = len_a + len_b - 1;
    if (out_len > full) out_len = full;
    const std::size_t n = std::size_t{1} << std::bit_width(full - 1);

    const int k = primes_needed(std::min(len_a, len_b), m);
    if (static_cast<int>(std::bit_width(n)) - 1 > kNttPrimes[static_cast<std::size_t>(k) - 1].max_log2)
        throw std::length_error("series too long for the transform backend");

    std::vector<std::vector<u32>> residues(static_cast<std::size_t>(k));
    for (int pi = 0; pi < k; ++pi) {
        const NttPrime pr = kNttPrimes[static_cast<std::size_t>(pi)];
        const Mont32 M(pr.mod);
        std::vector<u32> fa(n, 0), fb(n, 0);
        for (std::size_t i = 0; i < len_a; ++i) fa[i] = M.to(a[i]);
        for (std::size_t i = 0; i < len_b; ++i) fb[i] = M.to(b[i]);
        ntt(fa, false, M, pr.generator);
        ntt(fb, false, M, pr.generator);
        for (std::size_t i = 0; i < n; ++i) fa[i] = M.mul(fa[i], fb[i]);
        fb.clear();
        fb.shrink_to_fit();
        ntt(fa, true, M, pr.generator);
        fa.resize(out_len);
        for (auto& x : fa) x = M.from(x);
        residues[static_cast<std::size_t>(pi)] = std::move(fa);
    }

    std::vector<u64> out(out_len);
    if (k == 1) {
        // the convolution bound fits below the prime: residues are the exact values
        for (std::size_t i = 0; i < out_len; ++i) out[i] = residues[0][i] % m;
        return out;
    }

    // Garner mixed-radix reconstruction, x = sum_j digit_j * (p_0 ... p_{j-1}),
    // accumulated directly mod m. prefprod[i][j] = p_0 ... p_{j-1} mod p_i.
    const auto K = static_cast<std::size_t>(k);
    std::vector<std::vector<u64>> prefprod(K, std::vector<u64>(K, 0));
    std::vector<u64> inv_prefix(K), prefix_mod_m(K);
    for (std::size_t i = 0; i < K; ++i) {
        const u64 pi = kNttPrimes[i].mod;
        u64 prod = 1 % pi;
        for (std::size_t j = 0; j <= i; ++j) {
            prefprod[i][j] = prod;
            if (j < i) prod = mul_mod(prod, kNttPrimes[j].mod % pi, pi);
        }
        inv_prefix[i] = inv_mod(prod, pi);
        u64 pm = 1 % m;
        for (std::size_t j = 0; j < i; ++j) pm = mul_mod(pm, kNttPrimes[j].mod % m, m);
        prefix_mod_m[i] = pm;
    }

    std::vector<u64> digit(K);
    for (std::size_t idx = 0; idx < out_len; ++idx) {
        u64 acc_m = 0;
        for (std::size_t i = 0; i < K; ++i) {
            const u64 pi = kNttPrimes[i].mod;
            u64 v = 0;
            for (std::size_t j = 0; j < i; ++j)
                v = add_mod(v, mul_mod(digit[j] % pi, prefprod[i][j], pi), pi);
            const u64 r = residues[i][idx] % pi;
            digit[i] = mul_mod(sub_mod(r, v, pi), inv_prefix[i], pi);
            acc_m = add_mod(acc_m, mul_mod(digit[i] % m, prefix_mod_m[i], m), m);
        }
        out[idx] = acc_m;
    }
    return out;
}

}  // namespace etaq::detail
