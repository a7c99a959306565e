#pragma once

// Three-colored generalized Frobenius partitions.
//
// cphi3(n) counts symbols with two equal-length rows of distinct colored
// nonnegative integers (three fully symmetric colors, rows independent),
// weight = row length + both row sums. Its generating function is
//
//     sum_n p(n/3) q^n  +  9 q prod (1-q^{9n})^3 / ((1-q^{3n})(1-q^n)^3)
//
// with p(x) = 0 unless x is a nonnegative integer. This module carries the
// series builder, an enumeration oracle that is independent of all series
// machinery, and the term-by-term decomposition of cphi3(45n + j) into
// a(.)-values via the cube form of Jacobi's identity.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "etaq/certifier.hpp"
#include "etaq/eta.hpp"
#include "etaq/modseries.hpp"
#include "etaq/rational.hpp"

namespace etaq {

/// Exact p(0..nmax) by the classic dynamic program over part sizes.
/// Deliberately independent of the series kernel so it can act as its oracle.
inline std::vector<BigInt> partition_oracle(std::size_t nmax) {
    std::vector<BigInt> p(nmax + 1, 0);
    p[0] = 1;
    for (std::size_t part = 1; part <= nmax; ++part)
        for (std::size_t n = part; n <= nmax; ++n) p[n] += p[n - part];
    return p;
}

/// Coefficients a(n) of 1 / prod (1-q^{3n})(1-q^n)^3, with a(0) = 1.
inline ModSeries a_series(u64 modulus, std::size_t length) {
    return invert(mul(pentagonal_series(3, modulus, length), jacobi_cube_series(1, modulus, length)));
}

/// Generating series of cphi3: p(n/3)-part plus 9 q jac^3(q^9) * a-series.
inline ModSeries cphi3_series(u64 modulus, std::size_t length) {
    ModSeries out = invert(pentagonal_series(3, modulus, length));  // sum p(m) q^{3m}
    const ModSeries tail = mul(jacobi_cube_series(9, modulus, length), a_series(modulus, length));
    auto& c = out.coeffs_mut();
    const u64 nine = 9 % modulus;
    for (std::size_t n = 1; n < length; ++n)
        c[n] = detail::add_mod(c[n], detail::mul_mod(nine, tail.coeffs()[n - 1], modulus), modulus);
    return out;
}

// One colored entry of a symbol row.
struct ColoredPart {
    u32 value;
    u32 color;  // 0, 1, 2
    friend auto operator<=>(const ColoredPart&, const ColoredPart&) = default;
};

struct FrobeniusSymbol {
    std::vector<ColoredPart> top;
    std::vector<ColoredPart> bottom;

    bool valid() const {
        if (top.size() != bottom.size()) return false;
        auto distinct = [](const std::vector<ColoredPart>& row) {
            for (std::size_t i = 0; i < row.size(); ++i)
                for (std::size_t j = i + 1; j < row.size(); ++j)
                    if (row[i] == row[j]) return false;
            return true;
        };
        return distinct(top) && distinct(bottom);
    }

    u64 weight() const {
        u64 w = top.size();
        for (const auto& e : top) w += e.value;
        for (const auto& e : bottom) w += e.value;
        return w;
    }
};

namespace detail {

// row_counts[{r, s}] = number of size-r sets of colored nonnegative integers
// with value-sum s <= nmax, enumerated explicitly.
inline std::map<std::pair<u32, u32>, u64> frobenius_row_counts(u32 nmax) {
    std::map<std::pair<u32, u32>, u64> counts;
    std::vector<ColoredPart> elems;
    for (u32 v = 0; v <= nmax; ++v)
        for (u32 c = 0; c < 3; ++c) elems.push_back({v, c});

    // DFS over index-ordered subsets; sets, not multisets, by construction
    auto dfs = [&](auto&& self, std::size_t start, u32 size, u32 sum) -> void {
        ++counts[{size, sum}];
        for (std::size_t i = start; i < elems.size(); ++i)
            if (sum + elems[i].value <= nmax) self(self, i + 1, size + 1, sum + elems[i].value);
    };
    dfs(dfs, 0, 0, 0);
    return counts;
}

}  // namespace detail

/// Count three-colored Frobenius symbols of weight n by explicit row
/// enumeration. Superexponential in n; refuses n beyond the budget.
inline u64 cphi3_bruteforce(u32 n, u32 budget = 14) {
    if (n > budget) throw std::invalid_argument("cphi3_bruteforce: n exceeds the enumeration budget");
    const auto rows = detail::frobenius_row_counts(n);
    u64 total = 0;
    for (const auto& [key, count_top] : rows) {
        const auto [r, s1] = key;
        if (r + s1 > n) continue;
        const u32 s2 = n - r - s1;
        auto it = rows.find({r, s2});
        if (it != rows.end()) total += count_top * it->second;
    }
    return total;
}

enum class VanishingReason {
    factor_divisible_by_5,
    a_term_class_6_mod_15,
    a_term_class_12_mod_15,
    a_term_out_of_range,
};

inline std::string_view to_string(VanishingReason r) {
    switch (r) {
        case VanishingReason::factor_divisible_by_5: return "factor-divisible-by-5";
        case VanishingReason::a_term_class_6_mod_15: return "a-term-in-class-6-mod-15";
        case VanishingReason::a_term_class_12_mod_15: return "a-term-in-class-12-mod-15";
        case VanishingReason::a_term_out_of_range: return "a-term-out-of-range";
    }
    return "unknown";
}

// One term of cphi3(45n + j) = 9 sum_k (-1)^k (2k+1) a(45n + j - t(k)),
// t(k) = 1 + 9k(k+1)/2.
struct JacobiTermRecord {
    u64 k;
    int sign;                 // (-1)^k
    u64 factor;               // 2k + 1
    u64 exponent_shift;       // t(k)
    u32 residue_class_mod45;  // t(k) mod 45, always 1, 10 or 28
    u64 a_index;              // 45n + j - t(k)
    VanishingReason reason;
};

struct JacobiDecomposition {
    u64 target_exponent;  // 45n + j
    std::vector<JacobiTermRecord> terms;
    u64 recomposed_value;  // 9 sum (-1)^k (2k+1) a(index), mod the working modulus
    u64 series_value;      // cphi3 coefficient at the target exponent
    bool matches;
};

/// Decompose cphi3(45n + j), j in {7, 22, 37}, into a(.)-terms and classify
/// why each term vanishes mod 5: either 5 | (2k+1) (exactly the class-28
/// shifts, k = 2 mod 5) or the a-index lands in class 6 or 12 mod 15. There
/// is no fourth case.
inline JacobiDecomposition jacobi_decomposition(u32 j, u64 n, const ModSeries& a) {
    if (j != 7 && j != 22 && j != 37)
        throw std::invalid_argument("jacobi_decomposition: j must be 7, 22 or 37");
    const u64 target = 45 * n + j;
    if (a.length() < target)
        throw std::out_of_range("jacobi_decomposition: a-series too short (index out of series range)");

    const u64 m = a.modulus();
    JacobiDecomposition out{target, {}, 0, 0, false};
    u64 acc = 0;
    for (u64 k = 0;; ++k) {
        const u64 t = 1 + 9 * k * (k + 1) / 2;
        if (t > target) break;
        JacobiTermRecord rec{};
        rec.k = k;
        rec.sign = (k % 2 == 0) ? 1 : -1;
        rec.factor = 2 * k + 1;
        rec.exponent_shift = t;
        rec.residue_class_mod45 = static_cast<u32>(t % 45);
        rec.a_index = target - t;
        if (rec.residue_class_mod45 == 28) {
            rec.reason = VanishingReason::factor_divisible_by_5;
        } else if (rec.a_index % 15 == 6) {
            rec.reason = VanishingReason::a_term_class_6_mod_15;
        } else if (rec.a_index % 15 == 12) {
            rec.reason = VanishingReason::a_term_class_12_mod_15;
        } else {
            throw std::logic_error("jacobi_decomposition: term outside the three vanishing cases");
        }
        const u64 term = detail::mul_mod(rec.factor % m, a.coeffs()[rec.a_index], m);
        acc = rec.sign > 0 ? detail::add_mod(acc, term, m) : detail::sub_mod(acc, term, m);
        out.terms.push_back(rec);
    }
    out.recomposed_value = detail::mul_mod(9 % m, acc, m);
    out.series_value = cphi3_series(m, target + 1).coeff(target);
    out.matches = (out.recomposed_value == out.series_value);
    return out;
}

/// t(k) mod 45 for k = 0..kmax. The image is {1, 10, 28} and depends only on
/// k mod 5, with pattern 1, 10, 28, 10, 1.
inline std::vector<u32> residue_classification(u64 kmax) {
    static constexpr std::array<u32, 5> pattern = {1, 10, 28, 10, 1};
    std::vector<u32> out;
    out.reserve(kmax + 1);
    for (u64 k = 0; k <= kmax; ++k) {
        const detail::u128 t = 1 + static_cast<detail::u128>(9) * k * (k + 1) / 2;
        const u32 cls = static_cast<u32>(t % 45);
        if (cls != pattern[k % 5])
            throw std::logic_error("residue_classification: period-5 pattern violated");
        out.push_back(cls);
    }
    return out;
}

struct Theorem12Verification {
    std::array<CongruenceClaim, 3> claims;  // selectors (45,7), (45,22), (45,37)
    u64 decomposition_checked_upto = 0;     // decompositions run for n = 0..this
    bool decomposition_consistent = false;
};

/// Scan cphi3(45n + j) = 0 (mod l) for j in {7, 22, 37} and n <= nmax, then
/// replay the decomposition case analysis termwise for n <= min(nmax, 50).
inline Theorem12Verification verify_theorem_1_2(u64 nmax, u64 l = 5,
                                                const ProgressCallback& progress = {}) {
    const std::size_t length = 45 * nmax + 38;
    const ModSeries series = cphi3_series(l, length);
    Theorem12Verification out{
        {verify_progression(series, ProgressionSelector(45, 7), l, nmax + 1, progress),
         verify_progression(series, ProgressionSelector(45, 22), l, nmax + 1, progress),
         verify_progression(series, ProgressionSelector(45, 37), l, nmax + 1, progress)},
        0,
        true};
    out.claims[0].source = "cphi3(n)";
    out.claims[1].source = "cphi3(n)";
    out.claims[2].source = "cphi3(n)";

    const u64 deco_max = std::min<u64>(nmax, 50);
    const ModSeries a = a_series(l, 45 * deco_max + 38);
    for (u64 n = 0; n <= deco_max; ++n) {
        for (u32 j : {7u, 22u, 37u}) {
            const JacobiDecomposition d = jacobi_decomposition(j, n, a);
            if (!d.matches) out.decomposition_consistent = false;
        }
    }
    out.decomposition_checked_upto = deco_max;
    return out;
}

}  // namespace etaq
