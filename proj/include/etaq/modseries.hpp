#pragma once

// Truncated formal power series over Z/mZ.
//
// A series of length L is known exactly through q^{L-1}; index n holds the
// coefficient of q^n as a residue in [0, m). Binary operations require equal
// moduli and truncate to the shorter operand; nothing ever extends a series,
// so no coefficient is ever fabricated past what both inputs determine.
//
// All operations are pure functions on immutable inputs and are safe to call
// concurrently on shared series.

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "etaq/detail/ntt.hpp"
#include "etaq/detail/numeric.hpp"

namespace etaq {

inline constexpr u64 kMaxModulus = (u64{1} << 63) - 1;

class ModSeries {
public:
    ModSeries(u64 modulus, std::size_t length) : modulus_(modulus), coeffs_(check(modulus, length), 0) {}

    static ModSeries one(u64 modulus, std::size_t length) {
        ModSeries s(modulus, length);
        s.coeffs_[0] = 1 % modulus;
        return s;
    }

    u64 modulus() const { return modulus_; }
    std::size_t length() const { return coeffs_.size(); }

    u64 coeff(std::size_t n) const {
        if (n >= coeffs_.size()) throw std::out_of_range("ModSeries: coefficient index beyond truncation");
        return coeffs_[n];
    }

    void set_coeff(std::size_t n, i64 value) {
        if (n >= coeffs_.size()) throw std::out_of_range("ModSeries: coefficient index beyond truncation");
        coeffs_[n] = detail::residue_of(value, modulus_);
    }

    void add_at(std::size_t n, i64 value) {
        if (n >= coeffs_.size()) throw std::out_of_range("ModSeries: coefficient index beyond truncation");
        coeffs_[n] = detail::add_mod(coeffs_[n], detail::residue_of(value, modulus_), modulus_);
    }

    std::span<const u64> coeffs() const { return coeffs_; }

    // Raw access for kernels and IO; stored values must remain in [0, m).
    std::vector<u64>& coeffs_mut() { return coeffs_; }

    bool is_zero() const {
        for (u64 c : coeffs_)
            if (c) return false;
        return true;
    }

    friend bool operator==(const ModSeries&, const ModSeries&) = default;

private:
    static std::size_t check(u64 modulus, std::size_t length) {
        if (modulus < 2) throw std::invalid_argument("ModSeries: modulus must be at least 2");
        if (modulus > kMaxModulus) throw std::invalid_argument("ModSeries: modulus exceeds 2^63 - 1");
        if (length == 0) throw std::invalid_argument("ModSeries: zero-length series is rejected");
        return length;
    }

    u64 modulus_;
    std::vector<u64> coeffs_;
};

// Arithmetic progression {n : n = r (mod t)}, 0 <= r < t.
struct ProgressionSelector {
    u64 step;
    u64 residue;

    ProgressionSelector(u64 t, u64 r) : step(t), residue(r) {
        if (t == 0) throw std::invalid_argument("ProgressionSelector: step must be positive");
        if (r >= t) throw std::invalid_argument("ProgressionSelector: residue must satisfy 0 <= r < step");
    }

    friend bool operator==(const ProgressionSelector&, const ProgressionSelector&) = default;
};

namespace detail {

inline void require_same_modulus(const ModSeries& a, const ModSeries& b) {
    if (a.modulus() != b.modulus()) throw std::invalid_argument("ModSeries: modulus mismatch");
}

// First out_len coefficients of the product, schoolbook path.
inline std::vector<u64> convolve_schoolbook(const u64* a, std::size_t len_a,
                                            const u64* b, std::size_t len_b,
                                            u64 m, std::size_t out_len) {
    std::vector<u64> out(out_len, 0);
    for (std::size_t i = 0; i < len_a && i < out_len; ++i) {
        if (a[i] == 0) continue;
        const std::size_t jmax = std::min(len_b, out_len - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], m), m);
        }
    }
    return out;
}

inline constexpr std::size_t kSchoolbookCutoff = 64;

inline std::vector<u64> convolve_auto(const u64* a, std::size_t len_a,
                                      const u64* b, std::size_t len_b,
                                      u64 m, std::size_t out_len) {
    if (std::min(len_a, len_b) <= kSchoolbookCutoff || out_len <= kSchoolbookCutoff)
        return convolve_schoolbook(a, len_a, b, len_b, m, out_len);
    return convolve_mod(a, len_a, b, len_b, m, out_len);
}

// Newton iteration for the reciprocal series: g <- g(2 - fg), doubling the
// number of correct coefficients each round. Valid over Z/mZ for any m as
// long as f[0] is a unit.
inline std::vector<u64> invert_newton(const u64* f, std::size_t len, u64 m) {
    u64 g0;
    if (!try_inv_mod(f[0], m, g0))
        throw std::domain_error("invert: constant term is not a unit mod m");

    std::vector<u64> g{g0};
    const u64 two = 2 % m;
    while (g.size() < len) {
        const std::size_t next = std::min(g.size() * 2, len);
        std::vector<u64> t = convolve_auto(f, std::min(len, next), g.data(), g.size(), m, next);
        t.resize(next, 0);
        for (auto& c : t) c = c ? m - c : 0;
        t[0] = add_mod(t[0], two, m);
        g = convolve_auto(g.data(), g.size(), t.data(), t.size(), m, next);
        g.resize(next, 0);
    }
    return g;
}

}  // namespace detail

enum class MulAlgorithm { automatic, schoolbook, transform };

inline ModSeries make_series(u64 modulus, std::size_t length,
                             std::span<const std::pair<std::size_t, i64>> entries) {
    ModSeries s(modulus, length);
    for (const auto& [exponent, value] : entries) {
        if (exponent >= length) throw std::out_of_range("make_series: exponent out of range");
        s.add_at(exponent, value);
    }
    return s;
}

inline ModSeries make_series(u64 modulus, std::size_t length,
                             std::initializer_list<std::pair<std::size_t, i64>> entries) {
    return make_series(modulus, length, std::span<const std::pair<std::size_t, i64>>(entries.begin(), entries.size()));
}

inline ModSeries add(const ModSeries& a, const ModSeries& b) {
    detail::require_same_modulus(a, b);
    const std::size_t n = std::min(a.length(), b.length());
    ModSeries out(a.modulus(), n);
    auto& c = out.coeffs_mut();
    for (std::size_t i = 0; i < n; ++i)
        c[i] = detail::add_mod(a.coeffs()[i], b.coeffs()[i], a.modulus());
    return out;
}

inline ModSeries mul(const ModSeries& a, const ModSeries& b,
                     MulAlgorithm algo = MulAlgorithm::automatic) {
    detail::require_same_modulus(a, b);
    const std::size_t n = std::min(a.length(), b.length());
    std::vector<u64> c;
    switch (algo) {
        case MulAlgorithm::schoolbook:
            c = detail::convolve_schoolbook(a.coeffs().data(), n, b.coeffs().data(), n, a.modulus(), n);
            break;
        case MulAlgorithm::transform:
            c = detail::convolve_mod(a.coeffs().data(), n, b.coeffs().data(), n, a.modulus(), n);
            break;
        case MulAlgorithm::automatic:
            c = detail::convolve_auto(a.coeffs().data(), n, b.coeffs().data(), n, a.modulus(), n);
            break;
    }
    c.resize(n, 0);
    ModSeries out(a.modulus(), n);
    out.coeffs_mut() = std::move(c);
    return out;
}

/// Reciprocal series at the input's truncation; requires a unit constant term
/// (for composite m: gcd(a[0], m) = 1).
inline ModSeries invert(const ModSeries& a) {
    std::vector<u64> g = detail::invert_newton(a.coeffs().data(), a.length(), a.modulus());
    ModSeries out(a.modulus(), a.length());
    out.coeffs_mut() = std::move(g);
    return out;
}

inline ModSeries pow(const ModSeries& a, i64 exponent) {
    if (exponent == 0) return ModSeries::one(a.modulus(), a.length());
    if (exponent < 0) {
        if (exponent == std::numeric_limits<i64>::min())
            throw std::invalid_argument("pow: exponent out of range");
        return invert(pow(a, -exponent));
    }
    // binary powering, truncated to the input length throughout
    ModSeries result = a;
    int top = 63;
    while (((exponent >> top) & 1) == 0) --top;
    for (int bit = top - 1; bit >= 0; --bit) {
        result = mul(result, result);
        if ((exponent >> bit) & 1) result = mul(result, a);
    }
    return result;
}

/// Multiply by q^s; length is preserved, coefficients pushed past the
/// truncation are dropped.
inline ModSeries shift(const ModSeries& a, u64 s) {
    ModSeries out(a.modulus(), a.length());
    auto& c = out.coeffs_mut();
    for (std::size_t i = s; i < a.length(); ++i) c[i] = a.coeffs()[i - s];
    return out;
}

/// f_{r,t}: keep coefficients at exponents = r (mod t), zero the rest.
/// Exponent positions are preserved.
inline ModSeries sieve(const ModSeries& a, const ProgressionSelector& sel) {
    ModSeries out(a.modulus(), a.length());
    auto& c = out.coeffs_mut();
    for (std::size_t i = sel.residue; i < a.length(); i += sel.step) c[i] = a.coeffs()[i];
    return out;
}

/// U(t): coefficient n of the result is coefficient t*n of the input.
/// Result length is ceil(L / t).
inline ModSeries u_operator(const ModSeries& a, u64 t) {
    if (t == 0) throw std::invalid_argument("u_operator: t must be positive");
    const std::size_t n = (a.length() + t - 1) / t;
    ModSeries out(a.modulus(), n);
    auto& c = out.coeffs_mut();
    for (std::size_t i = 0; i < n; ++i) c[i] = a.coeffs()[i * t];
    return out;
}

/// l-adic order within the truncation: the smallest exponent whose
/// coefficient is nonzero mod l, or nullopt when every stored coefficient
/// vanishes mod l ("infinite within truncation"). Requires l = m or l | m so
/// residues mod m determine residues mod l.
inline std::optional<std::size_t> ord_mod(const ModSeries& a, u64 l) {
    if (l < 2) throw std::invalid_argument("ord_mod: l must be at least 2");
    if (a.modulus() % l != 0) throw std::invalid_argument("ord_mod: l must divide the series modulus");
    for (std::size_t i = 0; i < a.length(); ++i)
        if (a.coeffs()[i] % l != 0) return i;
    return std::nullopt;
}

}  // namespace etaq
