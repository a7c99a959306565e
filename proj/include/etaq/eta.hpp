#pragma once

// Eta-quotients: representation, sparse q-expansion, and the arithmetic
// conditions (Gordon-Ligozat) plus cusp vanishing orders (Ligozat's formula)
// that gate their use as holomorphic modular forms.
//
// Holomorphy is reported, never assumed: a negative computed cusp order marks
// the quotient as not holomorphic by the cusp-order criterion while leaving
// expansion and congruence scanning fully usable.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etaq/detail/numeric.hpp"
#include "etaq/modseries.hpp"
#include "etaq/rational.hpp"

namespace etaq {

// Finite product over divisors delta | N of eta(delta z)^{r_delta}.
// Divisors with zero exponent are dropped; at least one must remain.
class EtaQuotient {
public:
    EtaQuotient(u64 level, std::map<u64, i64> exponents) : level_(level), exponents_(std::move(exponents)) {
        if (level_ == 0) throw std::invalid_argument("EtaQuotient: level must be positive");
        std::erase_if(exponents_, [](const auto& kv) { return kv.second == 0; });
        if (exponents_.empty()) throw std::invalid_argument("EtaQuotient: at least one exponent must be nonzero");
        for (const auto& [delta, r] : exponents_) {
            (void)r;
            if (delta == 0 || level_ % delta != 0)
                throw std::invalid_argument("EtaQuotient: every delta must divide the level");
        }
    }

    u64 level() const { return level_; }
    const std::map<u64, i64>& exponents() const { return exponents_; }

    i64 exponent(u64 delta) const {
        auto it = exponents_.find(delta);
        return it == exponents_.end() ? 0 : it->second;
    }

    i64 sum_delta_r() const {
        detail::i128 s = 0;
        for (const auto& [delta, r] : exponents_) s += static_cast<detail::i128>(delta) * r;
        return checked_i64(s, "sum of delta * r_delta");
    }

    i64 sum_level_over_delta_r() const {
        detail::i128 s = 0;
        for (const auto& [delta, r] : exponents_) s += static_cast<detail::i128>(level_ / delta) * r;
        return checked_i64(s, "sum of (N/delta) * r_delta");
    }

    /// Text form `N : d1^r1 * d2^r2 * ...`, e.g. `45 : 1^-3 * 3^-1 * 15^7 * 45^9`.
    std::string to_text() const {
        std::string out = std::to_string(level_) + " :";
        bool first = true;
        for (const auto& [delta, r] : exponents_) {
            out += first ? " " : " * ";
            out += std::to_string(delta) + "^" + std::to_string(r);
            first = false;
        }
        return out;
    }

    static EtaQuotient parse(std::string_view text);

private:
    static i64 checked_i64(detail::i128 v, const char* what) {
        if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
            throw std::overflow_error(std::string("EtaQuotient: ") + what + " overflows");
        return static_cast<i64>(v);
    }

    u64 level_;
    std::map<u64, i64> exponents_;
};

namespace detail {

inline void skip_ws(std::string_view& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
}

template <typename T>
inline T parse_int(std::string_view& s, const char* what) {
    skip_ws(s);
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{}) throw std::invalid_argument(std::string("eta-quotient parse: expected ") + what);
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    return value;
}

}  // namespace detail

inline EtaQuotient EtaQuotient::parse(std::string_view text) {
    std::string_view s = text;
    const u64 level = detail::parse_int<u64>(s, "level");
    detail::skip_ws(s);
    if (s.empty() || s.front() != ':') throw std::invalid_argument("eta-quotient parse: expected ':' after level");
    s.remove_prefix(1);

    std::map<u64, i64> exps;
    bool expect_term = true;
    while (true) {
        detail::skip_ws(s);
        if (s.empty()) break;
        if (!expect_term) {
            if (s.front() != '*') throw std::invalid_argument("eta-quotient parse: expected '*' between terms");
            s.remove_prefix(1);
        }
        const u64 delta = detail::parse_int<u64>(s, "divisor");
        i64 r = 1;
        detail::skip_ws(s);
        if (!s.empty() && s.front() == '^') {
            s.remove_prefix(1);
            r = detail::parse_int<i64>(s, "exponent");
        }
        exps[delta] += r;
        expect_term = false;
    }
    if (expect_term) throw std::invalid_argument("eta-quotient parse: no terms");
    return EtaQuotient(level, std::move(exps));
}

/// Pointwise sum of exponent maps; the combined level is the lcm.
inline EtaQuotient merged(const EtaQuotient& a, const EtaQuotient& b) {
    std::map<u64, i64> exps = a.exponents();
    for (const auto& [delta, r] : b.exponents()) exps[delta] += r;
    return EtaQuotient(std::lcm(a.level(), b.level()), std::move(exps));
}

inline Rational weight(const EtaQuotient& eq) {
    BigInt s = 0;
    for (const auto& [delta, r] : eq.exponents()) { (void)delta; s += r; }
    return Rational(s, 2);
}

struct PrimePower {
    u64 prime;
    i64 exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Outcome of the four arithmetic conditions, values included so a report can
// be audited rather than trusted.
struct ModularityReport {
    Rational weight;
    bool weight_is_even_integer = false;
    bool weight_is_odd_integer = false;  // advisory: the stated test requires k in 2Z
    i64 sum_delta_r = 0;
    bool cond_24_delta = false;
    i64 sum_level_over_delta_r = 0;
    bool cond_24_level_over_delta = false;
    std::vector<PrimePower> product_factorization;  // prod delta^{r_delta}
    bool product_is_rational_square = false;
    std::optional<i64> prefactor_exponent;  // sum_delta_r / 24, present iff cond_24_delta

    bool satisfies_all() const {
        return weight_is_even_integer && cond_24_delta && cond_24_level_over_delta && product_is_rational_square;
    }
};

inline ModularityReport check_gordon_ligozat(const EtaQuotient& eq) {
    ModularityReport rep;
    rep.weight = weight(eq);
    if (boost::multiprecision::denominator(rep.weight) == 1) {
        const BigInt num = boost::multiprecision::numerator(rep.weight);
        rep.weight_is_even_integer = (num % 2 == 0);
        rep.weight_is_odd_integer = !rep.weight_is_even_integer;
    }
    rep.sum_delta_r = eq.sum_delta_r();
    rep.cond_24_delta = (rep.sum_delta_r % 24 == 0);
    rep.sum_level_over_delta_r = eq.sum_level_over_delta_r();
    rep.cond_24_level_over_delta = (rep.sum_level_over_delta_r % 24 == 0);
    if (rep.cond_24_delta) rep.prefactor_exponent = rep.sum_delta_r / 24;

    // exponent of each prime in prod delta^{r_delta}; a rational square iff
    // every exponent is even (negative exponents allowed)
    std::map<u64, i64> primes;
    for (const auto& [delta, r] : eq.exponents())
        for (const auto& pp : detail::factorize(delta)) primes[pp.prime] += pp.exponent * r;
    std::erase_if(primes, [](const auto& kv) { return kv.second == 0; });
    rep.product_is_rational_square = true;
    for (const auto& [p, e] : primes) {
        rep.product_factorization.push_back({p, e});
        if (e % 2 != 0) rep.product_is_rational_square = false;
    }
    return rep;
}

// Cusp c/d of the level-N curve; d | N, gcd(c, d) = 1.
struct CuspLabel {
    u64 denominator;
    i64 numerator;

    CuspLabel(u64 d, i64 c) : denominator(d), numerator(c) {
        if (d == 0) throw std::invalid_argument("CuspLabel: denominator must be positive");
        if (std::gcd(detail::residue_of(c, d), d) != 1)  // gcd(0, d) = d, so d = 1 always passes
            throw std::invalid_argument("CuspLabel: numerator must be coprime to denominator");
    }

    friend bool operator==(const CuspLabel&, const CuspLabel&) = default;
};

/// Order of vanishing of the quotient at the cusp c/d:
///   (N/24) * sum over delta of gcd(d,delta)^2 r_delta / (gcd(d,N/d) d delta).
/// The value does not depend on the numerator c.
inline Rational cusp_order(const EtaQuotient& eq, const CuspLabel& cusp) {
    const u64 N = eq.level();
    const u64 d = cusp.denominator;
    if (N % d != 0) throw std::invalid_argument("cusp_order: denominator must divide the level");
    const BigInt gd = std::gcd(d, N / d);
    Rational sum = 0;
    for (const auto& [delta, r] : eq.exponents()) {
        const BigInt g = std::gcd(d, delta);
        sum += Rational(g * g * r, gd * d * delta);
    }
    return Rational(BigInt(N), 24) * sum;
}

struct CuspOrderTable {
    std::vector<std::pair<CuspLabel, Rational>> entries;  // one per divisor d | N
    Rational min_order;

    bool all_nonnegative() const { return min_order >= 0; }
};

inline CuspOrderTable cusp_order_table(const EtaQuotient& eq) {
    CuspOrderTable table;
    bool first = true;
    for (u64 d : detail::divisors_of(eq.level())) {
        CuspLabel label(d, 1);
        Rational order = cusp_order(eq, label);
        if (first || order < table.min_order) table.min_order = order;
        first = false;
        table.entries.emplace_back(label, std::move(order));
    }
    return table;
}

/// prod_{n >= 1} (1 - q^{scale n}) expanded by the pentagonal number theorem:
/// sum over k in Z of (-1)^k q^{scale k(3k-1)/2}. O(sqrt(L/scale)) writes.
inline ModSeries pentagonal_series(u64 scale, u64 modulus, std::size_t length) {
    if (scale == 0) throw std::invalid_argument("pentagonal_series: scale must be positive");
    ModSeries s(modulus, length);
    for (u64 k = 0;; ++k) {
        const detail::u128 e1 = static_cast<detail::u128>(scale) * k * (3 * k - 1) / 2;
        const detail::u128 e2 = static_cast<detail::u128>(scale) * k * (3 * k + 1) / 2;
        if (k > 0 && e1 >= length && e2 >= length) break;
        const i64 sign = (k % 2 == 0) ? 1 : -1;
        if (e1 < length) s.add_at(static_cast<std::size_t>(e1), sign);
        if (k > 0 && e2 < length) s.add_at(static_cast<std::size_t>(e2), sign);
    }
    return s;
}

/// prod_{n >= 1} (1 - q^{scale n})^3 = sum_{k >= 0} (-1)^k (2k+1) q^{scale k(k+1)/2}.
inline ModSeries jacobi_cube_series(u64 scale, u64 modulus, std::size_t length) {
    if (scale == 0) throw std::invalid_argument("jacobi_cube_series: scale must be positive");
    ModSeries s(modulus, length);
    for (u64 k = 0;; ++k) {
        const detail::u128 e = static_cast<detail::u128>(scale) * k * (k + 1) / 2;
        if (e >= length) break;
        const i64 term = static_cast<i64>(2 * k + 1);
        s.add_at(static_cast<std::size_t>(e), (k % 2 == 0) ? term : -term);
    }
    return s;
}

/// q-expansion of the quotient: q^e * prod (1 - q^{delta n})^{r_delta} with
/// e = sum(delta r_delta) / 24, which must be a nonnegative integer below the
/// requested length. Negative powers go through invert(pow(base, -r)), one
/// inversion per factor at full precision.
inline ModSeries expand(const EtaQuotient& eq, u64 modulus, std::size_t length) {
    const i64 s24 = eq.sum_delta_r();
    if (s24 % 24 != 0)
        throw std::domain_error("expand: prefactor exponent sum(delta r)/24 is not integral");
    const i64 e = s24 / 24;
    if (e < 0)
        throw std::domain_error("expand: negative prefactor exponent (Laurent expansion unsupported)");
    if (static_cast<u64>(e) >= length)
        throw std::domain_error("expand: prefactor exponent at or beyond the truncation (empty window)");

    const std::size_t body_len = length - static_cast<std::size_t>(e);
    ModSeries acc = ModSeries::one(modulus, body_len);
    for (const auto& [delta, r] : eq.exponents()) {
        ModSeries base = pentagonal_series(delta, modulus, body_len);
        acc = mul(acc, r > 0 ? pow(base, r) : invert(pow(base, -r)));
    }

    ModSeries out(modulus, length);
    auto& c = out.coeffs_mut();
    for (std::size_t i = 0; i < body_len; ++i) c[static_cast<std::size_t>(e) + i] = acc.coeffs()[i];
    return out;
}

}  // namespace etaq
