#include <catch2/catch_amalgamated.hpp>

#include "etaq/frobenius.hpp"

using namespace etaq;

namespace {

// convolution oracle built from exact big-integer partition DPs, fully
// independent of the series kernel: a(n) = sum_m c3(n - 3m) p(m) where c3 is
// the triple self-convolution of p
std::vector<BigInt> a_oracle(std::size_t nmax) {
    const std::vector<BigInt> p = partition_oracle(nmax);
    auto convolve = [](const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
        std::vector<BigInt> out(x.size(), 0);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; i + j < out.size() && j < y.size(); ++j) out[i + j] += x[i] * y[j];
        return out;
    };
    const std::vector<BigInt> c3 = convolve(convolve(p, p), p);
    std::vector<BigInt> a(nmax + 1, 0);
    for (std::size_t n = 0; n <= nmax; ++n)
        for (std::size_t m = 0; 3 * m <= n; ++m) a[n] += c3[n - 3 * m] * p[m];
    return a;
}

}  // namespace

TEST_CASE("partition oracle") {
    const std::vector<BigInt> p = partition_oracle(9);
    const u64 expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30};
    for (std::size_t n = 0; n < 10; ++n) REQUIRE(p[n] == expected[n]);
}

TEST_CASE("partition oracle agrees with series inversion to 1000", "[props]") {
    const std::size_t N = 1001;
    const u64 m = 1000000007;
    const std::vector<BigInt> p = partition_oracle(N - 1);
    const ModSeries s = invert(pentagonal_series(1, m, N));
    for (std::size_t n = 0; n < N; ++n) REQUIRE(s.coeff(n) == static_cast<u64>(p[n] % m));
}

TEST_CASE("a_series values") {
    const u64 m = 1000000000000000000ull;
    ModSeries a = a_series(m, 13);
    REQUIRE(a.coeff(0) == 1);
    REQUIRE(a.coeff(1) == 3);
    REQUIRE(a.coeff(2) == 9);
    REQUIRE(a.coeff(3) == 23);
    REQUIRE(a.coeff(6) == 245);
    REQUIRE(a.coeff(12) == 9860);
    REQUIRE(a_series(5, 2).coeff(1) == 3);
}

TEST_CASE("a_series agrees with the convolution oracle", "[props]") {
    const std::size_t N = 101;
    const u64 m = 1000000000000000000ull;
    const std::vector<BigInt> oracle = a_oracle(N - 1);
    const ModSeries a = a_series(m, N);
    for (std::size_t n = 0; n < N; ++n) REQUIRE(a.coeff(n) == static_cast<u64>(oracle[n] % m));
}

TEST_CASE("cphi3 series values") {
    const u64 m = 1000000000000000000ull;
    ModSeries c = cphi3_series(m, 40);
    REQUIRE(c.coeff(0) == 1);
    REQUIRE(c.coeff(1) == 9);
    REQUIRE(c.coeff(2) == 27);
    REQUIRE(c.coeff(7) % 5 == 0);
    REQUIRE(c.coeff(22) % 5 == 0);
    REQUIRE(c.coeff(37) % 5 == 0);
}

TEST_CASE("cphi3 series equals the enumeration oracle for n <= 12") {
    const u64 m = 1000000000000000000ull;  // far above any value encountered
    ModSeries c = cphi3_series(m, 13);
    for (u32 n = 0; n <= 12; ++n) REQUIRE(c.coeff(n) == cphi3_bruteforce(n));
}

TEST_CASE("cphi3 brute force") {
    REQUIRE(cphi3_bruteforce(0) == 1);
    REQUIRE(cphi3_bruteforce(1) == 9);
    REQUIRE(cphi3_bruteforce(2) == 27);
    REQUIRE(cphi3_bruteforce(7) % 5 == 0);
    REQUIRE_THROWS_AS(cphi3_bruteforce(15), std::invalid_argument);
    REQUIRE(cphi3_bruteforce(15, 16) == cphi3_series(u64{1} << 62, 16).coeff(15));
}

TEST_CASE("frobenius symbols") {
    FrobeniusSymbol s{{{0, 0}, {1, 2}}, {{0, 1}, {0, 2}}};
    REQUIRE(s.valid());
    REQUIRE(s.weight() == 3);

    FrobeniusSymbol dup{{{0, 0}, {0, 0}}, {{0, 1}, {0, 2}}};
    REQUIRE_FALSE(dup.valid());
    FrobeniusSymbol uneven{{{0, 0}}, {}};
    REQUIRE_FALSE(uneven.valid());
}

TEST_CASE("recomposition identity", "[props]") {
    // cphi3(n) - p(n/3) = 9 sum_k (-1)^k (2k+1) a(n - 1 - 9k(k+1)/2), exactly
    const u64 m = u64{1} << 62;
    const std::size_t L = 300;
    const ModSeries c = cphi3_series(m, L);
    const ModSeries a = a_series(m, L);
    const ModSeries p3 = invert(pentagonal_series(3, m, L));
    for (std::size_t n = 1; n + 3 < L; ++n) {
        u64 acc = 0;
        for (u64 k = 0;; ++k) {
            const u64 t = 1 + 9 * k * (k + 1) / 2;
            if (t > n) break;
            const u64 term = etaq::detail::mul_mod(2 * k + 1, a.coeff(n - t), m);
            acc = (k % 2 == 0) ? etaq::detail::add_mod(acc, term, m)
                               : etaq::detail::sub_mod(acc, term, m);
        }
        acc = etaq::detail::mul_mod(9, acc, m);
        const u64 lhs = etaq::detail::sub_mod(c.coeff(n), n % 3 == 0 ? p3.coeff(n) : 0, m);
        REQUIRE(lhs == acc);
    }
}

TEST_CASE("residue classification") {
    const std::vector<u32> table = residue_classification(30);
    REQUIRE(table[0] == 1);
    REQUIRE(table[1] == 10);
    REQUIRE(table[2] == 28);
    REQUIRE(table[3] == 10);
    REQUIRE(table[4] == 1);
    REQUIRE(table[7] == 28);
    for (std::size_t k = 0; k < table.size(); ++k) {
        REQUIRE((table[k] == 1 || table[k] == 10 || table[k] == 28));
        REQUIRE(table[k] == table[k % 5]);
    }
}

TEST_CASE("jacobi decomposition") {
    const ModSeries a = a_series(5, 45 * 3 + 38);

    for (u32 j : {7u, 22u, 37u}) {
        for (u64 n = 0; n <= 2; ++n) {
            const JacobiDecomposition d = jacobi_decomposition(j, n, a);
            REQUIRE(d.matches);
            REQUIRE(d.recomposed_value % 5 == 0);
            for (const auto& term : d.terms) {
                // the mechanized case analysis: no fourth case
                if (term.residue_class_mod45 == 28) {
                    REQUIRE(term.reason == VanishingReason::factor_divisible_by_5);
                    REQUIRE(term.factor % 5 == 0);
                    REQUIRE(term.k % 5 == 2);
                } else {
                    REQUIRE((term.a_index % 15 == 6 || term.a_index % 15 == 12));
                }
                REQUIRE((term.a_index + term.exponent_shift) == d.target_exponent);
            }
        }
    }

    // the nine index residues mod 45
    std::set<u64> residues;
    for (u32 j : {7u, 22u, 37u}) {
        const JacobiDecomposition d = jacobi_decomposition(j, 2, a);
        for (const auto& term : d.terms) residues.insert(term.a_index % 45);
    }
    REQUIRE(residues == std::set<u64>{6, 9, 12, 21, 24, 27, 36, 39, 42});

    REQUIRE_THROWS_AS(jacobi_decomposition(8, 0, a), std::invalid_argument);
    REQUIRE_THROWS_AS(jacobi_decomposition(7, 1000, a), std::out_of_range);
}

TEST_CASE("theorem 1.2 verification") {
    const Theorem12Verification v = verify_theorem_1_2(60);
    for (const auto& claim : v.claims) {
        REQUIRE(claim.status == ClaimStatus::verified_to_bound);
        REQUIRE(claim.terms_checked == 61);
        REQUIRE(claim.source == "cphi3(n)");
    }
    REQUIRE(v.claims[0].selector == ProgressionSelector(45, 7));
    REQUIRE(v.claims[1].selector == ProgressionSelector(45, 22));
    REQUIRE(v.claims[2].selector == ProgressionSelector(45, 37));
    REQUIRE(v.decomposition_checked_upto == 50);
    REQUIRE(v.decomposition_consistent);
}

TEST_CASE("theorem 1.1 feeds theorem 1.2 at coefficient level", "[props]") {
    // every decomposition term either carries a factor divisible by 5 or hits
    // an a-index in class 6 or 12 mod 15 whose value is itself 0 mod 5
    const ModSeries a = a_series(5, 45 * 10 + 38);
    for (u32 j : {7u, 22u, 37u}) {
        for (u64 n = 0; n <= 9; ++n) {
            const JacobiDecomposition d = jacobi_decomposition(j, n, a);
            for (const auto& term : d.terms) {
                if (term.reason == VanishingReason::factor_divisible_by_5) continue;
                REQUIRE(a.coeff(term.a_index) % 5 == 0);
            }
        }
    }
}
