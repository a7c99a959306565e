#include <catch2/catch_amalgamated.hpp>

#include "etaq/eta.hpp"
#include "etaq/frobenius.hpp"
#include "etaq/pipelines.hpp"

using namespace etaq;

namespace {

// independent oracle: multiply the Euler factors (1 - q^{scale n}) one by
// one, schoolbook only, so no transform code sits on the oracle path
ModSeries dense_euler_product(u64 scale, u64 modulus, std::size_t length) {
    ModSeries acc = ModSeries::one(modulus, length);
    for (u64 n = 1; scale * n < length; ++n) {
        ModSeries factor = make_series(modulus, length, {{0, 1}});
        factor.add_at(static_cast<std::size_t>(scale * n), -1);
        acc = mul(acc, factor, MulAlgorithm::schoolbook);
    }
    return acc;
}

const EtaQuotient& witness_form() {
    static const EtaQuotient f = theorem11_eta_quotient();
    return f;
}

}  // namespace

TEST_CASE("pentagonal series examples") {
    ModSeries s = pentagonal_series(1, 97, 8);
    REQUIRE(s == make_series(97, 8, {{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}}));
    REQUIRE(pentagonal_series(3, 5, 4) == make_series(5, 4, {{0, 1}, {3, -1}}));
    REQUIRE(pentagonal_series(1, 1000, 1000) == dense_euler_product(1, 1000, 1000));
}

TEST_CASE("jacobi cube series examples") {
    REQUIRE(jacobi_cube_series(1, 97, 7) ==
            make_series(97, 7, {{0, 1}, {1, -3}, {3, 5}, {6, -7}}));

    // exponents 1, 10, 28 after the q^1 shift at scale 9
    ModSeries shifted = shift(jacobi_cube_series(9, 1000, 40), 1);
    REQUIRE(shifted.coeff(1) == 1);
    REQUIRE(shifted.coeff(10) == 1000 - 3);
    REQUIRE(shifted.coeff(28) == 5);

    REQUIRE(pow(pentagonal_series(1, 5, 10000), 3) == jacobi_cube_series(1, 5, 10000));
}

TEST_CASE("sparse constructions equal dense products", "[props]") {
    for (u64 scale = 1; scale <= 9; ++scale) {
        ModSeries dense = dense_euler_product(scale, 101, 2000);
        ModSeries dense_cube =
            mul(mul(dense, dense, MulAlgorithm::schoolbook), dense, MulAlgorithm::schoolbook);
        REQUIRE(pentagonal_series(scale, 101, 2000) == dense);
        REQUIRE(jacobi_cube_series(scale, 101, 2000) == dense_cube);
    }
}

TEST_CASE("eta quotient text format") {
    EtaQuotient f = EtaQuotient::parse("45 : 1^-3 * 3^-1 * 15^7 * 45^9");
    REQUIRE(f.level() == 45);
    REQUIRE(f.exponent(1) == -3);
    REQUIRE(f.exponent(3) == -1);
    REQUIRE(f.exponent(15) == 7);
    REQUIRE(f.exponent(45) == 9);
    REQUIRE(f.exponent(5) == 0);
    REQUIRE(EtaQuotient::parse(f.to_text()).exponents() == f.exponents());

    REQUIRE(EtaQuotient::parse("45:1^-3*3^-1*15^7*45^9").exponents() == f.exponents());
    REQUIRE(EtaQuotient::parse("  45  :  1 ^ -3 * 3^-1 *15^7* 45^9 ").exponents() == f.exponents());

    REQUIRE_THROWS_AS(EtaQuotient::parse("45 : 7^1"), std::invalid_argument);
    REQUIRE_THROWS_AS(EtaQuotient::parse("45 :"), std::invalid_argument);
    REQUIRE_THROWS_AS(EtaQuotient::parse("45 : 1^0"), std::invalid_argument);
    REQUIRE_THROWS_AS(EtaQuotient::parse("nonsense"), std::invalid_argument);
}

TEST_CASE("weight") {
    REQUIRE(weight(witness_form()) == Rational(6));
    REQUIRE(weight(EtaQuotient(1, {{1, 1}})) == Rational(1, 2));
    REQUIRE(weight(EtaQuotient(45, {{1, -3}, {3, -1}, {15, 7}, {45, 9}})) == Rational(6));
}

TEST_CASE("gordon-ligozat report for the witness form") {
    ModularityReport rep = check_gordon_ligozat(witness_form());
    REQUIRE(rep.weight == Rational(6));
    REQUIRE(rep.weight_is_even_integer);
    REQUIRE(rep.sum_delta_r == 504);
    REQUIRE(rep.cond_24_delta);
    REQUIRE(rep.sum_level_over_delta_r == -120);
    REQUIRE(rep.cond_24_level_over_delta);
    REQUIRE(rep.product_factorization == std::vector<PrimePower>{{3, 24}, {5, 16}});
    REQUIRE(rep.product_is_rational_square);
    REQUIRE(rep.prefactor_exponent == std::optional<i64>{21});
    REQUIRE(rep.satisfies_all());
}

TEST_CASE("gordon-ligozat trivial and failing cases") {
    ModularityReport ok = check_gordon_ligozat(EtaQuotient(1, {{1, 24}}));
    REQUIRE(ok.sum_delta_r == 24);
    REQUIRE(ok.cond_24_delta);
    REQUIRE(ok.cond_24_level_over_delta);
    REQUIRE(ok.product_is_rational_square);  // 1^24
    REQUIRE(ok.product_factorization.empty());
    REQUIRE(ok.weight == Rational(12));
    REQUIRE(ok.satisfies_all());

    ModularityReport bad = check_gordon_ligozat(EtaQuotient(1, {{1, 1}}));
    REQUIRE(bad.sum_delta_r == 1);
    REQUIRE_FALSE(bad.cond_24_delta);
    REQUIRE_FALSE(bad.cond_24_level_over_delta);
    REQUIRE_FALSE(bad.prefactor_exponent.has_value());
    REQUIRE_FALSE(bad.satisfies_all());

    // odd integral weight trips the advisory, not the even-weight flag
    ModularityReport odd = check_gordon_ligozat(EtaQuotient(1, {{1, 2}}));
    REQUIRE(odd.weight == Rational(1));
    REQUIRE(odd.weight_is_odd_integer);
    REQUIRE_FALSE(odd.weight_is_even_integer);
}

TEST_CASE("cusp orders of the witness form") {
    const EtaQuotient& f = witness_form();
    REQUIRE(cusp_order(f, CuspLabel(45, 1)) == Rational(21));
    REQUIRE(cusp_order(f, CuspLabel(1, 0)) == Rational(-5));
    REQUIRE(cusp_order(EtaQuotient(1, {{1, 24}}), CuspLabel(1, 0)) == Rational(1));

    // the formula has no dependence on the numerator
    REQUIRE(cusp_order(f, CuspLabel(9, 2)) == cusp_order(f, CuspLabel(9, 7)));
    REQUIRE(cusp_order(f, CuspLabel(5, 1)) == cusp_order(f, CuspLabel(5, 6)));

    REQUIRE_THROWS_AS(cusp_order(f, CuspLabel(7, 1)), std::invalid_argument);
    REQUIRE_THROWS_AS(CuspLabel(9, 3), std::invalid_argument);
}

TEST_CASE("cusp order table") {
    CuspOrderTable table = cusp_order_table(witness_form());
    REQUIRE(table.entries.size() == 6);
    const std::pair<u64, i64> expected[] = {{1, -5}, {3, 0}, {5, 5}, {9, 3}, {15, 6}, {45, 21}};
    for (std::size_t i = 0; i < 6; ++i) {
        REQUIRE(table.entries[i].first.denominator == expected[i].first);
        REQUIRE(table.entries[i].second == Rational(expected[i].second));
    }
    REQUIRE(table.min_order == Rational(-5));
    REQUIRE_FALSE(table.all_nonnegative());

    CuspOrderTable single = cusp_order_table(EtaQuotient(1, {{1, 24}}));
    REQUIRE(single.entries.size() == 1);
    REQUIRE(single.min_order == Rational(1));
    REQUIRE(single.all_nonnegative());
}

TEST_CASE("expand") {
    const std::size_t L = 200;
    ModSeries f = expand(witness_form(), 5, L);
    for (std::size_t n = 0; n < 21; ++n) REQUIRE(f.coeff(n) == 0);
    REQUIRE(f.coeff(21) == 1);  // r(21) = a(0) = 1

    // f = q^21 * a-series * unit, coefficient by coefficient
    ModSeries recomposed = shift(mul(a_series(5, L), theorem11_unit_factor(5, L)), 21);
    REQUIRE(f == recomposed);

    REQUIRE_THROWS_AS(expand(EtaQuotient(1, {{1, 1}}), 5, 8), std::domain_error);
    ModSeries eta24 = expand(EtaQuotient(1, {{1, 24}}), 5, 8);
    REQUIRE(eta24.coeff(0) == 0);
    REQUIRE(eta24.coeff(1) == 1);  // first nonzero exponent is the prefactor e = 1

    REQUIRE_THROWS_AS(expand(EtaQuotient(1, {{1, 24}}), 5, 1), std::domain_error);   // empty window
    REQUIRE_THROWS_AS(expand(EtaQuotient(1, {{1, -24}}), 5, 10), std::domain_error); // Laurent
}

TEST_CASE("quotient algebra is additive", "[props]") {
    EtaQuotient a(45, {{1, 24}});
    EtaQuotient b(45, {{45, 24}});
    EtaQuotient ab = merged(a, b);
    REQUIRE(weight(ab) == weight(a) + weight(b));
    for (u64 d : {u64{1}, u64{3}, u64{9}, u64{45}}) {
        CuspLabel cusp(d, 1);
        REQUIRE(cusp_order(ab, cusp) == cusp_order(a, cusp) + cusp_order(b, cusp));
    }
    const std::size_t L = 500;
    REQUIRE(expand(ab, 7, L) == mul(expand(a, 7, L), expand(b, 7, L)));
}

TEST_CASE("ord_mod of the sieved witness expansion stays infinite") {
    ModSeries f = expand(witness_form(), 5, 5000);
    REQUIRE(ord_mod(sieve(f, ProgressionSelector(15, 3)), 5) == std::nullopt);
    REQUIRE(ord_mod(sieve(f, ProgressionSelector(15, 12)), 5) == std::nullopt);
    REQUIRE(ord_mod(f, 5) == std::optional<std::size_t>{21});
}
