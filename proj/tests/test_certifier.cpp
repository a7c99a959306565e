#include <catch2/catch_amalgamated.hpp>

#include "etaq/certifier.hpp"
#include "etaq/frobenius.hpp"
#include "etaq/pipelines.hpp"

using namespace etaq;

TEST_CASE("sieve_level") {
    LevelBookkeeping lb = sieve_level(45, 15, 3);
    REQUIRE(lb.sieved_level == 3375);
    REQUIRE(lb.gcd_residue_step == 3);
    REQUIRE(lb.group == CongruenceGroup::gamma1);

    REQUIRE(sieve_level(45, 15, 12).sieved_level == 3375);
    REQUIRE(sieve_level(45, 1, 0).sieved_level == 45);
    REQUIRE(sieve_level(7, 1, 0).sieved_level == 7);
    REQUIRE_THROWS_AS(sieve_level(45, 15, 15), std::invalid_argument);
}

TEST_CASE("sturm bound on gamma0") {
    REQUIRE(sturm_bound_gamma0(45, 6) == 37);
    REQUIRE(sturm_bound_gamma0(1, 12) == 2);
    REQUIRE(sturm_bound_gamma0(3375, 6) == 2701);
}

TEST_CASE("sturm bound gamma0 is monotone", "[props]") {
    // nondecreasing in the weight for every level, and nondecreasing in the
    // level along divisibility (the level factor can shrink across unrelated
    // levels: psi(6) = 12 > psi(7) = 8)
    for (u64 N = 1; N <= 120; ++N) {
        REQUIRE(sturm_bound_gamma0(N, 4) <= sturm_bound_gamma0(N, 6));
        REQUIRE(sturm_bound_gamma0(N, 6) <= sturm_bound_gamma0(N, 8));
        for (u64 d = 1; d <= N; ++d)
            if (N % d == 0) REQUIRE(sturm_bound_gamma0(d, 6) <= sturm_bound_gamma0(N, 6));
    }
}

TEST_CASE("sturm bound on gamma1") {
    Gamma1Bound b = sturm_bound_gamma1(3375, 6);
    REQUIRE(b.index_quantity == 9720000);
    REQUIRE(b.bound == 4860001);
    REQUIRE(b.quoted_scan_length == 12150001);

    Gamma1Bound small = sturm_bound_gamma1(4, 2);
    REQUIRE(small.index_quantity == 12);
    REQUIRE(small.bound == 3);

    REQUIRE_THROWS_AS(sturm_bound_gamma1(2, 2), std::invalid_argument);
}

TEST_CASE("progression term counts for a bound") {
    // bound counts q-exponents; terms are derived, rounding up
    REQUIRE(progression_terms_for_bound(37, ProgressionSelector(15, 3)) == 3);   // 3, 18, 33
    REQUIRE(progression_terms_for_bound(34, ProgressionSelector(15, 3)) == 3);
    REQUIRE(progression_terms_for_bound(33, ProgressionSelector(15, 3)) == 2);
    REQUIRE(progression_terms_for_bound(3, ProgressionSelector(15, 3)) == 0);
    REQUIRE(progression_terms_for_bound(4860001, ProgressionSelector(15, 6), 21) == 323999);
}

TEST_CASE("verify_progression on the witness expansion") {
    const u64 terms = 10000;
    ModSeries f = expand(theorem11_eta_quotient(), 5, 15 * terms + 13);
    for (u64 r : {u64{3}, u64{12}}) {
        CongruenceClaim claim = verify_progression(f, ProgressionSelector(15, r), 5, terms);
        REQUIRE(claim.status == ClaimStatus::verified_to_bound);
        REQUIRE(claim.terms_checked == terms);
        REQUIRE_FALSE(claim.counterexample.has_value());
    }
}

TEST_CASE("verify_progression refutation") {
    ModSeries ones(5, 40);
    for (auto& c : ones.coeffs_mut()) c = 1;
    CongruenceClaim claim = verify_progression(ones, ProgressionSelector(2, 0), 5, 10);
    REQUIRE(claim.status == ClaimStatus::refuted);
    REQUIRE(claim.counterexample == std::optional<Counterexample>{{0, 1}});

    // a refutation is reproducible with the scan cut at the counterexample;
    // class 6 of the expansion hits r(21) = 1 at progression index 1
    ModSeries f = expand(theorem11_eta_quotient(), 5, 400);
    CongruenceClaim miss = verify_progression(f, ProgressionSelector(15, 6), 5, 20);
    REQUIRE(miss.status == ClaimStatus::refuted);
    REQUIRE(miss.counterexample == std::optional<Counterexample>{{1, 1}});
    CongruenceClaim again =
        verify_progression(f, ProgressionSelector(15, 6), 5, miss.counterexample->index + 1);
    REQUIRE(again.counterexample == miss.counterexample);

    REQUIRE_THROWS_AS(verify_progression(ones, ProgressionSelector(2, 0), 5, 21),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(verify_progression(ones, ProgressionSelector(2, 0), 4, 5),
                      std::invalid_argument);
}

TEST_CASE("certification gate") {
    // tau(5n) = 0 (mod 5) on eta(z)^24: clean evidence, small bound, certifiable
    EtaQuotient delta(1, {{1, 24}});
    CertificationRun run = certify_quotient(delta, ProgressionSelector(5, 0), 5, 100);
    REQUIRE(run.certificates.size() == 1);
    const Certificate& cert = run.certificates[0];
    REQUIRE(cert.claim.status == ClaimStatus::certified);
    REQUIRE(cert.sturm.level == 5);
    REQUIRE(cert.sturm.bound == 25);
    REQUIRE(cert.modularity.satisfies_all());
    REQUIRE(cert.cusps.all_nonnegative());

    // not enough terms to cover the bound: stays verified-to-bound
    CertificationRun shallow = certify_quotient(delta, ProgressionSelector(5, 0), 5, 3);
    REQUIRE(shallow.certificates[0].claim.status == ClaimStatus::verified_to_bound);
}

TEST_CASE("negative cusp order caps the status") {
    // scan far past the bound; the d=1 cusp order of -5 must still block promotion
    const EtaQuotient form = theorem11_eta_quotient();
    const ModularityReport rep = check_gordon_ligozat(form);
    const CuspOrderTable cusps = cusp_order_table(form);
    REQUIRE(cusps.min_order == Rational(-5));

    CongruenceClaim claim{"a(n)", ProgressionSelector(15, 6), 5, u64{1} << 40,
                          ClaimStatus::verified_to_bound, std::nullopt};
    apply_certification(claim, 10, rep, cusps);
    REQUIRE(claim.status == ClaimStatus::verified_to_bound);

    // with clean fake evidence the same scan would have been promoted
    EtaQuotient delta(1, {{1, 24}});
    apply_certification(claim, 10, check_gordon_ligozat(delta), cusp_order_table(delta));
    REQUIRE(claim.status == ClaimStatus::certified);
}

TEST_CASE("reduce_by_supported_unit on the witness instance") {
    const std::size_t L = 10000;
    ModSeries f = expand(theorem11_eta_quotient(), 5, L);
    ModSeries unit = theorem11_unit_factor(5, L);

    UnitReductionReport report = reduce_by_supported_unit(f, unit, 15, 21);
    REQUIRE(report.consistent);
    REQUIRE(report.checked_length == L);

    // the reduced series is the a(n) series
    ModSeries a = a_series(5, L - 21);
    REQUIRE(report.reduced == a);

    // class correspondence rho -> rho + 21 mod 15; classes 6 and 12 vanish
    for (const auto& entry : report.classes) {
        REQUIRE(entry.target_class == (entry.source_class + 21) % 15);
        REQUIRE(entry.forward_match);
        REQUIRE(entry.backward_match);
        REQUIRE(entry.source_vanishes == entry.target_vanishes);
    }
    REQUIRE(report.classes[6].target_class == 12);
    REQUIRE(report.classes[12].target_class == 3);
    REQUIRE(report.classes[6].source_vanishes);
    REQUIRE(report.classes[12].source_vanishes);
    REQUIRE(report.classes[6].target_vanishes);
    REQUIRE(report.classes[12].target_vanishes);
}

TEST_CASE("reduce_by_supported_unit edge cases") {
    ModSeries s = make_series(5, 60, {{0, 2}, {7, 1}, {14, 3}});
    ModSeries unit_one = ModSeries::one(5, 60);
    UnitReductionReport r = reduce_by_supported_unit(s, unit_one, 15, 7);
    for (const auto& entry : r.classes)
        REQUIRE(entry.target_class == (entry.source_class + 7) % 15);

    ModSeries bad_support = make_series(5, 60, {{0, 1}, {1, 1}});
    REQUIRE_THROWS_AS(reduce_by_supported_unit(s, bad_support, 15, 0), std::invalid_argument);

    ModSeries nonunit = make_series(10, 60, {{0, 2}});
    ModSeries t10 = make_series(10, 60, {{0, 2}});
    REQUIRE_THROWS_AS(reduce_by_supported_unit(t10, nonunit, 15, 0), std::domain_error);
}

TEST_CASE("scan is deterministic") {
    ModSeries f = expand(theorem11_eta_quotient(), 5, 4000);
    CongruenceClaim c1 = verify_progression(f, ProgressionSelector(15, 3), 5, 260);
    CongruenceClaim c2 = verify_progression(f, ProgressionSelector(15, 3), 5, 260);
    REQUIRE(c1.status == c2.status);
    REQUIRE(c1.terms_checked == c2.terms_checked);
    REQUIRE(c1.counterexample == c2.counterexample);
}
