#pragma once

// Fixed note strings attached to certificates and printed by the CLI.
// The certification targets are quoted results; where the quoted text and
// the computed values disagree, the tool states the discrepancy instead of
// silently picking a side. Keep these strings stable: downstream checks
// match them verbatim.

namespace etaq::errata {

inline constexpr const char* kGeneratingFunctionNote =
    "erratum: the quoted cphi3 generating function prints the term sum_{n>=0} p(n)^n; "
    "it is implemented as sum_{n>=0} p(n/3) q^n with p(x) = 0 unless x is a nonnegative "
    "integer, as forced by the adjacent convention and confirmed against brute-force "
    "enumeration for n <= 12.";

inline constexpr const char* kDecompositionDisplayNote =
    "erratum: the quoted decomposition display for cphi3(45n+37) carries a right-hand side "
    "labeled cphi3'(45n+22); the summation index 45n+37 is implemented, matching the "
    "displayed sum it equals.";

inline constexpr const char* kScanLengthNote =
    "erratum: the quoted verification length 12150001 matches neither the Gamma0 Sturm "
    "bound at (level 3375, weight 6), which evaluates to 2701, nor the Gamma1 index bound, "
    "which evaluates to 4860001; full certification scans the maximum of the quoted and "
    "computed values.";

inline constexpr const char* kGamma1HypothesisNote =
    "hypothesis: the Sturm criterion is stated for Gamma0(N) with rational integer "
    "coefficients; its application to the Gamma1-level sieved form is recorded as a "
    "hypothesis of this certificate, not validated by it.";

inline constexpr const char* kNegativeCuspOrderNote =
    "honesty: the cusp-order table contains a negative entry, so the holomorphy hypothesis "
    "of the bound criterion is not established by this tool and the claim status is capped "
    "at verified-to-bound.";

}  // namespace etaq::errata
