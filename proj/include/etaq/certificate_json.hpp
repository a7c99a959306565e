#pragma once

// JSON form of a certificate. Field names are a stable contract:
//   {claim: {source, t, r, l}, status, scanned_terms,
//    first_violation: null | {n, value},
//    sturm: {group, level, weight, bound, paper_quoted_bound},
//    modularity: {weight, cond24_delta, cond24_N_over_delta, square,
//                 cusp_orders: [{d, order_num, order_den}]},
//    tool_version, wall_time_ms}
// plus an additive "notes" array.

#include <json.hpp>

#include "etaq/pipelines.hpp"

namespace etaq {

inline nlohmann::json rational_to_json(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return to_i64(boost::multiprecision::numerator(r));
    return to_string(r);
}

inline nlohmann::json to_json(const ModularityReport& rep, const CuspOrderTable& cusps) {
    nlohmann::json m;
    m["weight"] = rational_to_json(rep.weight);
    m["cond24_delta"] = rep.cond_24_delta;
    m["cond24_N_over_delta"] = rep.cond_24_level_over_delta;
    m["square"] = rep.product_is_rational_square;
    m["sum_delta_r"] = rep.sum_delta_r;
    m["sum_N_over_delta_r"] = rep.sum_level_over_delta_r;
    m["weight_in_2Z"] = rep.weight_is_even_integer;
    auto orders = nlohmann::json::array();
    for (const auto& [label, order] : cusps.entries) {
        orders.push_back({{"d", label.denominator},
                          {"order_num", to_i64(boost::multiprecision::numerator(order))},
                          {"order_den", to_i64(boost::multiprecision::denominator(order))}});
    }
    m["cusp_orders"] = std::move(orders);
    return m;
}

inline nlohmann::json to_json(const Certificate& cert) {
    nlohmann::json j;
    j["claim"] = {{"source", cert.claim.source},
                  {"t", cert.claim.selector.step},
                  {"r", cert.claim.selector.residue},
                  {"l", cert.claim.modulus}};
    j["status"] = std::string(to_string(cert.claim.status));
    j["scanned_terms"] = cert.claim.terms_checked;
    if (cert.claim.counterexample) {
        j["first_violation"] = {{"n", cert.claim.counterexample->index},
                                {"value", cert.claim.counterexample->value}};
    } else {
        j["first_violation"] = nullptr;
    }
    j["sturm"] = {{"group", std::string(to_string(cert.sturm.group))},
                  {"level", cert.sturm.level},
                  {"weight", rational_to_json(cert.sturm.weight)},
                  {"bound", cert.sturm.bound}};
    if (cert.sturm.quoted_bound)
        j["sturm"]["paper_quoted_bound"] = cert.sturm.quoted_bound;
    else
        j["sturm"]["paper_quoted_bound"] = nullptr;
    j["modularity"] = to_json(cert.modularity, cert.cusps);
    j["notes"] = cert.notes;
    j["tool_version"] = cert.tool_version;
    j["wall_time_ms"] = cert.wall_time_ms;
    return j;
}

inline nlohmann::json to_json(const CertificationRun& run) {
    nlohmann::json j;
    auto arr = nlohmann::json::array();
    for (const auto& c : run.certificates) arr.push_back(to_json(c));
    j["certificates"] = std::move(arr);
    j["notes"] = run.notes;
    return j;
}

}  // namespace etaq
