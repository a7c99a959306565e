// etaq: expand eta-quotients as truncated q-series over Z/mZ, check the
// arithmetic modularity conditions and cusp orders, compute Sturm-type
// bounds, and certify Ramanujan-type congruences by exact finite scans.
//
// Exit codes: 0 success / claim verified or certified, 1 usage or internal
// error, 2 mathematical refutation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "etaq/certificate_json.hpp"
#include "etaq/errata.hpp"
#include "etaq/frobenius.hpp"
#include "etaq/pipelines.hpp"
#include "etaq/qser_format.hpp"
#include "etaq/version.hpp"

namespace fs = std::filesystem;
using namespace etaq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRefuted = 2;

void report_progress(u64 terms) {
    std::cerr << "progress: " << terms << " terms scanned\n";
}

// ---------------------------------------------------------------- caching --

struct CacheConfig {
    std::string dir;      // empty = caching disabled
    bool disabled = false;

    bool active() const { return !disabled && !dir.empty(); }
};

std::string default_cache_dir() {
    if (const char* env = std::getenv("ETAQ_CACHE_DIR")) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME")) return std::string(xdg) + "/etaq";
    if (const char* home = std::getenv("HOME")) return std::string(home) + "/.cache/etaq";
    return {};
}

u64 fnv1a(const std::string& data, u64 basis) {
    u64 h = basis;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

fs::path cache_path(const CacheConfig& cache, const std::string& quotient_text, u64 modulus,
                    u64 length) {
    std::ostringstream key;
    key << static_cast<int>(kCacheFormatVersion) << '|' << quotient_text << '|' << modulus << '|'
        << length;
    std::ostringstream name;
    name << "qser-" << std::hex << fnv1a(key.str(), 14695981039346656037ull)
         << fnv1a(key.str(), 0x9e3779b97f4a7c15ull) << ".qser";
    return fs::path(cache.dir) / name.str();
}

ModSeries expand_cached(const CacheConfig& cache, const EtaQuotient& form, u64 modulus,
                        u64 length) {
    if (!cache.active()) return expand(form, modulus, length);

    const fs::path path = cache_path(cache, form.to_text(), modulus, length);
    if (fs::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        ModSeries s = read_qser(in);
        if (s.modulus() != modulus || s.length() != length)
            throw std::runtime_error("cache corruption: header does not match request: " +
                                     path.string());
        std::cerr << "cache: hit " << path.string() << "\n";
        return s;
    }

    ModSeries s = expand(form, modulus, length);
    fs::create_directories(cache.dir);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        write_qser(out, s);
    }
    fs::rename(tmp, path);
    std::cerr << "cache: store " << path.string() << "\n";
    return s;
}

// ----------------------------------------------------------------- output --

std::ostream& open_output(std::ofstream& file, const std::string& out_path) {
    if (out_path.empty()) return std::cout;
    file.open(out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    return file;
}

void write_series_csv(std::ostream& os, const ModSeries& s) {
    os << "n,value\n";
    for (std::size_t n = 0; n < s.length(); ++n) os << n << ',' << s.coeffs()[n] << '\n';
}

void write_series_json(std::ostream& os, const ModSeries& s, const std::string& source) {
    nlohmann::json j;
    j["source"] = source;
    j["modulus"] = s.modulus();
    j["length"] = s.length();
    j["coefficients"] = std::vector<u64>(s.coeffs().begin(), s.coeffs().end());
    os << j.dump(2) << '\n';
}

void print_modularity_text(std::ostream& os, const ModularityReport& rep) {
    os << "weight k = " << to_string(rep.weight) << (rep.weight_is_even_integer ? "  (in 2Z)" : "")
       << '\n';
    if (rep.weight_is_odd_integer)
        os << "advisory: k is an odd integer; the implemented test requires k in 2Z\n";
    os << "sum delta*r_delta = " << rep.sum_delta_r << "  (mod 24: "
       << (rep.cond_24_delta ? "0, holds" : "nonzero, fails") << ")\n";
    os << "sum (N/delta)*r_delta = " << rep.sum_level_over_delta_r << "  (mod 24: "
       << (rep.cond_24_level_over_delta ? "0, holds" : "nonzero, fails") << ")\n";
    os << "prod delta^r_delta = ";
    if (rep.product_factorization.empty()) os << "1";
    for (std::size_t i = 0; i < rep.product_factorization.size(); ++i) {
        if (i) os << " * ";
        os << rep.product_factorization[i].prime << '^' << rep.product_factorization[i].exponent;
    }
    os << "  (rational square: " << (rep.product_is_rational_square ? "yes" : "no") << ")\n";
    if (rep.prefactor_exponent)
        os << "prefactor exponent = " << *rep.prefactor_exponent << '\n';
    os << "all conditions: " << (rep.satisfies_all() ? "hold" : "fail") << '\n';
}

// ------------------------------------------------------------ subcommands --

struct SeriesSource {
    std::string quotient_text;
    std::string builtin;  // "a" or "cphi3"
    std::string input_file;

    ModSeries build(u64 modulus, std::size_t length, const CacheConfig& cache) const {
        if (!quotient_text.empty())
            return expand_cached(cache, EtaQuotient::parse(quotient_text), modulus, length);
        if (builtin == "a") return a_series(modulus, length);
        if (builtin == "cphi3") return cphi3_series(modulus, length);
        if (!input_file.empty()) {
            std::ifstream in(input_file, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open input file: " + input_file);
            ModSeries s = read_qser(in);
            if (s.length() < length)
                throw std::runtime_error("input series is shorter than the requested scan");
            return s;
        }
        throw CLI::ValidationError("source", "provide a quotient, --series or --input");
    }

    std::string name() const {
        if (!quotient_text.empty()) return EtaQuotient::parse(quotient_text).to_text();
        if (builtin == "a") return "a(n)";
        if (builtin == "cphi3") return "cphi3(n)";
        return input_file;
    }
};

int cmd_expand(const std::string& quotient_text, u64 modulus, u64 length,
               const std::string& format, const std::string& out_path, const CacheConfig& cache) {
    const EtaQuotient form = EtaQuotient::parse(quotient_text);
    const ModSeries s = expand_cached(cache, form, modulus, length);
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    if (format == "csv")
        write_series_csv(os, s);
    else if (format == "json")
        write_series_json(os, s, form.to_text());
    else
        write_qser(os, s);
    return kExitOk;
}

int cmd_eta_check(const std::string& quotient_text, bool json_out) {
    const EtaQuotient form = EtaQuotient::parse(quotient_text);
    const ModularityReport rep = check_gordon_ligozat(form);
    if (json_out) {
        std::cout << to_json(rep, cusp_order_table(form)).dump(2) << '\n';
    } else {
        std::cout << form.to_text() << '\n';
        print_modularity_text(std::cout, rep);
    }
    return kExitOk;
}

int cmd_cusps(const std::string& quotient_text, bool json_out) {
    const EtaQuotient form = EtaQuotient::parse(quotient_text);
    const CuspOrderTable table = cusp_order_table(form);
    if (json_out) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& [label, order] : table.entries)
            j.push_back({{"d", label.denominator},
                         {"order_num", to_i64(boost::multiprecision::numerator(order))},
                         {"order_den", to_i64(boost::multiprecision::denominator(order))}});
        std::cout << nlohmann::json{{"cusp_orders", j}, {"min_order", to_string(table.min_order)}}
                         .dump(2)
                  << '\n';
    } else {
        for (const auto& [label, order] : table.entries)
            std::cout << "d = " << label.denominator << ": order " << to_string(order) << '\n';
        std::cout << "min order: " << to_string(table.min_order) << '\n';
        if (!table.all_nonnegative())
            std::cout << "not holomorphic by the cusp-order criterion (negative entry)\n";
    }
    return kExitOk;
}

int cmd_sturm(u64 level, u64 weight, const std::string& group, u64 t, u64 r) {
    u64 effective = level;
    if (t > 1 || r > 0) {
        const LevelBookkeeping lb = sieve_level(level, t, r);
        std::cout << "sieved level N*t^2/gcd(r,t) = " << lb.sieved_level << " on Gamma1\n";
        effective = lb.sieved_level;
    }
    if (group == "gamma0") {
        std::cout << "Gamma0(" << effective << "), k = " << weight
                  << ": bound = " << sturm_bound_gamma0(effective, weight) << " q-exponents\n";
    } else {
        const Gamma1Bound b = sturm_bound_gamma1(effective, weight);
        std::cout << "Gamma1(" << effective << "), k = " << weight
                  << ": index quantity = " << b.index_quantity << ", bound = " << b.bound
                  << " q-exponents (quoted verification length: " << b.quoted_scan_length << ")\n";
    }
    return kExitOk;
}

int cmd_verify(const SeriesSource& source, u64 t, u64 r, u64 l, u64 terms, bool json_out,
               const CacheConfig& cache) {
    if (terms == 0) throw CLI::ValidationError("--terms", "must be positive");
    const ProgressionSelector sel(t, r);
    const std::size_t length = static_cast<std::size_t>(r + t * (terms - 1) + 1);
    const ModSeries s = source.build(l, length, cache);
    CongruenceClaim claim = verify_progression(s, sel, l, terms, report_progress);
    claim.source = source.name();

    if (json_out) {
        nlohmann::json j;
        j["claim"] = {{"source", claim.source}, {"t", t}, {"r", r}, {"l", l}};
        j["status"] = std::string(to_string(claim.status));
        j["scanned_terms"] = claim.terms_checked;
        j["first_violation"] = nullptr;
        if (claim.counterexample)
            j["first_violation"] = {{"n", claim.counterexample->index},
                                    {"value", claim.counterexample->value}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << claim.source << ": c(" << t << "n+" << r << ") = 0 (mod " << l
                  << "): " << to_string(claim.status) << " after " << claim.terms_checked
                  << " terms";
        if (claim.counterexample)
            std::cout << "; first violation at n = " << claim.counterexample->index
                      << " with value " << claim.counterexample->value << " (mod " << l << ")";
        std::cout << '\n';
    }
    return claim.status == ClaimStatus::refuted ? kExitRefuted : kExitOk;
}

int emit_run(const CertificationRun& run, const std::string& out_path) {
    for (const auto& note : run.notes) std::cerr << note << '\n';
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    os << to_json(run).dump(2) << '\n';
    return run.any_refuted() ? kExitRefuted : kExitOk;
}

int cmd_certify(const std::string& target, const std::string& expr, u64 t, u64 r, u64 l, u64 terms,
                bool full, const std::string& out_path) {
    if (target == "theorem-1.1") {
        if (full) {
            const u64 bound = sturm_bound_gamma1(sieve_level(45, 15, 3).sieved_level, 6).bound;
            terms = std::max(full_scan_terms(ProgressionSelector(15, 6), bound),
                             full_scan_terms(ProgressionSelector(15, 12), bound));
        }
        std::cerr << "certify theorem-1.1: scanning " << terms << " progression terms\n";
        return emit_run(certify_theorem_1_1(terms, 5, report_progress), out_path);
    }
    if (target == "theorem-1.2") {
        if (full) {
            terms = std::max({full_scan_terms(ProgressionSelector(45, 7), 0),
                              full_scan_terms(ProgressionSelector(45, 22), 0),
                              full_scan_terms(ProgressionSelector(45, 37), 0)});
        }
        std::cerr << "certify theorem-1.2: scanning " << terms << " progression terms\n";
        return emit_run(certify_theorem_1_2(terms, 5, report_progress), out_path);
    }
    if (target == "quotient") {
        if (expr.empty()) throw CLI::ValidationError("--expr", "required for target 'quotient'");
        const EtaQuotient form = EtaQuotient::parse(expr);
        return emit_run(certify_quotient(form, ProgressionSelector(t, r), l, terms,
                                         report_progress),
                        out_path);
    }
    throw CLI::ValidationError("target", "expected theorem-1.1, theorem-1.2 or quotient");
}

int cmd_cphi3(const std::string& which, u64 count, u64 l, u64 modulus, bool bruteforce,
              u32 budget, const std::string& out_path) {
    if (which == "cphi3") std::cerr << errata::kGeneratingFunctionNote << '\n';
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    os << "n,value,value_mod_" << l << '\n';
    if (bruteforce) {
        if (which != "cphi3")
            throw CLI::ValidationError("--bruteforce", "enumeration exists only for cphi3");
        for (u32 n = 0; n < count; ++n) {
            const u64 v = cphi3_bruteforce(n, budget);
            os << n << ',' << v << ',' << v % l << '\n';
        }
        return kExitOk;
    }
    const ModSeries s =
        which == "a" ? a_series(modulus, count) : cphi3_series(modulus, count);
    for (std::size_t n = 0; n < count; ++n)
        os << n << ',' << s.coeffs()[n] << ',' << s.coeffs()[n] % l << '\n';
    return kExitOk;
}

int cmd_search(const SeriesSource& source, u64 tmax, const std::vector<u64>& moduli, u64 terms,
               bool json_out, const CacheConfig& cache) {
    u64 working = 1;
    for (u64 l : moduli) working = std::lcm(working, l);
    const std::size_t length = static_cast<std::size_t>(tmax * terms + tmax);
    const ModSeries s = source.build(working, length, cache);

    // weight/level context only applies when the source is an eta-quotient
    std::optional<EtaQuotient> form;
    if (!source.quotient_text.empty()) form = EtaQuotient::parse(source.quotient_text);

    nlohmann::json findings = nlohmann::json::array();
    u64 count = 0;
    for (u64 t = 1; t <= tmax; ++t) {
        for (u64 r = 0; r < t; ++r) {
            for (u64 l : moduli) {
                bool all_zero = true;
                std::size_t e = r;
                for (u64 n = 0; n < terms; ++n, e += t) {
                    if (s.coeffs()[e] % l != 0) {
                        all_zero = false;
                        break;
                    }
                }
                if (!all_zero) continue;
                ++count;

                std::string sieved = "-", bound = "-";
                if (form) {
                    const LevelBookkeeping lb = sieve_level(form->level(), t, r);
                    sieved = std::to_string(lb.sieved_level);
                    const Rational k = weight(*form);
                    if (lb.sieved_level >= 3 && boost::multiprecision::denominator(k) == 1 &&
                        k >= 0) {
                        bound = std::to_string(
                            sturm_bound_gamma1(lb.sieved_level,
                                               static_cast<u64>(to_i64(
                                                   boost::multiprecision::numerator(k))))
                                .bound);
                    }
                }
                if (json_out) {
                    nlohmann::json f{{"t", t}, {"r", r}, {"l", l}, {"terms", terms}};
                    f["sieved_level"] = sieved;
                    f["bound_needed"] = bound;
                    findings.push_back(std::move(f));
                } else {
                    std::cout << "candidate: c(" << t << "n+" << r << ") = 0 (mod " << l
                              << ") for " << terms << " terms; sieved level " << sieved
                              << ", bound needed " << bound << '\n';
                }
            }
        }
    }
    if (json_out)
        std::cout << nlohmann::json{{"source", source.name()}, {"findings", findings}}.dump(2)
                  << '\n';
    else if (count == 0)
        std::cout << "no candidates found\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eta-quotient q-series expansion and congruence certification"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    CacheConfig cache;
    cache.dir = default_cache_dir();
    app.add_option("--cache-dir", cache.dir, "directory for binary expansion dumps");
    app.add_flag("--no-cache", cache.disabled, "disable expansion caching");

    // expand
    auto* exp_cmd = app.add_subcommand("expand", "expand an eta-quotient as a q-series mod m");
    std::string exp_quotient, exp_format = "csv", exp_out;
    u64 exp_mod = 0, exp_len = 0;
    exp_cmd->add_option("quotient", exp_quotient, "eta-quotient, e.g. \"45 : 1^-3 * 3^-1 * 15^7 * 45^9\"")
        ->required();
    exp_cmd->add_option("--mod", exp_mod, "coefficient modulus m >= 2")->required();
    exp_cmd->add_option("--len", exp_len, "truncation length")->required();
    exp_cmd->add_option("--format", exp_format, "csv | json | binary")
        ->check(CLI::IsMember({"csv", "json", "binary"}));
    exp_cmd->add_option("--out", exp_out, "output file (default stdout)");

    // eta-check
    auto* check_cmd = app.add_subcommand("eta-check", "evaluate the modularity conditions");
    std::string check_quotient;
    bool check_json = false;
    check_cmd->add_option("quotient", check_quotient)->required();
    check_cmd->add_flag("--json", check_json, "machine-readable output");

    // cusps
    auto* cusps_cmd = app.add_subcommand("cusps", "cusp-order table per divisor of the level");
    std::string cusps_quotient;
    bool cusps_json = false;
    cusps_cmd->add_option("quotient", cusps_quotient)->required();
    cusps_cmd->add_flag("--json", cusps_json);

    // sturm
    auto* sturm_cmd = app.add_subcommand("sturm", "Sturm-type verification bounds");
    u64 sturm_level = 0, sturm_weight = 0, sturm_t = 1, sturm_r = 0;
    std::string sturm_group = "gamma0";
    sturm_cmd->add_option("--level", sturm_level)->required();
    sturm_cmd->add_option("--weight", sturm_weight)->required();
    sturm_cmd->add_option("--group", sturm_group)->check(CLI::IsMember({"gamma0", "gamma1"}));
    sturm_cmd->add_option("--t", sturm_t, "sieve step (applies N*t^2/gcd(r,t) first)");
    sturm_cmd->add_option("--r", sturm_r, "sieve residue");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "scan a congruence c(tn+r) = 0 (mod l)");
    SeriesSource verify_src;
    u64 verify_t = 0, verify_r = 0, verify_l = 0, verify_terms = kDefaultScanTerms;
    bool verify_json = false;
    verify_cmd->add_option("quotient", verify_src.quotient_text, "eta-quotient source");
    verify_cmd->add_option("--series", verify_src.builtin, "builtin source: a | cphi3")
        ->check(CLI::IsMember({"a", "cphi3"}));
    verify_cmd->add_option("--input", verify_src.input_file, "QSER1 file source");
    verify_cmd->add_option("--t", verify_t)->required();
    verify_cmd->add_option("--r", verify_r)->required();
    verify_cmd->add_option("--l", verify_l)->required();
    verify_cmd->add_option("--terms", verify_terms, "progression terms to scan");
    verify_cmd->add_flag("--json", verify_json);

    // certify
    auto* cert_cmd = app.add_subcommand("certify", "run a full certification pipeline");
    std::string cert_target, cert_expr, cert_out;
    u64 cert_t = 1, cert_r = 0, cert_l = 5, cert_terms = kDefaultScanTerms;
    bool cert_full = false;
    cert_cmd->add_option("target", cert_target, "theorem-1.1 | theorem-1.2 | quotient")->required();
    cert_cmd->add_option("--expr", cert_expr, "eta-quotient for target 'quotient'");
    cert_cmd->add_option("--t", cert_t);
    cert_cmd->add_option("--r", cert_r);
    cert_cmd->add_option("--l", cert_l);
    cert_cmd->add_option("--terms", cert_terms, "progression terms to scan");
    cert_cmd->add_flag("--full", cert_full,
                       "scan max(computed bound, quoted 12150001 q-exponents); long-running");
    cert_cmd->add_option("--out", cert_out, "certificate file (default stdout)");

    // cphi3
    auto* cphi_cmd = app.add_subcommand("cphi3", "CSV table of cphi3(n) or a(n)");
    std::string cphi_which = "cphi3", cphi_out;
    u64 cphi_count = 50, cphi_l = 5, cphi_mod = 1000000000000000000ull;
    bool cphi_bruteforce = false;
    u32 cphi_budget = 14;
    cphi_cmd->add_option("--series", cphi_which)->check(CLI::IsMember({"cphi3", "a"}));
    cphi_cmd->add_option("--count", cphi_count, "rows n = 0 .. count-1");
    cphi_cmd->add_option("--l", cphi_l, "congruence modulus column");
    cphi_cmd->add_option("--mod", cphi_mod, "working modulus for the value column");
    cphi_cmd->add_flag("--bruteforce", cphi_bruteforce,
                       "count by symbol enumeration instead of the series");
    cphi_cmd->add_option("--budget", cphi_budget, "enumeration cap (superexponential cost)");
    cphi_cmd->add_option("--out", cphi_out);

    // search
    auto* search_cmd = app.add_subcommand("search", "empirical congruence discovery");
    SeriesSource search_src;
    u64 search_tmax = 60, search_terms = 1000;
    std::vector<u64> search_moduli = {2, 3, 5, 7, 11, 13};
    bool search_json = false;
    search_cmd->add_option("quotient", search_src.quotient_text, "eta-quotient source");
    search_cmd->add_option("--series", search_src.builtin, "builtin source: a | cphi3")
        ->check(CLI::IsMember({"a", "cphi3"}));
    search_cmd->add_option("--tmax", search_tmax, "largest progression step");
    search_cmd->add_option("--moduli", search_moduli, "candidate moduli l")->delimiter(',');
    search_cmd->add_option("--terms", search_terms, "terms per progression");
    search_cmd->add_flag("--json", search_json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*exp_cmd) return cmd_expand(exp_quotient, exp_mod, exp_len, exp_format, exp_out, cache);
        if (*check_cmd) return cmd_eta_check(check_quotient, check_json);
        if (*cusps_cmd) return cmd_cusps(cusps_quotient, cusps_json);
        if (*sturm_cmd) return cmd_sturm(sturm_level, sturm_weight, sturm_group, sturm_t, sturm_r);
        if (*verify_cmd)
            return cmd_verify(verify_src, verify_t, verify_r, verify_l, verify_terms, verify_json,
                              cache);
        if (*cert_cmd)
            return cmd_certify(cert_target, cert_expr, cert_t, cert_r, cert_l, cert_terms,
                               cert_full, cert_out);
        if (*cphi_cmd)
            return cmd_cphi3(cphi_which, cphi_count, cphi_l, cphi_mod, cphi_bruteforce,
                             cphi_budget, cphi_out);
        if (*search_cmd)
            return cmd_search(search_src, search_tmax, search_moduli, search_terms, search_json,
                              cache);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
