#include "twistaff/harness.hpp"

#include <chrono>
#include <map>
#include <random>
#include <set>

#include "twistaff/error.hpp"

namespace twistaff {

namespace {

Scalar random_scalar(std::mt19937_64& rng, long n) {
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    std::vector<mpq_class> c;
    for (long k = 0; k < euler_phi(n); ++k) c.emplace_back(num(rng), den(rng));
    for (auto& q : c) q.canonicalize();
    return Scalar::from_coefficients(n, c);
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"scalar", "lie", "structure", "affine", "module", "virasoro", "quotient"};
    return names;
}

std::vector<std::string> parse_suites(const std::string& list) {
    if (list == "all") return suite_names();
    if (list == "none") return {};
    std::vector<std::string> out;
    std::set<std::string> seen;
    size_t start = 0;
    while (start <= list.size() && !list.empty()) {
        size_t end = list.find(',', start);
        std::string s = list.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!s.empty()) {
            bool known = false;
            for (const auto& n : suite_names()) known = known || n == s;
            if (!known) fail(ErrorKind::usage, "unknown suite '" + s + "'");
            if (seen.insert(s).second) out.push_back(s);
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

Report scalar_suite(unsigned long seed, const std::vector<long>& conductors) {
    const std::string suite = "scalar";
    Report rep;
    std::set<long> ns{1, 3, 4, 5, 8, 12};
    for (long c : conductors) ns.insert(c);
    std::mt19937_64 rng(seed);
    auto t0 = std::chrono::steady_clock::now();
    std::optional<std::string> bad;
    for (long n : ns) {
        for (long k = 0; k < n && !bad; ++k)
            if (!Scalar::root_of_unity(k, n).pow(n).is_one()) bad = "zeta_" + std::to_string(n) + "^" + std::to_string(k);
    }
    if (bad) rep.fail(suite, "root-of-unity-order", *bad);
    else rep.pass(suite, "root-of-unity-order");
    const int samples = 40;
    size_t count = 0;
    bad.reset();
    for (long n : ns) {
        if (canonical_conductor(n) != n) continue;
        for (int s = 0; s < samples && !bad; ++s) {
            Scalar a = random_scalar(rng, n), b = random_scalar(rng, n), c = random_scalar(rng, n);
            ++count;
            if (!((a * b) * c - a * (b * c)).is_zero()) bad = "associativity";
            else if (!(a * (b + c) - (a * b + a * c)).is_zero()) bad = "distributivity";
            else if (!(a * b - b * a).is_zero() || !(a + b - (b + a)).is_zero()) bad = "commutativity";
            else if (!a.is_zero() && !(a * a.inverse()).is_one()) bad = "inverse";
            if (bad) *bad += " at a = " + a.str() + ", b = " + b.str() + ", c = " + c.str() + " (z = zeta_" + std::to_string(n) + ")";
        }
    }
    std::string name = "field-axioms(seed=" + std::to_string(seed) + ", samples=" + std::to_string(count) + ")";
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (bad) rep.fail(suite, name, *bad);
    else rep.pass(suite, name, ms);
    bad.reset();
    for (long n : ns) {
        if (canonical_conductor(n) != n) continue;
        for (int s = 0; s < 10 && !bad; ++s) {
            Scalar a = random_scalar(rng, n);
            if (!(parse_scalar(a.str(n), n) == a)) bad = a.str(n) + " (z = zeta_" + std::to_string(n) + ")";
        }
    }
    if (bad) rep.fail(suite, "render-round-trip", *bad);
    else rep.pass(suite, "render-round-trip");
    bool div = false;
    try {
        (void)Scalar().inverse();
    } catch (const Error& e) {
        div = e.kind() == ErrorKind::division_by_zero;
    }
    if (div) rep.pass(suite, "division-by-zero-signalled");
    else rep.fail(suite, "division-by-zero-signalled", "inverse of 0 did not raise division_by_zero");
    return rep;
}

Report run_suites(const RunConfig& cfg, const std::vector<std::string>& suites) {
    Report rep;
    if (suites.empty()) return rep;
    std::set<std::string> want(suites.begin(), suites.end());
    if (want.count("lie")) {
        // a broken table is reported, not thrown, and blocks everything built on it
        Report lie = lie_checks(build_algebra(cfg, false));
        if (!lie.ok()) {
            for (const auto& s : suite_names()) {
                if (s == "scalar" && want.count(s)) rep.append(scalar_suite(cfg.seed, {}));
                else if (s == "lie") rep.append(lie);
                else if (want.count(s)) rep.add(s, "suite", Status::skipped, "algebra failed the lie suite");
            }
            return rep;
        }
    }
    bool need_ctx = want.size() > 1 || !want.count("scalar");
    // suites whose table is absent are reported as skipped
    std::map<std::string, std::string> absent;
    if (!cfg.has_module())
        for (const char* s : {"module", "virasoro", "quotient"}) absent[s] = "no module table";
    else if (!cfg.has_quotient())
        absent["quotient"] = "no quotient table";
    bool need_mod = cfg.has_module() && (want.count("module") || want.count("virasoro") || want.count("quotient"));
    ContextPtr ctx;
    ModulePtr mod;
    std::optional<NullFieldSpec> nf;
    if (need_ctx || cfg.doc.contains("algebra")) ctx = build_context(cfg);
    if (need_mod) mod = build_module(ctx, cfg);
    if (want.count("quotient") && !absent.count("quotient")) {
        nf = build_null_field(*ctx, cfg, mod->level());
        check_quotient_supported(*mod);
    }
    for (const auto& s : suite_names()) {
        if (!want.count(s)) continue;
        if (auto it = absent.find(s); it != absent.end()) {
            rep.add(s, "suite", Status::skipped, it->second);
            continue;
        }
        if (s == "scalar") {
            std::vector<long> cs;
            if (ctx)
                for (const auto& a : ctx->aut().alphas) cs.push_back(a.den() == 1 ? 1 : canonical_conductor(a.den()));
            rep.append(scalar_suite(cfg.seed, cs));
        } else if (s == "lie") {
            rep.append(lie_checks(ctx->lie()));
        } else if (s == "structure") {
            rep.append(verify_structure(ctx->lie(), ctx->aut()));
        } else if (s == "affine") {
            rep.append(verify_affine(*ctx, cfg.affine_window()));
        } else if (s == "module") {
            VerifyOptions o;
            o.window = cfg.module_window();
            rep.append(verify_module(*mod, o));
        } else if (s == "virasoro") {
            rep.append(verify_virasoro(*mod));
        } else if (s == "quotient") {
            Quotient q = build_quotient(*mod, *nf, quotient_margin(cfg));
            rep.append(verify_quotient(*mod, q));
        }
    }
    return rep;
}

}  // namespace twistaff
