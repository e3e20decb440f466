// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "twistaff/config.hpp"
#include "twistaff/error.hpp"
#include "twistaff/harness.hpp"

using namespace twistaff;
namespace fs = std::filesystem;

namespace {

std::string configs_dir = "configs";

RunConfig cfg(const std::string& name) { return load_config(configs_dir + "/" + name); }

const std::vector<std::string> canonical{"sl2_id_l1.cfg", "sl2_order2.cfg", "sl2_unipotent.cfg"};

struct Outcome {
    bool ok = true;
    std::string note;
};

void require(Outcome& o, bool cond, const std::string& what) {
    if (!cond && o.ok) {
        o.ok = false;
        o.note = what;
    }
}

void require_report(Outcome& o, const Report& r, const std::string& where) {
    for (const auto& e : r.entries)
        if (e.status != Status::pass) require(o, false, where + ": " + e.suite + "/" + e.check + " " + e.witness.value_or(""));
}

const ReportEntry* find_prefix(const Report& r, const std::string& prefix) {
    for (const auto& e : r.entries)
        if (e.check.rfind(prefix, 0) == 0) return &e;
    return nullptr;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join(const std::vector<size_t>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os.str();
}

ModulePtr tilde(const std::string& file, const std::string& level, const std::string& cutoff) {
    RunConfig c = cfg(file);
    c.doc["module"]["mode"] = "tilde";
    c.doc["module"]["level"] = level;
    c.cutoff = Degree::parse(cutoff);
    return build_module(build_context(c), c);
}

Outcome structure() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& f : canonical) {
        Report r = run_suites(cfg(f), {"structure"});
        require(o, r.entries.size() >= 10, f + ": structure suite too small");
        require_report(o, r, f);
    }
    double s = seconds_since(t0);
    require(o, s < 10, "took " + std::to_string(s) + " s");
    if (o.ok) o.note = "3 examples, " + std::to_string(s) + " s";
    return o;
}

Outcome lie_axioms() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& f : canonical) {
        ContextPtr ctx = build_context(cfg(f));
        Report r = verify_affine(*ctx, 3);
        require(o, find_prefix(r, "antisymmetry(window=3") && find_prefix(r, "jacobi(window=3"), f + ": checks missing");
        require_report(o, r, f);
    }
    double s = seconds_since(t0);
    require(o, s < 60, "took " + std::to_string(s) + " s");
    if (o.ok) o.note = "window 3, " + std::to_string(s) + " s";
    return o;
}

Outcome commutator_fidelity() {
    Outcome o;
    size_t checks = 0;
    for (const auto& f : canonical) {
        ModulePtr m = tilde(f, "1", "3");
        VerifyOptions v;
        v.window = 2;
        Report r = verify_module(*m, v);
        const ReportEntry* e = find_prefix(r, "commutator-fidelity");
        require(o, e && e->status == Status::pass, f + ": commutator fidelity");
        if (e) {
            size_t at = e->check.find("checks=");
            if (at != std::string::npos) checks += std::stoul(e->check.substr(at + 7));
        }
        require_report(o, r, f);
    }
    require(o, checks > 0, "no checks ran");
    if (o.ok) o.note = std::to_string(checks) + " commutators";
    return o;
}

Outcome virasoro() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& f : {"sl2_id_l1.cfg", "sl2_order2.cfg"})
        for (long ell : {1L, 2L}) {
            ModulePtr m = tilde(f, std::to_string(ell), "4");
            std::string where = std::string(f) + " l=" + std::to_string(ell);
            mpq_class c(3 * ell, ell + 2);
            c.canonicalize();
            require(o, m->central_charge() == Scalar(c), where + ": central charge");
            require_report(o, verify_virasoro(*m, 2), where);
        }
    double s = seconds_since(t0);
    require(o, s < 300, "took " + std::to_string(s) + " s");
    if (o.ok) o.note = "id and order-2 at l=1,2, weights <= cutoff-2, " + std::to_string(s) + " s";
    return o;
}

Outcome grading_restriction() {
    Outcome o;
    for (const auto& f : {"sl2_id_l1.cfg", "sl2_order2.cfg", "sl2_unipotent.cfg", "sl2_adjoint.cfg"})
        for (const char* mode : {"tilde", "breve"}) {
            RunConfig c = cfg(f);
            c.doc["module"]["mode"] = mode;
            if (std::string(mode) == "breve") c.doc["module"]["weights"] = "from-omega";
            c.cutoff = Degree::parse("4");
            ModulePtr m = build_module(build_context(c), c);
            require(o, !m->truncated(), std::string(f) + ": truncated");
            auto mine = m->character(m->cutoff());
            auto oracle = pbw_count(*m, m->cutoff());
            require(o, mine == oracle, std::string(f) + " " + mode + ": dims differ from the PBW count");
        }
    ModulePtr vac = tilde("sl2_id_l1.cfg", "1", "3");
    std::vector<size_t> d;
    for (const auto& [w, n] : vac->character(vac->cutoff())) d.push_back(n);
    require(o, d == std::vector<size_t>{1, 3, 9, 22}, "vacuum dims " + join(d));
    if (o.ok) o.note = "vacuum " + join(d);
    return o;
}

// (L(0) - h)^k w^b = 0 for some k <= dim M
bool generalized_eigen(const Module& m, size_t b, const Degree& h) {
    ModuleElement v = m.generator(b);
    Scalar hs(mpq_class(h.num(), h.den()));
    for (size_t k = 0; k <= m.generator_weights().size(); ++k) {
        if (is_zero(v)) return true;
        ModuleElement w = m.sugawara(0, v);
        add_scaled(w, v, -hs);
        v = std::move(w);
    }
    return is_zero(v);
}

Outcome twist_weights() {
    Outcome o;
    size_t count = 0;
    for (const auto& entry : fs::directory_iterator(configs_dir)) {
        if (entry.path().extension() != ".cfg") continue;
        RunConfig c;
        try {
            c = load_config(entry.path().string());
            if (!c.has_module()) continue;
            c.cutoff = Degree::parse("1");
            ModulePtr m = build_module(build_context(c), c);
            if (!m->vertex_operator_mode()) continue;
            for (size_t b = 0; b < m->generator_weights().size(); ++b, ++count)
                require(o, generalized_eigen(*m, b, m->twist_weight(b)),
                        entry.path().filename().string() + ": generator " + std::to_string(b));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::lie_invalid) continue;
            throw;
        }
    }
    for (long ell : {1L, 2L}) {
        ModulePtr m = tilde("sl2_adjoint.cfg", std::to_string(ell), "1");
        for (size_t b = 0; b < 3; ++b) {
            require(o, m->twist_weight(b) == Degree(2, ell + 2), "adjoint weight at l=" + std::to_string(ell));
            require(o, generalized_eigen(*m, b, Degree(2, ell + 2)), "adjoint L(0) at l=" + std::to_string(ell));
        }
        count += 3;
    }
    if (o.ok) o.note = std::to_string(count) + " generators, adjoint h = 2/(l+2)";
    return o;
}

Outcome quotient() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    RunConfig c = cfg("sl2_id_l1.cfg");
    c.cutoff = Degree::parse("6");
    ContextPtr ctx = build_context(c);
    ModulePtr m = build_module(ctx, c);
    NullFieldSpec nf = build_null_field(*ctx, c, m->level());
    Quotient q = build_quotient(*m, nf, Degree(2));
    std::vector<size_t> d;
    for (const auto& [w, n] : quotient_character(*m, q, Degree(4))) d.push_back(n);
    // theta(q) / prod (1 - q^m)
    std::vector<long> theta(5, 0), part(5, 0);
    for (long k = -2; k <= 2; ++k)
        if (k * k <= 4) theta[k * k] += 1;
    part[0] = 1;
    for (int j = 1; j <= 4; ++j)
        for (int n = j; n <= 4; ++n) part[n] += part[n - j];
    std::vector<size_t> oracle(5, 0);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b) oracle[a + b] += theta[a] * part[b];
    require(o, d == oracle, "dims " + join(d) + " vs oracle " + join(oracle));
    require(o, is_annihilated(*m, q.relations, nf, Degree(4)), "quotient not annihilated");
    require(o, !is_annihilated(*m, RelationSpace{}, nf, Degree(4)), "parent reported annihilated");
    double s = seconds_since(t0);
    require(o, s < 300, "took " + std::to_string(s) + " s");
    if (o.ok) o.note = join(d) + ", " + std::to_string(s) + " s";
    return o;
}

Outcome non_semisimple() {
    Outcome o;
    RunConfig c = cfg("sl2_unipotent.cfg");
    ContextPtr ctx = build_context(c);
    bool nonzero = false, all_zero = true;
    for (const auto& a : ctx->aut().alphas) all_zero = all_zero && a == Degree(0);
    for (size_t i = 0; i < ctx->dim(); ++i)
        for (size_t j = 0; j < ctx->dim(); ++j) nonzero = nonzero || !ctx->nform(i, j).is_zero();
    require(o, all_zero && nonzero, "expected all alpha = 0 and N != 0");
    require_report(o, run_suites(c, {"lie", "structure", "affine"}), "suites");
    ModulePtr m = tilde("sl2_unipotent.cfg", "1", "3");
    VerifyOptions v;
    Report r = verify_module(*m, v);
    require_report(o, r, "module");
    const ReportEntry* e = find_prefix(r, "nilpotent-central-terms=");
    require(o, e && e->check != "nilpotent-central-terms=0", "no nilpotent central term exercised");
    std::string br = render_affine(*ctx, ta_bracket(*ctx, parse_affine(*ctx, "h@1"), parse_affine(*ctx, "f@-1")));
    require(o, br == "-2*f@0 - 2*K", "[h@1, f@-1] = " + br);
    if (o.ok) o.note = (e ? e->check : std::string()) + ", [h@1, f@-1] = " + br;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) configs_dir = argv[1];
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"automorphism structure suite", structure},
        {"twisted affine Lie axioms", lie_axioms},
        {"module commutator fidelity", commutator_fidelity},
        {"Virasoro relations", virasoro},
        {"grading restriction and PBW count", grading_restriction},
        {"twist-weight consistency", twist_weights},
        {"L(l,0) quotient character", quotient},
        {"non-semisimple coverage", non_semisimple},
    };
    int failed = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        if (!o.ok) ++failed;
        std::printf("%s %zu %s: %s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first, o.note.c_str());
        std::fflush(stdout);
    }
    return failed;
}
