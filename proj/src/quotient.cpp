#include "twistaff/quotient.hpp"

#include <chrono>
#include <deque>
#include <functional>

#include "twistaff/error.hpp"
#include "twistaff/expr.hpp"

namespace twistaff {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ModuleElement apply_null(const Module& mod, const NullFieldSpec& s, const Degree& n, const ModuleElement& v) {
    ModuleElement out;
    for (size_t i = 0; i < s.a.size(); ++i)
        if (!s.a[i].is_zero()) add_scaled(out, mod.act(i, n, v), s.a[i]);
    return out;
}

}  // namespace

NullFieldSpec null_field_from(const TwistedContext& ctx, const std::string& element, long power) {
    NullFieldSpec s;
    s.a = ctx.to_jordan(parse_vector(element, ctx.lie().labels()));
    s.power = power;
    if (power < 1) fail(ErrorKind::config, "null field power must be positive");
    std::optional<Degree> g;
    for (size_t i = 0; i < s.a.size(); ++i) {
        if (s.a[i].is_zero()) continue;
        if (g && *g != ctx.alpha(i))
            fail(ErrorKind::config, "null field '" + element + "' is not an eigenvector of the semisimple part");
        g = ctx.alpha(i);
    }
    if (!g) fail(ErrorKind::config, "null field is zero");
    s.gamma = *g;
    return s;
}

Report check_null_field(const TwistedContext& ctx, const NullFieldSpec& spec) {
    const std::string suite = "quotient";
    Report rep;
    Vector aa = ctx.bracket_jordan(spec.a, spec.a);
    bool eig = true;
    for (size_t i = 0; i < spec.a.size(); ++i)
        if (!spec.a[i].is_zero() && ctx.alpha(i) != spec.gamma) eig = false;
    if (eig) rep.pass(suite, "null-field-eigenvector(gamma=" + spec.gamma.str() + ")");
    else rep.fail(suite, "null-field-eigenvector", "components outside g^[" + spec.gamma.str() + "]");
    if (is_zero(aa)) rep.pass(suite, "null-field-bracket");
    else rep.fail(suite, "null-field-bracket", "[a,a] != 0");
    Scalar f = ctx.form_jordan(spec.a, spec.a);
    if (f.is_zero()) rep.pass(suite, "null-field-isotropic");
    else rep.fail(suite, "null-field-isotropic", "(a,a) = " + f.str());
    Scalar nf = ctx.form_jordan(ctx.apply_n(spec.a), spec.a);
    if (nf.is_zero()) rep.pass(suite, "null-field-nilpotent-isotropic");
    else rep.fail(suite, "null-field-nilpotent-isotropic", "(N a, a) = " + nf.str());
    return rep;
}

// ---- echelon ----

ModuleElement Echelon::reduce(ModuleElement v) const {
    auto it = v.begin();
    while (it != v.end()) {
        auto r = rows_.find(it->first);
        if (r == rows_.end()) {
            ++it;
            continue;
        }
        MonoId k = it->first;
        Scalar c = it->second;
        add_scaled(v, r->second, -c);
        it = v.upper_bound(k);
    }
    return v;
}

bool Echelon::insert(ModuleElement v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    MonoId p = v.begin()->first;
    Scalar inv = v.begin()->second.inverse();
    ModuleElement n;
    add_scaled(n, v, inv);
    rows_.emplace(p, std::move(n));
    return true;
}

size_t RelationSpace::rank_at(const Degree& d) const {
    auto it = spaces.find(d);
    return it == spaces.end() ? 0 : it->second.rank();
}

bool RelationSpace::contains(const Module& mod, const ModuleElement& v) const {
    if (v.empty()) return true;
    auto w = mod.element_weight(v);
    if (!w) {
        // split into homogeneous parts
        std::map<Degree, ModuleElement> parts;
        for (const auto& [m, c] : v) parts[mod.weight(m)][m] = c;
        for (const auto& [d, p] : parts)
            if (!contains(mod, p)) return false;
        return true;
    }
    auto it = spaces.find(*w);
    return it != spaces.end() && it->second.contains(v);
}

// ---- seeds ----

std::vector<ModuleElement> power_field_coefficients(const Module& mod, const NullFieldSpec& spec,
                                                    const Degree& target) {
    if (target > mod.cutoff())
        fail(ErrorKind::cutoff_exceeded, "target weight " + target.str() + " above cutoff " + mod.cutoff().str());
    const Degree B = mod.min_weight();
    std::vector<ModuleElement> out;
    long m = spec.power;
    for (const auto& [d, monos] : mod.graded_basis()) {
        if (d > target) break;
        Degree delta = target - d;  // -sum n_j
        Degree top = d - B;         // positive modes lower the weight by at most this much
        // n_j = gamma + z_j, z_j integer, sorted descending
        Degree lo = -(delta + top);
        std::vector<Degree> modes;
        for (Degree n = spec.gamma + Degree(top.floor() + 1); n >= lo; n -= Degree(1))
            if (n <= top) modes.push_back(n);
        for (MonoId id : monos) {
            // one coefficient per v: sum over multisets, each weighted by its multinomial count
            ModuleElement coef;
            std::vector<size_t> picked;
            std::function<void(size_t, const ModuleElement&, Degree, long)> rec =
                [&](size_t from, const ModuleElement& cur, Degree sum, long used) {
                    if (used == m) {
                        if (-sum != delta) return;
                        mpz_class c, f;
                        mpz_fac_ui(c.get_mpz_t(), static_cast<unsigned long>(m));
                        for (size_t a = 0, b = 0; a < picked.size(); a = b) {
                            while (b < picked.size() && picked[b] == picked[a]) ++b;
                            mpz_fac_ui(f.get_mpz_t(), b - a);
                            c /= f;
                        }
                        add_scaled(coef, cur, Scalar(mpq_class(c)));
                        return;
                    }
                    for (size_t k = from; k < modes.size(); ++k) {
                        const Degree& n = modes[k];
                        long left = m - used - 1;
                        if (-(sum + n + Degree(left) * n) > delta) break;
                        if (-(sum + n + Degree(left) * modes.back()) < delta) continue;
                        ModuleElement nx = apply_null(mod, spec, n, cur);
                        if (nx.empty()) continue;
                        picked.push_back(k);
                        rec(k, nx, sum + n, used + 1);
                        picked.pop_back();
                    }
                };
            rec(0, mod.basis_element(id), Degree(0), 0);
            if (!coef.empty()) out.push_back(std::move(coef));
        }
    }
    return out;
}

// ---- closure ----

RelationSpace submodule_closure(const Module& mod, const std::vector<ModuleElement>& seeds) {
    RelationSpace rel;
    const TwistedContext& ctx = mod.context();
    const Degree B = mod.min_weight(), D = mod.cutoff();
    std::deque<std::pair<Degree, ModuleElement>> queue;
    auto push = [&](const ModuleElement& v) {
        if (v.empty()) return;
        std::map<Degree, ModuleElement> parts;
        for (const auto& [m, c] : v) parts[mod.weight(m)][m] = c;
        for (auto& [d, p] : parts) {
            if (d > D) continue;
            Echelon& e = rel.spaces[d];
            ModuleElement r = e.reduce(p);
            if (r.empty()) continue;
            e.insert(r);
            queue.emplace_back(d, std::move(r));
        }
    };
    for (const auto& s : seeds) push(s);
    while (!queue.empty()) {
        auto [d, v] = std::move(queue.front());
        queue.pop_front();
        for (size_t i = 0; i < ctx.dim(); ++i) {
            // a^i(n) moves weight d to d - n within [B, D]
            Degree first = ctx.alpha(i) + Degree((d - D - ctx.alpha(i)).floor());
            for (Degree n = first; d - n >= B; n += Degree(1)) {
                if (d - n > D) continue;
                push(mod.act(i, n, v));
            }
        }
    }
    return rel;
}

// ---- quotient ----

void check_quotient_supported(const Module& mod) {
    if (mod.truncated())
        fail(ErrorKind::domain, std::string("quotients of ") + mode_name(mod.mode()) +
                                    " modules with zero modes in g^[0] need the full iota tail; use tilde or breve");
    const Scalar& l = mod.level();
    if (!l.is_rational() || l.rational_value().get_den() != 1 || l.rational_value() < 0)
        fail(ErrorKind::domain, "the null-field quotient needs a non-negative integral level");
}

Quotient build_quotient(const Module& mod, const NullFieldSpec& spec, const Degree& margin) {
    check_quotient_supported(mod);
    Report chk = check_null_field(mod.context(), spec);
    if (!chk.ok()) {
        for (const auto& e : chk.entries)
            if (e.status == Status::fail) fail(ErrorKind::config, "null field rejected: " + e.check + ": " + e.witness.value_or(""));
    }
    if (margin.sign() < 0) fail(ErrorKind::config, "margin must be non-negative");
    Quotient q;
    q.spec = spec;
    q.margin = margin;
    q.certified = mod.cutoff() - margin;
    std::vector<ModuleElement> seeds;
    for (const auto& [d, v] : mod.graded_basis()) {
        auto s = power_field_coefficients(mod, spec, d);
        seeds.insert(seeds.end(), s.begin(), s.end());
    }
    q.relations = submodule_closure(mod, seeds);
    return q;
}

std::vector<std::pair<Degree, size_t>> quotient_character(const Module& mod, const Quotient& q,
                                                          const Degree& max_weight) {
    if (max_weight > q.certified)
        fail(ErrorKind::cutoff_exceeded, "weight " + max_weight.str() + " is beyond the certified range " +
                                             q.certified.str() + " (cutoff " + mod.cutoff().str() + " minus margin " +
                                             q.margin.str() + ")");
    if (q.certified < mod.min_weight())
        fail(ErrorKind::cutoff_exceeded, "the certified range is empty: cutoff " + mod.cutoff().str() + " minus margin " +
                                             q.margin.str() + " lies below the lowest weight " + mod.min_weight().str());
    std::vector<std::pair<Degree, size_t>> out;
    for (const auto& [d, v] : mod.graded_basis())
        if (d <= max_weight) out.emplace_back(d, v.size() - q.relations.rank_at(d));
    return out;
}

bool is_annihilated(const Module& mod, const RelationSpace& rel, const NullFieldSpec& spec,
                    const Degree& max_weight) {
    for (const auto& [d, v] : mod.graded_basis()) {
        if (d > max_weight) break;
        for (const auto& c : power_field_coefficients(mod, spec, d))
            if (!rel.contains(mod, c)) return false;
    }
    return true;
}

Report verify_quotient(const Module& mod, const Quotient& q) {
    const std::string suite = "quotient";
    Report rep = check_null_field(mod.context(), q.spec);
    const TwistedContext& ctx = mod.context();
    auto t0 = Clock::now();

    // sandwich
    bool ok = true;
    for (const auto& [d, v] : mod.graded_basis())
        if (q.relations.rank_at(d) > v.size()) ok = false;
    if (ok) rep.pass(suite, "dimension-sandwich");
    else rep.fail(suite, "dimension-sandwich", "relation rank above parent dimension");

    // closure: generators keep relations inside the relation space within the certified range
    std::optional<std::string> bad;
    for (const auto& [d, e] : q.relations.spaces) {
        if (d > q.certified) continue;
        for (const auto& [p, row] : e.rows()) {
            for (size_t i = 0; i < ctx.dim() && !bad; ++i)
                for (long z = -2; z <= 2; ++z) {
                    Degree n = ctx.alpha(i) + Degree(z);
                    if (d - n > mod.cutoff()) continue;
                    if (!q.relations.contains(mod, mod.act(i, n, row)))
                        bad = render_affine(ctx, AffineElement::gen(AffineGen{false, i, n})) + " on " + mod.render(row);
                }
            if (bad) break;
        }
        if (bad) break;
    }
    if (bad) rep.fail(suite, "submodule-closure", *bad);
    else rep.pass(suite, "submodule-closure", ms_since(t0));

    // Virasoro descends
    if (mod.vertex_operator_mode()) {
        t0 = Clock::now();
        bad.reset();
        for (const auto& [d, e] : q.relations.spaces) {
            if (d > q.certified) continue;
            for (const auto& [p, row] : e.rows()) {
                for (long n = -2; n <= 2 && !bad; ++n) {
                    if (d - Degree(n) > mod.cutoff()) continue;
                    if (!q.relations.contains(mod, mod.sugawara(n, row)))
                        bad = "L(" + std::to_string(n) + ") on " + mod.render(row);
                }
                if (bad) break;
            }
            if (bad) break;
        }
        if (bad) rep.fail(suite, "virasoro-descends", *bad);
        else rep.pass(suite, "virasoro-descends", ms_since(t0));
    }

    t0 = Clock::now();
    if (is_annihilated(mod, q.relations, q.spec, q.certified)) rep.pass(suite, "annihilated", ms_since(t0));
    else rep.fail(suite, "annihilated", "a power-field coefficient is outside the relation space");

    std::string dims;
    for (const auto& [d, n] : quotient_character(mod, q, q.certified)) dims += (dims.empty() ? "" : " ") + d.str() + ":" + std::to_string(n);
    rep.add(suite, "certified-through=" + q.certified.str(), Status::pass, dims);
    return rep;
}

}  // namespace twistaff
