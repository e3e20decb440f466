#include <chrono>

#include "twistaff/error.hpp"
#include "twistaff/module.hpp"

namespace twistaff {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<MonoId> basis_upto(const Module& mod, const Degree& w) {
    std::vector<MonoId> out;
    for (const auto& [d, v] : mod.graded_basis())
        if (d <= w) out.insert(out.end(), v.begin(), v.end());
    return out;
}

ModuleElement diff(const ModuleElement& a, const ModuleElement& b) {
    ModuleElement r = a;
    add_scaled(r, b, Scalar(-1));
    return r;
}

std::string gen_str(const TwistedContext& ctx, const AffineGen& g) {
    return render_affine(ctx, AffineElement::gen(g));
}

}  // namespace

Report verify_module(const Module& mod, const VerifyOptions& opt) {
    const TwistedContext& ctx = mod.context();
    const std::string suite = "module";
    Report rep;
    Degree top = opt.max_weight ? *opt.max_weight : mod.cutoff();
    std::vector<MonoId> vs = basis_upto(mod, top);
    std::vector<AffineGen> gens;
    for (const auto& g : window_generators(ctx, opt.window))
        if (!g.central) gens.push_back(g);

    // level
    {
        auto t0 = Clock::now();
        std::optional<std::string> bad;
        for (MonoId m : vs) {
            ModuleElement v = mod.basis_element(m);
            AffineElement k;
            k.central = Scalar(1);
            ModuleElement want;
            add_scaled(want, v, mod.level());
            if (mod.act(k, v) != want) {
                bad = mod.render_monomial(m);
                break;
            }
        }
        if (bad) rep.fail(suite, "level-action", "k on " + *bad);
        else rep.pass(suite, "level-action", ms_since(t0));
    }

    // commutator fidelity
    {
        auto t0 = Clock::now();
        size_t checks = 0;
        std::optional<std::string> bad;
        for (size_t x = 0; x < gens.size() && !bad; ++x)
            for (size_t y = x + 1; y < gens.size() && !bad; ++y) {
                AffineElement X = AffineElement::gen(gens[x]), Y = AffineElement::gen(gens[y]);
                AffineElement Z = ta_bracket(ctx, X, Y);
                for (MonoId m : vs) {
                    ModuleElement v = mod.basis_element(m);
                    ModuleElement lhs = diff(mod.act(X, mod.act(Y, v)), mod.act(Y, mod.act(X, v)));
                    ModuleElement rhs = mod.act(Z, v);
                    ++checks;
                    if (lhs != rhs) {
                        bad = "[" + gen_str(ctx, gens[x]) + ", " + gen_str(ctx, gens[y]) + "] on " +
                              mod.render_monomial(m) + ": " + mod.render(lhs) + " vs " + mod.render(rhs);
                        break;
                    }
                }
            }
        std::string name = "commutator-fidelity(window=" + std::to_string(opt.window) + ", checks=" + std::to_string(checks) + ")";
        if (bad) rep.fail(suite, name, *bad);
        else rep.pass(suite, name, ms_since(t0));
    }

    // nilpotent central contributions exercised by the pairs above
    {
        size_t count = 0;
        std::string sample;
        for (size_t x = 0; x < gens.size(); ++x)
            for (size_t y = 0; y < gens.size(); ++y) {
                AffineElement X = AffineElement::gen(gens[x]), Y = AffineElement::gen(gens[y]);
                if (nilpotent_central_part(ctx, X, Y).is_zero()) continue;
                if (count++ == 0)
                    sample = "[" + gen_str(ctx, gens[x]) + ", " + gen_str(ctx, gens[y]) + "] = " +
                             render_affine(ctx, ta_bracket(ctx, X, Y));
            }
        rep.add(suite, "nilpotent-central-terms=" + std::to_string(count), Status::pass,
                count ? std::optional<std::string>(sample) : std::nullopt);
    }

    // grading by the action
    {
        auto t0 = Clock::now();
        std::optional<std::string> bad;
        for (const auto& g : gens) {
            for (MonoId m : vs) {
                ModuleElement r = mod.act(g.i, g.n, mod.basis_element(m));
                if (r.empty()) continue;
                auto w = mod.element_weight(r);
                if (!w || *w != mod.weight(m) - g.n) {
                    bad = gen_str(ctx, g) + " on " + mod.render_monomial(m);
                    break;
                }
            }
            if (bad) break;
        }
        if (bad) rep.fail(suite, "action-grading", *bad);
        else rep.pass(suite, "action-grading", ms_since(t0));
    }

    if (mod.vertex_operator_mode()) {
        // Omega on the generators against the matrix computed on M
        auto t0 = Clock::now();
        std::optional<std::string> bad;
        size_t dm = mod.spec().space.dim();
        for (size_t b = 0; b < dm && !bad; ++b) {
            ModuleElement want;
            for (size_t c = 0; c < dm; ++c) add_scaled(want, mod.generator(c), mod.omega_on_space()(c, b));
            ModuleElement got = mod.omega(mod.generator(b));
            if (got != want) bad = mod.spec().space.labels[b] + ": " + mod.render(got) + " vs " + mod.render(want);
        }
        if (bad) rep.fail(suite, "omega-on-generators", *bad);
        else rep.pass(suite, "omega-on-generators", ms_since(t0));

        for (size_t b = 0; b < dm; ++b) {
            ModuleElement w = mod.generator(b);
            ModuleElement l0 = mod.sugawara(0, w);
            ModuleElement shifted = l0;
            add_scaled(shifted, w, -Scalar(mpq_class(mod.twist_weight(b).num(), mod.twist_weight(b).den())));
            // generalized eigenvector: (L(0) - h)^k w = 0
            ModuleElement cur = shifted;
            for (size_t k = 0; k < dm && !cur.empty(); ++k) {
                ModuleElement nx = mod.sugawara(0, cur);
                add_scaled(nx, cur, -Scalar(mpq_class(mod.twist_weight(b).num(), mod.twist_weight(b).den())));
                cur = nx;
            }
            std::string name = "twist-weight(" + mod.spec().space.labels[b] + ")=" + mod.twist_weight(b).str();
            if (!cur.empty()) rep.fail(suite, name, "L(0) w = " + mod.render(l0));
            else rep.pass(suite, name);
        }

        // L(0) acts as the grading
        t0 = Clock::now();
        bad.reset();
        bool nil = false;
        for (MonoId m : vs) {
            Scalar d(mpq_class(mod.weight(m).num(), mod.weight(m).den()));
            ModuleElement cur = mod.basis_element(m);
            ModuleElement first;
            // N raises the Jordan index, so nilpotency is bounded by the length times dim g
            size_t bound = dm + ctx.dim() * (mod.length(m) + 1);
            for (size_t k = 0; k <= bound && !cur.empty(); ++k) {
                ModuleElement nx = mod.sugawara(0, cur);
                add_scaled(nx, cur, -d);
                if (k == 0) first = nx;
                cur = nx;
            }
            if (!first.empty()) nil = true;
            if (!cur.empty()) {
                bad = mod.render_monomial(m) + ": L(0) - d gives " + mod.render(first);
                break;
            }
        }
        if (bad) rep.fail(suite, "l0-grading", *bad);
        else rep.pass(suite, "l0-grading", ms_since(t0));
        if (nil || mod.lm0_nilpotent_part())
            rep.add(suite, "l0-nilpotent-part", Status::pass, std::string("present"));
    } else {
        // [a(m), L(-1)] = m a(m-1) + (N a)(m-1)
        auto t0 = Clock::now();
        std::optional<std::string> bad;
        for (const auto& g : gens) {
            for (MonoId m : vs) {
                ModuleElement v = mod.basis_element(m);
                ModuleElement lhs = diff(mod.act(g.i, g.n, mod.act_formal_l(v)), mod.act_formal_l(mod.act(g.i, g.n, v)));
                ModuleElement rhs;
                Degree n1 = g.n - Degree(1);
                add_scaled(rhs, mod.act(g.i, n1, v), Scalar(mpq_class(g.n.num(), g.n.den())));
                if (ctx.njump(g.i) >= 0) add_scaled(rhs, mod.act(ctx.njump(g.i), n1, v), Scalar(1));
                if (lhs != rhs) {
                    bad = gen_str(ctx, g) + " on " + mod.render_monomial(m);
                    break;
                }
            }
            if (bad) break;
        }
        if (bad) rep.fail(suite, "formal-l-relation", *bad);
        else rep.pass(suite, "formal-l-relation", ms_since(t0));
    }

    // g-compatibility
    {
        auto t0 = Clock::now();
        std::optional<std::string> bad;
        for (const auto& g : gens) {
            Scalar ph = g.n.frac().is_zero() ? Scalar(1) : Scalar::root_of_unity(ctx.alpha(g.i).num(), ctx.alpha(g.i).den());
            for (MonoId m : vs) {
                ModuleElement v = mod.basis_element(m);
                ModuleElement xv = mod.act(g.i, g.n, v);
                ModuleElement s1 = mod.apply_semisimple(xv);
                ModuleElement s2;
                add_scaled(s2, mod.act(g.i, g.n, mod.apply_semisimple(v)), ph);
                ModuleElement n1 = mod.apply_nilpotent(xv);
                ModuleElement n2 = mod.act(g.i, g.n, mod.apply_nilpotent(v));
                if (ctx.njump(g.i) >= 0) add_scaled(n2, mod.act(ctx.njump(g.i), g.n, v), Scalar(1));
                if (s1 != s2 || n1 != n2) {
                    bad = gen_str(ctx, g) + " on " + mod.render_monomial(m);
                    break;
                }
            }
            if (bad) break;
        }
        if (bad) rep.fail(suite, "g-compatibility", *bad);
        else rep.pass(suite, "g-compatibility", ms_since(t0));
    }

    // graded dimensions against the independent count
    {
        auto got = mod.character(mod.cutoff());
        auto want = pbw_count(mod, mod.cutoff());
        if (got != want) {
            std::string w;
            for (const auto& [d, n] : want) w += d.str() + ":" + std::to_string(n) + " ";
            rep.fail(suite, "pbw-count", "expected " + w);
        } else {
            rep.pass(suite, "pbw-count");
        }
    }
    return rep;
}

Report verify_virasoro(const Module& mod, long range) {
    const std::string suite = "virasoro";
    Report rep;
    if (!mod.vertex_operator_mode()) {
        rep.add(suite, "virasoro", Status::skipped, std::string("no Sugawara operators in ") + mode_name(mod.mode()) + " mode");
        return rep;
    }
    Scalar c = mod.central_charge();
    rep.pass(suite, "central-charge=" + c.str());
    Degree top = mod.cutoff() - Degree(range);
    if (top < mod.min_weight()) top = mod.min_weight();
    std::vector<MonoId> vs = basis_upto(mod, top);
    auto t0 = Clock::now();
    std::optional<std::string> bad;
    size_t checks = 0;
    for (long m = -range; m <= range && !bad; ++m)
        for (long n = -range; n <= range && !bad; ++n) {
            if (m >= n) continue;
            for (MonoId id : vs) {
                ModuleElement v = mod.basis_element(id);
                ModuleElement lhs = diff(mod.sugawara(m, mod.sugawara(n, v)), mod.sugawara(n, mod.sugawara(m, v)));
                ModuleElement rhs;
                add_scaled(rhs, mod.sugawara(m + n, v), Scalar(m - n));
                if (m + n == 0) add_scaled(rhs, v, Scalar(m * m * m - m) / Scalar(12) * c);
                ++checks;
                if (lhs != rhs) {
                    bad = "[L(" + std::to_string(m) + "), L(" + std::to_string(n) + ")] on " + mod.render_monomial(id) +
                          ": " + mod.render(lhs) + " vs " + mod.render(rhs);
                    break;
                }
            }
        }
    std::string name = "virasoro-relations(range=" + std::to_string(range) + ", checks=" + std::to_string(checks) + ")";
    if (bad) rep.fail(suite, name, *bad);
    else rep.pass(suite, name, ms_since(t0));

    // L(1) kills every generator
    std::optional<std::string> bad1;
    for (size_t b = 0; b < mod.spec().space.dim(); ++b)
        for (long n = 1; n <= range; ++n)
            if (!mod.sugawara(n, mod.generator(b)).empty()) bad1 = "L(" + std::to_string(n) + ") on " + mod.spec().space.labels[b];
    if (bad1) rep.fail(suite, "lowest-weight", *bad1);
    else rep.pass(suite, "lowest-weight");
    return rep;
}

}  // namespace twistaff
