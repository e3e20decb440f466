#include "twistaff/module.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "twistaff/error.hpp"

namespace twistaff {

namespace {

Degree to_degree(const Scalar& s, const char* what) {
    if (!s.is_rational()) fail(ErrorKind::domain, std::string(what) + " is not rational");
    const mpq_class& q = s.rational_value();
    mpz_class n = q.get_num(), d = q.get_den();
    if (!n.fits_slong_p() || !d.fits_slong_p()) fail(ErrorKind::domain, std::string(what) + " is too large");
    return Degree(n.get_si(), d.get_si());
}

Scalar phase(const RationalExponent& a) { return a.is_zero() ? Scalar(1) : Scalar::root_of_unity(a.num(), a.den()); }

std::string coeff_prefix(const Scalar& c, long m, bool first) {
    std::string s;
    if (c.is_rational()) {
        mpq_class q = c.rational_value();
        bool neg = q < 0;
        if (neg) q = -q;
        if (first) s = neg ? "-" : "";
        else s = neg ? " - " : " + ";
        if (q != 1) s += q.get_str() + "*";
        return s;
    }
    s = first ? "" : " + ";
    return s + "(" + c.str(m) + ")*";
}

}  // namespace

const char* mode_name(ModuleMode m) {
    switch (m) {
    case ModuleMode::hat: return "hat";
    case ModuleMode::breve: return "breve";
    case ModuleMode::overarc: return "overarc";
    case ModuleMode::tilde: return "tilde";
    }
    return "?";
}

ModuleMode parse_mode(const std::string& s) {
    if (s == "hat") return ModuleMode::hat;
    if (s == "breve") return ModuleMode::breve;
    if (s == "overarc") return ModuleMode::overarc;
    if (s == "tilde") return ModuleMode::tilde;
    fail(ErrorKind::config, "unknown module mode '" + s + "' (hat, breve, overarc, tilde)");
}

void add_scaled(ModuleElement& acc, const ModuleElement& x, const Scalar& c) {
    if (c.is_zero()) return;
    for (const auto& [m, v] : x) {
        auto [it, fresh] = acc.try_emplace(m, v * c);
        if (!fresh) {
            it->second += v * c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

bool is_zero(const ModuleElement& x) { return x.empty(); }

// ---- generating spaces ----

GeneratorSpace trivial_space(const TwistedContext& ctx, const Scalar& ell) {
    GeneratorSpace M;
    M.labels = {"vac"};
    M.g_semisimple = Matrix::identity(1);
    M.g_nilpotent = Matrix(1, 1);
    Vector xn = ctx.to_jordan(find_inner_generator(ctx.lie(), ctx.aut()));
    for (size_t i : ctx.iota_indices()) {
        Matrix r(1, 1);
        Vector e(ctx.dim());
        e[i] = Scalar(1);
        r(0, 0) = -ell * ctx.form_jordan(xn, e);
        M.iota[i] = r;
    }
    M.has_iota = true;
    return M;
}

GeneratorSpace adjoint_space(const TwistedContext& ctx, const Scalar& ell) {
    size_t d = ctx.dim();
    GeneratorSpace M;
    for (size_t i = 0; i < d; ++i) M.labels.push_back(ctx.label(i));
    M.g_semisimple = Matrix(d, d);
    M.g_nilpotent = Matrix(d, d);
    for (size_t i = 0; i < d; ++i) {
        M.g_semisimple(i, i) = phase(ctx.alpha(i));
        if (ctx.njump(i) >= 0) M.g_nilpotent(ctx.njump(i), i) = Scalar(1);
    }
    Vector xn = ctx.to_jordan(find_inner_generator(ctx.lie(), ctx.aut()));
    for (size_t i : ctx.iota_indices()) {
        Matrix r(d, d);
        for (size_t b = 0; b < d; ++b)
            for (const auto& [k, c] : ctx.bracket(i, b)) r(k, b) += c;
        Vector e(d);
        e[i] = Scalar(1);
        Scalar shift = -ell * ctx.form_jordan(xn, e);
        for (size_t b = 0; b < d; ++b) r(b, b) += shift;
        M.iota[i] = r;
    }
    M.has_iota = true;
    return M;
}

void validate_space(const TwistedContext& ctx, const GeneratorSpace& M, const Scalar& ell) {
    size_t m = M.dim();
    auto square = [&](const Matrix& a, const std::string& what) {
        if (a.rows() != m || a.cols() != m)
            fail(ErrorKind::config, what + " must be " + std::to_string(m) + "x" + std::to_string(m));
    };
    square(M.g_semisimple, "g_semisimple");
    square(M.g_nilpotent, "g_nilpotent");
    if (M.lm0) square(*M.lm0, "lm0");
    if (!M.g_nilpotent.pow(static_cast<unsigned>(m)).is_zero())
        fail(ErrorKind::config, "g_nilpotent on M is not nilpotent");
    if (!(M.g_semisimple * M.g_nilpotent == M.g_nilpotent * M.g_semisimple))
        fail(ErrorKind::config, "g_semisimple and g_nilpotent on M do not commute");
    if (!inverse(M.g_semisimple)) fail(ErrorKind::config, "g_semisimple on M is singular");
    if (!M.has_iota) return;
    auto iota = ctx.iota_indices();
    for (const auto& [i, r] : M.iota) {
        if (!ctx.alpha(i).is_zero())
            fail(ErrorKind::config, "iota_action given for " + ctx.label(i) + ", which is not fixed by g");
        square(r, "iota_action[" + ctx.label(i) + "]");
    }
    auto rho = [&](size_t i) {
        auto it = M.iota.find(i);
        return it == M.iota.end() ? Matrix(m, m) : it->second;
    };
    for (size_t i : iota)
        for (size_t j : iota) {
            Matrix want = ctx.nform(i, j) * ell * Matrix::identity(m);
            for (const auto& [k, c] : ctx.bracket(i, j)) want += c * rho(k);
            if (!(commutator(rho(i), rho(j)) == want))
                fail(ErrorKind::config, "iota_action is not a representation on the pair (" + ctx.label(i) + ", " +
                                            ctx.label(j) + ")");
        }
    for (size_t i : iota) {
        if (!(M.g_semisimple * rho(i) == rho(i) * M.g_semisimple))
            fail(ErrorKind::config, "iota_action of " + ctx.label(i) + " does not commute with g_semisimple");
        Matrix want = ctx.njump(i) >= 0 ? rho(ctx.njump(i)) : Matrix(m, m);
        if (!(commutator(M.g_nilpotent, rho(i)) == want))
            fail(ErrorKind::config, "iota_action of " + ctx.label(i) + " is not compatible with g_nilpotent");
    }
}

// ---- module ----

Module::Module(ContextPtr ctx, ModuleSpec spec) : ctx_(std::move(ctx)), spec_(std::move(spec)) {
    const TwistedContext& c = *ctx_;
    size_t d = c.dim();
    if (spec_.iota_depth < 0) fail(ErrorKind::config, "iota_depth must be non-negative");
    iota_idx_ = c.iota_indices();
    iota_pos_.assign(d, -1);
    for (size_t p = 0; p < iota_idx_.size(); ++p) iota_pos_[iota_idx_[p]] = static_cast<int>(p);
    if (iota_idx_.size() > 60000) fail(ErrorKind::domain, "too many fixed basis elements");

    bool needs_iota = mode() == ModuleMode::tilde || mode() == ModuleMode::breve;
    if (needs_iota && !spec_.space.has_iota && !iota_idx_.empty())
        fail(ErrorKind::config, std::string(mode_name(mode())) + " mode needs iota_action");
    validate_space(c, spec_.space, level());

    // Sugawara data: X and the constant correction
    x_correction_.assign(d, Scalar());
    for (size_t i = 0; i < d; ++i) {
        Vector dual(d), e(d);
        for (const auto& [k, v] : c.dual_terms(i)) dual[k] = v;
        e[i] = Scalar(1);
        Scalar a(mpq_class(c.alpha(i).num(), c.alpha(i).den()));
        Vector u = c.apply_n(dual) - scaled(dual, a);
        x_correction_ = x_correction_ + c.bracket_jordan(u, e);
        Vector v1 = c.apply_n(dual) - scaled(dual, a + Scalar(1));
        Vector v2 = c.apply_n(v1) - scaled(v1, a);
        omega_constant_ += c.form_jordan(v2, e);
    }
    omega_constant_ = -(level() / Scalar(2)) * omega_constant_;
    for (size_t k = 0; k < d; ++k)
        if (!x_correction_[k].is_zero() && !c.alpha(k).is_zero())
            fail(ErrorKind::internal, "correction term leaves the fixed subalgebra");

    compute_weights();
    if (mode() == ModuleMode::overarc) setup_overarc();
    enumerate_basis();
}

bool Module::truncated() const {
    return (mode() == ModuleMode::hat || mode() == ModuleMode::overarc) && !iota_idx_.empty();
}

Scalar Module::central_charge() const {
    auto h = ctx_->dual_coxeter();
    if (!h) fail(ErrorKind::domain, "central charge needs a simple algebra");
    return level() * Scalar(static_cast<long>(ctx_->dim())) / (level() + Scalar(*h));
}

void Module::compute_weights() {
    const TwistedContext& c = *ctx_;
    const GeneratorSpace& M = spec_.space;
    size_t m = M.dim();
    size_t d = c.dim();
    std::optional<Matrix> C;  // 2 (ell + h) L_M(0), or L_M(0) in the formal modes
    // formal modes without explicit weights fall back to Omega_M / 2(ell + h)
    bool omega_weights = !M.lm0;
    if (vertex_operator_mode() || omega_weights) {
        auto h = c.dual_coxeter();
        if (!h) fail(ErrorKind::domain, "Sugawara construction needs a simple algebra");
        Scalar two_lh = Scalar(2) * (level() + Scalar(*h));
        if (two_lh.is_zero()) fail(ErrorKind::domain, "level is critical (ell + h = 0)");
        sugawara_pref_ = two_lh.inverse();
        if (M.lm0) {
            C = two_lh * *M.lm0;
        } else {
            if (!M.has_iota && !iota_idx_.empty())
                fail(ErrorKind::config, "weights from Omega need iota_action");
            auto rho_of = [&](const Vector& v) {
                Matrix r(m, m);
                for (size_t k = 0; k < d; ++k) {
                    if (v[k].is_zero()) continue;
                    if (!c.alpha(k).is_zero()) fail(ErrorKind::internal, "zero mode outside the fixed subalgebra");
                    auto it = M.iota.find(k);
                    if (it != M.iota.end()) r += v[k] * it->second;
                }
                return r;
            };
            Matrix om = omega_constant_ * Matrix::identity(m);
            om -= rho_of(x_correction_);
            for (size_t i = 0; i < d; ++i) {
                Vector dual(d), e(d);
                for (const auto& [k, v] : c.dual_terms(i)) dual[k] = v;
                e[i] = Scalar(1);
                if (c.alpha(i).is_zero()) {
                    om += rho_of(e) * rho_of(dual);
                } else {
                    Scalar nf;
                    for (const auto& [k, v] : c.dual_terms(i)) nf += v * c.nform(i, k);
                    Scalar a(mpq_class(c.alpha(i).num(), c.alpha(i).den()));
                    om += rho_of(c.bracket_jordan(e, dual));
                    om += ((a + nf) * level()) * Matrix::identity(m);
                }
            }
            C = om;
        }
        omega_m_ = *C;
    } else {
        C = *M.lm0;
    }
    // generalized eigenvalue per generator
    Scalar scale = vertex_operator_mode() || omega_weights ? sugawara_pref_ : Scalar(1);
    std::vector<mpq_class> roots;
    if (m > 0) {
        roots = rational_roots(charpoly(*C));
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    }
    gen_weight_.clear();
    lm0_nilpotent_ = false;
    for (size_t b = 0; b < m; ++b) {
        Vector e(m);
        e[b] = Scalar(1);
        bool found = false;
        for (const auto& r : roots) {
            Matrix sh = *C - Scalar(r) * Matrix::identity(m);
            if (!is_zero(sh.pow(static_cast<unsigned>(m)) * e)) continue;
            if (!is_zero(sh * e)) lm0_nilpotent_ = true;
            gen_weight_.push_back(to_degree(Scalar(r) * scale, "generator weight"));
            found = true;
            break;
        }
        if (!found)
            fail(ErrorKind::domain, "generator " + M.labels[b] +
                                        " is not in a single generalized eigenspace of L_M(0) with rational eigenvalue");
    }
    min_weight_ = gen_weight_.empty() ? Degree(0) : *std::min_element(gen_weight_.begin(), gen_weight_.end());
}

Degree Module::twist_weight(size_t b) const {
    if (b >= gen_weight_.size()) fail(ErrorKind::usage, "generator index out of range");
    return gen_weight_[b];
}

// ---- symbols and monomials ----

SymId Module::sym_id(bool formal_l, size_t i, const Degree& n) const {
    auto key = std::make_tuple(formal_l, formal_l ? size_t(0) : i, n);
    auto it = sym_index_.find(key);
    if (it != sym_index_.end()) return it->second;
    Sym s;
    s.formal_l = formal_l;
    s.i = formal_l ? 0 : i;
    s.n = n;
    s.rank = formal_l ? 1 : (n.sign() < 0 ? 0 : (n.sign() == 0 ? 2 : 3));
    SymId id = static_cast<SymId>(syms_.size());
    syms_.push_back(s);
    sym_index_.emplace(key, id);
    return id;
}

MonoId Module::mono_id(std::vector<SymId> syms, std::uint32_t b) const {
    std::string key(reinterpret_cast<const char*>(&b), sizeof b);
    key.append(reinterpret_cast<const char*>(syms.data()), syms.size() * sizeof(SymId));
    auto it = mono_index_.find(key);
    if (it != mono_index_.end()) return it->second;
    Mono mo;
    mo.b = b;
    mo.weight = gen_weight_[b];
    for (SymId s : syms) mo.weight += syms_[s].formal_l ? Degree(1) : -syms_[s].n;
    mo.syms = std::move(syms);
    MonoId id = static_cast<MonoId>(monos_.size());
    monos_.push_back(std::move(mo));
    mono_index_.emplace(std::move(key), id);
    return id;
}

bool Module::sym_less_equal(SymId x, SymId y) const {
    const Sym& a = syms_[x];
    const Sym& b = syms_[y];
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.n != b.n) return a.n < b.n;
    return a.i <= b.i;
}

ModuleElement Module::prepend(SymId x, MonoId m) const {
    std::vector<SymId> s;
    s.reserve(monos_[m].syms.size() + 1);
    s.push_back(x);
    s.insert(s.end(), monos_[m].syms.begin(), monos_[m].syms.end());
    std::uint32_t b = monos_[m].b;
    if (mode() == ModuleMode::overarc && syms_[x].rank == 2 && !lead_.empty()) {
        Tail t;
        for (SymId y : s) t.push_back(static_cast<std::uint16_t>(iota_pos_[syms_[y].i]));
        if (!tail_standard(t)) return reduce_tail(t, b);
    }
    return {{mono_id(std::move(s), b), Scalar(1)}};
}

const ModuleElement& Module::act_sym(SymId x, MonoId m) const {
    std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | m;
    auto it = act_cache_.find(key);
    if (it != act_cache_.end()) return it->second;
    ModuleElement r = compute_act(x, m);
    return act_cache_.emplace(key, std::move(r)).first->second;
}

ModuleElement Module::act_sym_elem(SymId x, const ModuleElement& v) const {
    ModuleElement out;
    for (const auto& [m, c] : v) add_scaled(out, act_sym(x, m), c);
    return out;
}

ModuleElement Module::compute_act(SymId x, MonoId m) const {
    Sym X = syms_[x];
    if (monos_[m].syms.empty()) {
        std::uint32_t b = monos_[m].b;
        if (X.rank == 3) return {};
        if (X.rank == 2 && (mode() == ModuleMode::tilde || mode() == ModuleMode::breve)) {
            ModuleElement out;
            auto it = spec_.space.iota.find(X.i);
            if (it == spec_.space.iota.end()) return out;
            for (size_t c = 0; c < spec_.space.dim(); ++c) {
                const Scalar& v = it->second(c, b);
                if (!v.is_zero()) out[mono_id({}, static_cast<std::uint32_t>(c))] = v;
            }
            return out;
        }
        return prepend(x, m);
    }
    SymId y = monos_[m].syms.front();
    if (X.rank != 3 && sym_less_equal(x, y)) return prepend(x, m);
    std::vector<SymId> rest_syms(monos_[m].syms.begin() + 1, monos_[m].syms.end());
    MonoId rest = mono_id(std::move(rest_syms), monos_[m].b);
    ModuleElement inner = act_sym(x, rest);
    ModuleElement out;
    for (const auto& [mm, c] : inner) add_scaled(out, act_sym(y, mm), c);
    add_scaled(out, bracket_then_act(x, y, rest), Scalar(1));
    return out;
}

ModuleElement Module::bracket_then_act(SymId x, SymId y, MonoId rest) const {
    Sym X = syms_[x], Y = syms_[y];
    const TwistedContext& c = *ctx_;
    ModuleElement out;
    if (X.formal_l && Y.formal_l) return out;
    if (!X.formal_l && !Y.formal_l) {
        Degree n = X.n + Y.n;
        for (const auto& [k, v] : c.bracket(X.i, Y.i)) add_scaled(out, act_sym(sym_id(false, k, n), rest), v);
        if (n.is_zero()) {
            Scalar z = Scalar(mpq_class(X.n.num(), X.n.den())) * c.form(X.i, Y.i) + c.nform(X.i, Y.i);
            if (!z.is_zero()) add_scaled(out, {{rest, Scalar(1)}}, z * level());
        }
        return out;
    }
    // [a(m), L] = m a(m-1) + (N a)(m-1)
    const Sym& A = X.formal_l ? Y : X;
    Scalar sign = X.formal_l ? Scalar(-1) : Scalar(1);
    Degree n = A.n - Degree(1);
    Scalar mcoef(mpq_class(A.n.num(), A.n.den()));
    if (!mcoef.is_zero()) add_scaled(out, act_sym(sym_id(false, A.i, n), rest), sign * mcoef);
    if (c.njump(A.i) >= 0) add_scaled(out, act_sym(sym_id(false, c.njump(A.i), n), rest), sign);
    return out;
}

ModuleElement Module::apply_word(const std::vector<SymId>& syms, const ModuleElement& v) const {
    ModuleElement cur = v;
    for (size_t k = syms.size(); k-- > 0;) cur = act_sym_elem(syms[k], cur);
    return cur;
}

// ---- OVERARC: the Omega relation on iota tails ----

namespace {

bool tail_less(const std::vector<std::uint16_t>& a, const std::vector<std::uint16_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    // graded lex on exponent vectors: more of a smaller variable is larger
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] != b[k]) return a[k] > b[k];
    return false;
}

bool tail_divides(const std::vector<std::uint16_t>& d, const std::vector<std::uint16_t>& t) {
    return std::includes(t.begin(), t.end(), d.begin(), d.end());
}

}  // namespace

bool Module::tail_standard(const Tail& t) const { return lead_.empty() || !tail_divides(lead_, t); }

const Module::TailPoly& Module::free_left_mul(std::uint16_t x, const Tail& t) const {
    auto key = std::make_pair(x, t);
    auto it = free_cache_.find(key);
    if (it != free_cache_.end()) return it->second;
    TailPoly out;
    if (t.empty() || x <= t.front()) {
        Tail u;
        u.push_back(x);
        u.insert(u.end(), t.begin(), t.end());
        out[u] = Scalar(1);
    } else {
        const TwistedContext& c = *ctx_;
        std::uint16_t t0 = t.front();
        Tail rest(t.begin() + 1, t.end());
        TailPoly inner = free_left_mul(x, rest);
        auto accum = [&](const TailPoly& p, const Scalar& k) {
            for (const auto& [u, v] : p) {
                Scalar& s = out[u];
                s += v * k;
            }
        };
        for (const auto& [u, v] : inner) accum(free_left_mul(t0, u), v);
        size_t xi = iota_idx_[x], ti = iota_idx_[t0];
        for (const auto& [k, v] : c.bracket(xi, ti)) accum(free_left_mul(static_cast<std::uint16_t>(iota_pos_[k]), rest), v);
        Scalar z = c.nform(xi, ti);
        if (!z.is_zero()) accum({{rest, Scalar(1)}}, z * level());
        for (auto i = out.begin(); i != out.end();) i = i->second.is_zero() ? out.erase(i) : std::next(i);
    }
    return free_cache_.emplace(key, std::move(out)).first->second;
}

Module::TailPoly Module::free_mul(const Tail& q, const TailPoly& p) const {
    TailPoly cur = p;
    for (size_t k = q.size(); k-- > 0;) {
        TailPoly next;
        for (const auto& [u, v] : cur)
            for (const auto& [w, c] : free_left_mul(q[k], u)) next[w] += v * c;
        for (auto i = next.begin(); i != next.end();) i = i->second.is_zero() ? next.erase(i) : std::next(i);
        cur = std::move(next);
    }
    return cur;
}

void Module::setup_overarc() {
    const TwistedContext& c = *ctx_;
    size_t d = c.dim();
    omega_target_ = omega_m_;
    if (iota_idx_.empty()) {
        if (!(omega_m_ == omega_constant_ * Matrix::identity(spec_.space.dim())))
            fail(ErrorKind::config, "L_M(0) disagrees with the scalar value of Omega; the module would collapse");
        return;
    }
    TailPoly om;
    auto add = [&](const TailPoly& p, const Scalar& k) {
        for (const auto& [u, v] : p) om[u] += v * k;
    };
    Scalar cst = omega_constant_;
    for (size_t i = 0; i < d; ++i) {
        if (c.alpha(i).is_zero()) {
            for (const auto& [k, v] : c.dual_terms(i))
                add(free_left_mul(static_cast<std::uint16_t>(iota_pos_[i]), Tail{static_cast<std::uint16_t>(iota_pos_[k])}), v);
        } else {
            Vector dual(d), e(d);
            for (const auto& [k, v] : c.dual_terms(i)) dual[k] = v;
            e[i] = Scalar(1);
            Vector br = c.bracket_jordan(e, dual);
            for (size_t k = 0; k < d; ++k)
                if (!br[k].is_zero()) om[Tail{static_cast<std::uint16_t>(iota_pos_[k])}] += br[k];
            Scalar nf;
            for (const auto& [k, v] : c.dual_terms(i)) nf += v * c.nform(i, k);
            cst += (Scalar(mpq_class(c.alpha(i).num(), c.alpha(i).den())) + nf) * level();
        }
    }
    for (size_t k = 0; k < d; ++k)
        if (!x_correction_[k].is_zero()) om[Tail{static_cast<std::uint16_t>(iota_pos_[k])}] -= x_correction_[k];
    om[Tail{}] += cst;
    for (auto i = om.begin(); i != om.end();) i = i->second.is_zero() ? om.erase(i) : std::next(i);
    omega_free_ = om;
    lead_.clear();
    for (const auto& [u, v] : om)
        if (u.size() == 2 && (lead_.empty() || tail_less(lead_, u))) lead_ = u;
    if (lead_.empty()) fail(ErrorKind::internal, "Omega has no quadratic part on the fixed subalgebra");
}

const ModuleElement& Module::reduce_tail(const Tail& t, std::uint32_t b) const {
    auto key = std::make_pair(t, b);
    auto it = tail_cache_.find(key);
    if (it != tail_cache_.end()) return it->second;
    ModuleElement out;
    auto mono_of = [&](const Tail& u, std::uint32_t c) {
        std::vector<SymId> s;
        for (auto p : u) s.push_back(sym_id(false, iota_idx_[p], Degree(0)));
        return mono_id(std::move(s), c);
    };
    if (tail_standard(t)) {
        out[mono_of(t, b)] = Scalar(1);
    } else {
        Tail q;
        std::set_difference(t.begin(), t.end(), lead_.begin(), lead_.end(), std::back_inserter(q));
        TailPoly P = free_mul(q, omega_free_);
        Scalar lc = P.at(t);
        Scalar inv = lc.inverse();
        for (size_t c = 0; c < spec_.space.dim(); ++c) {
            const Scalar& v = omega_target_(c, b);
            if (!v.is_zero()) add_scaled(out, reduce_tail(q, static_cast<std::uint32_t>(c)), v * inv);
        }
        for (const auto& [u, v] : P) {
            if (u == t) continue;
            add_scaled(out, reduce_tail(u, b), -v * inv);
        }
    }
    return tail_cache_.emplace(key, std::move(out)).first->second;
}

// ---- basis enumeration ----

void Module::enumerate_basis() {
    const TwistedContext& c = *ctx_;
    size_t m = spec_.space.dim();
    std::lock_guard lk(mu_);
    basis_.clear();
    if (m == 0) return;
    Degree room = cutoff() - min_weight_;
    std::vector<SymId> cand;
    for (size_t i = 0; i < c.dim(); ++i)
        for (Degree n = c.alpha(i) - Degree(1); -n <= room; n -= Degree(1)) cand.push_back(sym_id(false, i, n));
    if (has_formal_l() && Degree(1) <= room) cand.push_back(sym_id(true, 0, Degree(-1)));
    std::sort(cand.begin(), cand.end(), [&](SymId a, SymId b) { return sym_less_equal(a, b) && a != b; });
    auto wt = [&](SymId s) { return syms_[s].formal_l ? Degree(1) : -syms_[s].n; };

    std::vector<Tail> tails{Tail{}};
    if (mode() == ModuleMode::hat || mode() == ModuleMode::overarc) {
        std::vector<Tail> layer{Tail{}};
        for (int depth = 1; depth <= spec_.iota_depth && !iota_idx_.empty(); ++depth) {
            std::vector<Tail> next;
            for (const auto& t : layer) {
                std::uint16_t start = t.empty() ? 0 : t.back();
                for (std::uint16_t p = start; p < iota_idx_.size(); ++p) {
                    Tail u = t;
                    u.push_back(p);
                    next.push_back(u);
                }
            }
            for (const auto& u : next)
                if (mode() != ModuleMode::overarc || tail_standard(u)) tails.push_back(u);
            layer = std::move(next);
        }
    }

    for (std::uint32_t b = 0; b < m; ++b) {
        Degree budget = cutoff() - gen_weight_[b];
        if (budget.sign() < 0) continue;
        std::vector<SymId> cur;
        std::function<void(size_t, Degree)> rec = [&](size_t from, Degree left) {
            for (const auto& t : tails) {
                std::vector<SymId> s = cur;
                for (auto p : t) s.push_back(sym_id(false, iota_idx_[p], Degree(0)));
                MonoId id = mono_id(std::move(s), b);
                basis_[monos_[id].weight].push_back(id);
            }
            for (size_t k = from; k < cand.size(); ++k) {
                Degree w = wt(cand[k]);
                if (w > left) continue;
                cur.push_back(cand[k]);
                rec(k, left - w);
                cur.pop_back();
            }
        };
        rec(0, budget);
    }
}

std::vector<Degree> Module::weights() const {
    std::vector<Degree> w;
    for (const auto& [k, v] : basis_) w.push_back(k);
    return w;
}

size_t Module::dim_at(const Degree& w) const {
    auto it = basis_.find(w);
    return it == basis_.end() ? 0 : it->second.size();
}

std::vector<std::pair<Degree, size_t>> Module::character(const Degree& max_weight) const {
    if (max_weight > cutoff()) fail(ErrorKind::cutoff_exceeded, "character weight " + max_weight.str() + " above cutoff " + cutoff().str());
    std::vector<std::pair<Degree, size_t>> out;
    for (const auto& [w, v] : basis_)
        if (w <= max_weight) out.emplace_back(w, v.size());
    return out;
}

Degree Module::weight(MonoId m) const {
    std::lock_guard lk(mu_);
    return monos_.at(m).weight;
}

size_t Module::length(MonoId m) const {
    std::lock_guard lk(mu_);
    return monos_.at(m).syms.size();
}

ModuleElement Module::generator(size_t b) const {
    if (b >= spec_.space.dim()) fail(ErrorKind::usage, "generator index out of range");
    std::lock_guard lk(mu_);
    return {{mono_id({}, static_cast<std::uint32_t>(b)), Scalar(1)}};
}

ModuleElement Module::basis_element(MonoId m) const { return {{m, Scalar(1)}}; }

ModuleElement Module::act(size_t i, const Degree& n, const ModuleElement& v) const {
    check_coset(*ctx_, i, n);
    std::lock_guard lk(mu_);
    return act_sym_elem(sym_id(false, i, n), v);
}

ModuleElement Module::act(const AffineElement& x, const ModuleElement& v) const {
    std::lock_guard lk(mu_);
    ModuleElement out;
    for (const auto& [key, c] : x.terms) add_scaled(out, act(key.first, key.second, v), c);
    add_scaled(out, v, x.central * level());
    return out;
}

ModuleElement Module::act_formal_l(const ModuleElement& v) const {
    if (!has_formal_l()) fail(ErrorKind::domain, "the formal L(-1) exists only in hat and breve modes");
    std::lock_guard lk(mu_);
    return act_sym_elem(sym_id(true, 0, Degree(-1)), v);
}

ModuleElement Module::normal_form(const std::vector<std::optional<AffineGen>>& word, size_t b) const {
    ModuleElement v = generator(b);
    std::lock_guard lk(mu_);
    for (size_t k = word.size(); k-- > 0;) {
        if (!word[k]) v = act_formal_l(v);
        else if (word[k]->central) {
            ModuleElement s;
            add_scaled(s, v, level());
            v = std::move(s);
        } else v = act(word[k]->i, word[k]->n, v);
    }
    check_cutoff(v);
    return v;
}

void Module::check_cutoff(const ModuleElement& v) const {
    std::lock_guard lk(mu_);
    for (const auto& [m, c] : v)
        if (monos_[m].weight > cutoff())
            fail(ErrorKind::cutoff_exceeded, "result has weight " + monos_[m].weight.str() + " above cutoff " + cutoff().str());
}

ModuleElement Module::omega(const ModuleElement& v) const {
    if (!vertex_operator_mode()) fail(ErrorKind::domain, "Omega acts only in overarc and tilde modes");
    check_cutoff(v);
    std::lock_guard lk(mu_);
    const TwistedContext& c = *ctx_;
    ModuleElement out;
    for (size_t i = 0; i < c.dim(); ++i) {
        Degree a = c.alpha(i);
        ModuleElement u;
        for (const auto& [k, dv] : c.dual_terms(i)) add_scaled(u, act(k, -a, v), dv);
        add_scaled(out, act(i, a, u), Scalar(1));
    }
    for (size_t k = 0; k < c.dim(); ++k)
        if (!x_correction_[k].is_zero()) add_scaled(out, act(k, Degree(0), v), -x_correction_[k]);
    add_scaled(out, v, omega_constant_);
    return out;
}

ModuleElement Module::sugawara(long n, const ModuleElement& v) const {
    if (!vertex_operator_mode()) fail(ErrorKind::domain, "Sugawara operators exist only in overarc and tilde modes");
    std::lock_guard lk(mu_);
    const TwistedContext& c = *ctx_;
    Degree dn(n);
    ModuleElement sum;
    for (const auto& [m, coeff] : v) {
        ModuleElement mv{{m, coeff}};
        Degree d = monos_[m].weight;
        for (size_t i = 0; i < c.dim(); ++i) {
            Degree a = c.alpha(i);
            // p = a + t, t >= 1: a^{i'}(-p) a^i(p+n)
            for (Degree p = a + Degree(1); d - (p + dn) >= min_weight_; p += Degree(1)) {
                ModuleElement u = act(i, p + dn, mv);
                if (u.empty()) continue;
                for (const auto& [k, dv] : c.dual_terms(i)) add_scaled(sum, act(k, -p, u), dv);
            }
            // p = a - t, t >= 0: a^i(p+n) a^{i'}(-p)
            for (Degree p = a; d + p >= min_weight_; p -= Degree(1)) {
                ModuleElement u;
                for (const auto& [k, dv] : c.dual_terms(i)) add_scaled(u, act(k, -p, mv), dv);
                if (u.empty()) continue;
                add_scaled(sum, act(i, p + dn, u), Scalar(1));
            }
        }
    }
    for (size_t k = 0; k < c.dim(); ++k)
        if (!x_correction_[k].is_zero()) add_scaled(sum, act(k, dn, v), -x_correction_[k]);
    if (n == 0) add_scaled(sum, v, omega_constant_);
    ModuleElement out;
    add_scaled(out, sum, sugawara_pref_);
    return out;
}

ModuleElement Module::field_component(const Vector& a, const Degree& n, int k, const ModuleElement& v) const {
    const TwistedContext& c = *ctx_;
    if (a.size() != c.dim()) fail(ErrorKind::usage, "element has the wrong dimension");
    if (k < 0 || static_cast<size_t>(k) >= c.dim()) fail(ErrorKind::usage, "log index out of range");
    Vector x = a;
    Scalar f(1);
    for (int j = 1; j <= k; ++j) {
        x = c.apply_n(x);
        f = f * Scalar(-1) / Scalar(j);
    }
    std::lock_guard lk(mu_);
    ModuleElement out;
    for (size_t i = 0; i < c.dim(); ++i)
        if (!x[i].is_zero()) add_scaled(out, act(i, n, v), x[i] * f);
    return out;
}

ModuleElement Module::apply_semisimple(const ModuleElement& v) const {
    std::lock_guard lk(mu_);
    ModuleElement out;
    for (const auto& [m, c] : v) {
        Mono mo = monos_[m];
        Scalar ph(1);
        for (SymId s : mo.syms)
            if (!syms_[s].formal_l) ph *= phase(ctx_->alpha(syms_[s].i));
        ModuleElement base;
        for (size_t b2 = 0; b2 < spec_.space.dim(); ++b2) {
            const Scalar& x = spec_.space.g_semisimple(b2, mo.b);
            if (!x.is_zero()) base[mono_id({}, static_cast<std::uint32_t>(b2))] = x;
        }
        add_scaled(out, apply_word(mo.syms, base), c * ph);
    }
    return out;
}

ModuleElement Module::apply_nilpotent(const ModuleElement& v) const {
    std::lock_guard lk(mu_);
    ModuleElement out;
    for (const auto& [m, c] : v) {
        Mono mo = monos_[m];
        ModuleElement gen{{mono_id({}, mo.b), Scalar(1)}};
        for (size_t j = 0; j < mo.syms.size(); ++j) {
            Sym s = syms_[mo.syms[j]];
            if (s.formal_l || ctx_->njump(s.i) < 0) continue;
            std::vector<SymId> w = mo.syms;
            w[j] = sym_id(false, ctx_->njump(s.i), s.n);
            add_scaled(out, apply_word(w, gen), c);
        }
        ModuleElement base;
        for (size_t b2 = 0; b2 < spec_.space.dim(); ++b2) {
            const Scalar& x = spec_.space.g_nilpotent(b2, mo.b);
            if (!x.is_zero()) base[mono_id({}, static_cast<std::uint32_t>(b2))] = x;
        }
        add_scaled(out, apply_word(mo.syms, base), c);
    }
    return out;
}

std::string Module::render_monomial(MonoId m) const {
    std::lock_guard lk(mu_);
    const Mono& mo = monos_.at(m);
    std::string s;
    for (SymId id : mo.syms) {
        const Sym& y = syms_[id];
        std::string lab = y.formal_l ? "L" : ctx_->label(y.i);
        bool plain = std::all_of(lab.begin(), lab.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
        if (!plain) lab = "(" + lab + ")";
        s += lab + "@" + y.n.str() + " ";
    }
    return s + "|" + spec_.space.labels[mo.b] + ">";
}

std::string Module::render(const ModuleElement& v) const {
    if (v.empty()) return "0";
    std::vector<Scalar> cs;
    for (const auto& [m, c] : v) cs.push_back(c);
    long cond = common_conductor(cs);
    std::string s;
    bool first = true;
    for (const auto& [m, c] : v) {
        s += coeff_prefix(c, cond, first) + render_monomial(m);
        first = false;
    }
    return s;
}

std::optional<Degree> Module::element_weight(const ModuleElement& v) const {
    std::lock_guard lk(mu_);
    std::optional<Degree> w;
    for (const auto& [m, c] : v) {
        if (w && *w != monos_[m].weight) return std::nullopt;
        w = monos_[m].weight;
    }
    return w;
}

size_t Module::cached_entries() const {
    std::lock_guard lk(mu_);
    return act_cache_.size() + tail_cache_.size();
}

ModulePtr build_module(ContextPtr ctx, ModuleSpec spec) {
    return std::make_shared<const Module>(std::move(ctx), std::move(spec));
}

// ---- independent count ----

std::vector<std::pair<Degree, size_t>> pbw_count(const Module& mod, const Degree& max_weight) {
    const TwistedContext& c = mod.context();
    // generating function of the lowering modes
    std::map<Degree, mpz_class> f{{Degree(0), 1}};
    auto times_free = [&](const Degree& w) {
        // multiply by 1/(1 - q^w)
        std::map<Degree, mpz_class> h;
        for (const auto& [d, v] : f) {
            mpz_class s = 0;
            for (Degree e = d; e.sign() >= 0; e -= w) {
                auto it = f.find(e);
                if (it != f.end()) s += it->second;
            }
            h[d] = s;
        }
        f = h;
    };
    Degree room = max_weight - mod.min_weight();
    // seed the support with the whole lattice of reachable weights
    std::vector<Degree> mode_weights;
    for (size_t i = 0; i < c.dim(); ++i)
        for (Degree w = Degree(1) - c.alpha(i); w <= room; w += Degree(1)) mode_weights.push_back(w);
    if (mod.has_formal_l() && Degree(1) <= room) mode_weights.push_back(Degree(1));
    long den = 1;
    for (const auto& w : mode_weights) den = std::lcm(den, static_cast<long>(w.den()));
    for (Degree d(0); d <= room; d += Degree(1, den)) f.try_emplace(d, 0);
    for (const auto& w : mode_weights) times_free(w);
    // iota tails
    mpz_class tails = 1;
    size_t k = c.iota_indices().size();
    if ((mod.mode() == ModuleMode::hat || mod.mode() == ModuleMode::overarc) && k > 0) {
        tails = 0;
        for (int s = 0; s <= mod.spec().iota_depth; ++s) {
            mpz_class all, div = 0;
            mpz_bin_uiui(all.get_mpz_t(), k + s - 1, s);
            if (mod.mode() == ModuleMode::overarc && s >= 2) mpz_bin_uiui(div.get_mpz_t(), k + s - 3, s - 2);
            tails += all - div;
        }
    }
    std::map<Degree, mpz_class> total;
    for (size_t b = 0; b < mod.spec().space.dim(); ++b) {
        Degree h = mod.twist_weight(b);
        for (const auto& [d, v] : f)
            if (h + d <= max_weight && v != 0) total[h + d] += v * tails;
    }
    std::vector<std::pair<Degree, size_t>> out;
    for (const auto& [d, v] : total) out.emplace_back(d, v.get_ui());
    return out;
}

}  // namespace twistaff
