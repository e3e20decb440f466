#include "twistaff/affine.hpp"

#include <chrono>
#include <numeric>

#include "twistaff/error.hpp"
#include "twistaff/expr.hpp"

namespace twistaff {

TwistedContext::TwistedContext(LieAlgebra L, AutomorphismData A)
    : L_(std::move(L)), A_(std::move(A)), dim_(L_.dim()) {
    if (A_.dim() != dim_) fail(ErrorKind::internal, "automorphism does not match algebra");
    c_.assign(dim_ * dim_, {});
    std::vector<Vector> cols;
    for (size_t i = 0; i < dim_; ++i) cols.push_back(A_.J.column(i));
    for (size_t i = 0; i < dim_; ++i)
        for (size_t j = 0; j < dim_; ++j) {
            Vector b = A_.Jinv * L_.bracket(cols[i], cols[j]);
            for (size_t k = 0; k < dim_; ++k)
                if (!b[k].is_zero()) c_[i * dim_ + j].emplace_back(k, b[k]);
        }
    B_ = A_.J.transpose() * L_.form() * A_.J;
    auto inv = inverse(B_);
    if (!inv) fail(ErrorKind::lie_invalid, "invariant form is degenerate");
    D_ = *inv;
    dual_terms_.assign(dim_, {});
    for (size_t i = 0; i < dim_; ++i)
        for (size_t k = 0; k < dim_; ++k)
            if (!D_(i, k).is_zero()) dual_terms_[i].emplace_back(k, D_(i, k));
}

Scalar TwistedContext::nform(size_t i, size_t j) const {
    int n = A_.njump[i];
    return n < 0 ? Scalar() : B_(static_cast<size_t>(n), j);
}

Vector TwistedContext::bracket_jordan(const Vector& x, const Vector& y) const {
    Vector r(dim_);
    for (size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < dim_; ++j) {
            if (y[j].is_zero()) continue;
            Scalar xy = x[i] * y[j];
            for (const auto& [k, c] : bracket(i, j)) r[k] += xy * c;
        }
    }
    return r;
}

Scalar TwistedContext::form_jordan(const Vector& x, const Vector& y) const {
    Scalar s;
    for (size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < dim_; ++j)
            if (!y[j].is_zero() && !B_(i, j).is_zero()) s += x[i] * B_(i, j) * y[j];
    }
    return s;
}

Vector TwistedContext::apply_n(const Vector& x) const {
    Vector r(dim_);
    for (size_t i = 0; i < dim_; ++i)
        if (!x[i].is_zero() && A_.njump[i] >= 0) r[A_.njump[i]] += x[i];
    return r;
}

std::vector<size_t> TwistedContext::iota_indices() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < dim_; ++i)
        if (alpha(i).is_zero()) out.push_back(i);
    return out;
}

bool TwistedContext::has_index_with_alpha(const RationalExponent& a) const {
    for (size_t i = 0; i < dim_; ++i)
        if (alpha(i) == a) return true;
    return false;
}

const char* triangular_name(TriangularClass c) {
    switch (c) {
        case TriangularClass::plus: return "plus";
        case TriangularClass::minus: return "minus";
        case TriangularClass::iota: return "iota";
        case TriangularClass::zero_mode: return "zero_mode";
        default: return "central";
    }
}

AffineElement AffineElement::gen(const AffineGen& g, const Scalar& c) {
    AffineElement x;
    if (g.central)
        x.central = c;
    else
        x.add(g.i, g.n, c);
    return x;
}

void AffineElement::add(size_t i, const Degree& n, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(i, n);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

AffineElement& AffineElement::operator+=(const AffineElement& o) {
    for (const auto& [k, c] : o.terms) add(k.first, k.second, c);
    central += o.central;
    return *this;
}

AffineElement& AffineElement::operator-=(const AffineElement& o) {
    for (const auto& [k, c] : o.terms) add(k.first, k.second, -c);
    central -= o.central;
    return *this;
}

AffineElement AffineElement::scaled(const Scalar& c) const {
    AffineElement r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms) r.terms.emplace(k, v * c);
    r.central = central * c;
    return r;
}

bool AffineElement::is_zero() const { return terms.empty() && central.is_zero(); }

void check_coset(const TwistedContext& ctx, size_t i, const Degree& n) {
    if (i >= ctx.dim()) fail(ErrorKind::config, "generator index out of range");
    if (!(n - ctx.alpha(i)).is_integer())
        fail(ErrorKind::domain, "degree " + n.str() + " is not in the coset " + ctx.alpha(i).str() +
                                    " + Z of generator " + ctx.label(i));
}

AffineElement ta_bracket(const TwistedContext& ctx, const AffineElement& x, const AffineElement& y) {
    AffineElement r;
    for (const auto& [kx, cx] : x.terms) {
        check_coset(ctx, kx.first, kx.second);
        for (const auto& [ky, cy] : y.terms) {
            check_coset(ctx, ky.first, ky.second);
            size_t i = kx.first, j = ky.first;
            const Degree& m = kx.second;
            const Degree& n = ky.second;
            Scalar c = cx * cy;
            Degree s = m + n;
            for (const auto& [k, v] : ctx.bracket(i, j)) r.add(k, s, c * v);
            if (s.is_zero()) {
                Scalar z = Scalar(mpq_class(m.num(), m.den())) * ctx.form(i, j) + ctx.nform(i, j);
                r.central += c * z;
            }
        }
    }
    return r;
}

Scalar nilpotent_central_part(const TwistedContext& ctx, const AffineElement& x, const AffineElement& y) {
    Scalar s;
    for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms)
            if ((kx.second + ky.second).is_zero()) s += cx * cy * ctx.nform(kx.first, ky.first);
    return s;
}

TriangularClass ta_classify(const TwistedContext& ctx, const AffineGen& g) {
    if (g.central) return TriangularClass::central;
    check_coset(ctx, g.i, g.n);
    if (g.n.sign() > 0) return TriangularClass::plus;
    if (g.n.sign() < 0) return TriangularClass::minus;
    return TriangularClass::iota;
}

AffineElement ta_jacobi_check(const TwistedContext& ctx, const AffineElement& x, const AffineElement& y,
                              const AffineElement& z) {
    return ta_bracket(ctx, ta_bracket(ctx, x, y), z) + ta_bracket(ctx, ta_bracket(ctx, y, z), x) +
           ta_bracket(ctx, ta_bracket(ctx, z, x), y);
}

AffineElement parse_affine(const TwistedContext& ctx, std::string_view text) {
    std::string s(text);
    auto trim = [](std::string t) {
        size_t a = t.find_first_not_of(" \t"), b = t.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
    };
    s = trim(s);
    AffineElement x;
    if (s == "K" || s == "k") {
        x.central = Scalar(1);
        return x;
    }
    auto at = s.rfind('@');
    if (at == std::string::npos) fail(ErrorKind::config, "generator literal '" + s + "' needs '@degree'");
    Vector v = ctx.to_jordan(parse_vector(trim(s.substr(0, at)), ctx.lie().labels()));
    Degree n = Degree::parse(trim(s.substr(at + 1)));
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        check_coset(ctx, i, n);
        x.add(i, n, v[i]);
    }
    return x;
}

std::string render_affine(const TwistedContext& ctx, const AffineElement& x, long m) {
    std::map<Degree, Vector> by_degree;
    for (const auto& [k, c] : x.terms) {
        auto& v = by_degree[k.second];
        if (v.empty()) v.assign(ctx.dim(), Scalar());
        v[k.first] += c;
    }
    std::vector<std::pair<Degree, Vector>> blocks;
    std::vector<Scalar> all{x.central};
    for (auto& [n, v] : by_degree) {
        Vector o = ctx.from_jordan(v);
        all.insert(all.end(), o.begin(), o.end());
        blocks.emplace_back(n, o);
    }
    if (m == 0) m = common_conductor(all);
    std::string out;
    auto append = [&](std::string term) {
        if (out.empty()) {
            out = term;
            return;
        }
        if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    };
    for (const auto& [n, o] : blocks) {
        std::string body = render_vector(o, ctx.lie().labels(), m);
        if (body == "0") continue;
        bool single = body.find(' ') == std::string::npos;
        append((single ? body : "(" + body + ")") + "@" + n.str());
    }
    if (!x.central.is_zero()) {
        std::string c = x.central.str(m);
        if (c == "1")
            append("K");
        else if (c == "-1")
            append("-K");
        else if (c.find(' ') != std::string::npos)
            append("(" + c + ")*K");
        else
            append(c + "*K");
    }
    return out.empty() ? "0" : out;
}

std::vector<AffineGen> window_generators(const TwistedContext& ctx, long window) {
    std::vector<AffineGen> gens;
    for (size_t i = 0; i < ctx.dim(); ++i) {
        const RationalExponent& a = ctx.alpha(i);
        for (long t = -window - 1; t <= window + 1; ++t) {
            Degree n = a + Degree(t);
            if (n > Degree(window) || n < Degree(-window)) continue;
            gens.push_back(AffineGen{false, i, n});
        }
    }
    gens.push_back(AffineGen{true, 0, Degree(0)});
    return gens;
}

namespace {

std::string gen_name(const TwistedContext& ctx, const AffineGen& g) {
    return render_affine(ctx, AffineElement::gen(g));
}

}  // namespace

Report verify_affine(const TwistedContext& ctx, long window) {
    Report rep;
    const std::string suite = "affine";
    std::vector<AffineGen> gens = window_generators(ctx, window);
    std::vector<AffineElement> els;
    for (const auto& g : gens) els.push_back(AffineElement::gen(g));
    size_t n = gens.size();
    std::vector<AffineElement> br(n * n);
    auto clock = [] { return std::chrono::steady_clock::now(); };
    auto since = [](auto t0) {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };

    auto t0 = clock();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) br[a * n + b] = ta_bracket(ctx, els[a], els[b]);
    std::optional<std::string> w;
    for (size_t a = 0; a < n && !w; ++a)
        for (size_t b = 0; b < n && !w; ++b)
            if (!(br[a * n + b] + br[b * n + a]).is_zero())
                w = "[" + gen_name(ctx, gens[a]) + ", " + gen_name(ctx, gens[b]) + "] + reversed != 0";
    rep.add(suite, "antisymmetry(window=" + std::to_string(window) + ")", w ? Status::fail : Status::pass, w, since(t0));

    t0 = clock();
    w.reset();
    for (size_t a = 0; a < n && !w; ++a)
        if (!br[a * n + a].is_zero()) w = "[X, X] != 0 for X = " + gen_name(ctx, gens[a]);
    for (size_t i = 0; i < ctx.dim() && !w; ++i)
        if (!ctx.nform(i, i).is_zero()) w = "(N a, a) != 0 for a = " + ctx.label(i);
    rep.add(suite, "self-bracket-zero", w ? Status::fail : Status::pass, w, since(t0));

    t0 = clock();
    w.reset();
    for (size_t a = 0; a < n && !w; ++a)
        for (size_t b = 0; b < n && !w; ++b) {
            const AffineElement& xy = br[a * n + b];
            for (size_t c = 0; c < n && !w; ++c) {
                AffineElement r = ta_bracket(ctx, xy, els[c]) + ta_bracket(ctx, br[b * n + c], els[a]) +
                                  ta_bracket(ctx, br[c * n + a], els[b]);
                if (!r.is_zero())
                    w = "jacobi residual " + render_affine(ctx, r) + " on (" + gen_name(ctx, gens[a]) + ", " +
                        gen_name(ctx, gens[b]) + ", " + gen_name(ctx, gens[c]) + ")";
            }
        }
    rep.add(suite, "jacobi(window=" + std::to_string(window) + ", triples=" + std::to_string(n * n * n) + ")",
            w ? Status::fail : Status::pass, w, since(t0));

    t0 = clock();
    w.reset();
    for (TriangularClass cls : {TriangularClass::plus, TriangularClass::minus, TriangularClass::iota}) {
        for (size_t a = 0; a < n && !w; ++a) {
            if (ta_classify(ctx, gens[a]) != cls) continue;
            for (size_t b = 0; b < n && !w; ++b) {
                if (ta_classify(ctx, gens[b]) != cls) continue;
                const AffineElement& r = br[a * n + b];
                bool ok = cls == TriangularClass::iota || r.central.is_zero();
                for (const auto& [k, c] : r.terms)
                    if (ta_classify(ctx, AffineGen{false, k.first, k.second}) != cls) ok = false;
                if (cls == TriangularClass::iota) {
                    // the fixed part closes up to the central term
                    for (const auto& [k, c] : r.terms)
                        if (!k.second.is_zero()) ok = false;
                }
                if (!ok)
                    w = std::string(triangular_name(cls)) + " part not closed: [" + gen_name(ctx, gens[a]) + ", " +
                        gen_name(ctx, gens[b]) + "] = " + render_affine(ctx, r);
            }
        }
    }
    rep.add(suite, "triangular-closure", w ? Status::fail : Status::pass, w, since(t0));

    t0 = clock();
    size_t count = 0;
    std::optional<std::string> sample;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (nilpotent_central_part(ctx, els[a], els[b]).is_zero()) continue;
            ++count;
            if (!sample)
                sample = "[" + gen_name(ctx, gens[a]) + ", " + gen_name(ctx, gens[b]) + "] = " +
                         render_affine(ctx, br[a * n + b]);
        }
    rep.add(suite, "nilpotent-central-terms=" + std::to_string(count), Status::pass, sample, since(t0));
    return rep;
}

}  // namespace twistaff
