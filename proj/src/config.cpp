#include "twistaff/config.hpp"

#include <fstream>
#include <sstream>

#include "toml.hpp"

#include "twistaff/error.hpp"
#include "twistaff/expr.hpp"

namespace twistaff {

using nlohmann::json;

namespace {

json to_json(const toml::node& n, const std::string& path) {
    if (auto t = n.as_table()) {
        json o = json::object();
        for (const auto& [k, v] : *t) o[std::string(k.str())] = to_json(v, path + "." + std::string(k.str()));
        return o;
    }
    if (auto a = n.as_array()) {
        json o = json::array();
        for (const auto& v : *a) o.push_back(to_json(v, path + "[]"));
        return o;
    }
    if (auto s = n.as_string()) return s->get();
    if (auto i = n.as_integer()) return std::to_string(i->get());
    if (auto b = n.as_boolean()) return b->get();
    if (n.is_floating_point())
        fail(ErrorKind::config, path.substr(1) + ": floating-point literals are not allowed; quote an exact value such as \"1/2\"");
    fail(ErrorKind::config, path.substr(1) + ": unsupported value type");
}

const json* find(const json& o, const char* key) {
    auto it = o.find(key);
    return it == o.end() ? nullptr : &*it;
}

std::string as_string(const json& v, const std::string& what) {
    if (!v.is_string()) fail(ErrorKind::config, what + " must be a string");
    return v.get<std::string>();
}

long as_long(const json& v, const std::string& what) {
    std::string s = as_string(v, what);
    try {
        size_t pos = 0;
        long x = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return x;
    } catch (const std::exception&) {
        fail(ErrorKind::config, what + " must be an integer, got '" + s + "'");
    }
}

Scalar as_scalar(const json& v, const std::string& what) {
    std::string s = as_string(v, what);
    try {
        return parse_scalar(s);
    } catch (const Error& e) {
        fail(ErrorKind::config, what + ": " + e.what());
    }
}

Degree as_degree(const json& v, const std::string& what) {
    std::string s = as_string(v, what);
    try {
        return Degree::parse(s);
    } catch (const Error& e) {
        fail(ErrorKind::config, what + ": " + e.what());
    }
}

Matrix as_matrix(const json& v, size_t n, const std::string& what) {
    if (!v.is_array() || v.size() != n) fail(ErrorKind::config, what + " must be a " + std::to_string(n) + "x" + std::to_string(n) + " array of rows");
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        if (!v[i].is_array() || v[i].size() != n)
            fail(ErrorKind::config, what + " row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
        for (size_t j = 0; j < n; ++j) m(i, j) = as_scalar(v[i][j], what + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return m;
}

Vector as_vector(const std::string& text, const std::vector<std::string>& labels, const std::string& what) {
    try {
        return parse_vector(text, labels);
    } catch (const Error& e) {
        fail(ErrorKind::config, what + ": " + e.what());
    }
}

void check_keys(const json& o, std::initializer_list<const char*> allowed, const std::string& what) {
    for (auto it = o.begin(); it != o.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) fail(ErrorKind::config, "unknown key '" + it.key() + "' in " + what);
    }
}

TauMatrix tau_from_spec(const LieAlgebra& L, const json& spec, const std::string& what) {
    size_t d = L.dim();
    if (spec.is_string()) {
        if (spec.get<std::string>() == "identity") return TauMatrix::constant(Matrix::identity(d));
        fail(ErrorKind::config, what + ": expected a table or \"identity\"");
    }
    if (!spec.is_object()) fail(ErrorKind::config, what + " must be a table");
    check_keys(spec, {"matrix", "nilpotent", "inner_exp", "compose"}, what);
    int kinds = (spec.contains("matrix") ? 1 : 0) + (spec.contains("inner_exp") ? 1 : 0) + (spec.contains("compose") ? 1 : 0);
    if (kinds != 1) fail(ErrorKind::config, what + ": give exactly one of matrix, inner_exp, compose");
    if (spec.contains("nilpotent") && !spec.contains("matrix"))
        fail(ErrorKind::config, what + ": nilpotent goes together with matrix");
    if (auto m = find(spec, "matrix")) {
        Matrix S = as_matrix(*m, d, what + ".matrix");
        if (auto n = find(spec, "nilpotent")) {
            Matrix N = as_matrix(*n, d, what + ".nilpotent");
            AutomorphismData A = aut_from_parts(L, S, N);
            return A.G;
        }
        return aut_from_matrix(L, S).G;
    }
    if (auto x = find(spec, "inner_exp")) {
        Vector v = as_vector(as_string(*x, what + ".inner_exp"), L.labels(), what + ".inner_exp");
        return aut_inner_exp(L, v);
    }
    const json& c = spec["compose"];
    if (!c.is_array() || c.empty()) fail(ErrorKind::config, what + ".compose must be a non-empty array");
    TauMatrix g = TauMatrix::constant(Matrix::identity(d));
    for (size_t k = 0; k < c.size(); ++k) g = g * tau_from_spec(L, c[k], what + ".compose[" + std::to_string(k) + "]");
    return g.trimmed();
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
    RunConfig cfg;
    cfg.source = source;
    toml::table t;
    try {
        t = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
        fail(ErrorKind::config, os.str());
    }
    cfg.doc = to_json(t, "");
    check_keys(cfg.doc, {"algebra", "automorphism", "module", "quotient", "command"}, "config");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::usage, "cannot read config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str(), path);
}

LieAlgebra build_algebra(const RunConfig& cfg, bool validate) {
    const json* a = find(cfg.doc, "algebra");
    if (!a) fail(ErrorKind::config, "missing 'algebra'");
    if (a->is_string()) {
        std::string s = a->get<std::string>();
        if (s.size() > 4 && s.rfind("sl(", 0) == 0 && s.back() == ')') {
            long n = 0;
            try {
                n = std::stol(s.substr(3, s.size() - 4));
            } catch (const std::exception&) {
            }
            if (n >= 2 && n <= 12) return lie_sl(static_cast<int>(n));
        }
        fail(ErrorKind::config, "algebra '" + s + "' is not sl(n) with 2 <= n <= 12; give bracket and form tables instead");
    }
    if (!a->is_object()) fail(ErrorKind::config, "algebra must be \"sl(n)\" or a table");
    check_keys(*a, {"labels", "bracket", "form"}, "algebra");
    std::vector<StructureEntry> br;
    std::vector<FormEntry> fm;
    size_t dim = 0;
    auto index = [&](const json& v, const std::string& what) {
        long i = as_long(v, what);
        if (i < 0) fail(ErrorKind::config, what + " must be non-negative");
        dim = std::max(dim, static_cast<size_t>(i) + 1);
        return static_cast<size_t>(i);
    };
    if (auto b = find(*a, "bracket")) {
        if (!b->is_array()) fail(ErrorKind::config, "algebra.bracket must be an array");
        for (size_t r = 0; r < b->size(); ++r) {
            const json& e = (*b)[r];
            std::string w = "algebra.bracket[" + std::to_string(r) + "]";
            if (!e.is_array() || e.size() != 4) fail(ErrorKind::config, w + " must be [i, j, k, \"c\"]");
            br.push_back({index(e[0], w), index(e[1], w), index(e[2], w), as_scalar(e[3], w)});
        }
    }
    const json* f = find(*a, "form");
    if (!f || !f->is_array()) fail(ErrorKind::config, "algebra.form must be an array of [i, j, \"c\"]");
    for (size_t r = 0; r < f->size(); ++r) {
        const json& e = (*f)[r];
        std::string w = "algebra.form[" + std::to_string(r) + "]";
        if (!e.is_array() || e.size() != 3) fail(ErrorKind::config, w + " must be [i, j, \"c\"]");
        fm.push_back({index(e[0], w), index(e[1], w), as_scalar(e[2], w)});
    }
    std::vector<std::string> labels;
    if (auto l = find(*a, "labels")) {
        if (!l->is_array()) fail(ErrorKind::config, "algebra.labels must be an array");
        for (const auto& x : *l) labels.push_back(as_string(x, "algebra.labels entry"));
        if (labels.size() < dim) fail(ErrorKind::config, "algebra.labels has fewer entries than the tables use");
    } else {
        for (size_t i = 0; i < dim; ++i) labels.push_back("a" + std::to_string(i));
    }
    return lie_from_structure(labels, br, fm, validate);
}

TauMatrix build_automorphism_tau(const LieAlgebra& L, const RunConfig& cfg) {
    const json* s = find(cfg.doc, "automorphism");
    if (!s) return TauMatrix::constant(Matrix::identity(L.dim()));
    return tau_from_spec(L, *s, "automorphism");
}

AutomorphismData build_automorphism(const LieAlgebra& L, const RunConfig& cfg) {
    return aut_from_tau(L, build_automorphism_tau(L, cfg));
}

ContextPtr build_context(const RunConfig& cfg) {
    LieAlgebra L = build_algebra(cfg);
    AutomorphismData A = build_automorphism(L, cfg);
    return std::make_shared<const TwistedContext>(std::move(L), std::move(A));
}

ModuleSpec build_module_spec(const TwistedContext& ctx, const RunConfig& cfg) {
    const json* m = find(cfg.doc, "module");
    if (!m) fail(ErrorKind::config, "missing 'module' table");
    if (!m->is_object()) fail(ErrorKind::config, "module must be a table");
    check_keys(*m, {"generators", "mode", "level", "cutoff", "iota_depth", "iota_action", "weights", "lm0",
                    "g_semisimple", "g_nilpotent"},
               "module");
    ModuleSpec s;
    if (auto v = find(*m, "mode")) s.mode = parse_mode(as_string(*v, "module.mode"));
    if (auto v = find(*m, "level")) s.level = as_scalar(*v, "module.level");
    if (!s.level.is_rational()) fail(ErrorKind::config, "module.level must be rational");
    if (auto v = find(*m, "cutoff")) s.cutoff = as_degree(*v, "module.cutoff");
    if (cfg.cutoff) s.cutoff = *cfg.cutoff;
    if (auto v = find(*m, "iota_depth")) s.iota_depth = static_cast<int>(as_long(*v, "module.iota_depth"));

    const json* gens = find(*m, "generators");
    std::string preset = gens && gens->is_string() ? gens->get<std::string>() : (gens ? "" : "trivial");
    GeneratorSpace& M = s.space;
    if (preset == "trivial") {
        M = trivial_space(ctx, s.level);
    } else if (preset == "adjoint") {
        M = adjoint_space(ctx, s.level);
    } else if (gens && gens->is_array()) {
        for (const auto& x : *gens) M.labels.push_back(as_string(x, "module.generators entry"));
        size_t n = M.labels.size();
        M.g_semisimple = Matrix::identity(n);
        M.g_nilpotent = Matrix(n, n);
    } else {
        fail(ErrorKind::config, "module.generators must be \"trivial\", \"adjoint\" or a list of labels");
    }
    size_t n = M.dim();
    if (auto v = find(*m, "g_semisimple")) M.g_semisimple = as_matrix(*v, n, "module.g_semisimple");
    if (auto v = find(*m, "g_nilpotent")) M.g_nilpotent = as_matrix(*v, n, "module.g_nilpotent");

    if (auto ia = find(*m, "iota_action")) {
        if (!ia->is_object()) fail(ErrorKind::config, "module.iota_action must be a table of element = matrix");
        std::vector<size_t> iota = ctx.iota_indices();
        std::vector<Vector> keys;
        std::vector<Matrix> vals;
        for (auto it = ia->begin(); it != ia->end(); ++it) {
            std::string what = "module.iota_action." + it.key();
            Vector j = ctx.to_jordan(as_vector(it.key(), ctx.lie().labels(), what));
            for (size_t k = 0; k < ctx.dim(); ++k)
                if (!j[k].is_zero() && !ctx.alpha(k).is_zero())
                    fail(ErrorKind::config, what + ": element is not fixed by the semisimple part of g");
            keys.push_back(j);
            vals.push_back(as_matrix(it.value(), n, what));
        }
        // rho on the Jordan basis of g^[0] from the given elements
        Matrix K(ctx.dim(), keys.size());
        for (size_t r = 0; r < keys.size(); ++r)
            for (size_t k = 0; k < ctx.dim(); ++k) K(k, r) = keys[r][k];
        M.iota.clear();
        for (size_t i : iota) {
            Vector e(ctx.dim());
            e[i] = Scalar(1);
            auto c = solve(K, e);
            if (!c)
                fail(ErrorKind::config, "module.iota_action does not determine the action of " + ctx.label(i) +
                                            " (Jordan basis of the fixed subalgebra)");
            Matrix r(n, n);
            for (size_t q = 0; q < keys.size(); ++q)
                if (!(*c)[q].is_zero()) r += (*c)[q] * vals[q];
            M.iota[i] = r;
        }
        for (size_t q = 0; q < keys.size(); ++q) {
            Matrix r(n, n);
            for (size_t k = 0; k < ctx.dim(); ++k)
                if (!keys[q][k].is_zero()) r += keys[q][k] * M.iota[k];
            if (!(r == vals[q])) fail(ErrorKind::config, "module.iota_action entries are not linear in the element");
        }
        M.has_iota = true;
    } else if (preset.empty()) {
        M.has_iota = ctx.iota_indices().empty();
    }

    const json* w = find(*m, "weights");
    const json* l0 = find(*m, "lm0");
    if (w && l0) fail(ErrorKind::config, "give module.weights or module.lm0, not both");
    if (l0) M.lm0 = as_matrix(*l0, n, "module.lm0");
    if (w) {
        if (w->is_string()) {
            if (w->get<std::string>() != "from-omega")
                fail(ErrorKind::config, "module.weights must be \"from-omega\" or a list");
            M.lm0.reset();
        } else if (w->is_array()) {
            if (w->size() != n) fail(ErrorKind::config, "module.weights needs one entry per generator");
            Matrix d(n, n);
            for (size_t b = 0; b < n; ++b) d(b, b) = as_scalar((*w)[b], "module.weights entry");
            M.lm0 = d;
        } else {
            fail(ErrorKind::config, "module.weights must be \"from-omega\" or a list");
        }
    }
    if (s.mode == ModuleMode::tilde && M.lm0)
        fail(ErrorKind::config, "tilde mode computes its weights from Omega; remove module.weights/lm0");
    return s;
}

ModulePtr build_module(const ContextPtr& ctx, const RunConfig& cfg) {
    return build_module(ctx, build_module_spec(*ctx, cfg));
}

NullFieldSpec build_null_field(const TwistedContext& ctx, const RunConfig& cfg, const Scalar& level) {
    const json* q = find(cfg.doc, "quotient");
    if (!q || !q->is_object()) fail(ErrorKind::config, "missing 'quotient' table");
    check_keys(*q, {"null_field", "power", "margin"}, "quotient");
    const json* a = find(*q, "null_field");
    if (!a) fail(ErrorKind::config, "quotient.null_field is required");
    long power = 0;
    std::string p = find(*q, "power") ? as_string((*q)["power"], "quotient.power") : "auto";
    if (p == "auto") {
        if (!level.is_rational() || level.rational_value().get_den() != 1 || level.rational_value() < 0)
            fail(ErrorKind::domain, "power \"auto\" needs a non-negative integral level");
        power = level.rational_value().get_num().get_si() + 1;
    } else {
        power = as_long((*q)["power"], "quotient.power");
    }
    return null_field_from(ctx, as_string(*a, "quotient.null_field"), power);
}

Degree quotient_margin(const RunConfig& cfg) {
    const json* q = find(cfg.doc, "quotient");
    if (q && q->is_object())
        if (auto m = find(*q, "margin")) return as_degree(*m, "quotient.margin");
    return Degree(2);
}

}  // namespace twistaff
