#include "twistaff/twistaff.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "twistaff/error.hpp"
#include "twistaff/harness.hpp"
#include "twistaff/render.hpp"

using namespace twistaff;

struct twistaff_config {
    RunConfig cfg;
};
struct twistaff_context {
    ContextPtr ctx;
};
struct twistaff_module {
    ModulePtr mod;
};
struct twistaff_quotient {
    ModulePtr mod;
    Quotient q;
};
struct twistaff_report {
    Report rep;
    bool timing = false;
};

namespace {

thread_local std::string last_error;

twistaff_status code(ErrorKind k) {
    switch (k) {
    case ErrorKind::usage: return TWISTAFF_E_USAGE;
    case ErrorKind::config: return TWISTAFF_E_CONFIG;
    case ErrorKind::division_by_zero: return TWISTAFF_E_DIVISION_BY_ZERO;
    case ErrorKind::conductor_cap: return TWISTAFF_E_CONDUCTOR_CAP;
    case ErrorKind::unsupported_alpha: return TWISTAFF_E_UNSUPPORTED_ALPHA;
    case ErrorKind::lie_invalid: return TWISTAFF_E_LIE_INVALID;
    case ErrorKind::not_automorphism: return TWISTAFF_E_NOT_AUTOMORPHISM;
    case ErrorKind::domain: return TWISTAFF_E_DOMAIN;
    case ErrorKind::cutoff_exceeded: return TWISTAFF_E_CUTOFF;
    case ErrorKind::verification: return TWISTAFF_E_VERIFICATION;
    case ErrorKind::internal: return TWISTAFF_E_INTERNAL;
    }
    return TWISTAFF_E_INTERNAL;
}

template <class F>
twistaff_status guard(F&& f) {
    try {
        f();
        last_error.clear();
        return TWISTAFF_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return code(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return TWISTAFF_E_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TWISTAFF_E_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorKind::usage, std::string(what) + " is null");
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

Format fmt(twistaff_format f) {
    if (f == TWISTAFF_TSV) return Format::tsv;
    if (f == TWISTAFF_JSON) return Format::json;
    fail(ErrorKind::usage, "unknown format");
}

std::vector<std::optional<AffineGen>> parse_word(const TwistedContext& ctx, const char* word) {
    std::vector<std::optional<AffineGen>> out;
    std::istringstream is(word ? word : "");
    std::string tok;
    while (is >> tok) {
        if (tok == "L") {
            out.emplace_back(std::nullopt);
            continue;
        }
        AffineElement x = parse_affine(ctx, tok);
        if (x.terms.empty() && x.central.is_one()) {
            out.push_back(AffineGen{true, 0, Degree(0)});
            continue;
        }
        if (x.terms.size() != 1 || !x.central.is_zero() || !x.terms.begin()->second.is_one())
            fail(ErrorKind::usage, "word letters must be single Jordan basis modes, got '" + tok + "'");
        out.push_back(AffineGen{false, x.terms.begin()->first.first, x.terms.begin()->first.second});
    }
    return out;
}

}  // namespace

extern "C" {

const char* twistaff_version(void) { return "1.0.0"; }

const char* twistaff_status_name(twistaff_status s) {
    switch (s) {
    case TWISTAFF_OK: return "ok";
    case TWISTAFF_E_USAGE: return "usage";
    case TWISTAFF_E_CONFIG: return "config";
    case TWISTAFF_E_DIVISION_BY_ZERO: return "division_by_zero";
    case TWISTAFF_E_CONDUCTOR_CAP: return "conductor_cap";
    case TWISTAFF_E_UNSUPPORTED_ALPHA: return "unsupported_alpha";
    case TWISTAFF_E_LIE_INVALID: return "lie_invalid";
    case TWISTAFF_E_NOT_AUTOMORPHISM: return "not_automorphism";
    case TWISTAFF_E_DOMAIN: return "domain";
    case TWISTAFF_E_CUTOFF: return "cutoff_exceeded";
    case TWISTAFF_E_VERIFICATION: return "verification";
    case TWISTAFF_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* twistaff_last_error(void) { return last_error.c_str(); }

void twistaff_string_free(char* s) { std::free(s); }

twistaff_status twistaff_set_conductor_cap(long cap) {
    return guard([&] {
        if (cap < 1) fail(ErrorKind::usage, "conductor cap must be positive");
        set_conductor_cap(cap);
    });
}

twistaff_status twistaff_config_load(const char* path, twistaff_config** out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new twistaff_config{load_config(path)};
    });
}

twistaff_status twistaff_config_parse(const char* text, twistaff_config** out) {
    return guard([&] {
        need(text, "text");
        need(out, "out");
        *out = new twistaff_config{parse_config(text)};
    });
}

void twistaff_config_free(twistaff_config* c) { delete c; }

twistaff_status twistaff_config_set(twistaff_config* c, const char* key, const char* value) {
    return guard([&] {
        need(c, "config");
        need(key, "key");
        need(value, "value");
        std::string k = key, v = value;
        auto integer = [&](long lo) {
            size_t pos = 0;
            long x = 0;
            try {
                x = std::stol(v, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != v.size() || v.empty() || x < lo) fail(ErrorKind::usage, k + " must be an integer >= " + std::to_string(lo));
            return x;
        };
        if (k == "cutoff") c->cfg.cutoff = Degree::parse(v);
        else if (k == "window") c->cfg.window = integer(0);
        else if (k == "seed") c->cfg.seed = static_cast<unsigned long>(integer(0));
        else if (k == "timing") c->cfg.timing = integer(0) != 0;
        else fail(ErrorKind::usage, "unknown config override '" + k + "'");
    });
}

twistaff_status twistaff_context_new(const twistaff_config* c, twistaff_context** out) {
    return guard([&] {
        need(c, "config");
        need(out, "out");
        *out = new twistaff_context{build_context(c->cfg)};
    });
}

void twistaff_context_free(twistaff_context* x) { delete x; }

size_t twistaff_context_dim(const twistaff_context* x) { return x ? x->ctx->dim() : 0; }

twistaff_status twistaff_decompose(const twistaff_context* x, twistaff_format f, char** out) {
    return guard([&] {
        need(x, "context");
        need(out, "out");
        *out = dup(render_decomposition(*x->ctx, fmt(f)));
    });
}

twistaff_status twistaff_bracket(const twistaff_context* x, const char* a, const char* b, char** out) {
    return guard([&] {
        need(x, "context");
        need(a, "a");
        need(b, "b");
        need(out, "out");
        AffineElement r = ta_bracket(*x->ctx, parse_affine(*x->ctx, a), parse_affine(*x->ctx, b));
        *out = dup(render_affine(*x->ctx, r));
    });
}

twistaff_status twistaff_module_new(const twistaff_context* x, const twistaff_config* c, twistaff_module** out) {
    return guard([&] {
        need(x, "context");
        need(c, "config");
        need(out, "out");
        *out = new twistaff_module{build_module(x->ctx, c->cfg)};
    });
}

void twistaff_module_free(twistaff_module* m) { delete m; }

twistaff_status twistaff_module_summary(const twistaff_module* m, twistaff_format f, char** out) {
    return guard([&] {
        need(m, "module");
        need(out, "out");
        *out = dup(render_module_summary(*m->mod, fmt(f)));
    });
}

twistaff_status twistaff_character(const twistaff_module* m, const char* max_weight, twistaff_format f, char** out) {
    return guard([&] {
        need(m, "module");
        need(out, "out");
        Degree w = max_weight ? Degree::parse(max_weight) : m->mod->cutoff();
        *out = dup(render_character(m->mod->character(w), fmt(f), "module", m->mod->cutoff()));
    });
}

twistaff_status twistaff_dimension(const twistaff_module* m, const char* weight, size_t* out) {
    return guard([&] {
        need(m, "module");
        need(weight, "weight");
        need(out, "out");
        Degree w = Degree::parse(weight);
        if (w > m->mod->cutoff()) fail(ErrorKind::cutoff_exceeded, "weight above cutoff");
        *out = m->mod->dim_at(w);
    });
}

twistaff_status twistaff_twist_weights(const twistaff_module* m, twistaff_format f, char** out) {
    return guard([&] {
        need(m, "module");
        need(out, "out");
        *out = dup(render_twist_weights(*m->mod, fmt(f)));
    });
}

twistaff_status twistaff_normal_form(const twistaff_module* m, const char* word, size_t b, char** out) {
    return guard([&] {
        need(m, "module");
        need(out, "out");
        ModuleElement v = m->mod->normal_form(parse_word(m->mod->context(), word), b);
        *out = dup(m->mod->render(v));
    });
}

twistaff_status twistaff_sugawara(const twistaff_module* m, long n, const char* word, size_t b, char** out) {
    return guard([&] {
        need(m, "module");
        need(out, "out");
        ModuleElement v = m->mod->normal_form(parse_word(m->mod->context(), word), b);
        ModuleElement r = m->mod->sugawara(n, v);
        m->mod->check_cutoff(r);
        *out = dup(m->mod->render(r));
    });
}

twistaff_status twistaff_quotient_new(const twistaff_module* m, const twistaff_config* c, twistaff_quotient** out) {
    return guard([&] {
        need(m, "module");
        need(c, "config");
        need(out, "out");
        NullFieldSpec s = build_null_field(m->mod->context(), c->cfg, m->mod->level());
        *out = new twistaff_quotient{m->mod, build_quotient(*m->mod, s, quotient_margin(c->cfg))};
    });
}

void twistaff_quotient_free(twistaff_quotient* q) { delete q; }

twistaff_status twistaff_quotient_dims(const twistaff_quotient* q, const char* max_weight, twistaff_format f,
                                       char** out) {
    return guard([&] {
        need(q, "quotient");
        need(out, "out");
        Degree w = max_weight ? Degree::parse(max_weight) : q->q.certified;
        *out = dup(render_character(quotient_character(*q->mod, q->q, w), fmt(f), "quotient", q->mod->cutoff()));
    });
}

twistaff_status twistaff_quotient_annihilated(const twistaff_quotient* q, int* out) {
    return guard([&] {
        need(q, "quotient");
        need(out, "out");
        *out = is_annihilated(*q->mod, q->q.relations, q->q.spec, q->q.certified) ? 1 : 0;
    });
}

twistaff_status twistaff_run_suites(const twistaff_config* c, const char* suites, twistaff_report** out) {
    return guard([&] {
        need(c, "config");
        need(out, "out");
        Report r = run_suites(c->cfg, parse_suites(suites ? suites : "all"));
        *out = new twistaff_report{std::move(r), c->cfg.timing};
    });
}

void twistaff_report_free(twistaff_report* r) { delete r; }

size_t twistaff_report_size(const twistaff_report* r) { return r ? r->rep.entries.size() : 0; }

size_t twistaff_report_failures(const twistaff_report* r) { return r ? r->rep.failures() : 0; }

twistaff_status twistaff_report_render(const twistaff_report* r, twistaff_format f, char** out) {
    return guard([&] {
        need(r, "report");
        need(out, "out");
        *out = dup(render_report(r->rep, fmt(f), r->timing));
    });
}

}  // extern "C"
