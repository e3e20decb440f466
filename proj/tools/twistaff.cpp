// Command-line front end over the C API.
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "twistaff/twistaff.h"

namespace {

struct Options {
    std::string config;
    std::string format = "tsv";
    std::optional<std::string> cutoff;
    std::optional<std::string> window;
    std::optional<std::string> seed;
    bool timing = false;
    std::string suites = "all";
};

struct Failure {
    twistaff_status status;
    std::string message;
};

int exit_code(twistaff_status s) {
    switch (s) {
    case TWISTAFF_OK: return 0;
    case TWISTAFF_E_USAGE:
    case TWISTAFF_E_CONFIG: return 1;
    case TWISTAFF_E_VERIFICATION: return 3;
    case TWISTAFF_E_INTERNAL: return 4;
    default: return 2;
    }
}

void check(twistaff_status s) {
    if (s != TWISTAFF_OK) throw Failure{s, twistaff_last_error()};
}

// owning wrappers so early exits release handles
template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() {
        if (p) Free(p);
    }
};
using Config = Handle<twistaff_config, twistaff_config_free>;
using Context = Handle<twistaff_context, twistaff_context_free>;
using ModuleH = Handle<twistaff_module, twistaff_module_free>;
using QuotientH = Handle<twistaff_quotient, twistaff_quotient_free>;
using ReportH = Handle<twistaff_report, twistaff_report_free>;

void emit(char* s) {
    std::fputs(s, stdout);
    twistaff_string_free(s);
}

twistaff_format format_of(const Options& o) {
    return o.format == "json" ? TWISTAFF_JSON : TWISTAFF_TSV;
}

void load(const Options& o, Config& c) {
    check(twistaff_config_load(o.config.c_str(), &c.p));
    if (o.cutoff) check(twistaff_config_set(c.p, "cutoff", o.cutoff->c_str()));
    if (o.window) check(twistaff_config_set(c.p, "window", o.window->c_str()));
    if (o.seed) check(twistaff_config_set(c.p, "seed", o.seed->c_str()));
    if (o.timing) check(twistaff_config_set(c.p, "timing", "1"));
}

int run_report(const Options& o, const char* suites) {
    Config c;
    load(o, c);
    ReportH r;
    check(twistaff_run_suites(c.p, suites, &r.p));
    char* s = nullptr;
    check(twistaff_report_render(r.p, format_of(o), &s));
    emit(s);
    size_t bad = twistaff_report_failures(r.p);
    if (bad) {
        std::fprintf(stderr, "twistaff: %zu check(s) failed\n", bad);
        return 3;
    }
    return 0;
}

int run(const std::string& cmd, const Options& o) {
    if (cmd == "validate") return run_report(o, "lie,structure");
    if (cmd == "verify") return run_report(o, o.suites.c_str());

    Config c;
    load(o, c);
    Context x;
    check(twistaff_context_new(c.p, &x.p));
    twistaff_format f = format_of(o);
    char* s = nullptr;
    if (cmd == "decompose") {
        check(twistaff_decompose(x.p, f, &s));
        emit(s);
        return 0;
    }
    ModuleH m;
    check(twistaff_module_new(x.p, c.p, &m.p));
    if (cmd == "build") {
        check(twistaff_module_summary(m.p, f, &s));
    } else if (cmd == "character") {
        check(twistaff_character(m.p, nullptr, f, &s));
    } else if (cmd == "twist-weight") {
        check(twistaff_twist_weights(m.p, f, &s));
    } else {
        QuotientH q;
        check(twistaff_quotient_new(m.p, c.p, &q.p));
        check(twistaff_quotient_dims(q.p, nullptr, f, &s));
    }
    emit(s);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted affine Lie algebras and their induced modules"};
    app.set_version_flag("--version", twistaff_version());
    app.require_subcommand(1);

    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", o.config, "configuration file")->required();
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"tsv", "json"}));
        sub->add_option("--cutoff", o.cutoff, "module cutoff (absolute conformal weight)");
        sub->add_option("--window", o.window, "degree window for sweeps");
        sub->add_option("--seed", o.seed, "seed for randomized checks");
        sub->add_flag("--timing", o.timing, "record per-check milliseconds");
    };
    const char* cmds[][2] = {
        {"validate", "run the Lie algebra and structure suites"},
        {"decompose", "print exponents, nilpotent images and the Jordan basis"},
        {"build", "build the module and print a summary"},
        {"character", "graded dimensions up to the cutoff"},
        {"twist-weight", "conformal weights of the generators"},
        {"quotient-dims", "graded dimensions of the quotient by the null field"},
        {"verify", "run verification suites"},
    };
    for (auto& [name, help] : cmds) {
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        if (std::string(name) == "verify")
            sub->add_option("--suites", o.suites, "comma-separated suites or 'all'");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), o);
    } catch (const Failure& e) {
        std::fprintf(stderr, "twistaff: %s: %s\n", twistaff_status_name(e.status), e.message.c_str());
        return exit_code(e.status);
    }
}
