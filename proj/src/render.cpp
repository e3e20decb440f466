#include "twistaff/render.hpp"

#include <numeric>
#include <sstream>

#include "json.hpp"
#include "twistaff/error.hpp"
#include "twistaff/expr.hpp"

namespace twistaff {

using nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string declaration(long n) { return n > 1 ? "# z = zeta_" + std::to_string(n) + "\n" : ""; }

long matrix_conductor(const Matrix& m) { return common_conductor(m.entries()); }

}  // namespace

Format parse_format(const std::string& s) {
    if (s == "tsv") return Format::tsv;
    if (s == "json") return Format::json;
    fail(ErrorKind::usage, "unknown format '" + s + "' (tsv, json)");
}

std::string render_report(const Report& r, Format f, bool timing) {
    if (f == Format::json) {
        json a = json::array();
        for (const auto& e : r.entries) {
            json o{{"suite", e.suite}, {"check", e.check}, {"status", status_name(e.status)}, {"ms", timing ? e.ms : 0.0}};
            if (e.witness) o["witness"] = *e.witness;
            a.push_back(o);
        }
        return dump(a);
    }
    std::ostringstream os;
    os << "suite\tcheck\tstatus\twitness\tms\n";
    for (const auto& e : r.entries) {
        std::ostringstream ms;
        ms << (timing ? e.ms : 0.0);
        os << e.suite << '\t' << e.check << '\t' << status_name(e.status) << '\t' << e.witness.value_or("") << '\t'
           << ms.str() << '\n';
    }
    return os.str();
}

std::string render_character(const std::vector<std::pair<Degree, size_t>>& rows, Format f, const std::string& kind,
                             const Degree& cutoff) {
    if (f == Format::json) {
        json a = json::array();
        for (const auto& [w, n] : rows) a.push_back({{"weight", w.str()}, {"dimension", n}});
        std::string q;
        for (const auto& [w, n] : rows) {
            if (n == 0) continue;
            std::string t = n == 1 ? "" : std::to_string(n);
            std::string e = w.is_zero() ? "" : (w == Degree(1) ? "q" : "q^(" + w.str() + ")");
            std::string term = !t.empty() && !e.empty() ? t + "*" + e : (t.empty() && e.empty() ? "1" : t + e);
            q += (q.empty() ? "" : " + ") + term;
        }
        return dump({{"kind", kind}, {"cutoff", cutoff.str()}, {"conductor", 1}, {"rows", a}, {"qseries", q.empty() ? "0" : q}});
    }
    std::ostringstream os;
    os << "weight\tdimension\n";
    for (const auto& [w, n] : rows) os << w.str() << '\t' << n << '\n';
    return os.str();
}

std::string render_decomposition(const TwistedContext& ctx, Format f) {
    const AutomorphismData& A = ctx.aut();
    const auto& labels = ctx.lie().labels();
    long n = std::lcm(std::lcm(matrix_conductor(A.S), matrix_conductor(A.N)), matrix_conductor(A.J));
    auto row_strings = [&](const Matrix& m) {
        std::vector<std::vector<std::string>> rows;
        for (size_t i = 0; i < m.rows(); ++i) {
            std::vector<std::string> r;
            for (size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str(n));
            rows.push_back(r);
        }
        return rows;
    };
    if (f == Format::json) {
        json basis = json::array();
        for (size_t i = 0; i < ctx.dim(); ++i) {
            json o{{"index", i}, {"label", ctx.label(i)}, {"alpha", ctx.alpha(i).str()},
                   {"vector", render_vector(A.J.column(i), labels, n)}};
            o["nilpotent_image"] = ctx.njump(i) >= 0 ? json(ctx.label(ctx.njump(i))) : json("0");
            basis.push_back(o);
        }
        return dump({{"conductor", n}, {"labels", labels}, {"jordan_basis", basis},
                     {"semisimple", row_strings(A.S)}, {"nilpotent", row_strings(A.N)},
                     {"semisimple_only", A.semisimple()}});
    }
    std::ostringstream os;
    os << declaration(n);
    os << "index\tjordan\talpha\tnilpotent_image\n";
    for (size_t i = 0; i < ctx.dim(); ++i)
        os << i << '\t' << ctx.label(i) << '\t' << ctx.alpha(i).str() << '\t'
           << (ctx.njump(i) >= 0 ? ctx.label(ctx.njump(i)) : "0") << '\n';
    auto block = [&](const char* name, const Matrix& m) {
        os << '\n' << name;
        for (const auto& l : labels) os << '\t' << l;
        os << '\n';
        auto rows = row_strings(m);
        for (size_t i = 0; i < rows.size(); ++i) {
            os << labels[i];
            for (const auto& c : rows[i]) os << '\t' << c;
            os << '\n';
        }
    };
    block("semisimple", A.S);
    block("nilpotent", A.N);
    return os.str();
}

std::string render_module_summary(const Module& m, Format f) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("mode", mode_name(m.mode()));
    kv.emplace_back("level", m.level().str());
    kv.emplace_back("cutoff", m.cutoff().str());
    kv.emplace_back("generators", std::to_string(m.spec().space.dim()));
    kv.emplace_back("min_weight", m.min_weight().str());
    if (m.vertex_operator_mode()) kv.emplace_back("central_charge", m.central_charge().str());
    size_t total = 0;
    for (const auto& [w, v] : m.graded_basis()) total += v.size();
    kv.emplace_back("basis_size", std::to_string(total));
    kv.emplace_back("truncated", m.truncated() ? "iota_depth=" + std::to_string(m.spec().iota_depth) : "no");
    if (m.vertex_operator_mode()) kv.emplace_back("l0_nilpotent_part", m.lm0_nilpotent_part() ? "yes" : "no");
    if (f == Format::json) {
        json o = json::object();
        for (const auto& [k, v] : kv) o[k] = v;
        json w = json::array();
        for (size_t b = 0; b < m.spec().space.dim(); ++b)
            w.push_back({{"generator", m.spec().space.labels[b]}, {"weight", m.twist_weight(b).str()}});
        o["generator_weights"] = w;
        o["conductor"] = 1;
        return dump(o);
    }
    std::ostringstream os;
    os << "key\tvalue\n";
    for (const auto& [k, v] : kv) os << k << '\t' << v << '\n';
    return os.str();
}

std::string render_twist_weights(const Module& m, Format f) {
    const auto& labels = m.spec().space.labels;
    if (f == Format::json) {
        json a = json::array();
        for (size_t b = 0; b < labels.size(); ++b)
            a.push_back({{"generator", labels[b]}, {"weight", m.twist_weight(b).str()}});
        return dump({{"conductor", 1}, {"rows", a}, {"l0_nilpotent_part", m.lm0_nilpotent_part()}});
    }
    std::ostringstream os;
    os << "generator\tweight\n";
    for (size_t b = 0; b < labels.size(); ++b) os << labels[b] << '\t' << m.twist_weight(b).str() << '\n';
    return os.str();
}

}  // namespace twistaff
