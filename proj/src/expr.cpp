#include "twistaff/expr.hpp"

#include <cctype>

#include "twistaff/error.hpp"

namespace twistaff {

bool LinearForm::has_vector() const {
    for (const auto& c : coeffs)
        if (!c.is_zero()) return true;
    return false;
}

namespace {

class Parser {
public:
    Parser(std::string_view s, const std::vector<std::string>& labels, long m)
        : s_(s), labels_(labels), m_(m) {}

    LinearForm run() {
        LinearForm v = expr();
        skip();
        if (pos_ != s_.size()) bad("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void bad(const std::string& why) {
        fail(ErrorKind::config, "cannot parse '" + std::string(s_) + "': " + why);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    LinearForm zero() const {
        LinearForm v;
        v.coeffs.assign(labels_.size(), Scalar());
        return v;
    }

    LinearForm scalar(const Scalar& x) const {
        LinearForm v = zero();
        v.constant = x;
        return v;
    }

    static void add_to(LinearForm& a, const LinearForm& b, bool neg) {
        if (neg) {
            a.constant -= b.constant;
            for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
        } else {
            a.constant += b.constant;
            for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
        }
    }

    LinearForm mul(const LinearForm& a, const LinearForm& b) {
        if (a.has_vector() && b.has_vector()) bad("product of two basis elements");
        const LinearForm& vec = a.has_vector() ? a : b;
        const Scalar& k = a.has_vector() ? b.constant : a.constant;
        LinearForm r = zero();
        r.constant = vec.constant * k;
        for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = vec.coeffs[i] * k;
        return r;
    }

    LinearForm expr() {
        skip();
        LinearForm acc = zero();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        add_to(acc, term(), neg);
        for (;;) {
            if (eat('+'))
                add_to(acc, term(), false);
            else if (eat('-'))
                add_to(acc, term(), true);
            else
                break;
        }
        return acc;
    }

    LinearForm term() {
        LinearForm acc = factor();
        for (;;) {
            if (eat('*'))
                acc = mul(acc, factor());
            else if (eat('/')) {
                LinearForm d = factor();
                if (d.has_vector()) bad("division by a basis element");
                acc = mul(acc, scalar(d.constant.inverse()));
            } else
                break;
        }
        return acc;
    }

    LinearForm factor() {
        skip();
        if (eat('-')) {
            LinearForm f = factor();
            return mul(f, scalar(Scalar(-1)));
        }
        LinearForm base = primary();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            long e = integer();
            if (base.has_vector()) bad("power of a basis element");
            return scalar(base.constant.pow(neg ? -e : e));
        }
        return base;
    }

    long integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) bad("expected integer");
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    LinearForm primary() {
        skip();
        if (pos_ >= s_.size()) bad("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            LinearForm v = expr();
            if (!eat(')')) bad("missing ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return scalar(Scalar(mpq_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id(s_.substr(start, pos_ - start));
            for (size_t i = 0; i < labels_.size(); ++i)
                if (labels_[i] == id) {
                    LinearForm v = zero();
                    v.coeffs[i] = Scalar(1);
                    return v;
                }
            if (id == "z") return scalar(Scalar::root_of_unity(1, m_));
            if (id.rfind("zeta_", 0) == 0 && id.size() > 5) {
                long n = 0;
                for (size_t k = 5; k < id.size(); ++k) {
                    if (!std::isdigit(static_cast<unsigned char>(id[k]))) bad("bad root of unity " + id);
                    n = n * 10 + (id[k] - '0');
                }
                if (n < 1) bad("bad root of unity " + id);
                return scalar(Scalar::root_of_unity(1, n));
            }
            bad("unknown name '" + id + "'");
        }
        bad("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const std::vector<std::string>& labels_;
    long m_;
    size_t pos_ = 0;
};

}  // namespace

LinearForm parse_linear(std::string_view text, const std::vector<std::string>& labels, long m) {
    return Parser(text, labels, m).run();
}

std::vector<Scalar> parse_vector(std::string_view text, const std::vector<std::string>& labels,
                                 long m) {
    LinearForm v = parse_linear(text, labels, m);
    if (!v.constant.is_zero())
        fail(ErrorKind::config, "'" + std::string(text) + "' is not an element of the algebra");
    return v.coeffs;
}

Scalar parse_scalar(std::string_view text, long m) {
    static const std::vector<std::string> none;
    return Parser(text, none, m).run().constant;
}

std::string render_vector(const std::vector<Scalar>& v, const std::vector<std::string>& labels,
                          long m) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        std::string c = v[i].str(m);
        bool compound = c.find(' ') != std::string::npos;
        std::string term;
        bool neg = false;
        if (c == "1")
            term = labels[i];
        else if (c == "-1") {
            term = labels[i];
            neg = true;
        } else if (compound)
            term = "(" + c + ")*" + labels[i];
        else if (c[0] == '-') {
            neg = true;
            term = c.substr(1) + "*" + labels[i];
        } else
            term = c + "*" + labels[i];
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace twistaff
