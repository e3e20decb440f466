#include "twistaff/lie.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace twistaff {

namespace {

std::string triple(const LieAlgebra& L, size_t i, size_t j, size_t k) {
    const auto& l = L.labels();
    return "(" + l[i] + ", " + l[j] + ", " + l[k] + ")";
}

void accumulate(SparseTerms& terms, size_t k, const Scalar& c) {
    for (auto& t : terms)
        if (t.first == k) {
            t.second += c;
            return;
        }
    terms.emplace_back(k, c);
}

void prune(SparseTerms& terms) {
    SparseTerms out;
    for (auto& t : terms)
        if (!t.second.is_zero()) out.push_back(t);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    terms = std::move(out);
}

std::optional<std::string> antisymmetry_witness(const LieAlgebra& L) {
    size_t d = L.dim();
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j < d; ++j) {
            Vector r = L.bracket(L.basis_vector(i), L.basis_vector(j)) +
                       L.bracket(L.basis_vector(j), L.basis_vector(i));
            if (!is_zero(r))
                return "[" + L.labels()[i] + ", " + L.labels()[j] + "] + [" + L.labels()[j] + ", " +
                       L.labels()[i] + "] != 0";
        }
    return std::nullopt;
}

std::optional<std::string> jacobi_witness(const LieAlgebra& L) {
    size_t d = L.dim();
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k) {
                Vector a = L.basis_vector(i), b = L.basis_vector(j), c = L.basis_vector(k);
                Vector r = L.bracket(L.bracket(a, b), c) + L.bracket(L.bracket(b, c), a) +
                           L.bracket(L.bracket(c, a), b);
                if (!is_zero(r)) return "jacobi residual nonzero on " + triple(L, i, j, k);
            }
    return std::nullopt;
}

std::optional<std::string> symmetry_witness(const LieAlgebra& L) {
    const Matrix& B = L.form();
    for (size_t i = 0; i < L.dim(); ++i)
        for (size_t j = i + 1; j < L.dim(); ++j)
            if (!(B(i, j) == B(j, i)))
                return "(" + L.labels()[i] + ", " + L.labels()[j] + ") != (" + L.labels()[j] + ", " +
                       L.labels()[i] + ")";
    return std::nullopt;
}

std::optional<std::string> invariance_witness(const LieAlgebra& L) {
    size_t d = L.dim();
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k) {
                Vector a = L.basis_vector(i), b = L.basis_vector(j), c = L.basis_vector(k);
                Scalar r = L.pairing(L.bracket(a, b), c) + L.pairing(b, L.bracket(a, c));
                if (!r.is_zero())
                    return "([a,b],c) + (b,[a,c]) = " + r.str() + " on (a,b,c) = " + triple(L, i, j, k);
            }
    return std::nullopt;
}

std::optional<mpq_class> casimir_coxeter(const LieAlgebra& L, const Matrix& D) {
    size_t d = L.dim();
    Matrix C(d, d);
    for (size_t i = 0; i < d; ++i) {
        Matrix dual_ad = L.ad(D.transpose().column(i));
        C += dual_ad * L.ad(L.basis_vector(i));
    }
    Scalar lam = C(0, 0);
    if (!(C == lam * Matrix::identity(d)) || lam.is_zero() || !lam.is_rational()) return std::nullopt;
    return lam.rational_value() / 2;
}

}  // namespace

const Matrix& LieAlgebra::dual() const {
    if (!dual_) throw LieValidationError(LieCheck::form_degenerate, "invariant form is degenerate");
    return *dual_;
}

Vector LieAlgebra::basis_vector(size_t i) const {
    Vector v(dim());
    v[i] = Scalar(1);
    return v;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
    size_t d = dim();
    Vector r(d);
    for (size_t i = 0; i < d; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < d; ++j) {
            if (y[j].is_zero()) continue;
            const auto& t = c_[i * d + j];
            if (t.empty()) continue;
            Scalar xy = x[i] * y[j];
            for (const auto& [k, c] : t) r[k] += xy * c;
        }
    }
    return r;
}

Scalar LieAlgebra::pairing(const Vector& x, const Vector& y) const {
    Scalar s;
    for (size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < dim(); ++j)
            if (!y[j].is_zero() && !form_(i, j).is_zero()) s += x[i] * form_(i, j) * y[j];
    }
    return s;
}

Matrix LieAlgebra::ad(const Vector& x) const {
    size_t d = dim();
    Matrix m(d, d);
    for (size_t j = 0; j < d; ++j) {
        Vector col = bracket(x, basis_vector(j));
        for (size_t i = 0; i < d; ++i) m(i, j) = col[i];
    }
    return m;
}

LieAlgebra lie_from_structure(std::vector<std::string> labels, const std::vector<StructureEntry>& bracket,
                              const std::vector<FormEntry>& form, bool validate) {
    size_t d = labels.size();
    if (d == 0) fail(ErrorKind::config, "algebra must have positive dimension");
    LieAlgebra L;
    L.labels_ = std::move(labels);
    L.c_.assign(d * d, {});
    std::vector<bool> given(d * d, false);
    for (const auto& e : bracket) {
        if (e.i >= d || e.j >= d || e.k >= d) fail(ErrorKind::config, "bracket index out of range");
        accumulate(L.c_[e.i * d + e.j], e.k, e.c);
        given[e.i * d + e.j] = true;
    }
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            if (given[i * d + j] && !given[j * d + i] && i != j)
                for (const auto& [k, c] : L.c_[i * d + j]) accumulate(L.c_[j * d + i], k, -c);
    for (auto& t : L.c_) prune(t);

    L.form_ = Matrix(d, d);
    std::vector<bool> fgiven(d * d, false);
    for (const auto& e : form) {
        if (e.i >= d || e.j >= d) fail(ErrorKind::config, "form index out of range");
        L.form_(e.i, e.j) += e.c;
        fgiven[e.i * d + e.j] = true;
    }
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            if (fgiven[i * d + j] && !fgiven[j * d + i]) L.form_(j, i) = L.form_(i, j);

    if (auto inv = inverse(L.form_)) {
        L.dual_ = *inv;
        L.hv_ = casimir_coxeter(L, *L.dual_);
    }

    if (validate) {
        if (auto w = antisymmetry_witness(L)) throw LieValidationError(LieCheck::antisymmetry, "antisymmetry: " + *w);
        if (auto w = jacobi_witness(L)) throw LieValidationError(LieCheck::jacobi, *w);
        if (auto w = symmetry_witness(L)) throw LieValidationError(LieCheck::form_symmetry, "form not symmetric: " + *w);
        if (auto w = invariance_witness(L)) throw LieValidationError(LieCheck::form_invariance, "form not invariant: " + *w);
        if (!L.dual_) throw LieValidationError(LieCheck::form_degenerate, "invariant form is degenerate");
    }
    return L;
}

LieAlgebra lie_sl(size_t n) {
    if (n < 2) fail(ErrorKind::config, "sl(n) needs n >= 2");
    // basis: E_ij (i<j), H_k, E_ij (i>j), as n x n matrices
    std::vector<Matrix> mats;
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Matrix m(n, n);
            m(i, j) = Scalar(1);
            mats.push_back(m);
            labels.push_back(n == 2 ? "e" : "E" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    size_t hstart = mats.size();
    for (size_t k = 0; k + 1 < n; ++k) {
        Matrix m(n, n);
        m(k, k) = Scalar(1);
        m(k + 1, k + 1) = Scalar(-1);
        mats.push_back(m);
        labels.push_back(n == 2 ? "h" : "H" + std::to_string(k + 1));
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j) {
            Matrix m(n, n);
            m(i, j) = Scalar(1);
            mats.push_back(m);
            labels.push_back(n == 2 ? "f" : "E" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    size_t d = mats.size();
    auto coords = [&](const Matrix& x) {
        Vector v(d);
        size_t idx = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) v[idx++] = x(i, j);
        Scalar run;
        for (size_t k = 0; k + 1 < n; ++k) {
            run += x(k, k);
            v[hstart + k] = run;
        }
        idx = hstart + n - 1;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < i; ++j) v[idx++] = x(i, j);
        return v;
    };
    std::vector<StructureEntry> br;
    std::vector<FormEntry> fm;
    for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) {
            Vector v = coords(commutator(mats[a], mats[b]));
            for (size_t k = 0; k < d; ++k)
                if (!v[k].is_zero()) br.push_back({a, b, k, v[k]});
            Matrix p = mats[a] * mats[b];
            Scalar tr;
            for (size_t i = 0; i < n; ++i) tr += p(i, i);
            if (!tr.is_zero()) fm.push_back({a, b, tr});
        }
    return lie_from_structure(std::move(labels), br, fm, false);
}

Report lie_checks(const LieAlgebra& L) {
    Report rep;
    auto run = [&](const std::string& name, auto fn) {
        auto t0 = std::chrono::steady_clock::now();
        std::optional<std::string> w = fn();
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep.add("lie", name, w ? Status::fail : Status::pass, w, ms);
    };
    run("antisymmetry", [&] { return antisymmetry_witness(L); });
    run("jacobi", [&] { return jacobi_witness(L); });
    run("form-symmetric", [&] { return symmetry_witness(L); });
    run("form-invariant", [&] { return invariance_witness(L); });
    run("form-nondegenerate", [&]() -> std::optional<std::string> {
        if (rank(L.form()) != L.dim()) return std::string("rank of form < dim");
        return std::nullopt;
    });
    if (rank(L.form()) == L.dim()) {
        run("dual-basis", [&]() -> std::optional<std::string> {
            Matrix p = L.dual() * L.form();
            if (!p.is_identity()) return std::string("D*B != I");
            return std::nullopt;
        });
        if (L.dual_coxeter())
            rep.pass("lie", "dual-coxeter=" + mpq_class(*L.dual_coxeter()).get_str());
        else
            rep.add("lie", "dual-coxeter", Status::skipped, std::string("adjoint Casimir is not a nonzero scalar"));
    }
    return rep;
}

Matrix dual_basis(const LieAlgebra& L) { return L.dual(); }

mpq_class dual_coxeter(const LieAlgebra& L) {
    L.dual();
    if (!L.dual_coxeter())
        fail(ErrorKind::domain, "adjoint Casimir is not a nonzero scalar: not simple or form not normalized");
    return *L.dual_coxeter();
}

Matrix killing_form(const LieAlgebra& L) {
    size_t d = L.dim();
    std::vector<Matrix> ads;
    for (size_t i = 0; i < d; ++i) ads.push_back(L.ad(L.basis_vector(i)));
    Matrix k(d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Matrix p = ads[i] * ads[j];
            Scalar tr;
            for (size_t t = 0; t < d; ++t) tr += p(t, t);
            k(i, j) = tr;
        }
    return k;
}

}  // namespace twistaff
