#include "twistaff/automorphism.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "twistaff/error.hpp"
#include "twistaff/expr.hpp"

namespace twistaff {

namespace {

struct Span {
    std::vector<Vector> rows;
    std::vector<size_t> piv;

    Vector reduce(Vector v) const {
        for (size_t k = 0; k < rows.size(); ++k) {
            if (v[piv[k]].is_zero()) continue;
            Scalar f = v[piv[k]];
            for (size_t t = 0; t < v.size(); ++t)
                if (!rows[k][t].is_zero()) v[t] -= f * rows[k][t];
        }
        return v;
    }

    bool add(const Vector& v) {
        Vector r = reduce(v);
        for (size_t t = 0; t < r.size(); ++t)
            if (!r[t].is_zero()) {
                Scalar inv = r[t].inverse();
                for (auto& x : r) x *= inv;
                rows.push_back(std::move(r));
                piv.push_back(t);
                return true;
            }
        return false;
    }
};

Scalar eval_poly(const std::vector<Scalar>& p, const Scalar& x) {
    Scalar acc;
    for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

std::vector<mpz_class> divisors(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<mpz_class> small, large;
    for (mpz_class k = 1; k * k <= n; ++k)
        if (n % k == 0) {
            small.push_back(k);
            if (k * k != n) large.push_back(n / k);
        }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

Vector coords_in(const std::vector<Vector>& basis, const Vector& v) {
    Matrix b = Matrix::from_columns(basis, v.size());
    auto x = solve(b, v);
    if (!x) fail(ErrorKind::internal, "vector outside the expected subspace");
    return *x;
}

std::string mat_name(const Vector& v, const LieAlgebra& L) {
    return render_vector(v, L.labels(), common_conductor(v));
}

void check_automorphism(const LieAlgebra& L, const Matrix& S, const Matrix& N) {
    size_t d = L.dim();
    if (S.rows() != d || S.cols() != d || N.rows() != d || N.cols() != d)
        fail(ErrorKind::config, "automorphism matrix has wrong shape");
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Vector a = L.basis_vector(i), b = L.basis_vector(j);
            if (!(S * L.bracket(a, b) == L.bracket(S * a, S * b)))
                fail(ErrorKind::not_automorphism, "not an automorphism: g[" + L.labels()[i] + ", " +
                                                      L.labels()[j] + "] != [g " + L.labels()[i] +
                                                      ", g " + L.labels()[j] + "]");
            Vector lhs = N * L.bracket(a, b);
            Vector rhs = L.bracket(N * a, b) + L.bracket(a, N * b);
            if (!(lhs == rhs))
                fail(ErrorKind::not_automorphism, "nilpotent part is not a derivation on (" +
                                                      L.labels()[i] + ", " + L.labels()[j] + ")");
        }
    if (!(S.transpose() * L.form() * S == L.form()))
        fail(ErrorKind::not_automorphism, "form not invariant under the automorphism");
    if (!(N.transpose() * L.form() + L.form() * N).is_zero())
        fail(ErrorKind::not_automorphism, "form not invariant: nilpotent part is not skew");
}

}  // namespace

std::vector<RationalExponent> AutomorphismData::exponents() const {
    std::vector<RationalExponent> e = alphas;
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

std::vector<Eigenspace> root_of_unity_eigenspaces(const Matrix& m) {
    size_t d = m.rows();
    long c = common_conductor(m.entries());
    std::vector<Scalar> p = charpoly(m);
    long bound = static_cast<long>(d) * euler_phi(c);
    std::vector<Eigenspace> out;
    size_t found = 0;
    for (long n = 1; n <= conductor_cap() && found < d; ++n) {
        if (euler_phi(n) > bound) continue;
        if (std::lcm(canonical_conductor(n), c) > conductor_cap()) continue;
        for (long j = 0; j < n && found < d; ++j) {
            if (std::gcd(j, n) != 1) continue;
            Scalar lam = Scalar::root_of_unity(j, n);
            if (!eval_poly(p, lam).is_zero()) continue;
            Matrix shifted = m - lam * Matrix::identity(d);
            Eigenspace e{RationalExponent(j, n), lam, nullspace(shifted.pow(static_cast<unsigned>(d)))};
            found += e.basis.size();
            out.push_back(std::move(e));
        }
    }
    if (found != d)
        fail(ErrorKind::unsupported_alpha,
             "eigenvalue that is not a root of unity (or exceeds the conductor cap): only rational exponents are supported");
    std::sort(out.begin(), out.end(), [](const Eigenspace& a, const Eigenspace& b) { return a.alpha < b.alpha; });
    return out;
}

std::vector<mpq_class> rational_roots(const std::vector<Scalar>& poly) {
    std::vector<mpq_class> q;
    for (const auto& c : poly) {
        if (!c.is_rational()) fail(ErrorKind::unsupported_alpha, "characteristic polynomial has irrational coefficients");
        q.push_back(c.rational_value());
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    std::vector<mpq_class> roots;
    for (;;) {
        if (q.size() <= 1) break;
        if (q[0] == 0) {
            roots.push_back(0);
            q.erase(q.begin());
            continue;
        }
        mpz_class den = 1;
        for (const auto& c : q) den = lcm(den, mpz_class(c.get_den()));
        std::vector<mpz_class> z;
        for (const auto& c : q) z.push_back(mpz_class(c * den));
        bool hit = false;
        for (const auto& pn : divisors(z.front())) {
            for (const auto& qd : divisors(z.back())) {
                for (int sg : {1, -1}) {
                    mpq_class r(pn * sg, qd);
                    r.canonicalize();
                    // synthetic division
                    std::vector<mpq_class> quo(q.size() - 1);
                    mpq_class carry = 0;
                    for (size_t k = q.size(); k-- > 1;) {
                        carry = carry * r + q[k];
                        quo[k - 1] = carry;
                    }
                    if (carry * r + q[0] != 0) continue;
                    roots.push_back(r);
                    q = quo;
                    hit = true;
                    break;
                }
                if (hit) break;
            }
            if (hit) break;
        }
        if (!hit) fail(ErrorKind::unsupported_alpha, "irrational eigenvalue of ad(x)");
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

JordanChains jordan_chains(const Matrix& A) {
    size_t m = A.rows();
    JordanChains out;
    if (m == 0) return out;
    size_t p = 0;
    std::vector<Matrix> powers{Matrix::identity(m)};
    while (!powers.back().is_zero()) {
        powers.push_back(powers.back() * A);
        ++p;
        if (p > m) fail(ErrorKind::domain, "matrix is not nilpotent");
    }
    std::vector<std::vector<Vector>> kernels(p + 1);
    for (size_t j = 1; j <= p; ++j) kernels[j] = nullspace(powers[j]);

    struct Chain {
        Vector top;
        size_t len;
    };
    std::vector<Chain> chains;
    for (size_t j = p; j >= 1; --j) {
        Span span;
        for (const auto& v : kernels[j - 1]) span.add(v);
        for (const auto& c : chains) span.add(powers[c.len - j] * c.top);
        for (const auto& cand : kernels[j])
            if (span.add(cand)) chains.push_back({cand, j});
    }
    for (const auto& c : chains) {
        size_t start = out.basis.size();
        for (size_t t = 0; t < c.len; ++t) {
            out.basis.push_back(powers[t] * c.top);
            out.next.push_back(t + 1 < c.len ? static_cast<int>(start + t + 1) : -1);
        }
    }
    return out;
}

AutomorphismData aut_from_parts(const LieAlgebra& L, const Matrix& S, const Matrix& N) {
    size_t d = L.dim();
    check_automorphism(L, S, N);
    if (!N.pow(static_cast<unsigned>(d)).is_zero()) fail(ErrorKind::not_automorphism, "nilpotent part is not nilpotent");
    if (!(S * N == N * S)) fail(ErrorKind::not_automorphism, "semisimple and nilpotent parts do not commute");
    std::vector<Eigenspace> eigs = root_of_unity_eigenspaces(S);

    AutomorphismData A;
    A.S = S;
    A.N = N;
    A.G = TauMatrix::exp_nilpotent(S, N);
    std::vector<Vector> cols;
    for (const auto& e : eigs) {
        std::vector<Vector> vb = nullspace(S - e.lambda * Matrix::identity(d));
        if (vb.size() != e.basis.size()) fail(ErrorKind::not_automorphism, "semisimple part is not diagonalizable");
        size_t m = vb.size();
        Matrix coords(m, m);
        for (size_t j = 0; j < m; ++j) {
            Vector c = coords_in(vb, N * vb[j]);
            for (size_t i = 0; i < m; ++i) coords(i, j) = c[i];
        }
        JordanChains ch = jordan_chains(coords);
        size_t base = cols.size();
        for (size_t k = 0; k < m; ++k) {
            Vector v(d);
            for (size_t t = 0; t < m; ++t)
                if (!ch.basis[k][t].is_zero())
                    for (size_t r = 0; r < d; ++r) v[r] += ch.basis[k][t] * vb[t][r];
            cols.push_back(v);
            A.alphas.push_back(e.alpha);
            A.njump.push_back(ch.next[k] < 0 ? -1 : static_cast<int>(base + ch.next[k]));
        }
    }
    A.J = Matrix::from_columns(cols, d);
    auto inv = inverse(A.J);
    if (!inv) fail(ErrorKind::internal, "Jordan basis is singular");
    A.Jinv = *inv;
    for (const auto& c : cols) A.jordan_labels.push_back(mat_name(c, L));
    return A;
}

AutomorphismData aut_from_matrix(const LieAlgebra& L, const Matrix& G) {
    size_t d = L.dim();
    if (G.rows() != d || G.cols() != d) fail(ErrorKind::config, "automorphism matrix has wrong shape");
    if (!inverse(G)) fail(ErrorKind::not_automorphism, "matrix is not invertible");
    std::vector<Eigenspace> eigs = root_of_unity_eigenspaces(G);
    std::vector<Vector> cols;
    std::vector<Scalar> lams;
    for (const auto& e : eigs)
        for (const auto& v : e.basis) {
            cols.push_back(v);
            lams.push_back(e.lambda);
        }
    Matrix P = Matrix::from_columns(cols, d);
    Matrix D(d, d);
    for (size_t i = 0; i < d; ++i) D(i, i) = lams[i];
    Matrix S = P * D * *inverse(P);
    Matrix U = *inverse(S) * G;
    if (!U.is_identity())
        fail(ErrorKind::domain,
             "matrix is not semisimple: the logarithm of its unipotent part is not exact; "
             "give the semisimple part as 'matrix' and the nilpotent logarithm as 'nilpotent'");
    return aut_from_parts(L, S, Matrix(d, d));
}

AutomorphismData aut_from_tau(const LieAlgebra& L, const TauMatrix& G) {
    TauMatrix g = G.trimmed();
    const Matrix& S = g.coeff[0];
    auto sinv = inverse(S);
    if (!sinv) fail(ErrorKind::not_automorphism, "matrix is not invertible");
    Matrix N = g.coeff.size() > 1 ? *sinv * g.coeff[1] : Matrix(S.rows(), S.cols());
    if (!(TauMatrix::exp_nilpotent(S, N) == g))
        fail(ErrorKind::not_automorphism, "composite is not of the form S exp(2 pi i N)");
    return aut_from_parts(L, S, N);
}

TauMatrix aut_inner_exp(const LieAlgebra& L, const Vector& x) {
    size_t d = L.dim();
    Matrix A = L.ad(x);
    std::vector<mpq_class> roots = rational_roots(charpoly(A));
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    std::vector<Vector> cols;
    std::vector<Scalar> mus, zetas;
    for (const auto& mu : roots) {
        Matrix shifted = A - Scalar(mu) * Matrix::identity(d);
        for (auto& v : nullspace(shifted.pow(static_cast<unsigned>(d)))) {
            cols.push_back(v);
            mus.push_back(Scalar(mu));
            mpz_class num = mu.get_num(), den = mu.get_den();
            if (!num.fits_slong_p() || !den.fits_slong_p()) fail(ErrorKind::conductor_cap, "eigenvalue too large");
            zetas.push_back(Scalar::root_of_unity(num.get_si(), den.get_si()));
        }
    }
    Matrix Q = Matrix::from_columns(cols, d);
    Matrix Qi = *inverse(Q);
    Matrix Dm(d, d), Dz(d, d);
    for (size_t i = 0; i < d; ++i) {
        Dm(i, i) = mus[i];
        Dz(i, i) = zetas[i];
    }
    Matrix As = Q * Dm * Qi;
    Matrix S = Q * Dz * Qi;
    return TauMatrix::exp_nilpotent(S, A - As);
}

Vector find_inner_generator(const LieAlgebra& L, const AutomorphismData& A) {
    size_t d = L.dim();
    if (A.N.is_zero()) return Vector(d);
    if (rank(killing_form(L)) != d) fail(ErrorKind::domain, "algebra is not semisimple: no inner generator for the nilpotent part");
    Matrix M(d * d, d);
    Vector b(d * d);
    for (size_t k = 0; k < d; ++k) {
        Matrix ad = L.ad(L.basis_vector(k));
        for (size_t r = 0; r < d; ++r)
            for (size_t c = 0; c < d; ++c) M(r * d + c, k) = ad(r, c);
    }
    for (size_t r = 0; r < d; ++r)
        for (size_t c = 0; c < d; ++c) b[r * d + c] = A.N(r, c);
    auto x = solve(M, b);
    if (!x) fail(ErrorKind::domain, "nilpotent part is not inner");
    if (!(A.S * *x == *x)) fail(ErrorKind::domain, "inner generator is not fixed by the semisimple part");
    return *x;
}

Report verify_structure(const LieAlgebra& L, const AutomorphismData& A) {
    Report rep;
    const std::string suite = "structure";
    size_t d = L.dim();
    const Matrix& B = L.form();
    auto timed = [&](const std::string& name, auto fn) {
        auto t0 = std::chrono::steady_clock::now();
        std::optional<std::string> w = fn();
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep.add(suite, name, w ? Status::fail : Status::pass, w, ms);
    };
    std::vector<Vector> a;
    for (size_t i = 0; i < d; ++i) a.push_back(A.J.column(i));
    auto name = [&](size_t i) { return "a" + std::to_string(i) + "=" + A.jordan_labels[i]; };
    auto phase = [&](const RationalExponent& al) { return Scalar::root_of_unity(al.num(), al.den()); };

    timed("eigenspace-dims", [&]() -> std::optional<std::string> {
        if (A.alphas.size() != d) return std::string("dims sum to ") + std::to_string(A.alphas.size());
        return std::nullopt;
    });
    timed("bracket-eigenspace", [&]() -> std::optional<std::string> {
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                Vector br = L.bracket(a[i], a[j]);
                RationalExponent s = coset_sum(A.alphas[i], A.alphas[j]);
                if (!(A.S * br == scaled(br, phase(s))))
                    return "[" + name(i) + ", " + name(j) + "] not in eigenspace " + s.str();
            }
        return std::nullopt;
    });
    timed("eigenspace-orthogonality", [&]() -> std::optional<std::string> {
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                RationalExponent s = A.alphas[i] + A.alphas[j];
                if (s == RationalExponent(0) || s == RationalExponent(1)) continue;
                Scalar p = L.pairing(a[i], a[j]);
                if (!p.is_zero()) return "(" + name(i) + ", " + name(j) + ") = " + p.str();
            }
        return std::nullopt;
    });
    timed("eigenspace-pairing-nondegenerate", [&]() -> std::optional<std::string> {
        for (const auto& al : A.exponents()) {
            RationalExponent be = (RationalExponent(1) - al).frac();
            std::vector<size_t> I, Jx;
            for (size_t i = 0; i < d; ++i) {
                if (A.alphas[i] == al) I.push_back(i);
                if (A.alphas[i] == be) Jx.push_back(i);
            }
            if (I.size() != Jx.size()) return "eigenspaces " + al.str() + " and " + be.str() + " differ in dimension";
            Matrix P(I.size(), Jx.size());
            for (size_t r = 0; r < I.size(); ++r)
                for (size_t c = 0; c < Jx.size(); ++c) P(r, c) = L.pairing(a[I[r]], a[Jx[c]]);
            if (rank(P) != I.size()) return "pairing of eigenspaces " + al.str() + ", " + be.str() + " is degenerate";
        }
        return std::nullopt;
    });
    timed("semisimple-part-automorphism", [&]() -> std::optional<std::string> {
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                Vector x = L.basis_vector(i), y = L.basis_vector(j);
                if (!(A.S * L.bracket(x, y) == L.bracket(A.S * x, A.S * y)))
                    return "S[" + L.labels()[i] + ", " + L.labels()[j] + "] != [S " + L.labels()[i] + ", S " + L.labels()[j] + "]";
            }
        return std::nullopt;
    });
    timed("semisimple-part-preserves-form", [&]() -> std::optional<std::string> {
        if (!(A.S.transpose() * B * A.S == B)) return std::string("S^T B S != B");
        return std::nullopt;
    });
    TauMatrix U = TauMatrix::exp_nilpotent(Matrix::identity(d), A.N);
    timed("unipotent-part-automorphism", [&]() -> std::optional<std::string> {
        // coefficientwise in tau: U[x,y] = [Ux, Uy]
        size_t deg = U.coeff.size();
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                for (size_t k = 0; k < 2 * deg - 1; ++k) {
                    Vector lhs(d), rhs(d);
                    Vector br = L.bracket(L.basis_vector(i), L.basis_vector(j));
                    if (k < deg) lhs = U.coeff[k] * br;
                    for (size_t p = 0; p < deg; ++p) {
                        if (k < p || k - p >= deg) continue;
                        rhs = rhs + L.bracket(U.coeff[p].column(i), U.coeff[k - p].column(j));
                    }
                    if (!(lhs == rhs))
                        return "tau^" + std::to_string(k) + " coefficient of U[" + L.labels()[i] + ", " + L.labels()[j] + "] - [U" + L.labels()[i] + ", U" + L.labels()[j] + "]";
                }
            }
        return std::nullopt;
    });
    timed("unipotent-part-preserves-form", [&]() -> std::optional<std::string> {
        TauMatrix Ut;
        for (const auto& c : U.coeff) Ut.coeff.push_back(c.transpose());
        if (!(Ut * TauMatrix::constant(B) * U == TauMatrix::constant(B))) return std::string("U^T B U != B");
        return std::nullopt;
    });
    timed("nilpotent-derivation", [&]() -> std::optional<std::string> {
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                Vector x = L.basis_vector(i), y = L.basis_vector(j);
                Vector r = A.N * L.bracket(x, y) - L.bracket(A.N * x, y) - L.bracket(x, A.N * y);
                if (!is_zero(r)) return "N[" + L.labels()[i] + ", " + L.labels()[j] + "] - [N" + L.labels()[i] + ", " + L.labels()[j] + "] - [" + L.labels()[i] + ", N" + L.labels()[j] + "] = " + mat_name(r, L);
            }
        return std::nullopt;
    });
    timed("nilpotent-skew", [&]() -> std::optional<std::string> {
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                Vector x = L.basis_vector(i), y = L.basis_vector(j);
                Scalar r = L.pairing(A.N * x, y) + L.pairing(x, A.N * y);
                if (!r.is_zero()) return "(N" + L.labels()[i] + ", " + L.labels()[j] + ") + (" + L.labels()[i] + ", N" + L.labels()[j] + ") = " + r.str();
            }
        return std::nullopt;
    });
    timed("nilpotent-index", [&]() -> std::optional<std::string> {
        if (!A.N.pow(static_cast<unsigned>(d)).is_zero()) return std::string("N^dim != 0");
        return std::nullopt;
    });
    timed("parts-commute", [&]() -> std::optional<std::string> {
        if (!(A.S * A.N == A.N * A.S)) return std::string("SN != NS");
        return std::nullopt;
    });
    timed("decomposition", [&]() -> std::optional<std::string> {
        if (!(TauMatrix::exp_nilpotent(A.S, A.N) == A.G)) return std::string("G != S exp(2 pi i N)");
        return std::nullopt;
    });
    timed("jordan-basis", [&]() -> std::optional<std::string> {
        Matrix Sj = A.Jinv * A.S * A.J;
        Matrix Nj = A.Jinv * A.N * A.J;
        for (size_t i = 0; i < d; ++i)
            for (size_t r = 0; r < d; ++r) {
                Scalar want = r == i ? phase(A.alphas[i]) : Scalar();
                if (!(Sj(r, i) == want)) return "S not diagonal on " + name(i);
                Scalar nwant = A.njump[i] == static_cast<int>(r) ? Scalar(1) : Scalar();
                if (!(Nj(r, i) == nwant)) return "N " + name(i) + " is not a basis vector or zero";
            }
        return std::nullopt;
    });
    return rep;
}

bool verify_torus_diagram(const LieAlgebra& L, const TauMatrix& sigma, const Matrix& tau, const Vector& h,
                          const Matrix& mu) {
    auto ti = inverse(tau);
    if (!ti) return false;
    TauMatrix lhs = TauMatrix::constant(tau) * aut_inner_exp(L, h) * TauMatrix::constant(mu) * TauMatrix::constant(*ti);
    return lhs == sigma && mu * h == h;
}

}  // namespace twistaff
