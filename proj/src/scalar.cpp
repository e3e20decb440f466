#include "twistaff/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "twistaff/error.hpp"

namespace twistaff {

namespace {

long g_cap = 1024;

using QVec = std::vector<mpq_class>;

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Integer polynomial helpers for cyclotomic polynomials, low degree first.
using ZPoly = std::vector<mpz_class>;

ZPoly poly_divide_exact(ZPoly num, const ZPoly& den) {
    ZPoly q(num.size() - den.size() + 1);
    for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
        mpz_class c = num[i + den.size() - 1];  // den is monic
        q[i] = c;
        for (size_t k = 0; k < den.size(); ++k) num[i + k] -= c * den[k];
    }
    return q;
}

const ZPoly& cyclotomic_poly(long n);

ZPoly compute_cyclotomic(long n) {
    ZPoly p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) p = poly_divide_exact(p, cyclotomic_poly(d));
    return p;
}

std::mutex g_mu;
std::map<long, std::unique_ptr<ZPoly>> g_polys;

const ZPoly& cyclotomic_poly(long n) {
    auto it = g_polys.find(n);
    if (it != g_polys.end()) return *it->second;
    auto p = std::make_unique<ZPoly>(compute_cyclotomic(n));
    auto& ref = *p;
    g_polys.emplace(n, std::move(p));
    return ref;
}

struct Field {
    long n = 1;
    long phi = 1;
    std::vector<QVec> powers;  // zeta^j, 0 <= j < n
};

std::map<long, std::unique_ptr<Field>> g_fields;

const Field& field(long n) {
    std::lock_guard<std::mutex> lock(g_mu);
    auto it = g_fields.find(n);
    if (it != g_fields.end()) return *it->second;
    auto f = std::make_unique<Field>();
    f->n = n;
    const ZPoly& phi = cyclotomic_poly(n);
    f->phi = static_cast<long>(phi.size()) - 1;
    f->powers.assign(n, QVec(f->phi));
    f->powers[0][0] = 1;
    for (long j = 1; j < n; ++j) {
        const QVec& prev = f->powers[j - 1];
        QVec cur(f->phi);
        for (long k = 0; k + 1 < f->phi; ++k) cur[k + 1] = prev[k];
        mpq_class top = prev[f->phi - 1];
        if (top != 0)
            for (long k = 0; k < f->phi; ++k) cur[k] -= top * mpq_class(phi[k]);
        f->powers[j] = std::move(cur);
    }
    auto& ref = *f;
    g_fields.emplace(n, std::move(f));
    return ref;
}

// Dense exact solve of A x = b (A square, invertible); returns x.
QVec solve_square(std::vector<QVec> a, QVec b) {
    size_t n = b.size();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) fail(ErrorKind::division_by_zero, "inverse of zero scalar");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        mpq_class inv = 1 / a[c][c];
        for (size_t k = c; k < n; ++k) a[c][k] *= inv;
        b[c] *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            mpq_class f = a[r][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    return b;
}

// Data to express an element of Q(zeta_n) that lies in Q(zeta_d).
struct Descent {
    std::vector<long> rows;        // pivot rows of the lift matrix
    std::vector<QVec> inverse;     // inverse of the selected square block
};

std::map<std::pair<long, long>, std::unique_ptr<Descent>> g_descents;

QVec lift(const QVec& c, long from, long to) {
    if (from == to) return c;
    const Field& f = field(to);
    long step = to / from;
    QVec out(f.phi);
    for (size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0) continue;
        const QVec& pw = f.powers[(static_cast<long>(j) * step) % to];
        for (long k = 0; k < f.phi; ++k)
            if (pw[k] != 0) out[k] += c[j] * pw[k];
    }
    return out;
}

const Descent& descent(long n, long d) {
    long pd = field(d).phi;
    std::lock_guard<std::mutex> lock(g_mu);
    auto key = std::make_pair(n, d);
    auto it = g_descents.find(key);
    if (it != g_descents.end()) return *it->second;
    // columns: lifts of zeta_d^j
    long pn = g_fields.at(n)->phi;
    std::vector<QVec> cols;
    for (long j = 0; j < pd; ++j) {
        QVec e(pd);
        e[j] = 1;
        // lift without re-locking: inline
        const Field& f = *g_fields.at(n);
        QVec out(pn);
        const QVec& pw = f.powers[(j * (n / d)) % n];
        for (long k = 0; k < pn; ++k) out[k] = pw[k];
        cols.push_back(out);
    }
    // choose independent rows greedily
    auto d_ptr = std::make_unique<Descent>();
    std::vector<QVec> basis;  // row echelon of chosen rows
    std::vector<long> piv;
    for (long r = 0; r < pn && static_cast<long>(d_ptr->rows.size()) < pd; ++r) {
        QVec row(pd);
        for (long j = 0; j < pd; ++j) row[j] = cols[j][r];
        QVec red = row;
        for (size_t b = 0; b < basis.size(); ++b) {
            if (red[piv[b]] == 0) continue;
            mpq_class f = red[piv[b]] / basis[b][piv[b]];
            for (long j = 0; j < pd; ++j) red[j] -= f * basis[b][j];
        }
        long p = -1;
        for (long j = 0; j < pd; ++j)
            if (red[j] != 0) {
                p = j;
                break;
            }
        if (p < 0) continue;
        basis.push_back(red);
        piv.push_back(p);
        d_ptr->rows.push_back(r);
    }
    std::vector<QVec> block(pd, QVec(pd));
    for (long a = 0; a < pd; ++a)
        for (long j = 0; j < pd; ++j) block[a][j] = cols[j][d_ptr->rows[a]];
    d_ptr->inverse.assign(pd, QVec(pd));
    for (long j = 0; j < pd; ++j) {
        QVec e(pd);
        e[j] = 1;
        QVec col = solve_square(block, e);
        for (long a = 0; a < pd; ++a) d_ptr->inverse[a][j] = col[a];
    }
    auto& ref = *d_ptr;
    g_descents.emplace(key, std::move(d_ptr));
    return ref;
}

bool try_descend(const QVec& x, long n, long d, QVec& out) {
    const Descent& ds = descent(n, d);
    long pd = static_cast<long>(ds.rows.size());
    QVec y(pd);
    for (long a = 0; a < pd; ++a)
        for (long j = 0; j < pd; ++j)
            if (ds.inverse[a][j] != 0) y[a] += ds.inverse[a][j] * x[ds.rows[j]];
    if (lift(y, d, n) != x) return false;
    out = std::move(y);
    return true;
}

void check_cap(long n) {
    if (n > g_cap)
        fail(ErrorKind::conductor_cap,
             "conductor " + std::to_string(n) + " exceeds cap " + std::to_string(g_cap));
}

long checked_lcm_long(long a, long b) {
    long m = std::lcm(a, b);
    check_cap(m);
    return m;
}

QVec mul_vec(const QVec& a, const QVec& b, long n) {
    const Field& f = field(n);
    long phi = f.phi;
    QVec conv(2 * phi - 1);
    for (long i = 0; i < phi; ++i) {
        if (a[i] == 0) continue;
        for (long j = 0; j < phi; ++j)
            if (b[j] != 0) conv[i + j] += a[i] * b[j];
    }
    QVec out(phi);
    for (long j = 0; j < phi; ++j) out[j] = conv[j];
    for (long j = phi; j < 2 * phi - 1; ++j) {
        if (conv[j] == 0) continue;
        const QVec& pw = f.powers[j % n];
        for (long k = 0; k < phi; ++k)
            if (pw[k] != 0) out[k] += conv[j] * pw[k];
    }
    return out;
}

}  // namespace

void set_conductor_cap(long cap) { g_cap = cap < 1 ? 1 : cap; }
long conductor_cap() { return g_cap; }

long euler_phi(long n) {
    long r = n;
    for (long p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

long canonical_conductor(long n) { return n % 4 == 2 ? n / 2 : n; }

Scalar Scalar::rational(long p, long q) {
    if (q == 0) fail(ErrorKind::division_by_zero, "zero denominator");
    mpq_class v(p, q);
    v.canonicalize();
    return Scalar(v);
}

Scalar Scalar::root_of_unity(long k, long n) {
    if (n < 1) fail(ErrorKind::domain, "root_of_unity needs N >= 1");
    k %= n;
    if (k < 0) k += n;
    long g = std::gcd(k, n);
    if (k == 0) return Scalar(1);
    k /= g;
    n /= g;
    Scalar sign(1);
    if (n % 4 == 2) {
        // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
        long m = n / 2;
        if (k % 2) sign = Scalar(-1);
        k = (k * ((m + 1) / 2)) % m;
        n = m;
        if (n == 1) return sign;
    }
    check_cap(n);
    const Field& f = field(n);
    Scalar s;
    s.n_ = n;
    s.cyc_ = f.powers[k];
    s.normalize();
    return s * sign;
}

Scalar Scalar::from_coefficients(long n, std::vector<mpq_class> coeffs) {
    if (n < 1) fail(ErrorKind::domain, "conductor must be positive");
    if (n == 1) {
        Scalar s;
        if (!coeffs.empty()) s.rat_ = coeffs[0];
        return s;
    }
    Scalar acc;
    for (size_t j = 0; j < coeffs.size(); ++j)
        if (coeffs[j] != 0) acc += Scalar(coeffs[j]) * root_of_unity(static_cast<long>(j), n);
    return acc;
}

bool Scalar::is_zero() const { return n_ == 1 && rat_ == 0; }
bool Scalar::is_one() const { return n_ == 1 && rat_ == 1; }

const mpq_class& Scalar::rational_value() const {
    if (n_ != 1) fail(ErrorKind::domain, "expected a rational number, got " + str());
    return rat_;
}

std::vector<mpq_class> Scalar::coefficients(long m) const {
    if (m % n_ != 0) fail(ErrorKind::internal, "conductor does not divide target");
    QVec own = n_ == 1 ? QVec{rat_} : cyc_;
    if (m == 1) return own;
    check_cap(m);
    return lift(own, n_, m);
}

void Scalar::normalize() {
    if (n_ == 1) return;
    for (;;) {
        bool rational = true;
        for (size_t j = 1; j < cyc_.size(); ++j)
            if (cyc_[j] != 0) {
                rational = false;
                break;
            }
        if (rational) {
            rat_ = cyc_[0];
            cyc_.clear();
            n_ = 1;
            return;
        }
        bool reduced = false;
        for (long p : prime_factors(n_)) {
            long d = canonical_conductor(n_ / p);
            if (d == 1 || d == n_) continue;
            QVec y;
            if (try_descend(cyc_, n_, d, y)) {
                cyc_ = std::move(y);
                n_ = d;
                reduced = true;
                break;
            }
        }
        if (!reduced) return;
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (n_ == 1)
        r.rat_ = -r.rat_;
    else
        for (auto& c : r.cyc_) c = -c;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (n_ == 1 && o.n_ == 1) {
        rat_ += o.rat_;
        return *this;
    }
    long m = checked_lcm_long(n_, o.n_);
    QVec a = coefficients(m);
    QVec b = o.coefficients(m);
    for (size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    n_ = m;
    cyc_ = std::move(a);
    rat_ = 0;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (n_ == 1 && o.n_ == 1) {
        rat_ -= o.rat_;
        return *this;
    }
    return *this += -o;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (o.n_ == 1) {
        if (n_ == 1)
            rat_ *= o.rat_;
        else if (o.rat_ == 0)
            *this = Scalar();
        else
            for (auto& c : cyc_) c *= o.rat_;
        return *this;
    }
    if (n_ == 1) {
        mpq_class q = rat_;
        *this = o;
        if (q == 0) return *this = Scalar();
        for (auto& c : cyc_) c *= q;
        return *this;
    }
    long m = checked_lcm_long(n_, o.n_);
    QVec a = coefficients(m);
    QVec b = o.coefficients(m);
    cyc_ = mul_vec(a, b, m);
    n_ = m;
    normalize();
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail(ErrorKind::division_by_zero, "division by zero");
    if (n_ == 1) return Scalar(1 / rat_);
    const Field& f = field(n_);
    long phi = f.phi;
    std::vector<QVec> a(phi, QVec(phi));
    for (long j = 0; j < phi; ++j) {
        QVec e(phi);
        e[j] = 1;
        QVec col = mul_vec(cyc_, e, n_);
        for (long r = 0; r < phi; ++r) a[r][j] = col[r];
    }
    QVec rhs(phi);
    rhs[0] = 1;
    Scalar s;
    s.n_ = n_;
    s.cyc_ = solve_square(std::move(a), std::move(rhs));
    s.normalize();
    return s;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.n_ != b.n_) return false;
    if (a.n_ == 1) return a.rat_ == b.rat_;
    return a.cyc_ == b.cyc_;
}

Scalar Scalar::galois(long k) const {
    if (n_ == 1) return *this;
    k %= n_;
    if (k < 0) k += n_;
    if (std::gcd(k, n_) != 1) fail(ErrorKind::domain, "galois exponent not coprime to conductor");
    const Field& f = field(n_);
    Scalar s;
    s.n_ = n_;
    s.cyc_.assign(f.phi, 0);
    for (long j = 0; j < f.phi; ++j) {
        if (cyc_[j] == 0) continue;
        const QVec& pw = f.powers[(j * k) % n_];
        for (long t = 0; t < f.phi; ++t)
            if (pw[t] != 0) s.cyc_[t] += cyc_[j] * pw[t];
    }
    s.normalize();
    return s;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::string Scalar::str(long m) const {
    if (n_ == 1 && m == 1) return rat_.get_str();
    QVec c = coefficients(m);
    std::string out;
    for (size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0) continue;
        bool neg = c[j] < 0;
        mpq_class mag = neg ? mpq_class(-c[j]) : c[j];
        std::string term;
        if (j == 0)
            term = mag.get_str();
        else {
            if (mag != 1) term = mag.get_str() + "*";
            term += j == 1 ? std::string("z") : "z^" + std::to_string(j);
        }
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

long common_conductor(const std::vector<Scalar>& xs) {
    long m = 1;
    for (const auto& x : xs) m = std::lcm(m, x.conductor());
    return m;
}

}  // namespace twistaff
