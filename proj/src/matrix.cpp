#include "twistaff/matrix.hpp"

#include "twistaff/error.hpp"

namespace twistaff {

Matrix Matrix::identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, size_t rows) {
    Matrix m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
}

Vector Matrix::column(size_t j) const {
    Vector v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_identity() const { return r_ == c_ && *this == identity(r_); }

Matrix& Matrix::operator+=(const Matrix& o) {
    if (r_ != o.r_ || c_ != o.c_) fail(ErrorKind::internal, "matrix shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (r_ != o.r_ || c_ != o.c_) fail(ErrorKind::internal, "matrix shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) fail(ErrorKind::internal, "matrix shape mismatch");
    Matrix m(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i)
        for (size_t k = 0; k < a.c_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
        }
    return m;
}

Matrix operator*(const Scalar& k, Matrix a) {
    for (auto& x : a.a_) x *= k;
    return a;
}

Vector operator*(const Matrix& a, const Vector& v) {
    if (a.c_ != v.size()) fail(ErrorKind::internal, "matrix/vector shape mismatch");
    Vector r(a.r_);
    for (size_t i = 0; i < a.r_; ++i)
        for (size_t j = 0; j < a.c_; ++j)
            if (!a(i, j).is_zero() && !v[j].is_zero()) r[i] += a(i, j) * v[j];
    return r;
}

Matrix Matrix::pow(unsigned e) const {
    Matrix r = identity(r_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Rref rref(Matrix m) {
    Rref out;
    size_t row = 0;
    for (size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        size_t p = row;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(row, k));
        Scalar inv = m(row, c).inverse();
        for (size_t k = c; k < m.cols(); ++k) m(row, k) *= inv;
        for (size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, c).is_zero()) continue;
            Scalar f = m(r, c);
            for (size_t k = c; k < m.cols(); ++k)
                if (!m(row, k).is_zero()) m(r, k) -= f * m(row, k);
        }
        out.pivots.push_back(c);
        ++row;
    }
    out.m = std::move(m);
    return out;
}

size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> nullspace(const Matrix& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : r.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v(m.cols());
        v[f] = Scalar(1);
        for (size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.m(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix& m) {
    size_t n = m.rows();
    if (n != m.cols()) return std::nullopt;
    Matrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Scalar(1);
    }
    Rref r = rref(std::move(aug));
    if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = r.m(i, n + j);
    return inv;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    Matrix aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Rref r = rref(std::move(aug));
    Vector x(a.cols());
    for (size_t k = 0; k < r.pivots.size(); ++k) {
        if (r.pivots[k] == a.cols()) return std::nullopt;
        x[r.pivots[k]] = r.m(k, a.cols());
    }
    return x;
}

std::vector<Scalar> charpoly(const Matrix& m) {
    // Faddeev-LeVerrier
    size_t n = m.rows();
    std::vector<Scalar> c(n + 1);
    c[n] = Scalar(1);
    Matrix mk(n, n);
    Matrix id = Matrix::identity(n);
    for (size_t k = 1; k <= n; ++k) {
        mk = m * mk + c[n - k + 1] * id;
        Matrix am = m * mk;
        Scalar tr;
        for (size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / Scalar(static_cast<long>(k));
    }
    return c;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vector operator+(const Vector& a, const Vector& b) {
    Vector r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b) {
    Vector r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vector scaled(const Vector& v, const Scalar& k) {
    Vector r = v;
    for (auto& x : r) x *= k;
    return r;
}

TauMatrix TauMatrix::exp_nilpotent(const Matrix& s, const Matrix& n) {
    TauMatrix t;
    Matrix term = s;
    Scalar fact(1);
    for (long k = 0;; ++k) {
        if (term.is_zero()) break;
        t.coeff.push_back(fact.inverse() * term);
        term = term * n;
        fact *= Scalar(k + 1);
        if (k > static_cast<long>(s.rows()) + 1) fail(ErrorKind::domain, "matrix is not nilpotent");
    }
    if (t.coeff.empty()) t.coeff.push_back(Matrix(s.rows(), s.cols()));
    return t;
}

TauMatrix TauMatrix::trimmed() const {
    TauMatrix t = *this;
    while (t.coeff.size() > 1 && t.coeff.back().is_zero()) t.coeff.pop_back();
    return t;
}

TauMatrix operator*(const TauMatrix& a, const TauMatrix& b) {
    TauMatrix t;
    size_t r = a.coeff.front().rows(), c = b.coeff.front().cols();
    t.coeff.assign(a.coeff.size() + b.coeff.size() - 1, Matrix(r, c));
    for (size_t i = 0; i < a.coeff.size(); ++i)
        for (size_t j = 0; j < b.coeff.size(); ++j) t.coeff[i + j] += a.coeff[i] * b.coeff[j];
    return t.trimmed();
}

bool operator==(const TauMatrix& a, const TauMatrix& b) {
    TauMatrix x = a.trimmed(), y = b.trimmed();
    return x.coeff == y.coeff;
}

}  // namespace twistaff
