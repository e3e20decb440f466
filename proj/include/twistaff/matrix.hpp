#pragma once

#include <optional>
#include <vector>

#include "twistaff/scalar.hpp"

namespace twistaff {

using Vector = std::vector<Scalar>;

class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    static Matrix identity(size_t n);
    static Matrix from_columns(const std::vector<Vector>& cols, size_t rows);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Scalar& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Scalar& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    Vector column(size_t j) const;
    Matrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& k, Matrix a);
    friend Vector operator*(const Matrix& a, const Vector& v);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    Matrix pow(unsigned e) const;
    std::vector<Scalar> entries() const { return a_; }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

struct Rref {
    Matrix m;
    std::vector<size_t> pivots;
};

Rref rref(Matrix m);
size_t rank(const Matrix& m);
// Basis of the kernel from the reduced row echelon form, one vector per free
// column in increasing column order.
std::vector<Vector> nullspace(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
// Some solution of A x = b (free variables set to zero).
std::optional<Vector> solve(const Matrix& a, const Vector& b);
// Monic characteristic polynomial, coefficients from degree 0 upward.
std::vector<Scalar> charpoly(const Matrix& m);
Matrix commutator(const Matrix& a, const Matrix& b);

bool is_zero(const Vector& v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector scaled(const Vector& v, const Scalar& k);

// Polynomial in the formal symbol tau = 2*pi*i with matrix coefficients.
struct TauMatrix {
    std::vector<Matrix> coeff;  // coeff[k] multiplies tau^k

    static TauMatrix constant(const Matrix& m) { return TauMatrix{{m}}; }
    // S * exp(tau N) for nilpotent N
    static TauMatrix exp_nilpotent(const Matrix& s, const Matrix& n);
    TauMatrix trimmed() const;
    friend TauMatrix operator*(const TauMatrix& a, const TauMatrix& b);
    friend bool operator==(const TauMatrix& a, const TauMatrix& b);
};

}  // namespace twistaff
