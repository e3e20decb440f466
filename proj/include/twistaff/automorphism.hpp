#pragma once

#include <optional>
#include <vector>

#include "twistaff/exponent.hpp"
#include "twistaff/lie.hpp"
#include "twistaff/matrix.hpp"
#include "twistaff/report.hpp"

namespace twistaff {

// g = S * exp(tau N) with tau = 2*pi*i kept symbolic. S has finite order and
// rational exponents; N is nilpotent. Matrices act on the original basis.
struct AutomorphismData {
    TauMatrix G;
    Matrix S;
    Matrix N;
    // Jordan basis: column i of J is a^i, in the original basis.
    Matrix J;
    Matrix Jinv;
    std::vector<RationalExponent> alphas;  // alpha^i in [0,1)
    std::vector<int> njump;                // N a^i = a^{njump[i]}, or -1 when N a^i = 0
    std::vector<std::string> jordan_labels;

    size_t dim() const { return alphas.size(); }
    bool semisimple() const { return N.is_zero(); }
    // eigenvalue exponents that occur, ascending
    std::vector<RationalExponent> exponents() const;
};

// Semisimple matrix of finite order. A non-semisimple numeric matrix is
// rejected: its logarithm is not exact; give the nilpotent part explicitly.
AutomorphismData aut_from_matrix(const LieAlgebra& L, const Matrix& G);
AutomorphismData aut_from_parts(const LieAlgebra& L, const Matrix& S, const Matrix& N);
AutomorphismData aut_from_tau(const LieAlgebra& L, const TauMatrix& G);

// exp(2*pi*i ad x) = S exp(tau N); ad x must have rational eigenvalues.
TauMatrix aut_inner_exp(const LieAlgebra& L, const Vector& x);

// Distinct eigenvalues of a matrix required to be roots of unity.
struct Eigenspace {
    RationalExponent alpha;
    Scalar lambda;
    std::vector<Vector> basis;  // generalized eigenspace
};
std::vector<Eigenspace> root_of_unity_eigenspaces(const Matrix& m);

// Rational roots of a polynomial with rational coefficients (low degree first),
// with multiplicity; throws unless every root is rational.
std::vector<mpq_class> rational_roots(const std::vector<Scalar>& poly);

Vector find_inner_generator(const LieAlgebra& L, const AutomorphismData& A);

Report verify_structure(const LieAlgebra& L, const AutomorphismData& A);

bool verify_torus_diagram(const LieAlgebra& L, const TauMatrix& sigma, const Matrix& tau, const Vector& h,
                          const Matrix& mu);

// Chains for a nilpotent matrix: columns of the returned basis with
// A b_i = b_{next[i]} or 0.
struct JordanChains {
    std::vector<Vector> basis;
    std::vector<int> next;
};
JordanChains jordan_chains(const Matrix& nilpotent);

}  // namespace twistaff
