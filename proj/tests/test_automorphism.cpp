#include "doctest.h"
#include "twistaff/automorphism.hpp"
#include "twistaff/expr.hpp"

using namespace twistaff;

namespace {

Vector el(const LieAlgebra& L, const char* s) { return parse_vector(s, L.labels()); }

}  // namespace

TEST_CASE("identity") {
    LieAlgebra L = lie_sl(2);
    AutomorphismData A = aut_from_matrix(L, Matrix::identity(3));
    for (auto a : A.alphas) CHECK(a == RationalExponent(0));
    CHECK(A.N.is_zero());
    CHECK(A.jordan_labels == std::vector<std::string>{"e", "h", "f"});
    CHECK(verify_structure(L, A).ok());
    CHECK(is_zero(find_inner_generator(L, A)));
}

TEST_CASE("order-2 inner") {
    LieAlgebra L = lie_sl(2);
    TauMatrix G = aut_inner_exp(L, el(L, "h/4"));
    REQUIRE(G.coeff.size() == 1);
    Matrix want(3, 3);
    want(0, 0) = Scalar(-1);
    want(1, 1) = Scalar(1);
    want(2, 2) = Scalar(-1);
    CHECK(G.coeff[0] == want);
    AutomorphismData A = aut_from_tau(L, G);
    // ordering: alpha 0 first
    CHECK(A.jordan_labels == std::vector<std::string>{"h", "e", "f"});
    CHECK(A.alphas[0] == RationalExponent(0));
    CHECK(A.alphas[1] == RationalExponent(1, 2));
    CHECK(A.alphas[2] == RationalExponent(1, 2));
    Report r = verify_structure(L, A);
    CHECK(r.ok());
    AutomorphismData B = aut_from_matrix(L, want);
    CHECK(B.alphas == A.alphas);
    CHECK(verify_torus_diagram(L, G, Matrix::identity(3), el(L, "h/4"), Matrix::identity(3)));
    CHECK_FALSE(verify_torus_diagram(L, G, Matrix::identity(3), Vector(3), Matrix::identity(3)));
    CHECK(verify_torus_diagram(L, TauMatrix::constant(Matrix::identity(3)), Matrix::identity(3), Vector(3), Matrix::identity(3)));
}

TEST_CASE("order-3 inner needs cyclotomics") {
    LieAlgebra L = lie_sl(2);
    TauMatrix G = aut_inner_exp(L, el(L, "h/6"));
    AutomorphismData A = aut_from_tau(L, G);
    CHECK(A.alphas[1] == RationalExponent(1, 3));
    CHECK(A.alphas[2] == RationalExponent(2, 3));
    CHECK(verify_structure(L, A).ok());
}

TEST_CASE("unipotent") {
    LieAlgebra L = lie_sl(2);
    TauMatrix G = aut_inner_exp(L, el(L, "e"));
    REQUIRE(G.coeff.size() == 3);
    CHECK(G.coeff[0].is_identity());
    CHECK(G.coeff[1] == L.ad(el(L, "e")));
    AutomorphismData A = aut_from_tau(L, G);
    for (auto a : A.alphas) CHECK(a == RationalExponent(0));
    CHECK(A.N == L.ad(el(L, "e")));
    CHECK(A.jordan_labels == std::vector<std::string>{"f", "h", "-2*e"});
    CHECK(A.njump == std::vector<int>{1, 2, -1});
    CHECK(verify_structure(L, A).ok());
    CHECK(find_inner_generator(L, A) == el(L, "e"));
    // numeric non-semisimple input is refused
    Matrix U = G.coeff[0] + G.coeff[1];
    CHECK_THROWS_AS(aut_from_matrix(L, U), Error);
}

TEST_CASE("rejections") {
    LieAlgebra L = lie_sl(2);
    Matrix bad = Matrix::identity(3);
    bad(0, 0) = Scalar(2);
    CHECK_THROWS_AS(aut_from_matrix(L, bad), Error);
    Matrix g = Matrix::identity(3);
    g(0, 0) = Scalar(2);
    g(2, 2) = Scalar::rational(1, 2);
    // automorphism, but eigenvalue 2 is not a root of unity
    try {
        aut_from_matrix(L, g);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::unsupported_alpha);
    }
    CHECK_THROWS_AS(aut_inner_exp(lie_sl(3), parse_vector("E12 + E21 + E23 + E32", lie_sl(3).labels())), Error);
    LieAlgebra ab = lie_from_structure({"x", "y"}, {}, {{0, 1, Scalar(1)}});
    Matrix n(2, 2);
    n(0, 1) = Scalar(0);
    AutomorphismData A = aut_from_parts(ab, Matrix::identity(2), n);
    CHECK(is_zero(find_inner_generator(ab, A)));
}

TEST_CASE("jordan chains") {
    Matrix a(3, 3);
    a(0, 1) = Scalar(1);
    a(1, 2) = Scalar(1);
    JordanChains c = jordan_chains(a);
    CHECK(c.basis.size() == 3);
    CHECK(c.next == std::vector<int>{1, 2, -1});
}
