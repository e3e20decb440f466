#include "doctest.h"
#include "twistaff/lie.hpp"

using namespace twistaff;

namespace {

LieValidationError expect_invalid(const std::vector<StructureEntry>& br, const std::vector<FormEntry>& fm) {
    try {
        lie_from_structure({"e", "h", "f"}, br, fm);
    } catch (const LieValidationError& e) {
        return e;
    }
    FAIL("expected validation failure");
    throw;
}

}  // namespace

TEST_CASE("sl2 from tables") {
    std::vector<StructureEntry> br{{1, 0, 0, Scalar(2)}, {1, 2, 2, Scalar(-2)}, {0, 2, 1, Scalar(1)}};
    std::vector<FormEntry> fm{{0, 2, Scalar(1)}, {1, 1, Scalar(2)}};
    LieAlgebra L = lie_from_structure({"e", "h", "f"}, br, fm);
    CHECK(L.dim() == 3);
    CHECK(lie_checks(L).ok());
    CHECK(dual_coxeter(L) == 2);
}

TEST_CASE("broken tables") {
    std::vector<FormEntry> fm{{0, 2, Scalar(1)}, {1, 1, Scalar(2)}};
    auto e = expect_invalid({{1, 0, 0, Scalar(2)}, {1, 2, 2, Scalar(-2)}, {0, 2, 1, Scalar(2)}}, fm);
    CHECK(e.check() == LieCheck::form_invariance);
    e = expect_invalid({{1, 0, 0, Scalar(2)}, {0, 1, 0, Scalar(2)}}, fm);
    CHECK(e.check() == LieCheck::antisymmetry);
    e = expect_invalid({{1, 0, 0, Scalar(2)}, {1, 2, 2, Scalar(-2)}, {0, 2, 1, Scalar(1)}},
                       {{0, 2, Scalar(1)}, {2, 0, Scalar(2)}, {1, 1, Scalar(2)}});
    CHECK(e.check() == LieCheck::form_symmetry);
    e = expect_invalid({{1, 0, 0, Scalar(2)}, {1, 2, 2, Scalar(-2)}, {0, 2, 1, Scalar(1)}}, {{1, 1, Scalar(2)}});
    CHECK(e.check() != LieCheck::antisymmetry);
    // a non-Lie bracket: [e,h]=e only, [h,f]=e, [e,f]=f
    e = expect_invalid({{0, 1, 0, Scalar(1)}, {1, 2, 0, Scalar(1)}, {0, 2, 2, Scalar(1)}}, fm);
    CHECK((e.check() == LieCheck::jacobi || e.check() == LieCheck::form_invariance));
}

TEST_CASE("abelian") {
    LieAlgebra L = lie_from_structure({"x", "y"}, {}, {{0, 0, Scalar(1)}, {1, 1, Scalar(1)}});
    CHECK(L.dual().is_identity());
    CHECK_THROWS_AS(dual_coxeter(L), Error);
}

TEST_CASE("sl(n)") {
    LieAlgebra L = lie_sl(2);
    CHECK(L.labels() == std::vector<std::string>{"e", "h", "f"});
    CHECK(L.form()(0, 2) == Scalar(1));
    CHECK(L.form()(1, 1) == Scalar(2));
    Vector e = L.basis_vector(0), h = L.basis_vector(1), f = L.basis_vector(2);
    CHECK(L.pairing(L.bracket(e, f), h) == Scalar(2));
    // dual of e is f, dual of h is h/2
    const Matrix& D = L.dual();
    CHECK(D(0, 2) == Scalar(1));
    CHECK(D(1, 1) == Scalar::rational(1, 2));
    CHECK(dual_coxeter(L) == 2);
    for (size_t n : {2u, 3u, 4u}) {
        LieAlgebra M = lie_sl(n);
        CHECK(M.dim() == n * n - 1);
        CHECK(lie_checks(M).ok());
    }
    CHECK(dual_coxeter(lie_sl(3)) == 3);
    // long root theta = E13 in sl3: (E13, E31) = 1, so (theta, theta) = 2 for the coroot
    LieAlgebra s3 = lie_sl(3);
    CHECK(s3.pairing(s3.basis_vector(3), s3.basis_vector(3)) == Scalar(2));
}
