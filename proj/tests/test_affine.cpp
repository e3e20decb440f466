#include "doctest.h"
#include "fixtures.hpp"
#include "twistaff/error.hpp"

using namespace twistaff;

namespace {

AffineElement P(const ContextPtr& c, const char* s) { return parse_affine(*c, s); }
std::string R(const ContextPtr& c, const AffineElement& x) { return render_affine(*c, x); }

}  // namespace

TEST_CASE("order-2 brackets") {
    auto c = fixtures::sl2_order2();
    CHECK(R(c, ta_bracket(*c, P(c, "e@1/2"), P(c, "f@-1/2"))) == "h@0 + 1/2*K");
    CHECK(ta_bracket(*c, P(c, "K"), P(c, "e@1/2")).is_zero());
    CHECK(R(c, ta_bracket(*c, P(c, "h@1"), P(c, "e@-1/2"))) == "2*e@1/2");
    CHECK_THROWS_AS(P(c, "e@1"), Error);
    CHECK_THROWS_AS(P(c, "h@1/2"), Error);
    CHECK(ta_jacobi_check(*c, P(c, "e@1/2"), P(c, "f@1/2"), P(c, "h@-1")).is_zero());
}

TEST_CASE("classification") {
    auto c = fixtures::sl2_order2();
    auto cls = [&](const char* s) {
        AffineElement x = P(c, s);
        REQUIRE(x.terms.size() == 1);
        AffineGen g{false, x.terms.begin()->first.first, x.terms.begin()->first.second};
        return ta_classify(*c, g);
    };
    CHECK(cls("e@1/2") == TriangularClass::plus);
    CHECK(cls("f@-1/2") == TriangularClass::minus);
    CHECK(cls("h@0") == TriangularClass::iota);
    CHECK(cls("h@-1") == TriangularClass::minus);
    CHECK(ta_classify(*c, AffineGen{true, 0, Degree(0)}) == TriangularClass::central);
}

TEST_CASE("unipotent central correction") {
    auto c = fixtures::sl2_unipotent();
    AffineElement x = P(c, "h@1"), y = P(c, "f@-1");
    CHECK(R(c, ta_bracket(*c, x, y)) == "-2*f@0 - 2*K");
    CHECK(nilpotent_central_part(*c, x, y) == Scalar(-2));
    // (N a, a) = 0 so self brackets vanish
    for (const auto& g : window_generators(*c, 2)) {
        AffineElement a = AffineElement::gen(g);
        CHECK(ta_bracket(*c, a, a).is_zero());
    }
}

TEST_CASE("affine verification on all examples") {
    for (auto c : {fixtures::sl2_identity(), fixtures::sl2_order2(), fixtures::sl2_unipotent()}) {
        Report r = verify_affine(*c, 3);
        for (const auto& e : r.entries) INFO(e.check << " " << e.witness.value_or(""));
        CHECK(r.ok());
    }
}
