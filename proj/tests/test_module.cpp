#include "doctest.h"
#include "fixtures.hpp"
#include "twistaff/error.hpp"

using namespace twistaff;
using fixtures::dims;

namespace {

// number of multisets over modes of the given weights, per weight offset (denominator 2)
std::vector<size_t> multiset_counts(const std::vector<int>& halfweights, int max_half) {
    std::vector<size_t> f(max_half + 1, 0);
    f[0] = 1;
    for (int w : halfweights)
        for (int d = w; d <= max_half; ++d) f[d] += f[d - w];
    return f;
}

ModuleElement act(const Module& m, const char* x, const ModuleElement& v) {
    return m.act(parse_affine(m.context(), x), v);
}

}  // namespace

TEST_CASE("vacuum tilde dims") {
    auto m = fixtures::trivial_module(fixtures::sl2_identity(), ModuleMode::tilde, 1, Degree(6));
    CHECK(dims(*m) == std::vector<size_t>{1, 3, 9, 22, 51, 108, 221});
    CHECK(m->character(Degree(6)) == pbw_count(*m, Degree(6)));
    CHECK(m->twist_weight(0) == Degree(0));
    CHECK(m->central_charge() == Scalar(1));
}

TEST_CASE("order-2 tilde dims") {
    auto m = fixtures::trivial_module(fixtures::sl2_order2(), ModuleMode::tilde, 1, Degree(2));
    // h(-m) has half-weight 2m, e and f have odd half-weights
    std::vector<int> hw;
    for (int k = 1; 2 * k <= 4; ++k) hw.push_back(2 * k);
    for (int k = 1; k <= 4; k += 2) {
        hw.push_back(k);
        hw.push_back(k);
    }
    auto want = multiset_counts(hw, 4);
    auto got = m->character(m->cutoff());
    // the cutoff is absolute, so offset 2 lies above it
    REQUIRE(got.size() == 4);
    for (size_t k = 0; k < got.size(); ++k) {
        CHECK(got[k].first == m->twist_weight(0) + Degree(static_cast<long>(k), 2));
        CHECK(got[k].second == want[k]);
    }
    // shift: ell / (8 (ell + 2)) at ell = 1
    CHECK(m->twist_weight(0) == Degree(1, 24));
}

TEST_CASE("hat mode carries the formal L(-1)") {
    auto c = fixtures::sl2_identity();
    GeneratorSpace M = trivial_space(*c, Scalar(1));
    M.lm0 = Matrix(1, 1);
    auto hat = fixtures::module(c, M, ModuleMode::hat, 1, Degree(2));
    auto tilde = fixtures::trivial_module(c, ModuleMode::tilde, 1, Degree(2));
    auto dh = dims(*hat), dt = dims(*tilde);
    REQUIRE(dh.size() == dt.size());
    for (size_t k = 0; k < dh.size(); ++k) CHECK(dh[k] >= dt[k]);
    ModuleElement lw = hat->act_formal_l(hat->generator(0));
    CHECK(hat->render(lw) == "L@-1 |vac>");
    CHECK(hat->character(Degree(2)) == pbw_count(*hat, Degree(2)));
}

TEST_CASE("normal forms") {
    auto c = fixtures::sl2_order2();
    auto m = fixtures::trivial_module(c, ModuleMode::tilde, 1, Degree(3));
    ModuleElement w = m->generator(0);
    CHECK(act(*m, "e@1/2", w).empty());
    ModuleElement v = act(*m, "e@1/2", act(*m, "f@-1/2", w));
    CHECK(m->render(v) == "1/2*|vac>");
    auto id = fixtures::trivial_module(fixtures::sl2_identity(), ModuleMode::tilde, 1, Degree(3));
    CHECK(act(*id, "e@0", act(*id, "e@-1", id->generator(0))).empty());
    // permutations of a commuting-free word give the same element
    ModuleElement a = act(*id, "e@-1", act(*id, "f@-1", act(*id, "h@1", act(*id, "f@-2", id->generator(0)))));
    ModuleElement b = act(*id, "f@-1", act(*id, "e@-1", act(*id, "h@1", act(*id, "f@-2", id->generator(0)))));
    ModuleElement br = act(*id, "h@-2", act(*id, "h@1", act(*id, "f@-2", id->generator(0))));
    ModuleElement diff = a;
    add_scaled(diff, b, Scalar(-1));
    CHECK(diff == br);
}

TEST_CASE("omega and twist weights") {
    auto c = fixtures::sl2_identity();
    auto m = fixtures::trivial_module(c, ModuleMode::tilde, 1, Degree(2));
    CHECK(m->omega(m->generator(0)).empty());
    GeneratorSpace A = adjoint_space(*c, Scalar(1));
    auto adj = fixtures::module(c, A, ModuleMode::tilde, 1, Degree(1));
    for (size_t b = 0; b < 3; ++b) {
        ModuleElement want;
        add_scaled(want, adj->generator(b), Scalar(4));
        CHECK(adj->omega(adj->generator(b)) == want);
        CHECK(adj->twist_weight(b) == Degree(2, 3));
    }
    auto o2 = fixtures::trivial_module(fixtures::sl2_order2(), ModuleMode::tilde, 1, Degree(1));
    ModuleElement ow = o2->omega(o2->generator(0));
    ModuleElement want;
    add_scaled(want, o2->generator(0), Scalar::rational(1, 4));
    CHECK(ow == want);
    ModuleElement l0 = o2->sugawara(0, o2->generator(0));
    ModuleElement want0;
    add_scaled(want0, o2->generator(0), Scalar::rational(1, 24));
    CHECK(l0 == want0);
    CHECK(o2->sugawara(1, o2->generator(0)).empty());
}

TEST_CASE("sugawara L(-1) against commutators") {
    auto c = fixtures::sl2_identity();
    auto m = fixtures::trivial_module(c, ModuleMode::tilde, 1, Degree(3));
    ModuleElement v = act(*m, "e@-1", m->generator(0));
    ModuleElement l = m->sugawara(-1, v);
    // L(-1) e(-1) = e(-2) + e(-1) L(-1), and L(-1) kills the vacuum
    CHECK(m->sugawara(-1, m->generator(0)).empty());
    CHECK(l == act(*m, "e@-2", m->generator(0)));
    CHECK(m->element_weight(l) == Degree(2));
}

TEST_CASE("field components") {
    auto c = fixtures::sl2_unipotent();
    auto m = fixtures::trivial_module(c, ModuleMode::tilde, 1, Degree(2));
    ModuleElement v = act(*m, "e@-1", m->generator(0));
    Vector f(3);
    // Jordan basis f, h, -2e
    f[0] = Scalar(1);
    ModuleElement got = m->field_component(f, Degree(0), 1, v);
    ModuleElement want;
    add_scaled(want, act(*m, "h@0", v), Scalar(-1));
    CHECK(got == want);
    CHECK(m->field_component(f, Degree(0), 0, v) == act(*m, "f@0", v));
}

TEST_CASE("module verification") {
    for (auto ctx : {fixtures::sl2_identity(), fixtures::sl2_order2(), fixtures::sl2_unipotent()}) {
        auto m = fixtures::trivial_module(ctx, ModuleMode::tilde, 1, Degree(3));
        Report r = verify_module(*m, VerifyOptions{});
        r.append(verify_virasoro(*m));
        for (const auto& e : r.entries) {
            INFO(e.check << " " << e.witness.value_or(""));
            CHECK(e.status != Status::fail);
        }
    }
    auto adj = fixtures::module(fixtures::sl2_order2(), adjoint_space(*fixtures::sl2_order2(), Scalar(2)), ModuleMode::tilde, 2, Degree(2));
    Report r = verify_module(*adj, VerifyOptions{});
    r.append(verify_virasoro(*adj));
    for (const auto& e : r.entries) {
        INFO(e.check << " " << e.witness.value_or(""));
        CHECK(e.status != Status::fail);
    }
    CHECK(adj->central_charge() == Scalar::rational(3, 2));
}

TEST_CASE("virasoro central term on the generator") {
    auto m = fixtures::trivial_module(fixtures::sl2_order2(), ModuleMode::tilde, 2, Degree(2));
    ModuleElement w = m->generator(0);
    ModuleElement lhs = m->sugawara(2, m->sugawara(-2, w));
    add_scaled(lhs, m->sugawara(0, w), Scalar(-4));
    ModuleElement want;
    add_scaled(want, w, m->central_charge() / Scalar(2));
    CHECK(lhs == want);
}

TEST_CASE("overarc with the Omega relation") {
    auto c = fixtures::sl2_identity();
    GeneratorSpace M = trivial_space(*c, Scalar(1));
    M.has_iota = false;
    M.iota.clear();
    M.lm0 = Matrix(1, 1);
    auto m = fixtures::module(c, M, ModuleMode::overarc, 1, Degree(2));
    CHECK(m->truncated());
    CHECK(m->character(Degree(2)) == pbw_count(*m, Degree(2)));
    // Omega_0 w = 0 in the quotient
    CHECK(m->omega(m->generator(0)).empty());
    Report r = verify_module(*m, VerifyOptions{1, Degree(1)});
    for (const auto& e : r.entries) {
        INFO(e.check << " " << e.witness.value_or(""));
        CHECK(e.status != Status::fail);
    }
}

TEST_CASE("module errors") {
    auto c = fixtures::sl2_identity();
    GeneratorSpace M = trivial_space(*c, Scalar(-2));
    CHECK_THROWS_AS(fixtures::module(c, M, ModuleMode::tilde, -2, Degree(1)), Error);
    GeneratorSpace bare = M;
    bare.has_iota = false;
    bare.iota.clear();
    CHECK_THROWS_AS(fixtures::module(c, bare, ModuleMode::tilde, 1, Degree(1)), Error);
    auto m = fixtures::trivial_module(c, ModuleMode::tilde, 1, Degree(1));
    CHECK_THROWS_AS(m->normal_form({AffineGen{false, 0, Degree(-2)}}, 0), Error);
}
