#include <chrono>

#include "doctest.h"
#include "fixtures.hpp"
#include "twistaff/error.hpp"
#include "twistaff/quotient.hpp"

using namespace twistaff;

namespace {

// coefficients of theta(q) / prod (1 - q^m), the level-one vacuum character of sl2
std::vector<size_t> lattice_oracle(int n) {
    std::vector<long> theta(n + 1, 0), f(n + 1, 0);
    for (long k = -n; k <= n; ++k)
        if (k * k <= n) theta[k * k] += 1;
    f[0] = 1;
    for (int m = 1; m <= n; ++m)
        for (int d = m; d <= n; ++d) f[d] += f[d - m];
    std::vector<size_t> out(n + 1, 0);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) out[a + b] += theta[a] * f[b];
    return out;
}

// h(0)-charges 2n - 1/2 of weight (4n-1)^2/16 over a Heisenberg Fock space; offsets from 1/16
// in steps of 1/2
std::vector<size_t> twisted_lattice_oracle(int halfsteps) {
    std::vector<long> theta(halfsteps + 1, 0), f(halfsteps + 1, 0);
    for (long n = -halfsteps; n <= halfsteps; ++n) {
        long off = ((4 * n - 1) * (4 * n - 1) - 1) / 8;  // (w - 1/16) in halves
        if (off <= halfsteps) theta[off] += 1;
    }
    f[0] = 1;
    for (int m = 2; m <= halfsteps; m += 2)
        for (int d = m; d <= halfsteps; ++d) f[d] += f[d - m];
    std::vector<size_t> out(halfsteps + 1, 0);
    for (int a = 0; a <= halfsteps; ++a)
        for (int b = 0; a + b <= halfsteps; ++b) out[a + b] += theta[a] * f[b];
    return out;
}

std::vector<size_t> counts(const std::vector<std::pair<Degree, size_t>>& ch) {
    std::vector<size_t> out;
    for (const auto& [d, n] : ch) out.push_back(n);
    return out;
}

}  // namespace

TEST_CASE("null field checks") {
    auto id = fixtures::sl2_identity();
    CHECK(check_null_field(*id, null_field_from(*id, "e", 2)).ok());
    CHECK_FALSE(check_null_field(*id, null_field_from(*id, "h", 2)).ok());
    auto o2 = fixtures::sl2_order2();
    NullFieldSpec s = null_field_from(*o2, "e", 2);
    CHECK(s.gamma == Degree(1, 2));
    CHECK(check_null_field(*o2, s).ok());
    CHECK_THROWS_AS(null_field_from(*o2, "e + h", 2), Error);
}

TEST_CASE("power field coefficients") {
    auto c = fixtures::sl2_identity();
    auto m = fixtures::trivial_module(c, ModuleMode::tilde, 1, Degree(4));
    NullFieldSpec s = null_field_from(*c, "e", 2);
    auto w2 = power_field_coefficients(*m, s, Degree(2));
    ModuleElement ee = m->act(parse_affine(*c, "e@-1"), m->act(parse_affine(*c, "e@-1"), m->generator(0)));
    bool found = false;
    for (const auto& v : w2)
        if (v == ee) found = true;
    CHECK(found);
    CHECK(power_field_coefficients(*m, s, Degree(1)).empty());
    CHECK(power_field_coefficients(*m, s, Degree(0)).empty());
    CHECK_THROWS_AS(power_field_coefficients(*m, s, Degree(5)), Error);
}

TEST_CASE("level one vacuum quotient") {
    auto c = fixtures::sl2_identity();
    auto m = fixtures::trivial_module(c, ModuleMode::tilde, 1, Degree(6));
    auto t0 = std::chrono::steady_clock::now();
    Quotient q = build_quotient(*m, null_field_from(*c, "e", 2));
    MESSAGE("quotient at cutoff 6: "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s");
    auto want = lattice_oracle(4);
    CHECK(counts(quotient_character(*m, q, Degree(4))) == want);
    CHECK_THROWS_AS(quotient_character(*m, q, Degree(5)), Error);
    CHECK(is_annihilated(*m, q.relations, q.spec, Degree(4)));
    CHECK(is_annihilated(*m, q.relations, null_field_from(*c, "e", 3), Degree(4)));
    CHECK_FALSE(is_annihilated(*m, RelationSpace{}, q.spec, Degree(4)));
    // idempotent closure
    std::vector<ModuleElement> rows;
    for (const auto& [d, e] : q.relations.spaces)
        for (const auto& [p, r] : e.rows()) rows.push_back(r);
    RelationSpace again = submodule_closure(*m, rows);
    for (const auto& [d, e] : q.relations.spaces) CHECK(again.rank_at(d) == e.rank());
    CHECK(submodule_closure(*m, {}).spaces.empty());
    Report r = verify_quotient(*m, q);
    for (const auto& e : r.entries) {
        INFO(e.check << " " << e.witness.value_or(""));
        CHECK(e.status != Status::fail);
    }
}

TEST_CASE("large level leaves the parent untouched below the relation") {
    auto c = fixtures::sl2_identity();
    auto m = fixtures::trivial_module(c, ModuleMode::tilde, 5, Degree(4));
    Quotient q = build_quotient(*m, null_field_from(*c, "e", 6));
    CHECK(counts(quotient_character(*m, q, Degree(2))) == std::vector<size_t>{1, 3, 9});
}

TEST_CASE("order-2 quotient") {
    auto c = fixtures::sl2_order2();
    GeneratorSpace M = trivial_space(*c, Scalar(1));
    M.iota[0](0, 0) = Scalar::rational(-1, 2);
    auto m = fixtures::module(c, M, ModuleMode::tilde, 1, Degree(81, 16));
    Quotient q = build_quotient(*m, null_field_from(*c, "e", 2));
    auto ch = quotient_character(*m, q, q.certified);
    auto parent = m->character(q.certified);
    REQUIRE(ch.size() == parent.size());
    bool below = false;
    for (size_t k = 0; k < ch.size(); ++k) {
        CHECK(ch[k].second <= parent[k].second);
        if (ch[k].second < parent[k].second) below = true;
    }
    CHECK(below);
    CHECK(m->twist_weight(0) == Degree(1, 16));
    CHECK(counts(ch) == twisted_lattice_oracle(6));
    Report r = verify_quotient(*m, q);
    CHECK(r.ok());
}

TEST_CASE("quotient input errors") {
    auto c = fixtures::sl2_identity();
    ModuleSpec s;
    s.space = trivial_space(*c, Scalar::rational(1, 2));
    s.level = Scalar::rational(1, 2);
    s.cutoff = Degree(2);
    auto m = build_module(c, s);
    CHECK_THROWS_AS(build_quotient(*m, null_field_from(*c, "e", 2)), Error);
    auto v = fixtures::trivial_module(c, ModuleMode::tilde, 1, Degree(2));
    CHECK_THROWS_AS(build_quotient(*v, null_field_from(*c, "h", 2)), Error);
}
