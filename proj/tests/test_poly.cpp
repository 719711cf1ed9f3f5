#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "levelforge/presented.hpp"
#include "oracles.hpp"

using namespace levelforge;
using arith::CoeffRing;
using poly::MonomialOrder;
using poly::Poly;
using poly::PolyRing;
using poly::PresentedRing;
using poly::RingMap;

TEST_CASE("monomial orders") {
    auto R = PolyRing::make(CoeffRing::fp(3), {"x", "y", "z"});
    auto m = [&](const char* s) { return parse_poly(R, s).lm(); };
    MonomialOrder drl = MonomialOrder::degrevlex(), lex = MonomialOrder::lex();
    CHECK(drl.compare(m("x"), m("y")) > 0);
    CHECK(drl.compare(m("x^2"), m("x*y")) > 0);
    // degrevlex: y^2 > x*z (same degree, x*z has more of the last variable)
    CHECK(drl.compare(m("y^2"), m("x*z")) > 0);
    CHECK(lex.compare(m("x"), m("y^2")) > 0);
    CHECK(drl.compare(m("x"), m("y^2")) < 0);
    // 1 is minimal
    CHECK(drl.compare(poly::Monomial::unit(3), m("z")) < 0);
}

TEST_CASE("parse and canonical serialization") {
    auto R = PolyRing::make(CoeffRing::fp(5), {"a", "b", "s", "t"});
    Poly f = parse_poly(R, "a^2*b + 2*s*t");
    CHECK(f.str() == "a^2*b + 2*s*t");
    CHECK(parse_poly(R, " a ^2 * b+2* s*t ") == f);
    CHECK(parse_poly(R, "a^2*b - 3*s*t") == f);
    CHECK(parse_poly(R, "(a+b)^2") == parse_poly(R, "a^2 + 2*a*b + b^2"));
    CHECK(parse_poly(R, "-a + a").is_zero());
    CHECK_THROWS_AS(parse_poly(R, "a + q"), Error);

    auto Q = PolyRing::make(CoeffRing::rationals(), {"x"});
    CHECK(parse_poly(Q, "x - 2").str() == "x - 2");
}

TEST_CASE("ring_create examples") {
    auto R1 = PresentedRing::create(CoeffRing::fp(3), {"x"}, {"x^3 - x"});
    CHECK(R1->is_finite_dimensional());
    CHECK(R1->dimension() == 3);
    auto mons = R1->standard_monomials();
    CHECK(mons.size() == 3);

    auto R2 = PresentedRing::create(CoeffRing::rationals(), {"x"}, {}, MonomialOrder::lex());
    CHECK(!R2->is_finite_dimensional());

    auto R3 = PresentedRing::create(CoeffRing::fp(2), {"a", "b", "c", "d"},
                                    {"a^2", "b^2", "c^2", "d^2"});
    CHECK(R3->dimension() == 16);
}

TEST_CASE("normal_form examples") {
    auto R1 = PresentedRing::create(CoeffRing::fp(3), {"x"}, {"x^3 - x"});
    CHECK(R1->normal_form(R1->parse("x^3")) == R1->parse("x"));

    auto R2 = PresentedRing::create(CoeffRing::fp(2), {"x", "y"}, {"x^2", "y^2"});
    CHECK(R2->normal_form(R2->parse("(x+y)^2")).is_zero());

    // char-2 chart of the universal ring: a^2*c reduces to t*a*c
    auto U = PresentedRing::create(
        CoeffRing::fp(2), {"a", "b", "c", "d", "s", "t"},
        {"s*t", "a^2 - t*a", "b^2 - t*b", "c^2 - t*c", "d^2 - t*d"},
        MonomialOrder::degrevlex(), 2);
    CHECK(U->normal_form(U->parse("a^2*c")) == U->parse("t*a*c"));
}

TEST_CASE("normal_form is a projection") {
    auto R = PresentedRing::create(CoeffRing::fp(3), {"x", "y"}, {"x^3 - x", "y^3 - y"});
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Poly f = oracles::random_poly(R, rng, 6, 4), g = oracles::random_poly(R, rng, 6, 4);
        Poly nf = R->normal_form(f);
        CHECK(R->normal_form(nf) == nf);
        CHECK(R->normal_form(f + g) == R->normal_form(nf + R->normal_form(g)));
        CHECK(R->normal_form(f * g) == R->normal_form(nf * R->normal_form(g)));
    }
}

TEST_CASE("ring_hom examples") {
    auto A = PresentedRing::create(CoeffRing::fp(2), {"z"}, {"z^2 - 1"});
    auto B = PresentedRing::create(CoeffRing::fp(2), {"y"}, {"y^4 - 1"});
    RingMap incl(A, B, {B->parse("y^2")});  // mu_2 inside mu_4
    CHECK(incl.apply(A->parse("z^2")) == B->from_int(1));

    auto C = PresentedRing::create(CoeffRing::fp(3), {"x"}, {"x^3"});
    RingMap scale(C, C, {C->parse("2*x")});
    CHECK(scale.apply(C->parse("x^3")).is_zero());

    auto D = PresentedRing::create(CoeffRing::fp(2), {"x"}, {"x^2"});
    CHECK_THROWS_AS(RingMap(D, B, {B->parse("y")}), WellDefinednessError);
}

TEST_CASE("ring maps preserve ring operations") {
    // Frobenius endomorphism of F_3[y]/(y^9 - y)
    auto B = PresentedRing::create(CoeffRing::fp(3), {"y"}, {"y^9 - y"});
    RingMap f(B, B, {B->parse("y^3")});
    std::mt19937_64 rng(3);
    for (int i = 0; i < 60; ++i) {
        Poly u = oracles::random_poly(B, rng, 4, 6), v = oracles::random_poly(B, rng, 4, 6);
        CHECK(f.apply(u + v) == B->normal_form(f.apply(u) + f.apply(v)));
        CHECK(f.apply(u * v) == B->normal_form(f.apply(u) * f.apply(v)));
    }
}

TEST_CASE("tensor powers") {
    auto A = PresentedRing::create(CoeffRing::fp(2), {"x"}, {"x^2"});
    auto T = tensor_square(A);
    CHECK(T.ring->dimension() == 4);
    CHECK(T.ring->nvars() == 2);

    auto B = PresentedRing::create(CoeffRing::fp(3), {"x"}, {"x^3 - x"});
    CHECK(tensor_square(B).ring->dimension() == 9);

    // base variables are shared, fiber relations copied per factor
    auto U = PresentedRing::create(CoeffRing::fp(3), {"x", "s", "t"}, {"s*t", "x^3 - t*x"},
                                   MonomialOrder::degrevlex(), 2);
    auto TU = tensor_square(U);
    CHECK(TU.ring->nvars() == 4);  // x', x'', s, t
    CHECK(TU.ring->relations().size() == 3);
    CHECK(TU.inclusions[0].apply(U->parse("x")) == TU.ring->parse("x'"));
    CHECK(TU.inclusions[1].apply(U->parse("x")) == TU.ring->parse("x''"));
    CHECK(TU.inclusions[1].apply(U->parse("s*x")) == TU.ring->parse("s*x''"));
}

TEST_CASE("standard monomial count agrees with naive linear algebra") {
    std::vector<levelforge::poly::PresentedRingPtr> rings = {
        PresentedRing::create(CoeffRing::fp(3), {"x", "y"}, {"x^3 - x", "y^3 - y"}),
        PresentedRing::create(CoeffRing::fp(2), {"a", "b", "c"}, {"a^2", "b^2", "c^2"}),
        PresentedRing::create(CoeffRing::fp(5), {"x"}, {"x^5 - x"}),
    };
    for (const auto& R : rings) {
        CHECK(R->dimension() == oracles::naive_quotient_dimension(R, {}));
    }
}
