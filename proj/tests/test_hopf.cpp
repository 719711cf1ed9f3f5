#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "levelforge/hopf.hpp"

using namespace levelforge;
using arith::CoeffRing;
using hopf::GroupPoint;
using hopf::HopfAlgebra;
using hopf::HopfPtr;
using poly::Poly;
using poly::PresentedRing;

namespace {

// mu_p over Q: group-like generator
HopfPtr mu_p_rational(int64_t p) {
    auto R = PresentedRing::create(CoeffRing::rationals(), {"y"},
                                   {"y^" + std::to_string(p) + " - 1"});
    auto T = tensor_square(R);
    return HopfAlgebra::create(R, {T.ring->parse("y'*y''")},
                               {Poly::from_int(R->base_ring()->poly_ring(), 1)},
                               "mu_" + std::to_string(p));
}

// alpha_p over F_p: additive generator
HopfPtr alpha_p(int64_t p) {
    auto R = PresentedRing::create(CoeffRing::fp(p), {"x"}, {"x^" + std::to_string(p)});
    auto T = tensor_square(R);
    return HopfAlgebra::create(R, {T.ring->parse("x' + x''")},
                               {Poly::zero(R->base_ring()->poly_ring())},
                               "alpha_" + std::to_string(p));
}

// the p = 2 chart fiber F_2[x]/(x^2 - t x) with D(x) = x'+x''+s x'x''
HopfPtr ot_chart_p2(int64_t s, int64_t t) {
    auto F = CoeffRing::fp(2);
    auto R = PresentedRing::create(F, {"x"}, {"x^2 - " + std::to_string(t) + "*x"});
    auto T = tensor_square(R);
    std::string d = "x' + x''";
    if (s % 2) d += " + x'*x''";
    return HopfAlgebra::create(R, {T.ring->parse(d)},
                               {Poly::zero(R->base_ring()->poly_ring())}, "OT_2");
}

}  // namespace

TEST_CASE("hopf_create accepts the corpus algebras") {
    CHECK_NOTHROW(mu_p_rational(2));
    CHECK_NOTHROW(mu_p_rational(3));
    CHECK_NOTHROW(mu_p_rational(5));
    CHECK_NOTHROW(alpha_p(2));
    CHECK_NOTHROW(alpha_p(3));
    CHECK_NOTHROW(ot_chart_p2(1, 0));
}

TEST_CASE("hopf_create rejects broken structures") {
    auto R = PresentedRing::create(CoeffRing::fp(2), {"x"}, {"x^2"});
    auto T = tensor_square(R);
    // x -> x' + x'' + x'x'' is not coassociative when x^2 = 0 ... actually it
    // is; break the counit instead: eps(x) = 1 fails (eps (x) id) o D = id
    CHECK_THROWS_AS(HopfAlgebra::create(R, {T.ring->parse("x' + x''")},
                                        {Poly::from_int(R->base_ring()->poly_ring(), 1)}, "bad"),
                    HopfAxiomError);
    // D(x) = x'x'' is not a ring map onto for x^2 = 0? (x'x'')^2 = 0 ok, but
    // counit axiom fails
    CHECK_THROWS_AS(HopfAlgebra::create(R, {T.ring->parse("x'*x''")},
                                        {Poly::zero(R->base_ring()->poly_ring())}, "bad2"),
                    HopfAxiomError);
}

TEST_CASE("primitive ideals") {
    // mu_3 over Q: annihilator of (y - 1) is the cyclotomic polynomial
    auto mu3 = mu_p_rational(3);
    auto prim = primitive_ideal(mu3);
    CHECK(gro::ideal_equal(prim, gro::Ideal::from_texts(mu3->ring(), {"y^2 + y + 1"})));

    auto mu5 = mu_p_rational(5);
    CHECK(gro::ideal_equal(primitive_ideal(mu5),
                           gro::Ideal::from_texts(mu5->ring(), {"y^4 + y^3 + y^2 + y + 1"})));
}

TEST_CASE("point groups: mu_2 and alpha_p") {
    auto mu2 = mu_p_rational(2);
    auto Q1 = PresentedRing::create(CoeffRing::rationals(), {}, {});
    GroupPoint minus = hopf::make_point(mu2, Q1, {Q1->from_int(-1)});
    GroupPoint prod = hopf::point_add(minus, minus);
    CHECK(Q1->equal(prod.coords[0], Q1->from_int(1)));

    auto a3 = alpha_p(3);
    auto T = PresentedRing::create(CoeffRing::fp(3), {"u", "v"}, {"u^3", "v^3"});
    GroupPoint U = hopf::make_point(a3, T, {T->var(0)});
    GroupPoint V = hopf::make_point(a3, T, {T->var(1)});
    GroupPoint sum = hopf::point_add(U, V);
    CHECK(T->equal(sum.coords[0], T->parse("u + v")));

    // [p] kills every point; [0] is the identity
    GroupPoint triple = hopf::point_scale(3, U);
    CHECK(T->equal(triple.coords[0], Poly::zero(T->poly_ring())));
    GroupPoint zero = hopf::point_scale(0, U);
    CHECK(T->equal(zero.coords[0], Poly::zero(T->poly_ring())));
}

TEST_CASE("OT chart point addition: x -> a + b + ab at s = 1") {
    auto H = ot_chart_p2(1, 0);
    auto T = PresentedRing::create(CoeffRing::fp(2), {"a", "b"}, {"a^2", "b^2"});
    GroupPoint A = hopf::make_point(H, T, {T->var(0)});
    GroupPoint B = hopf::make_point(H, T, {T->var(1)});
    GroupPoint sum = hopf::point_add(A, B);
    CHECK(T->equal(sum.coords[0], T->parse("a + b + a*b")));
}

TEST_CASE("point_add is commutative and associative with identity (randomized)") {
    std::mt19937_64 rng(17);
    auto a3 = alpha_p(3);
    auto T = PresentedRing::create(CoeffRing::fp(3), {"u", "v", "w"}, {"u^3", "v^3", "w^3"});
    auto random_nilpotent = [&]() {
        // random combination of the nilpotent generators: all satisfy x^3 = 0
        std::uniform_int_distribution<int64_t> d(0, 2);
        Poly f = T->var(0).mul_scalar(T->coeff()->from_int(d(rng))) +
                 T->var(1).mul_scalar(T->coeff()->from_int(d(rng))) +
                 (T->var(0) * T->var(1)).mul_scalar(T->coeff()->from_int(d(rng)));
        return hopf::make_point(a3, T, {T->normal_form(f)});
    };
    for (int i = 0; i < 25; ++i) {
        GroupPoint P = random_nilpotent(), Q = random_nilpotent(), S = random_nilpotent();
        CHECK(hopf::points_equal(hopf::point_add(P, Q), hopf::point_add(Q, P)));
        CHECK(hopf::points_equal(hopf::point_add(hopf::point_add(P, Q), S),
                                 hopf::point_add(P, hopf::point_add(Q, S))));
        GroupPoint e = hopf::identity_point(a3, T, {});
        CHECK(hopf::points_equal(hopf::point_add(P, e), P));
    }
}

TEST_CASE("automorphisms preserve the primitive ideal") {
    // mu_3 automorphism y -> y^2 and alpha_3 scaling x -> 2x
    auto mu3 = mu_p_rational(3);
    poly::RingMap sq(mu3->ring(), mu3->ring(), {mu3->ring()->parse("y^2")});
    auto prim = primitive_ideal(mu3);
    std::vector<Poly> mapped;
    for (const auto& g : prim.gens()) mapped.push_back(sq.apply(g));
    CHECK(gro::ideal_equal(prim, gro::Ideal(mu3->ring(), mapped)));

    auto a3 = alpha_p(3);
    poly::RingMap scale(a3->ring(), a3->ring(), {a3->ring()->parse("2*x")});
    auto prim3 = primitive_ideal(a3);
    std::vector<Poly> mapped3;
    for (const auto& g : prim3.gens()) mapped3.push_back(scale.apply(g));
    CHECK(gro::ideal_equal(prim3, gro::Ideal(a3->ring(), mapped3)));
}

TEST_CASE("tensor power Hopf structure") {
    auto a2 = alpha_p(2);
    auto sq = hopf::tensor_power_hopf(a2, 2);
    CHECK(sq->ring()->dimension() == 4);
    CHECK(sq->num_module_vars() == 2);
    // augmentation ideal of the square is (x', x'')
    auto aug = hopf::augmentation_ideal(sq);
    CHECK(aug.gens().size() == 2);
    // primitive ideal of alpha_2^2 is the product of the two factors'
    // conditions: ann(x', x'') = (x' x'')
    auto prim = primitive_ideal(sq);
    CHECK(gro::ideal_equal(prim, gro::Ideal::from_texts(sq->ring(), {"x'*x''"})));
}
