#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levelforge/gro.hpp"
#include "levelforge/quotient_space.hpp"
#include "oracles.hpp"

using namespace levelforge;
using arith::CoeffRing;
using gro::Ideal;
using poly::MonomialOrder;
using poly::Poly;
using poly::PresentedRing;

namespace {

auto q_ring(std::vector<std::string> vars, std::vector<std::string> rels = {},
            MonomialOrder ord = MonomialOrder::degrevlex()) {
    return PresentedRing::create(CoeffRing::rationals(), std::move(vars), rels, ord);
}

}  // namespace

TEST_CASE("ideal of the alpha_2 x alpha_2 level computation") {
    auto R = PresentedRing::create(CoeffRing::fp(2), {"a", "b", "c", "d"},
                                   {"a^2", "b^2", "c^2", "d^2"});
    auto I = Ideal::from_texts(R, {"a*b", "a*c", "b*d", "c*d", "a*d + b*c"});
    auto dim = gro::quotient_dimension(I);
    CHECK(dim.count == 6);
    std::vector<std::string> names;
    for (const auto& m : dim.standard)
        names.push_back(Poly::monomial(R->poly_ring(), m, R->coeff()->one()).str());
    CHECK(names == std::vector<std::string>{"1", "d", "c", "b", "a", "a*d"});
    CHECK(dim.count == oracles::naive_quotient_dimension(R, I.gens()));
}

TEST_CASE("ideal_combine") {
    auto R = q_ring({"x", "y"});
    auto X = Ideal::from_texts(R, {"x"}), Y = Ideal::from_texts(R, {"y"});
    CHECK(gro::ideal_product(X, Y).gens() == std::vector<Poly>{R->parse("x*y")});
    CHECK(gro::ideal_sum(X, Y).gens().size() == 2);
    auto A = Ideal::from_texts(R, {"x-2"}), B = Ideal::from_texts(R, {"y-2"});
    CHECK(gro::ideal_product(A, B).gens() ==
          std::vector<Poly>{R->parse("(x-2)*(y-2)")});
    auto Z = q_ring({"z"});
    CHECK_THROWS_AS(gro::ideal_sum(X, Ideal::from_texts(Z, {"z"})), Error);
}

TEST_CASE("ideal_intersect examples") {
    auto R = q_ring({"x", "y"});
    auto I = gro::ideal_intersect(Ideal::from_texts(R, {"x"}), Ideal::from_texts(R, {"y"}));
    CHECK(gro::ideal_equal(I, Ideal::from_texts(R, {"x*y"})));

    auto R1 = q_ring({"x"});
    auto J = gro::ideal_intersect(Ideal::from_texts(R1, {"x-1"}), Ideal::from_texts(R1, {"x+1"}));
    CHECK(gro::ideal_equal(J, Ideal::from_texts(R1, {"x^2-1"})));

    // the paper's intersection at p = 3, symbolic t
    auto G2 = PresentedRing::create(CoeffRing::fp(3), {"x", "y", "t"},
                                    {"x^3 - t*x", "y^3 - t*y"});
    auto K = gro::ideal_intersect(Ideal::from_texts(G2, {"x^2 - t"}),
                                  Ideal::from_texts(G2, {"y^2 - t"}));
    CHECK(gro::ideal_equal(K, Ideal::from_texts(G2, {"(x^2 - t)*(y^2 - t)"})));
}

TEST_CASE("ideal_quotient examples") {
    auto R = q_ring({"x"});
    CHECK(gro::ideal_equal(gro::ideal_quotient(Ideal::from_texts(R, {"x^2"}), R->parse("x")),
                           Ideal::from_texts(R, {"x"})));

    auto R3 = PresentedRing::create(CoeffRing::fp(3), {"x"}, {"x^3"});
    CHECK(gro::ideal_equal(gro::ideal_quotient(Ideal::zero(R3), R3->parse("x")),
                           Ideal::from_texts(R3, {"x^2"})));

    auto Rmu = PresentedRing::create(CoeffRing::fp(3), {"x"}, {"x^3 - x"});
    CHECK(gro::ideal_equal(gro::ideal_quotient(Ideal::zero(Rmu), Rmu->parse("x")),
                           Ideal::from_texts(Rmu, {"x^2 - 1"})));
}

TEST_CASE("annihilator examples") {
    auto Rmu = PresentedRing::create(CoeffRing::fp(3), {"x"}, {"x^3 - x"});
    CHECK(gro::ideal_equal(gro::annihilator(Rmu, Ideal::from_texts(Rmu, {"x"})),
                           Ideal::from_texts(Rmu, {"x^2 - 1"})));

    auto Q3 = q_ring({"y"}, {"y^3 - 1"});
    CHECK(gro::ideal_equal(gro::annihilator(Q3, Ideal::from_texts(Q3, {"y - 1"})),
                           Ideal::from_texts(Q3, {"y^2 + y + 1"})));

    // constant scheme on idempotents: ann of the augmentation ideal is the
    // identity-point idempotent
    auto E = PresentedRing::create(CoeffRing::fp(2), {"e0", "e1"}, {"e0 + e1 - 1", "e0*e1"});
    CHECK(gro::ideal_equal(gro::annihilator(E, Ideal::from_texts(E, {"e1"})),
                           Ideal::from_texts(E, {"e0"})));
}

TEST_CASE("quotient_dimension examples and order independence") {
    auto Q3 = q_ring({"y"}, {"y^3 - 1"});
    CHECK(gro::quotient_dimension(Ideal::zero(Q3)).count == 3);

    auto R3 = PresentedRing::create(CoeffRing::fp(3), {"x"}, {"x^3"});
    CHECK(gro::quotient_dimension(Ideal::from_texts(R3, {"x^2"})).count == 2);

    auto RQ = q_ring({"x", "y"});
    CHECK_THROWS_AS(gro::quotient_dimension(Ideal::from_texts(RQ, {"x"})), NotZeroDimensional);

    // degrevlex vs lex on small corpus ideals
    struct Case {
        std::vector<std::string> vars, rels, gens;
    };
    std::vector<Case> cases = {
        {{"a", "b", "c", "d"}, {"a^2", "b^2", "c^2", "d^2"}, {"a*b", "a*c", "b*d", "c*d", "a*d+b*c"}},
        {{"x", "y"}, {"x^3 - x", "y^3 - y"}, {"x*y - 1"}},
        {{"x", "y"}, {"x^4", "y^4"}, {"x^2 + y^2"}},
    };
    for (const auto& c : cases) {
        auto Rd = PresentedRing::create(CoeffRing::fp(3), c.vars, c.rels);
        auto Rl = PresentedRing::create(CoeffRing::fp(3), c.vars, c.rels, MonomialOrder::lex());
        auto dim_d = gro::quotient_dimension(Ideal::from_texts(Rd, c.gens)).count;
        auto dim_l = gro::quotient_dimension(Ideal::from_texts(Rl, c.gens)).count;
        CHECK(dim_d == dim_l);
        CHECK(dim_d == oracles::naive_quotient_dimension(Rd, Ideal::from_texts(Rd, c.gens).gens()));
    }
}

TEST_CASE("ideal_equal basics") {
    auto R = q_ring({"x", "y"});
    CHECK(gro::ideal_equal(Ideal::from_texts(R, {"x", "y"}), Ideal::from_texts(R, {"y", "x"})));
    auto R1 = q_ring({"x"});
    CHECK(!gro::ideal_equal(Ideal::from_texts(R1, {"x"}), Ideal::from_texts(R1, {"x^2"})));
}

TEST_CASE("intersection is contained in both factors and contains the product") {
    auto R = PresentedRing::create(CoeffRing::fp(3), {"x", "y", "t"},
                                   {"x^3 - t*x", "y^3 - t*y"});
    auto I = Ideal::from_texts(R, {"x^2 - t"});
    auto J = Ideal::from_texts(R, {"y^2 - t", "x*y"});
    auto M = gro::ideal_intersect(I, J);
    for (const auto& g : M.gens()) {
        CHECK(I.contains(g));
        CHECK(J.contains(g));
    }
    auto P = gro::ideal_product(I, J);
    for (const auto& g : P.gens()) CHECK(M.contains(g));
}

TEST_CASE("linear quotient dimension agrees with the Groebner route") {
    auto R = PresentedRing::create(CoeffRing::fp(2), {"a", "b", "c", "d"},
                                   {"a^2", "b^2", "c^2", "d^2"});
    quot::FiniteQuotient fq(R);
    CHECK(fq.dim() == 16);
    std::vector<Poly> gens = Ideal::from_texts(R, {"a*b", "a*c", "b*d", "c*d", "a*d+b*c"}).gens();
    CHECK(quot::quotient_dimension_linear(fq, gens) == 6);

    // nontrivial rewrite rule x^3 = t*x at an invertible fiber
    auto Re = PresentedRing::create(CoeffRing::fp(3), {"x", "y"}, {"x^3 - x", "y^3 - y"});
    quot::FiniteQuotient fe(Re);
    auto I = Ideal::from_texts(Re, {"x^2 - 1"});
    CHECK(quot::quotient_dimension_linear(fe, I.gens()) ==
          gro::quotient_dimension(I).count);

    // round trips
    auto f = Re->parse("x^2*y + 2*x - 1");
    CHECK(fe.to_poly(fe.to_vector(f)) == Re->normal_form(f));
}

TEST_CASE("linear ideal intersection matches elimination") {
    auto R = PresentedRing::create(CoeffRing::fp(2), {"a", "b", "c", "d"},
                                   {"a^2", "b^2", "c^2", "d^2"});
    quot::FiniteQuotient fq(R);
    auto I = Ideal::from_texts(R, {"a*b", "c + d"});
    auto J = Ideal::from_texts(R, {"a*c", "b"});
    auto linear = quot::ideal_intersection_linear(fq, I.gens(), J.gens());
    auto elim = gro::ideal_intersect(I, J);
    CHECK(gro::ideal_equal(gro::Ideal(R, linear), elim));
    auto small = quot::shrink_generators(fq, linear);
    CHECK(small.size() <= linear.size());
    CHECK(quot::ideal_equal_linear(fq, small, linear));
}
