#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levelforge/level.hpp"

using namespace levelforge;
using arith::CoeffRing;
using level::TruncatedFlavor;
using ot::Chart;
using poly::Poly;

TEST_CASE("level ideal at the alpha_2^2 fiber") {
    auto F2 = CoeffRing::fp(2);
    auto L = level::full_level_ideal(Chart::fiber(2, F2, F2->zero(), F2->zero()));
    CHECK(L.tagged.size() == 6);  // 2(p^2 - 1)
    auto expected = gro::Ideal::from_texts(L.uring.ring, {"a*b", "a*c", "b*d", "c*d", "a*d + b*c"});
    CHECK(gro::ideal_equal(L.ideal, expected));
}

TEST_CASE("level ideal at the mu_2 chart uses the twisted law") {
    auto F2 = CoeffRing::fp(2);
    auto L = level::full_level_ideal(Chart::fiber(2, F2, F2->one(), F2->zero()));
    bool found = false;
    for (const auto& tg : L.tagged) {
        if (tg.m == 1 && tg.n == 1 && tg.row) {
            found = true;
            CHECK(tg.gen == L.uring.ring->normal_form(
                                L.uring.ring->parse("(a + b + a*b)*(c + d + c*d)")));
        }
    }
    CHECK(found);
}

TEST_CASE("symbolic level ideal has 16 generators at p = 3") {
    auto L = level::full_level_ideal(Chart::symbolic_char_p(3));
    CHECK(L.tagged.size() == 16);
}

TEST_CASE("fiber ranks at p = 2") {
    auto F2 = CoeffRing::fp(2);
    CHECK(level::fiber_rank(2, F2, F2->zero(), F2->zero()) == 6);
    CHECK(level::fiber_rank(2, F2, F2->one(), F2->zero()) == 6);
    CHECK(level::fiber_rank(2, F2, F2->zero(), F2->one()) == 6);
}

TEST_CASE("fiber rank 48 at the etale fiber of p = 3") {
    auto F3 = CoeffRing::fp(3);
    CHECK(level::fiber_rank(3, F3, F3->zero(), F3->one()) == 48);
    // lambda-scaling moves (0,1) to (0,2) without changing the rank
    CHECK(level::fiber_rank(3, F3, F3->zero(), F3->from_int(2)) == 48);
}

TEST_CASE("flatness reports") {
    auto rep = level::verify_flatness(2, 2);
    CHECK(rep.fibers.size() == 3);
    for (const auto& f : rep.fibers) CHECK(f.rank == 6);
    CHECK(rep.char0_checked);
    CHECK(rep.char0_rank == 6);
    CHECK(rep.pass);

    auto rep4 = level::verify_flatness(2, 4);
    CHECK(rep4.fibers.size() == 7);
    CHECK(rep4.pass);
}

TEST_CASE("etale fiber quotient is reduced") {
    // a finite algebra over a perfect field is reduced iff Frobenius is
    // injective on it; check that on the standard-monomial basis
    auto frobenius_injective = [](const gro::Ideal& I) {
        auto dim = gro::quotient_dimension(I);
        const auto& R = I.ring();
        const auto& k = R->coeff();
        size_t n = dim.standard.size();
        auto index_of = [&](const poly::Monomial& m) {
            for (size_t i = 0; i < n; ++i)
                if (dim.standard[i] == m) return i;
            throw Error("not a standard monomial");
        };
        // rows: images of basis monomials under x -> x^p
        std::vector<std::vector<arith::Scalar>> rows;
        for (size_t i = 0; i < n; ++i) {
            Poly b = Poly::monomial(R->poly_ring(), dim.standard[i], k->one());
            Poly img = I.nf(b.pow(static_cast<uint64_t>(k->p())));
            std::vector<arith::Scalar> row(n, k->zero());
            for (const auto& t : img.terms()) row[index_of(t.m)] = t.c;
            rows.push_back(std::move(row));
        }
        // rank by Gaussian elimination
        size_t rank = 0;
        for (size_t col = 0; col < n; ++col) {
            size_t pivot = n;
            for (size_t r = rank; r < n; ++r)
                if (!k->is_zero(rows[r][col])) {
                    pivot = r;
                    break;
                }
            if (pivot == n) continue;
            std::swap(rows[rank], rows[pivot]);
            auto inv = k->inv(rows[rank][col]);
            for (size_t c2 = 0; c2 < n; ++c2) rows[rank][c2] = k->mul(rows[rank][c2], *inv);
            for (size_t r = 0; r < n; ++r) {
                if (r == rank || k->is_zero(rows[r][col])) continue;
                auto f = rows[r][col];
                for (size_t c2 = 0; c2 < n; ++c2)
                    rows[r][c2] = k->sub(rows[r][c2], k->mul(f, rows[rank][c2]));
            }
            ++rank;
        }
        return rank == n;
    };
    for (int64_t p : {2, 3}) {
        auto F = CoeffRing::fq(p, 2);
        auto L = level::full_level_ideal(Chart::fiber(p, F, F->zero(), F->one()));
        CHECK(gro::quotient_dimension(L.ideal).count == level::gl2_order(p));
        CHECK(frobenius_injective(L.ideal));
        // the local fiber (0, 0) is far from reduced
        auto L0 = level::full_level_ideal(Chart::fiber(p, F, F->zero(), F->zero()));
        CHECK(!frobenius_injective(L0.ideal));
    }
}

TEST_CASE("GL_2 precomposition invariance") {
    auto F2 = CoeffRing::fp(2);
    CHECK(level::gl2_precompose_invariance(Chart::fiber(2, F2, F2->zero(), F2->zero())));
    CHECK(level::gl2_precompose_invariance(Chart::symbolic_char_p(2)));
    CHECK(level::gl2_precompose_invariance(Chart::symbolic_char_p(3)));
}

TEST_CASE("unit factorization") {
    for (int64_t p : {2, 3, 5}) {
        auto uf = level::unit_factorization_check(p);
        CHECK(uf.unit_power_ok);
        CHECK(uf.factorization_ok);
    }
}

TEST_CASE("s-independence of the level ideal") {
    CHECK(level::s_independence_check(2));
    CHECK(level::s_independence_check(3));
    // at the s = 0 fiber both generator families coincide term by term
    auto F3 = CoeffRing::fp(3);
    Chart c = Chart::fiber(3, F3, F3->zero(), F3->one());
    auto dot = level::full_level_ideal(c);
    auto plain = level::full_level_ideal_plain(c);
    REQUIRE(dot.tagged.size() == plain.tagged.size());
    for (size_t i = 0; i < dot.tagged.size(); ++i)
        CHECK(dot.tagged[i].gen == plain.tagged[i].gen);
}

TEST_CASE("base change commutes with the level ideal") {
    for (int64_t p : {2, 3}) {
        auto F = CoeffRing::fp(p);
        auto sym = level::full_level_ideal(Chart::symbolic_char_p(p));
        std::vector<std::pair<arith::Scalar, arith::Scalar>> fibers = {
            {F->one(), F->zero()}, {F->zero(), F->one()}, {F->zero(), F->zero()}};
        for (const auto& [s, t] : fibers) {
            auto fib = level::full_level_ideal(Chart::fiber(p, F, s, t));
            // specialize the symbolic generators: a..d fixed, s,t -> values
            std::vector<Poly> images;
            for (int v = 0; v < 4; ++v) images.push_back(fib.uring.ring->var(v));
            images.push_back(Poly::constant(fib.uring.ring->poly_ring(), s));
            images.push_back(Poly::constant(fib.uring.ring->poly_ring(), t));
            std::vector<Poly> specialized;
            for (const auto& tg : sym.tagged)
                specialized.push_back(
                    poly::substitute(tg.gen, fib.uring.ring->poly_ring(), images));
            CHECK(gro::ideal_equal(fib.ideal, gro::Ideal(fib.uring.ring, specialized)));
        }
    }
}

TEST_CASE("level ideal contains every tagged generator") {
    auto L = level::full_level_ideal(Chart::symbolic_char_p(2));
    for (const auto& tg : L.tagged) CHECK(L.ideal.contains(tg.gen));
}

TEST_CASE("truncated level ranks") {
    auto m1 = level::truncated_level_rank(2, 1, TruncatedFlavor::multiplicative);
    CHECK(m1.rank == 6);
    CHECK(m1.expected == 6);
    auto c1 = level::truncated_level_rank(2, 1, TruncatedFlavor::constant);
    CHECK(c1.rank == 6);
    auto m2 = level::truncated_level_rank(2, 2, TruncatedFlavor::multiplicative);
    CHECK(m2.expected == 96);
    CHECK(m2.rank == 96);
    auto c2 = level::truncated_level_rank(2, 2, TruncatedFlavor::constant);
    CHECK(c2.rank == 96);
    auto m13 = level::truncated_level_rank(3, 1, TruncatedFlavor::multiplicative);
    CHECK(m13.rank == 48);
}

TEST_CASE("stack counterexample search") {
    auto rep3 = level::stack_counterexample(3);
    CHECK(rep3.witness_found);
    CHECK(rep3.witness == "[[1,g],[0,1]]");
    CHECK(rep3.scalars_preserve);
    CHECK(rep3.precompose_invariant);
    CHECK(rep3.left_witness_found);

    // at p = 2 the alpha_2^2 ideal is invariant under every linear
    // substitution, so the exhaustive search comes back empty
    auto rep2 = level::stack_counterexample(2);
    CHECK(!rep2.witness_found);
    CHECK(rep2.searched >= 180);
    CHECK(rep2.scalars_preserve);
    CHECK(rep2.precompose_invariant);
}
