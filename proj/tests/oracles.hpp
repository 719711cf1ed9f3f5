// Test-only oracles: naive reimplementations kept independent of the engine
// code paths they cross-check.
#ifndef LEVELFORGE_TESTS_ORACLES_HPP
#define LEVELFORGE_TESTS_ORACLES_HPP

#include <map>
#include <random>
#include <vector>

#include "levelforge/gro.hpp"

namespace oracles {

using levelforge::poly::Monomial;
using levelforge::poly::Poly;
using levelforge::poly::PresentedRingPtr;

// Buchberger with no pair pruning beyond skipping zero reductions: every pair
// (i, j) is processed in FIFO order, then the basis is reduced the same way
// the engine reduces (monic, minimal, tail-interreduced, sorted).
inline std::vector<Poly> naive_buchberger(std::vector<Poly> gens) {
    using levelforge::gb::reduce_full;
    std::vector<Poly> G;
    for (auto& g : gens)
        if (!g.is_zero()) G.push_back(g.monic());
    if (G.empty()) return G;
    const auto ring = G.front().ring();
    const auto& k = ring->coeff();
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j) pairs.emplace_back(i, j);
    size_t at = 0;
    while (at < pairs.size()) {
        auto [i, j] = pairs[at++];
        Monomial l = G[i].lm().lcm(G[j].lm());
        Poly s = G[i].mul_term(G[i].lm().quotient_into(l), k->one()) -
                 G[j].mul_term(G[j].lm().quotient_into(l), k->one());
        Poly h = reduce_full(s, G);
        if (!h.is_zero()) {
            G.push_back(h.monic());
            for (size_t t = 0; t + 1 < G.size(); ++t) pairs.emplace_back(t, G.size() - 1);
        }
    }
    // minimalize + interreduce
    std::sort(G.begin(), G.end(), [&](const Poly& a, const Poly& b) {
        return ring->order().compare(a.lm(), b.lm()) < 0;
    });
    std::vector<Poly> minimal;
    for (auto& g : G) {
        bool red = false;
        for (const auto& m : minimal)
            if (m.lm().divides(g.lm())) red = true;
        if (!red) minimal.push_back(g);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> others;
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Poly r = reduce_full(minimal[i], others).monic();
            if (!(r == minimal[i])) {
                minimal[i] = r;
                changed = true;
            }
        }
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
        return ring->order().compare(a.lm(), b.lm()) < 0;
    });
    return minimal;
}

// Quotient dimension by pure linear algebra: vectors indexed by the monomials
// with exponents below per-variable caps taken from pure-power relation
// leads; the ideal span is closed under multiplication by each variable.
// Requires the presented ring's relation basis to consist of rules
// x^d - c*x^e (or pure powers); uses only poly arithmetic and the ring NF.
inline int64_t naive_quotient_dimension(const PresentedRingPtr& R, const std::vector<Poly>& gens) {
    const auto& k = R->coeff();
    std::vector<uint32_t> caps(R->nvars(), 0);
    for (const auto& rel : R->relation_basis()) {
        int v = -1;
        for (int i = 0; i < R->nvars(); ++i)
            if (rel.lm().e[i] != 0) v = i;
        caps[v] = rel.lm().e[v];
    }
    size_t dim = 1;
    std::vector<size_t> stride(R->nvars());
    for (int v = 0; v < R->nvars(); ++v) {
        stride[v] = dim;
        dim *= caps[v];
    }
    auto index_of = [&](const Monomial& m) {
        size_t idx = 0;
        for (int v = 0; v < R->nvars(); ++v) idx += stride[v] * m.e[v];
        return idx;
    };
    using Row = std::vector<levelforge::arith::Scalar>;
    auto to_row = [&](const Poly& f) {
        Row r(dim, k->zero());
        Poly n = R->normal_form(f);
        for (const auto& t : n.terms()) r[index_of(t.m)] = t.c;
        return r;
    };
    std::map<size_t, Row> pivots;
    std::vector<Poly> queue;
    size_t qi = 0;
    auto insert = [&](const Poly& f) {
        Row r = to_row(f);
        for (size_t i = 0; i < dim; ++i) {
            if (k->is_zero(r[i])) continue;
            auto it = pivots.find(i);
            if (it == pivots.end()) {
                auto inv = k->inv(r[i]);
                for (size_t j = i; j < dim; ++j) r[j] = k->mul(r[j], *inv);
                pivots.emplace(i, r);
                queue.push_back(R->normal_form(f));
                return true;
            }
            auto c = r[i];
            for (size_t j = i; j < dim; ++j) r[j] = k->sub(r[j], k->mul(c, it->second[j]));
        }
        return false;
    };
    for (const auto& g : gens) insert(g);
    while (qi < queue.size()) {
        Poly f = queue[qi++];
        for (int v = 0; v < R->nvars(); ++v) insert(f * R->var(v));
    }
    return static_cast<int64_t>(dim) - static_cast<int64_t>(pivots.size());
}

inline Poly random_poly(const PresentedRingPtr& R, std::mt19937_64& rng, int max_terms = 5,
                        int max_exp = 2) {
    std::vector<levelforge::poly::Term> ts;
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> expd(0, max_exp);
    std::uniform_int_distribution<int64_t> coeffd(-6, 6);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial m = Monomial::unit(R->nvars());
        for (int v = 0; v < R->nvars(); ++v) {
            m.e[v] = static_cast<uint16_t>(expd(rng));
            m.deg += m.e[v];
        }
        ts.push_back({m, R->coeff()->from_int(coeffd(rng))});
    }
    return levelforge::poly::Poly::from_terms(R->poly_ring(), std::move(ts));
}

}  // namespace oracles

#endif
