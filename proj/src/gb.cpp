#include "levelforge/gb.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <tuple>

namespace levelforge::gb {

using poly::Monomial;
using poly::Scalar;

Budget Budget::from_env() {
    Budget b;
    if (const char* s = std::getenv("LEVELFORGE_BUDGET_PAIRS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end && *end == '\0' && v > 0) b.max_pairs = v;
    }
    return b;
}

Poly reduce_full(const Poly& f, const std::vector<Poly>& reducers) {
    if (reducers.empty()) return f;
    const auto& ring = f.ring();
    const auto& k = ring->coeff();
    Poly h = f;
    std::vector<poly::Term> out;
    while (!h.is_zero()) {
        bool reduced = false;
        const Monomial& lm = h.lm();
        for (const auto& g : reducers) {
            if (g.is_zero()) continue;
            if (g.lm().divides(lm)) {
                Monomial q = g.lm().quotient_into(lm);
                Scalar c = k->div(h.lc(), g.lc());
                h = h - g.mul_term(q, c);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            out.push_back(h.lt());
            h = h - Poly::monomial(ring, h.lt().m, h.lt().c);
        }
    }
    return Poly::from_terms(ring, std::move(out));
}

namespace {

Poly spoly(const Poly& f, const Poly& g) {
    const auto& k = f.ring()->coeff();
    Monomial l = f.lm().lcm(g.lm());
    Poly a = f.mul_term(f.lm().quotient_into(l), k->div(k->one(), f.lc()));
    Poly b = g.mul_term(g.lm().quotient_into(l), k->div(k->one(), g.lc()));
    return a - b;
}

struct PairKey {
    uint32_t deg;
    int i, j;
    bool operator<(const PairKey& o) const {
        return std::tie(deg, i, j) < std::tie(o.deg, o.i, o.j);
    }
};

// Gebauer-Moller update: prune the pending pair set and add the pairs of the
// new basis element h = G[t].
void gm_update(const std::vector<Poly>& G, std::set<PairKey>& pairs, int t) {
    const Monomial& ht = G[t].lm();
    std::vector<Monomial> lcm_t(t);
    for (int i = 0; i < t; ++i) lcm_t[i] = G[i].lm().lcm(ht);

    // first filter: (i,t) survives if it is coprime, or no other candidate
    // (unprocessed or already kept) has an lcm dividing its own
    std::vector<char> in_C(t, 1), in_D(t, 0);
    for (int i = 0; i < t; ++i) {
        in_C[i] = 0;
        bool keep = G[i].lm().coprime(ht);
        if (!keep) {
            bool dominated = false;
            for (int j = 0; j < t && !dominated; ++j)
                if ((in_C[j] || in_D[j]) && lcm_t[j].divides(lcm_t[i])) dominated = true;
            keep = !dominated;
        }
        if (keep) in_D[i] = 1;
    }
    // product criterion
    for (int i = 0; i < t; ++i)
        if (in_D[i] && G[i].lm().coprime(ht)) in_D[i] = 0;

    // chain criterion on old pairs
    for (auto it = pairs.begin(); it != pairs.end();) {
        int i = it->i, j = it->j;
        Monomial lij = G[i].lm().lcm(G[j].lm());
        if (ht.divides(lij) && !(lcm_t[i] == lij) && !(lcm_t[j] == lij)) {
            it = pairs.erase(it);
        } else {
            ++it;
        }
    }

    for (int i = 0; i < t; ++i)
        if (in_D[i]) pairs.insert(PairKey{lcm_t[i].deg, i, t});
}

std::vector<Poly> reduced_basis(std::vector<Poly> G) {
    if (G.empty()) return G;
    const auto ring = G.front().ring();
    const auto& ord = ring->order();
    G.erase(std::remove_if(G.begin(), G.end(), [](const Poly& p) { return p.is_zero(); }), G.end());
    std::sort(G.begin(), G.end(),
              [&](const Poly& a, const Poly& b) { return ord.compare(a.lm(), b.lm()) < 0; });
    std::vector<Poly> minimal;
    for (auto& g : G) {
        bool redundant = false;
        for (const auto& m : minimal)
            if (m.lm().divides(g.lm())) {
                redundant = true;
                break;
            }
        if (!redundant) minimal.push_back(std::move(g));
    }
    // tail inter-reduction to a fixpoint
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> others;
            others.reserve(minimal.size() - 1);
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Poly r = reduce_full(minimal[i], others);
            if (!(r == minimal[i])) {
                minimal[i] = std::move(r);
                changed = true;
            }
        }
    }
    for (auto& g : minimal) g = g.monic();
    std::sort(minimal.begin(), minimal.end(),
              [&](const Poly& a, const Poly& b) { return ord.compare(a.lm(), b.lm()) < 0; });
    return minimal;
}

}  // namespace

std::vector<Poly> buchberger(const std::vector<Poly>& gens, const Budget& budget, GBStats* stats) {
    GBStats local;
    GBStats& st = stats ? *stats : local;
    std::vector<Poly> nonzero;
    for (const auto& g : gens)
        if (!g.is_zero()) nonzero.push_back(g);
    if (nonzero.empty()) return {};
    const auto ring = nonzero.front().ring();
    if (!ring->coeff()->is_field())
        throw Error("buchberger: coefficient ring must be a field");

    std::vector<Poly> G;
    std::set<PairKey> pairs;
    for (const auto& f : nonzero) {
        Poly h = reduce_full(f, G);
        if (h.is_zero()) continue;
        G.push_back(h.monic());
        gm_update(G, pairs, static_cast<int>(G.size()) - 1);
    }

    while (!pairs.empty()) {
        PairKey pk = *pairs.begin();
        pairs.erase(pairs.begin());
        if (static_cast<int>(pk.deg) > budget.max_degree)
            throw BudgetExceeded("degree budget exceeded in buchberger", st.pairs_processed,
                                 static_cast<int>(pk.deg));
        if (++st.pairs_processed > budget.max_pairs)
            throw BudgetExceeded("pair budget exceeded in buchberger (" +
                                     std::to_string(budget.max_pairs) + " pairs)",
                                 st.pairs_processed, st.max_lcm_degree);
        st.max_lcm_degree = std::max(st.max_lcm_degree, static_cast<int>(pk.deg));
        Poly h = reduce_full(spoly(G[pk.i], G[pk.j]), G);
        if (h.is_zero()) {
            ++st.reductions_to_zero;
            continue;
        }
        G.push_back(h.monic());
        gm_update(G, pairs, static_cast<int>(G.size()) - 1);
    }
    auto R = reduced_basis(std::move(G));
    st.basis_size = R.size();
    return R;
}

std::vector<poly::Monomial> standard_monomials_of(const std::vector<poly::Monomial>& leads,
                                                  int nvars, const poly::MonomialOrder& order) {
    std::vector<uint32_t> cap(nvars, 0);
    for (int v = 0; v < nvars; ++v) {
        bool found = false;
        for (const auto& l : leads) {
            bool pure = l.e[v] > 0;
            for (int w = 0; w < nvars && pure; ++w)
                if (w != v && l.e[w] != 0) pure = false;
            if (pure) {
                cap[v] = found ? std::min(cap[v], static_cast<uint32_t>(l.e[v]))
                               : static_cast<uint32_t>(l.e[v]);
                found = true;
            }
        }
        if (!found) return {};
    }
    std::vector<Monomial> out;
    std::vector<uint32_t> e(nvars, 0);
    while (true) {
        Monomial m = Monomial::unit(nvars);
        for (int v = 0; v < nvars; ++v) {
            m.e[v] = static_cast<uint16_t>(e[v]);
            m.deg += e[v];
        }
        bool divisible = false;
        for (const auto& l : leads)
            if (l.divides(m)) {
                divisible = true;
                break;
            }
        if (!divisible) out.push_back(m);
        int v = 0;
        while (v < nvars) {
            if (++e[v] < cap[v]) break;
            e[v] = 0;
            ++v;
        }
        if (v == nvars) break;
    }
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return order.compare(a, b) < 0; });
    return out;
}

Poly exact_divide(const Poly& f, const Poly& d) {
    if (d.is_zero()) throw DivisionFailed("division by zero polynomial");
    const auto& ring = f.ring();
    const auto& k = ring->coeff();
    Poly h = f;
    std::vector<poly::Term> q;
    while (!h.is_zero()) {
        if (!d.lm().divides(h.lm()))
            throw DivisionFailed("polynomial division is not exact");
        Monomial m = d.lm().quotient_into(h.lm());
        Scalar c = k->div(h.lc(), d.lc());
        q.push_back({m, c});
        h = h - d.mul_term(m, c);
    }
    return Poly::from_terms(ring, std::move(q));
}

}  // namespace levelforge::gb
