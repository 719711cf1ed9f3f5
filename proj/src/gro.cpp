#include "levelforge/gro.hpp"

#include <algorithm>

namespace levelforge::gro {

using poly::parse_poly;
using poly::PolyRing;
using poly::Term;

Ideal::Ideal(PresentedRingPtr ring, std::vector<Poly> gens) : ring_(std::move(ring)) {
    gens_.reserve(gens.size());
    for (auto& g : gens) {
        Poly n = ring_->normal_form(g);
        if (!n.is_zero()) gens_.push_back(std::move(n));
    }
}

Ideal Ideal::from_texts(const PresentedRingPtr& ring, const std::vector<std::string>& texts) {
    std::vector<Poly> gens;
    gens.reserve(texts.size());
    for (const auto& t : texts) gens.push_back(ring->parse(t));
    return Ideal(ring, std::move(gens));
}

const GroebnerBasis& Ideal::groebner(const Budget& budget) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!gb_) {
        std::vector<Poly> input = ring_->relations();
        for (const auto& g : gens_) input.push_back(g);
        GroebnerBasis basis;
        basis.order = ring_->poly_ring()->order();
        basis.elements = gb::buchberger(input, budget);
        gb_ = std::move(basis);
    }
    return *gb_;
}

Poly Ideal::nf(const Poly& f, const Budget& budget) const {
    return gb::reduce_full(f, groebner(budget).elements);
}

bool Ideal::contains(const Poly& f, const Budget& budget) const {
    return nf(f, budget).is_zero();
}

Ideal ideal_combine(CombineKind kind, const Ideal& I, const Ideal& J) {
    if (!I.ring()->same(*J.ring())) throw Error("ideal_combine: ambient ring mismatch");
    std::vector<Poly> gens;
    if (kind == CombineKind::sum) {
        gens = I.gens();
        for (const auto& g : J.gens()) gens.push_back(g);
    } else {
        for (const auto& f : I.gens())
            for (const auto& g : J.gens()) gens.push_back(f * g);
    }
    return Ideal(I.ring(), std::move(gens));
}

namespace {

std::string fresh_var_name(const PresentedRingPtr& R) {
    std::string base = "u";
    int suffix = 0;
    while (true) {
        std::string name = suffix == 0 ? base : base + std::to_string(suffix);
        if (R->poly_ring()->var_index(name) < 0) return name;
        ++suffix;
    }
}

Poly lift_with_elim(const Poly& f, const poly::PolyRingPtr& ering, uint16_t u_exp) {
    std::vector<Term> ts;
    ts.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        Monomial m = Monomial::unit(ering->nvars());
        m.e[0] = u_exp;
        m.deg = u_exp;
        for (int v = 0; v < t.m.n; ++v) {
            m.e[v + 1] = t.m.e[v];
            m.deg += t.m.e[v];
        }
        ts.push_back({m, t.c});
    }
    return Poly::from_terms(ering, std::move(ts));
}

// Intersection of the polynomial ideals <left> and <right>; `shared`
// generators must already lie in both sides and are added undecorated.
std::vector<Poly> intersect_raw(const PresentedRingPtr& R, const std::vector<Poly>& left,
                                const std::vector<Poly>& right, const std::vector<Poly>& shared,
                                const Budget& budget) {
    auto ering = R->poly_ring()->with_elim_var(fresh_var_name(R));
    std::vector<Poly> gens;
    Poly u = Poly::variable(ering, 0);
    Poly one = Poly::from_int(ering, 1);
    for (const auto& f : left) gens.push_back(lift_with_elim(f, ering, 1));
    for (const auto& g : right) gens.push_back(lift_with_elim(g, ering, 0) * (one - u));
    for (const auto& s : shared) gens.push_back(lift_with_elim(s, ering, 0));
    auto basis = gb::buchberger(gens, budget);
    std::vector<Poly> result;
    for (const auto& b : basis) {
        bool ufree = true;
        for (const auto& t : b.terms())
            if (t.m.e[0] != 0) {
                ufree = false;
                break;
            }
        if (!ufree) continue;
        std::vector<Term> ts;
        for (const auto& t : b.terms()) {
            Monomial m = Monomial::unit(R->nvars());
            for (int v = 0; v < R->nvars(); ++v) {
                m.e[v] = t.m.e[v + 1];
                m.deg += t.m.e[v + 1];
            }
            ts.push_back({m, t.c});
        }
        result.push_back(Poly::from_terms(R->poly_ring(), std::move(ts)));
    }
    return result;
}

}  // namespace

Ideal ideal_intersect(const Ideal& I, const Ideal& J, const Budget& budget) {
    if (!I.ring()->same(*J.ring())) throw Error("ideal_intersect: ambient ring mismatch");
    auto gens = intersect_raw(I.ring(), I.gens(), J.gens(), I.ring()->relations(), budget);
    return Ideal(I.ring(), std::move(gens));
}

Ideal ideal_quotient(const Ideal& I, const Poly& f, const Budget& budget) {
    const auto& R = I.ring();
    Poly fn = R->normal_form(f);
    if (fn.is_zero()) {
        // (I : 0) is the whole ring
        return Ideal(R, {R->from_int(1)});
    }
    std::vector<Poly> left = R->relations();
    for (const auto& g : I.gens()) left.push_back(g);
    auto inter = intersect_raw(R, left, {fn}, {}, budget);
    std::vector<Poly> gens;
    gens.reserve(inter.size());
    for (const auto& h : inter) gens.push_back(gb::exact_divide(h, fn));
    return Ideal(R, std::move(gens));
}

Ideal annihilator(const PresentedRingPtr& R, const Ideal& J, const Budget& budget) {
    if (J.gens().empty()) return Ideal(R, {R->from_int(1)});
    std::optional<Ideal> acc;
    for (const auto& g : J.gens()) {
        Ideal ann_g = ideal_quotient(Ideal::zero(R), g, budget);
        acc = acc ? ideal_intersect(*acc, ann_g, budget) : ann_g;
    }
    return *acc;
}

QuotientDim quotient_dimension(const Ideal& I, const Budget& budget) {
    const auto& basis = I.groebner(budget);
    std::vector<Monomial> leads;
    leads.reserve(basis.elements.size());
    for (const auto& g : basis.elements) leads.push_back(g.lm());
    auto std_mons = gb::standard_monomials_of(leads, I.ring()->nvars(), basis.order);
    if (std_mons.empty()) {
        bool is_unit_ideal = basis.elements.size() == 1 && basis.elements[0].lm().is_unit();
        if (!is_unit_ideal)
            throw NotZeroDimensional("quotient by " + std::to_string(basis.elements.size()) +
                                     "-element basis is not zero-dimensional in " +
                                     I.ring()->describe());
    }
    QuotientDim out;
    out.standard = std::move(std_mons);
    out.count = static_cast<int64_t>(out.standard.size());
    return out;
}

bool ideal_equal(const Ideal& I, const Ideal& J, const Budget& budget) {
    if (!I.ring()->same(*J.ring())) throw Error("ideal_equal: ambient ring mismatch");
    return I.groebner(budget) == J.groebner(budget);
}

}  // namespace levelforge::gro
