#include "levelforge/presented.hpp"

#include <algorithm>
#include <sstream>

namespace levelforge::poly {

PresentedRingPtr PresentedRing::make(PolyRingPtr ring, std::vector<Poly> relations,
                                     int num_base_vars, const gb::Budget& budget) {
    auto r = std::shared_ptr<PresentedRing>(new PresentedRing());
    for (const auto& rel : relations) {
        if (rel.ring().get() != ring.get())
            throw Error("relation does not live in the declared ring");
    }
    relations.erase(std::remove_if(relations.begin(), relations.end(),
                                   [](const Poly& p) { return p.is_zero(); }),
                    relations.end());
    r->ring_ = std::move(ring);
    r->base_vars_ = num_base_vars;
    if (num_base_vars < 0 || num_base_vars > r->ring_->nvars())
        throw Error("invalid base variable count");

    if (r->ring_->coeff()->is_field()) {
        r->relation_basis_ = gb::buchberger(relations, budget);
    } else {
        // Z/p^N: relations act as a monic rewrite system
        for (const auto& rel : relations) {
            if (!r->ring_->coeff()->is_unit(rel.lc()))
                throw Error("non-field coefficients require monic relations: " + rel.str());
        }
        r->relation_basis_ = relations;
        for (auto& rel : r->relation_basis_) rel = rel.monic();
    }
    r->relations_ = std::move(relations);

    std::vector<Monomial> leads;
    for (const auto& g : r->relation_basis_) leads.push_back(g.lm());
    r->std_monomials_ =
        gb::standard_monomials_of(leads, r->ring_->nvars(), r->ring_->order());
    r->finite_dim_ = !r->std_monomials_.empty() || r->ring_->nvars() == 0;
    return r;
}

PresentedRingPtr PresentedRing::create(CoeffRingPtr coeff, std::vector<std::string> vars,
                                       const std::vector<std::string>& relation_texts,
                                       MonomialOrder order, int num_base_vars) {
    auto pr = PolyRing::make(std::move(coeff), std::move(vars), order);
    std::vector<Poly> rels;
    rels.reserve(relation_texts.size());
    for (const auto& t : relation_texts) rels.push_back(parse_poly(pr, t));
    return make(pr, std::move(rels), num_base_vars);
}

Poly PresentedRing::normal_form(const Poly& f) const {
    if (f.ring().get() != ring_.get()) throw Error("normal_form: polynomial from another ring");
    if (relation_basis_.empty()) return f;
    if (coeff()->is_field()) return gb::reduce_full(f, relation_basis_);
    // monic rewrite loop for Z/p^N
    const auto& k = coeff();
    Poly h = f;
    std::vector<Term> done;
    while (!h.is_zero()) {
        bool rewritten = false;
        for (const auto& rule : relation_basis_) {
            if (rule.lm().divides(h.lm())) {
                Monomial q = rule.lm().quotient_into(h.lm());
                h = h - rule.mul_term(q, h.lc());
                rewritten = true;
                break;
            }
        }
        if (!rewritten) {
            done.push_back(h.lt());
            h = h - Poly::monomial(ring_, h.lt().m, h.lt().c);
        }
        (void)k;
    }
    return Poly::from_terms(ring_, std::move(done));
}

const std::vector<Monomial>& PresentedRing::standard_monomials() const {
    if (!finite_dim_) throw NotZeroDimensional("ring is not finite-dimensional");
    return std_monomials_;
}

int64_t PresentedRing::dimension() const {
    if (!finite_dim_) throw NotZeroDimensional("ring is not finite-dimensional");
    return nvars() == 0 ? 1 : static_cast<int64_t>(std_monomials_.size());
}

PresentedRingPtr PresentedRing::base_ring() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (base_ring_cache_) return *base_ring_cache_;
    const int nf = nvars() - base_vars_;  // module variables come first
    std::vector<std::string> bvars(vars().begin() + nf, vars().end());
    auto bring = PolyRing::make(coeff(), bvars, ring_->order());
    std::vector<Poly> brels;
    for (const auto& rel : relations_) {
        bool base_only = true;
        for (const auto& t : rel.terms())
            for (int v = 0; v < nf && base_only; ++v)
                if (t.m.e[v] != 0) base_only = false;
        if (!base_only) continue;
        std::vector<Term> ts;
        for (const auto& t : rel.terms()) {
            Monomial m = Monomial::unit(base_vars_);
            for (int v = 0; v < base_vars_; ++v) {
                m.e[v] = t.m.e[nf + v];
                m.deg += t.m.e[nf + v];
            }
            ts.push_back({m, t.c});
        }
        brels.push_back(Poly::from_terms(bring, std::move(ts)));
    }
    auto result = make(bring, std::move(brels), base_vars_);
    base_ring_cache_ = result;
    return result;
}

bool PresentedRing::same(const PresentedRing& o) const {
    if (this == &o) return true;
    if (!coeff()->same(*o.coeff())) return false;
    if (vars() != o.vars()) return false;
    if (!(ring_->order() == o.ring_->order())) return false;
    if (relation_basis_.size() != o.relation_basis_.size()) return false;
    for (size_t i = 0; i < relation_basis_.size(); ++i) {
        // compare via text to sidestep ring-pointer identity
        if (relation_basis_[i].str() != o.relation_basis_[i].str()) return false;
    }
    return true;
}

std::string PresentedRing::describe() const {
    std::ostringstream os;
    os << coeff()->name() << "[";
    for (size_t i = 0; i < vars().size(); ++i) os << (i ? "," : "") << vars()[i];
    os << "]";
    if (!relations_.empty()) {
        os << "/(";
        for (size_t i = 0; i < relations_.size(); ++i) os << (i ? ", " : "") << relations_[i].str();
        os << ")";
    }
    return os.str();
}

Poly PresentedRing::var(const std::string& name) const {
    int i = ring_->var_index(name);
    if (i < 0) throw Error("no variable named " + name);
    return var(i);
}

RingMap::RingMap(PresentedRingPtr source, PresentedRingPtr target, std::vector<Poly> images,
                 bool verify)
    : src_(std::move(source)), dst_(std::move(target)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != src_->nvars())
        throw Error("ring map needs one image per source variable");
    for (auto& im : images_) im = dst_->normal_form(im);
    if (verify) {
        for (const auto& rel : src_->relations()) {
            Poly im = dst_->normal_form(substitute(rel, dst_->poly_ring(), images_));
            if (!im.is_zero())
                throw WellDefinednessError(
                    "relation " + rel.str() + " maps to " + im.str() + " != 0", rel.str());
        }
    }
}

Poly RingMap::apply(const Poly& f) const {
    return dst_->normal_form(substitute(f, dst_->poly_ring(), images_));
}

RingMap RingMap::then(const RingMap& next) const {
    std::vector<Poly> imgs;
    imgs.reserve(images_.size());
    for (const auto& im : images_) imgs.push_back(next.apply(im));
    return RingMap(src_, next.target(), std::move(imgs), false);
}

TensorPower tensor_power(const PresentedRingPtr& R, int n) {
    if (n < 1) throw Error("tensor power needs n >= 1");
    if (n == 1) {
        TensorPower out;
        out.ring = R;
        std::vector<Poly> imgs;
        for (int v = 0; v < R->nvars(); ++v) imgs.push_back(R->var(v));
        out.inclusions.emplace_back(R, R, std::move(imgs), false);
        return out;
    }
    const int nb = R->num_base_vars();
    const int nf = R->nvars() - nb;  // module variables come first, base last
    std::vector<std::string> vars;
    for (int copy = 0; copy < n; ++copy) {
        std::string suffix(copy + 1, '\'');
        for (int v = 0; v < nf; ++v) vars.push_back(R->vars()[v] + suffix);
    }
    for (int v = nf; v < R->nvars(); ++v) vars.push_back(R->vars()[v]);
    // iterated tensor powers can collide (x'' from both x' and x); uniquify
    for (size_t i = 0; i < vars.size(); ++i) {
        bool dup = true;
        while (dup) {
            dup = false;
            for (size_t j = 0; j < i; ++j)
                if (vars[j] == vars[i]) {
                    vars[i] += '\'';
                    dup = true;
                    break;
                }
        }
    }
    auto pring = PolyRing::make(R->coeff(), vars, R->poly_ring()->order());

    auto rename = [&](const Poly& rel, int copy) {
        std::vector<Term> ts;
        for (const auto& t : rel.terms()) {
            Monomial m = Monomial::unit(static_cast<int>(vars.size()));
            for (int v = 0; v < nf; ++v) m.e[copy * nf + v] = t.m.e[v];
            for (int v = 0; v < nb; ++v) m.e[n * nf + v] = t.m.e[nf + v];
            m.deg = t.m.deg;
            ts.push_back({m, t.c});
        }
        return Poly::from_terms(pring, std::move(ts));
    };

    std::vector<Poly> rels;
    for (const auto& rel : R->relations()) {
        bool base_only = true;
        for (const auto& t : rel.terms())
            for (int v = 0; v < nf && base_only; ++v)
                if (t.m.e[v] != 0) base_only = false;
        if (base_only) {
            rels.push_back(rename(rel, 0));
        } else {
            for (int copy = 0; copy < n; ++copy) rels.push_back(rename(rel, copy));
        }
    }
    auto T = PresentedRing::make(pring, std::move(rels), nb);

    TensorPower out;
    out.ring = T;
    for (int copy = 0; copy < n; ++copy) {
        std::vector<Poly> images;
        for (int v = 0; v < nf; ++v) images.push_back(T->var(copy * nf + v));
        for (int v = 0; v < nb; ++v) images.push_back(T->var(n * nf + v));
        out.inclusions.emplace_back(R, T, std::move(images), false);
    }
    return out;
}

}  // namespace levelforge::poly
