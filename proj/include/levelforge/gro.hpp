/**
 * @file gro.hpp
 * @brief Ideal calculus on presented rings: sum, product, intersection via
 *        block elimination, quotient, annihilator, equality, and
 *        zero-dimensional quotient dimension.  Ambient relations are folded
 *        into every ideal so callers reason about ideals of the quotient.
 */
#ifndef LEVELFORGE_GRO_HPP
#define LEVELFORGE_GRO_HPP

#include <mutex>
#include <optional>

#include "levelforge/presented.hpp"

namespace levelforge::gro {

using gb::Budget;
using poly::Monomial;
using poly::MonomialOrder;
using poly::Poly;
using poly::PresentedRing;
using poly::PresentedRingPtr;

struct GroebnerBasis {
    MonomialOrder order;
    std::vector<Poly> elements;  // monic, inter-reduced, ascending by leading monomial

    bool operator==(const GroebnerBasis& o) const {
        if (!(order == o.order) || elements.size() != o.elements.size()) return false;
        for (size_t i = 0; i < elements.size(); ++i)
            if (!(elements[i] == o.elements[i])) return false;
        return true;
    }
};

/// Finitely generated ideal of a presented ring.  Generators are kept in
/// normal form; the reduced Groebner basis (which always includes the
/// ambient relations) is computed once and cached.
class Ideal {
public:
    Ideal() = default;
    Ideal(PresentedRingPtr ring, std::vector<Poly> gens);
    static Ideal zero(PresentedRingPtr ring) { return Ideal(std::move(ring), {}); }
    static Ideal from_texts(const PresentedRingPtr& ring, const std::vector<std::string>& texts);

    const PresentedRingPtr& ring() const { return ring_; }
    const std::vector<Poly>& gens() const { return gens_; }

    const GroebnerBasis& groebner(const Budget& budget = Budget::from_env()) const;
    Poly nf(const Poly& f, const Budget& budget = Budget::from_env()) const;
    bool contains(const Poly& f, const Budget& budget = Budget::from_env()) const;

private:
    PresentedRingPtr ring_;
    std::vector<Poly> gens_;
    mutable std::mutex mutex_;
    mutable std::optional<GroebnerBasis> gb_;

public:
    Ideal(const Ideal& o) : ring_(o.ring_), gens_(o.gens_) {
        std::lock_guard<std::mutex> l(o.mutex_);
        gb_ = o.gb_;
    }
    Ideal& operator=(const Ideal& o) {
        if (this != &o) {
            ring_ = o.ring_;
            gens_ = o.gens_;
            std::lock_guard<std::mutex> l(o.mutex_);
            gb_ = o.gb_;
        }
        return *this;
    }
};

enum class CombineKind { sum, product };

Ideal ideal_combine(CombineKind kind, const Ideal& I, const Ideal& J);
inline Ideal ideal_sum(const Ideal& I, const Ideal& J) {
    return ideal_combine(CombineKind::sum, I, J);
}
inline Ideal ideal_product(const Ideal& I, const Ideal& J) {
    return ideal_combine(CombineKind::product, I, J);
}

/// I cap J через an auxiliary variable u with a block elimination order on
/// u*I + (1-u)*J.
Ideal ideal_intersect(const Ideal& I, const Ideal& J, const Budget& budget = Budget::from_env());

/// (I : f) = { g : g f in I }.
Ideal ideal_quotient(const Ideal& I, const Poly& f, const Budget& budget = Budget::from_env());

/// Annihilator of J in R: intersection of ((0) : g) over the generators.
Ideal annihilator(const PresentedRingPtr& R, const Ideal& J,
                  const Budget& budget = Budget::from_env());

struct QuotientDim {
    int64_t count = 0;
    std::vector<Monomial> standard;
};

/// Number of standard monomials of R/I; throws NotZeroDimensional when some
/// variable has no pure-power leading term in the basis.
QuotientDim quotient_dimension(const Ideal& I, const Budget& budget = Budget::from_env());

/// Reduced Groebner bases coincide.
bool ideal_equal(const Ideal& I, const Ideal& J, const Budget& budget = Budget::from_env());

}  // namespace levelforge::gro

#endif
