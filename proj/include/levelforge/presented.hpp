/**
 * @file presented.hpp
 * @brief Presented quotient rings with unique normal forms, ring
 *        homomorphisms verified on relations, and tensor powers over the
 *        base.
 */
#ifndef LEVELFORGE_PRESENTED_HPP
#define LEVELFORGE_PRESENTED_HPP

#include <mutex>
#include <optional>

#include "levelforge/gb.hpp"
#include "levelforge/poly.hpp"

namespace levelforge::poly {

class PresentedRing;
using PresentedRingPtr = std::shared_ptr<const PresentedRing>;

/// A quotient ring k[vars]/(relations), possibly fibered over a base: the
/// last `num_base_vars` variables are base parameters (s, t) that tensor
/// powers do not duplicate.  Base parameters sort below the module
/// variables, so a relation like a^p - t*a rewrites a^p downwards.  Over a
/// field the relations carry a cached reduced Groebner basis; over Z/p^N
/// (N > 1) only normal forms against monic relations are supported.
class PresentedRing : public std::enable_shared_from_this<PresentedRing> {
public:
    static PresentedRingPtr make(PolyRingPtr ring, std::vector<Poly> relations,
                                 int num_base_vars = 0,
                                 const gb::Budget& budget = gb::Budget::from_env());

    /// Convenience: build the poly ring and parse relations from text.
    static PresentedRingPtr create(CoeffRingPtr coeff, std::vector<std::string> vars,
                                   const std::vector<std::string>& relation_texts,
                                   MonomialOrder order = MonomialOrder::degrevlex(),
                                   int num_base_vars = 0);

    const PolyRingPtr& poly_ring() const { return ring_; }
    const CoeffRingPtr& coeff() const { return ring_->coeff(); }
    const std::vector<std::string>& vars() const { return ring_->vars(); }
    int nvars() const { return ring_->nvars(); }
    int num_base_vars() const { return base_vars_; }
    const std::vector<Poly>& relations() const { return relations_; }
    /// Reduced Groebner basis of the relations (field coefficients), or the
    /// monic rewrite system (Z/p^N).
    const std::vector<Poly>& relation_basis() const { return relation_basis_; }

    /// Unique normal form modulo the relations; idempotent and linear.
    Poly normal_form(const Poly& f) const;
    Poly nf(const Poly& f) const { return normal_form(f); }
    bool is_zero(const Poly& f) const { return normal_form(f).is_zero(); }
    bool equal(const Poly& f, const Poly& g) const { return normal_form(f - g).is_zero(); }

    /// True when every variable has a pure power among the relation leading
    /// terms, so the ring is a finite module over its coefficients.
    bool is_finite_dimensional() const { return finite_dim_; }
    const std::vector<Monomial>& standard_monomials() const;
    int64_t dimension() const;

    /// Ring restricted to the base variables and base-only relations.
    PresentedRingPtr base_ring() const;

    bool same(const PresentedRing& o) const;
    std::string describe() const;

    Poly parse(const std::string& text) const { return parse_poly(ring_, text); }
    Poly var(int i) const { return Poly::variable(ring_, i); }
    Poly var(const std::string& name) const;
    Poly from_int(int64_t n) const { return Poly::from_int(ring_, n); }

private:
    PresentedRing() = default;
    PolyRingPtr ring_;
    std::vector<Poly> relations_;
    std::vector<Poly> relation_basis_;
    int base_vars_ = 0;
    bool finite_dim_ = false;
    std::vector<Monomial> std_monomials_;  // filled when finite-dimensional
    mutable std::mutex cache_mutex_;
    mutable std::optional<PresentedRingPtr> base_ring_cache_;
};

/// Ring homomorphism given by one target image per source variable; the
/// constructor checks that every source relation maps to zero.
class RingMap {
public:
    RingMap() = default;
    RingMap(PresentedRingPtr source, PresentedRingPtr target, std::vector<Poly> images,
            bool verify = true);

    const PresentedRingPtr& source() const { return src_; }
    const PresentedRingPtr& target() const { return dst_; }
    const std::vector<Poly>& images() const { return images_; }

    Poly apply(const Poly& f) const;
    RingMap then(const RingMap& next) const;  // this, followed by next

private:
    PresentedRingPtr src_, dst_;
    std::vector<Poly> images_;
};

/// Tensor power over the base: base variables are shared, fiber variables
/// are duplicated with prime suffixes, relations copied per factor.
struct TensorPower {
    PresentedRingPtr ring;
    std::vector<RingMap> inclusions;  // one per factor
};

TensorPower tensor_power(const PresentedRingPtr& R, int n);
inline TensorPower tensor_square(const PresentedRingPtr& R) { return tensor_power(R, 2); }

}  // namespace levelforge::poly

#endif
