/**
 * @file poly.hpp
 * @brief Sparse exact multivariate polynomials over a coefficient ring, with
 *        deterministic descending-term iteration and a canonical text format.
 */
#ifndef LEVELFORGE_POLY_HPP
#define LEVELFORGE_POLY_HPP

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "levelforge/arith.hpp"
#include "levelforge/monomial.hpp"

namespace levelforge::poly {

using arith::CoeffRing;
using arith::CoeffRingPtr;
using arith::Scalar;

/// Free polynomial ring descriptor: coefficient ring, named variables and a
/// monomial order.  All polynomials of one computation share one instance.
class PolyRing : public std::enable_shared_from_this<PolyRing> {
public:
    static std::shared_ptr<const PolyRing> make(CoeffRingPtr coeff,
                                                std::vector<std::string> vars,
                                                MonomialOrder order = MonomialOrder::degrevlex());

    const CoeffRingPtr& coeff() const { return coeff_; }
    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    const MonomialOrder& order() const { return order_; }

    int var_index(const std::string& name) const;  // -1 if absent

    /// Same ring with another order (polynomials must be re-sorted).
    std::shared_ptr<const PolyRing> with_order(MonomialOrder o) const;
    /// Ring with a fresh elimination variable prepended and a block order.
    std::shared_ptr<const PolyRing> with_elim_var(const std::string& name) const;

private:
    PolyRing() = default;
    CoeffRingPtr coeff_;
    std::vector<std::string> vars_;
    MonomialOrder order_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

struct Term {
    Monomial m;
    Scalar c;
};

/// Sparse polynomial; terms are kept sorted in strictly descending monomial
/// order and never store a zero coefficient.
class Poly {
public:
    Poly() = default;
    explicit Poly(PolyRingPtr ring) : ring_(std::move(ring)) {}

    static Poly zero(const PolyRingPtr& r) { return Poly(r); }
    static Poly constant(const PolyRingPtr& r, const Scalar& c);
    static Poly from_int(const PolyRingPtr& r, int64_t n);
    static Poly variable(const PolyRingPtr& r, int i, uint16_t exp = 1);
    static Poly monomial(const PolyRingPtr& r, const Monomial& m, const Scalar& c);
    /// Build from unsorted (monomial, coefficient) pairs, combining duplicates.
    static Poly from_terms(const PolyRingPtr& r, std::vector<Term> terms);

    const PolyRingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    const Monomial& lm() const;       // leading monomial
    const Scalar& lc() const;         // leading coefficient
    const Term& lt() const;
    uint32_t degree() const { return terms_.empty() ? 0 : terms_.front().m.deg; }
    uint32_t total_degree_max() const;  // max over terms (== degree for graded orders)

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly mul_term(const Monomial& m, const Scalar& c) const;
    Poly mul_scalar(const Scalar& c) const;
    Poly pow(uint64_t e) const;

    bool operator==(const Poly& o) const;

    /// Leading coefficient scaled to 1 (field coefficients).
    Poly monic() const;

    /// Re-sort for a ring sharing variables but using a different order.
    Poly converted_to(const PolyRingPtr& other) const;

    /// Canonical text form, descending terms, e.g. "a^2*b + 2*s*t".
    std::string str() const;

private:
    PolyRingPtr ring_;
    std::vector<Term> terms_;
    void normalize();  // sort descending, merge, drop zeros
    friend Poly parse_poly(const PolyRingPtr&, const std::string&);
};

/// Parse the `poly` text format.  Whitespace-insensitive; identifiers must be
/// ring variables (or `g`, the extension-field generator).  Grammar:
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := INT | IDENT ['^' INT] | '(' poly ')' [ '^' INT ]
Poly parse_poly(const PolyRingPtr& ring, const std::string& text);

/// Substitute ring variables by polynomials in a (possibly different) ring.
/// Coefficients are embedded via embed_scalar below.
Poly substitute(const Poly& f, const PolyRingPtr& target, const std::vector<Poly>& images);

/// Embed a scalar of `from` into `to`: identical rings, F_p into F_{p^k},
/// or integer residues into a larger ring of the same characteristic zero.
Scalar embed_scalar(const Scalar& c, const CoeffRingPtr& from, const CoeffRingPtr& to);

}  // namespace levelforge::poly

#endif
