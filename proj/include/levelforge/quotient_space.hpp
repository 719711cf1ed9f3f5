/**
 * @file quotient_space.hpp
 * @brief Dense linear algebra over a finite-dimensional monomial-basis
 *        quotient ring.  Ideals are subspaces closed under multiplication by
 *        the variables, so span closure computes quotient dimensions without
 *        a Groebner basis; this drives the large rank computations.
 */
#ifndef LEVELFORGE_QUOTIENT_SPACE_HPP
#define LEVELFORGE_QUOTIENT_SPACE_HPP

#include <map>
#include <vector>

#include "levelforge/presented.hpp"

namespace levelforge::quot {

using poly::Monomial;
using poly::Poly;
using poly::PresentedRingPtr;

/// Dense model of a presented ring over F_p whose relation basis consists of
/// single-variable power rules x_i^{d_i} = c_i * x_i^{e_i} (tail possibly
/// zero or constant).  Basis = monomials with exponents below the caps.
class FiniteQuotient {
public:
    explicit FiniteQuotient(PresentedRingPtr R);

    const PresentedRingPtr& ring() const { return R_; }
    size_t dim() const { return dim_; }
    int64_t p() const { return p_; }

    size_t index_of(const Monomial& m) const;
    Monomial monomial_at(size_t idx) const;

    std::vector<uint8_t> to_vector(const Poly& f) const;  // applies the ring normal form
    Poly to_poly(const std::vector<uint8_t>& v) const;

    /// vec * x_var in the quotient.
    std::vector<uint8_t> mul_var(const std::vector<uint8_t>& vec, int var) const;

    /// Product of two basis monomials: a single (index, coefficient) pair
    /// because the rewrite rules are single-term.  coefficient 0 means zero.
    std::pair<size_t, uint8_t> mul_basis(size_t i, size_t j) const;

    /// Dense algebra product (uses mul_basis).
    std::vector<uint8_t> mul_dense(const std::vector<uint8_t>& a,
                                   const std::vector<uint8_t>& b) const;

private:
    PresentedRingPtr R_;
    int64_t p_ = 0;
    size_t dim_ = 0;
    std::vector<uint32_t> caps_;
    std::vector<size_t> stride_;
    struct Rule {
        bool zero = true;       // x^d = 0
        uint8_t coeff = 0;      // else x^d = coeff * x^exp
        uint32_t exp = 0;
    };
    std::vector<Rule> rules_;
};

/// Incremental row echelon over F_p (p <= 13), rows stored dense.
class RowSpace {
public:
    RowSpace(int64_t p, size_t dim);

    /// Reduce against the pivots; adopt the remainder as a new pivot row.
    /// Returns true when the rank grew.
    bool insert(std::vector<uint8_t> row);
    bool contains(std::vector<uint8_t> row) const;
    size_t rank() const { return rows_.size(); }
    const std::map<size_t, std::vector<uint8_t>>& rows() const { return rows_; }

private:
    int64_t p_;
    size_t dim_;
    std::map<size_t, std::vector<uint8_t>> rows_;  // pivot index -> row, row[pivot] = 1
    // reduce in place; returns pivot position or dim_ when reduced to zero
    size_t reduce(std::vector<uint8_t>& row) const;
};

/// Span of the ideal generated by `gens`, as a row space closed under
/// multiplication by every variable.
RowSpace ideal_row_space(const FiniteQuotient& fq, const std::vector<Poly>& gens);

/// dim(R) - dim(ideal span): the vector-space dimension of R/I.
int64_t quotient_dimension_linear(const FiniteQuotient& fq, const std::vector<Poly>& gens);

/// Basis polynomials of the intersection of two ideals (Zassenhaus on the
/// ideal spans).  The result generates the intersection as an ideal.
std::vector<Poly> ideal_intersection_linear(const FiniteQuotient& fq,
                                            const std::vector<Poly>& gens_a,
                                            const std::vector<Poly>& gens_b);

/// Greedy subset of `gens` generating the same ideal (smallest first).
std::vector<Poly> shrink_generators(const FiniteQuotient& fq, const std::vector<Poly>& gens);

/// True when f lies in the ideal generated by gens.
bool ideal_member_linear(const FiniteQuotient& fq, const std::vector<Poly>& gens, const Poly& f);

/// True when both generator lists span the same ideal.
bool ideal_equal_linear(const FiniteQuotient& fq, const std::vector<Poly>& gens_a,
                        const std::vector<Poly>& gens_b);

}  // namespace levelforge::quot

#endif
