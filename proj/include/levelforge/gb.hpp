/**
 * @file gb.hpp
 * @brief Buchberger engine: S-pair completion with Gebauer-Moller pruning,
 *        full normal forms, reduced bases, pair/degree budgets.
 */
#ifndef LEVELFORGE_GB_HPP
#define LEVELFORGE_GB_HPP

#include <vector>

#include "levelforge/poly.hpp"

namespace levelforge::gb {

using poly::Poly;

struct Budget {
    long max_pairs = 200000;
    int max_degree = 1 << 20;

    /// Budget with LEVELFORGE_BUDGET_PAIRS applied if the variable is set.
    static Budget from_env();
    Budget scaled(long factor) const { return {max_pairs * factor, max_degree}; }
};

struct GBStats {
    long pairs_processed = 0;
    long reductions_to_zero = 0;
    int max_lcm_degree = 0;
    size_t basis_size = 0;
};

/// Full normal form of f against a list of reducers (every term reduced).
/// Field coefficients only.
Poly reduce_full(const Poly& f, const std::vector<Poly>& reducers);

/// Unique reduced Groebner basis of the input ideal with respect to the
/// ring's order: monic, inter-reduced, sorted ascending by leading monomial.
/// Throws BudgetExceeded when the pair count or lcm degree exceeds budget.
std::vector<Poly> buchberger(const std::vector<Poly>& gens, const Budget& budget = Budget{},
                             GBStats* stats = nullptr);

/// Exact division f / d in the free polynomial ring; throws DivisionFailed
/// when d does not divide f.
Poly exact_divide(const Poly& f, const Poly& d);

/// Monomials divisible by none of the given leading terms, sorted ascending.
/// Returns an empty list when some variable has no pure power among the
/// leads (quotient not zero-dimensional).
std::vector<poly::Monomial> standard_monomials_of(const std::vector<poly::Monomial>& leads,
                                                  int nvars, const poly::MonomialOrder& order);

}  // namespace levelforge::gb

#endif
