/**
 * @file km.hpp
 * @brief Katz-Mazur full-set-of-sections ideals via the norm-equals-product
 *        identity on a generic element, the cyclotomic example, and the
 *        KM+D computation on alpha_2 x alpha_2.
 */
#ifndef LEVELFORGE_KM_HPP
#define LEVELFORGE_KM_HPP

#include "levelforge/level.hpp"

namespace levelforge::km {

using gro::Budget;
using gro::Ideal;
using hopf::GroupPoint;
using hopf::HopfPtr;
using poly::Poly;
using poly::PolyRingPtr;
using poly::PresentedRingPtr;

/// Norm form of a finite free algebra O_H: the determinant of the
/// multiplication matrix of the generic element f = sum u_j e_j, a
/// polynomial in the fresh coefficient variables u_j.
struct NormForm {
    HopfPtr host;
    PolyRingPtr u_ring;                 // k[u_1..u_n]
    std::vector<Poly> basis;            // the basis e_j of O_H
    Poly norm;                          // in u_ring, homogeneous of degree n
};

/// basis defaults to the standard monomials of O_H.
NormForm norm_form(const HopfPtr& H, std::vector<Poly> basis = {});
/// Norm form of a bare finite free presented algebra.
NormForm norm_form_ring(const PresentedRingPtr& R, std::vector<Poly> basis = {});

struct KMIdeal {
    Ideal ideal;
    size_t raw_generators = 0;  // coefficient differences before dedup
};

/// KM ideal for an explicit full set of points h(x) (all p^g of them, in a
/// fixed order): coefficients of prod_x f(h(x)) - N(f) in the u-monomials.
KMIdeal km_ideal_for_points(const HopfPtr& H, const PresentedRingPtr& U,
                            const std::vector<GroupPoint>& points,
                            std::vector<Poly> basis = {}, bool force_symbolic = false);

/// KM ideal of the universal homomorphism (Z/p)^g -> H on O(H^g).
KMIdeal km_ideal(const HopfPtr& H, int g);

/// KM+D on alpha_2 x alpha_2 over F_2: the universal homomorphism and its
/// Cartier dual must both be norm-compatible.  alpha_2 is self-dual; the
/// dual map alpha_2^2 -> mu_2^2 carries the transposed matrix through the
/// pairing <x, y> = 1 + xy, and its condition is norm-of-pullback equals
/// norm.  The naive reading (KM ideal of the transposed h) is also computed
/// and reported.
struct KmdResult {
    int64_t rank = 0;            // km(h) + dual norm condition
    int64_t km_only_rank = 0;    // km(h) alone
    int64_t rank_transpose = 0;  // km(h) + km(h transposed)
    int64_t ambient = 16;
};
KmdResult kmd_rank_alpha2(const Budget& budget = Budget::from_env());

struct KmFiberReport {
    std::string fiber;
    int64_t km_rank = 0;
    int64_t primitive_rank = 0;  // the Def-3.4 level ideal rank
    bool km_matches_expected = false;
};

/// Per-fiber comparison of the KM (g = 2) and level-structure quotient
/// dimensions on mu_p^2, alpha_p^2 and the etale fiber.
std::vector<KmFiberReport> km_vs_primitive(int64_t p, const Budget& budget = Budget::from_env());

}  // namespace levelforge::km

#endif
