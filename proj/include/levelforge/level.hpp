/**
 * @file level.hpp
 * @brief Full level structure on G x G for a rank-p Oort-Tate group scheme:
 *        the level ideal, fiberwise flatness verification, GL_2 invariance
 *        checks, the unit-factorization and s-independence theorems, the
 *        truncated level structure, and the non-invariance search over
 *        F_{p^2}.
 */
#ifndef LEVELFORGE_LEVEL_HPP
#define LEVELFORGE_LEVEL_HPP

#include "levelforge/ot.hpp"
#include "levelforge/quotient_space.hpp"

namespace levelforge::level {

using arith::CoeffRingPtr;
using arith::Scalar;
using gro::Budget;
using gro::Ideal;
using ot::Chart;
using ot::UniversalRing;
using poly::Poly;

/// One generator of the level ideal, tagged by its (m, n) combination and by
/// which family (row or column pairing) produced it.
struct TaggedGenerator {
    int64_t m = 0, n = 0;
    bool row = true;
    Poly gen;
};

struct LevelIdeal {
    UniversalRing uring;
    std::vector<TaggedGenerator> tagged;  // exactly 2(p^2 - 1) entries
    Ideal ideal;
};

/// Level generators of a 2x2 point matrix (a, b; c, d) inside an arbitrary
/// universal ring: for (m,n) != 0, the row family
/// ((ma .+ nb)^{p-1} - t)((mc .+ nd)^{p-1} - t) and the column analogue.
std::vector<TaggedGenerator> level_generators(const UniversalRing& U, const Poly& a, const Poly& b,
                                              const Poly& c, const Poly& d, bool use_dotplus);

/// The Def-3.4 ideal on the universal homomorphism ring of the chart.
LevelIdeal full_level_ideal(const Chart& chart);
/// Same generators with the plain sum in place of dot-plus (the
/// s-independent presentation).
LevelIdeal full_level_ideal_plain(const Chart& chart);

int64_t gl2_order(int64_t p);  // (p^2-1)(p^2-p)

/// Quotient dimension of the level ideal at the fiber (s, t) over F.
int64_t fiber_rank(int64_t p, const CoeffRingPtr& F, const Scalar& s, const Scalar& t,
                   const Budget& budget = Budget::from_env());

struct FiberRank {
    std::string point;
    int64_t rank = 0;
    double ms = 0;
};

struct FlatnessReport {
    int64_t p = 0, q = 0;
    int64_t expected = 0;
    std::vector<FiberRank> fibers;     // every F_q-point of {st = 0}
    bool char0_checked = false;        // p = 2 spot check at (1,2) over Q
    int64_t char0_rank = 0;
    bool pass = false;
    double total_ms = 0;
};

/// Enumerates all F_q-points of {st = 0}, computes each fiber rank and
/// compares with |GL_2(F_p)|; mathematical failures are reported, not thrown.
FlatnessReport verify_flatness(int64_t p, int64_t q, const Budget& budget = Budget::from_env(),
                               int jobs = 1);

/// Precomposition action by the generators of GL_2(F_p) (transvections and a
/// primitive-root diagonal) leaves the level ideal invariant.
bool gl2_precompose_invariance(const Chart& chart, const Budget& budget = Budget::from_env());

struct UnitFactorization {
    bool unit_power_ok = true;    // (1 + s g'(ma, nb))^p = 1 for all (m, n)
    bool factorization_ok = true; // (ma .+ nb)^{p-1} - t = u^{p-1}((ma+nb)^{p-1} - t)
    bool pass() const { return unit_power_ok && factorization_ok; }
};

/// The Thm-4.4 unit factorization in F_p[a,b,s,t]/(st, a^p - ta, b^p - tb).
UnitFactorization unit_factorization_check(int64_t p);

/// Reduced-basis equality of the dot-plus and plain-sum level ideals on the
/// symbolic chart.
bool s_independence_check(int64_t p, const Budget& budget = Budget::from_env());

enum class TruncatedFlavor { multiplicative, constant };

struct TruncatedResult {
    int64_t rank = 0;
    int64_t expected = 0;  // |GL_2(Z/p^l)| by enumeration
};

/// Level structure on G^2 for G = mu_{p^l} or the constant Z/p^l over F_p,
/// via pullback of the G[p]^2 level ideal along the p^{l-1} power map.
TruncatedResult truncated_level_rank(int64_t p, int l, TruncatedFlavor flavor,
                                     const Budget& budget = Budget::from_env());

struct StackReport {
    int64_t p = 0, q = 0;
    bool witness_found = false;
    std::string witness;               // right-action matrix with g I != I
    size_t searched = 0;
    bool scalars_preserve = false;     // lambda id for all lambda in F_q^*
    bool precompose_invariant = false; // GL_2(F_p) precomposition
    bool left_witness_found = false;   // same search with the opposite orientation
    std::string left_witness;
};

/// Searches GL_2(F_{p^2}) acting on the alpha_p^2 level ideal from the right
/// for a non-invariance witness; also reports the scalar and precomposition
/// invariances and the opposite orientation.
StackReport stack_counterexample(int64_t p, const Budget& budget = Budget::from_env());

}  // namespace levelforge::level

#endif
