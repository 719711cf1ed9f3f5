/**
 * @file ext3.hpp
 * @brief The 2x3 partial level structure on mu_p^3 and the G^3 candidate
 *        ideal, with the rank computations over F_p.
 */
#ifndef LEVELFORGE_EXT3_HPP
#define LEVELFORGE_EXT3_HPP

#include <functional>

#include "levelforge/level.hpp"

namespace levelforge::ext3 {

using gro::Budget;
using ot::UniversalRing;
using poly::Poly;

using ProgressFn = std::function<void(const std::string&)>;

struct PartialLevel {
    UniversalRing uring;          // six point variables over the mu_p chart (1,0)
    std::vector<Poly> gens;       // pooled generating set after dedup
    std::vector<Poly> small_gens; // greedy generating subset of the pool
    int64_t rank = 0;
    int64_t expected = 0;         // |Mat*_{2x3}(F_p)| by enumeration
    size_t substitutions = 0;     // group substitutions performed
    size_t distinct_sets = 0;     // distinct substituted generator sets
    bool left_invariant = false;  // GL_2 substitutions preserve the ideal
    bool right_invariant = false; // GL_3 substitutions preserve the ideal
};

/// Condition (i) plus the sum of the transformed block ideals
/// J = I_1 I_2 cap I_1 I_3 cap I_2 I_3 over the group.  With
/// `full_group_sum` the sum runs over all of GL_2 x GL_3 with generator-set
/// dedup; otherwise the verified left-GL_2 invariance of J collapses the sum
/// to the GL_3 orbit.
PartialLevel partial_level_ideal(int64_t p, bool full_group_sum = false,
                                 const ProgressFn& progress = {});

struct G3Report {
    int64_t p = 0;
    int64_t rank = 0;
    int64_t gl3 = 0;       // |GL_3(F_p)| by enumeration
    int64_t ambient = 0;   // p^9
    bool include_dual = false;
    size_t pool_size = 0;
};

/// Candidate full level structure on mu_p^3: every 2x3 block of every
/// left/right GL_3-transform of the universal homomorphism (and of its
/// transpose when include_dual is set) must satisfy the partial level ideal.
G3Report g3_candidate_rank(int64_t p, bool include_dual = false,
                           const ProgressFn& progress = {});

int64_t gl3_order(int64_t p);           // enumeration
int64_t mat23_rank2_count(int64_t p);   // enumeration

}  // namespace levelforge::ext3

#endif
