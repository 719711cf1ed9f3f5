#include "levelforge/ext3.hpp"

#include <array>
#include <set>

#include "levelforge/quotient_space.hpp"

namespace levelforge::ext3 {

using arith::CoeffRing;
using arith::Scalar;
using level::level_generators;
using ot::Chart;
using poly::Poly;
using poly::PresentedRingPtr;
using quot::FiniteQuotient;

namespace {

using Mat2 = std::array<int64_t, 4>;
using Mat3 = std::array<int64_t, 9>;

int64_t det3(const Mat3& m, int64_t p) {
    int64_t d = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
                m[2] * (m[3] * m[7] - m[4] * m[6]);
    return ((d % p) + p) % p;
}

std::vector<Mat3> all_gl3(int64_t p) {
    std::vector<Mat3> out;
    int64_t total = 1;
    for (int i = 0; i < 9; ++i) total *= p;
    for (int64_t code = 0; code < total; ++code) {
        Mat3 m;
        int64_t v = code;
        for (int i = 0; i < 9; ++i) {
            m[i] = v % p;
            v /= p;
        }
        if (det3(m, p) != 0) out.push_back(m);
    }
    return out;
}

std::vector<Mat2> all_gl2(int64_t p) {
    std::vector<Mat2> out;
    for (int64_t a = 0; a < p; ++a)
        for (int64_t b = 0; b < p; ++b)
            for (int64_t c = 0; c < p; ++c)
                for (int64_t d = 0; d < p; ++d)
                    if (((a * d - b * c) % p + p) % p != 0) out.push_back({a, b, c, d});
    return out;
}

// rank of a 2x3 matrix over F_p
int rank23(const std::array<int64_t, 6>& m, int64_t p) {
    // some 2x2 minor nonzero -> rank 2
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (((m[i] * m[3 + j] - m[j] * m[3 + i]) % p + p) % p != 0) return 2;
    for (int i = 0; i < 6; ++i)
        if (m[i] % p != 0) return 1;
    return 0;
}

// distinct row spaces of rank-2 2x3 matrices, as RREF representatives
std::vector<std::array<int64_t, 6>> row_space_reps(int64_t p) {
    std::set<std::array<int64_t, 6>> reps;
    int64_t total = 1;
    for (int i = 0; i < 6; ++i) total *= p;
    for (int64_t code = 0; code < total; ++code) {
        std::array<int64_t, 6> m;
        int64_t v = code;
        for (int i = 0; i < 6; ++i) {
            m[i] = v % p;
            v /= p;
        }
        if (rank23(m, p) != 2) continue;
        // reduce to RREF over F_p
        auto rref = m;
        int lead = -1;
        for (int c = 0; c < 3 && lead < 1; ++c) {
            int pr = -1;
            for (int r = lead + 1; r < 2; ++r)
                if (rref[3 * r + c] % p != 0) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            ++lead;
            for (int c2 = 0; c2 < 3; ++c2) std::swap(rref[3 * lead + c2], rref[3 * pr + c2]);
            int64_t inv = arith::mod_inv(rref[3 * lead + c], p);
            for (int c2 = 0; c2 < 3; ++c2) rref[3 * lead + c2] = rref[3 * lead + c2] * inv % p;
            for (int r = 0; r < 2; ++r) {
                if (r == lead) continue;
                int64_t f = rref[3 * r + c] % p;
                for (int c2 = 0; c2 < 3; ++c2)
                    rref[3 * r + c2] = ((rref[3 * r + c2] - f * rref[3 * lead + c2]) % p + p) % p;
            }
        }
        reps.insert(rref);
    }
    return {reps.begin(), reps.end()};
}

struct Ctx {
    UniversalRing U;
    FiniteQuotient fq;
    explicit Ctx(UniversalRing u) : U(std::move(u)), fq(U.ring) {}

    Poly dp(const Poly& f, const Poly& g) const { return ot::dotplus(U, f, g); }
    Poly scaled(int64_t m, const Poly& v) const {
        return v.mul_scalar(U.chart.coeff->from_int(m));
    }
    // [m1]v1 .+ [m2]v2 .+ [m3]v3
    Poly combo3(int64_t m1, const Poly& v1, int64_t m2, const Poly& v2, int64_t m3,
                const Poly& v3) const {
        return dp(dp(scaled(m1, v1), scaled(m2, v2)), scaled(m3, v3));
    }
    Poly combo2(int64_t m1, const Poly& v1, int64_t m2, const Poly& v2) const {
        return dp(scaled(m1, v1), scaled(m2, v2));
    }
};

std::string canonical_set_key(std::vector<std::string> strs) {
    std::sort(strs.begin(), strs.end());
    std::string key;
    for (auto& s : strs) {
        key += s;
        key += ';';
    }
    return key;
}

}  // namespace

int64_t gl3_order(int64_t p) { return static_cast<int64_t>(all_gl3(p).size()); }

int64_t mat23_rank2_count(int64_t p) {
    int64_t count = 0, total = 1;
    for (int i = 0; i < 6; ++i) total *= p;
    for (int64_t code = 0; code < total; ++code) {
        std::array<int64_t, 6> m;
        int64_t v = code;
        for (int i = 0; i < 6; ++i) {
            m[i] = v % p;
            v /= p;
        }
        if (rank23(m, p) == 2) ++count;
    }
    return count;
}

PartialLevel partial_level_ideal(int64_t p, bool full_group_sum, const ProgressFn& progress) {
    if (p != 2 && p != 3) throw Error("partial_level_ideal: p in {2, 3}");
    auto log = [&](const std::string& s) {
        if (progress) progress(s);
    };
    auto F = CoeffRing::fp(p);
    Chart chart = Chart::fiber(p, F, F->one(), F->zero());  // the mu_p chart
    Ctx ctx(ot::universal_hom_ring(chart, {"a11", "a12", "a13", "a21", "a22", "a23"}));
    const auto& R = ctx.U.ring;
    auto A = [&](int i, int l) { return ctx.U.points[3 * i + l]; };  // row i, column l

    PartialLevel out{ctx.U, {}, {}, 0, 0, 0, 0, false, false};
    out.expected = mat23_rank2_count(p);

    // condition (i): every nonzero combination of the two rows is primitive
    // in G^3.  (Combinations of the three columns always admit a vanishing
    // combination on the generic fiber, so they cut nothing flat and are
    // not part of the condition.)
    std::vector<Poly> cond_i;
    auto prim = [&](const Poly& v) {
        return v.pow(static_cast<uint64_t>(p - 1)) - ctx.U.t;
    };
    for (int64_t m = 0; m < p; ++m)
        for (int64_t n = 0; n < p; ++n) {
            if (m == 0 && n == 0) continue;
            Poly g = R->from_int(1);
            for (int l = 0; l < 3; ++l) g = g * prim(ctx.combo2(m, A(0, l), n, A(1, l)));
            cond_i.push_back(R->normal_form(g));
        }
    log("row primitivity: " + std::to_string(cond_i.size()) + " generators");

    // block ideals I_1, I_2, I_3 on the column pairs
    const std::array<std::pair<int, int>, 3> blocks = {{{0, 1}, {0, 2}, {1, 2}}};
    std::vector<std::vector<Poly>> block_gens;
    for (const auto& [i, j] : blocks) {
        std::vector<Poly> gens;
        for (const auto& tg :
             level_generators(ctx.U, A(0, i), A(0, j), A(1, i), A(1, j), true))
            gens.push_back(tg.gen);
        block_gens.push_back(std::move(gens));
    }
    auto pairwise = [&](const std::vector<Poly>& X, const std::vector<Poly>& Y) {
        std::vector<Poly> prod;
        std::set<std::string> seen;
        for (const auto& f : X)
            for (const auto& g : Y) {
                Poly h = R->normal_form(f * g);
                if (h.is_zero()) continue;
                h = h.monic();
                if (seen.insert(h.str()).second) prod.push_back(std::move(h));
            }
        return prod;
    };
    auto I12 = pairwise(block_gens[0], block_gens[1]);
    auto I13 = pairwise(block_gens[0], block_gens[2]);
    auto I23 = pairwise(block_gens[1], block_gens[2]);
    log("block products: " + std::to_string(I12.size()) + "/" + std::to_string(I13.size()) +
        "/" + std::to_string(I23.size()) + " generators");
    auto J = quot::ideal_intersection_linear(ctx.fq, I12, I13);
    J = quot::ideal_intersection_linear(ctx.fq, J, I23);
    auto Jsmall = quot::shrink_generators(ctx.fq, J);
    log("J = I1I2 cap I1I3 cap I2I3: " + std::to_string(Jsmall.size()) +
        " generators after shrinking");

    // substituted copies of J over the group action
    auto subst_images = [&](const Mat2* g, const Mat3* gp) {
        // left: rows recombine by g^t; right: columns recombine by g'
        std::vector<Poly> tmp(6, Poly::zero(R->poly_ring()));
        for (int i = 0; i < 2; ++i)
            for (int l = 0; l < 3; ++l) {
                Poly v = g ? ctx.combo2((*g)[i], A(0, l), (*g)[2 + i], A(1, l)) : A(i, l);
                tmp[3 * i + l] = v;
            }
        std::vector<Poly> images(6, Poly::zero(R->poly_ring()));
        for (int i = 0; i < 2; ++i)
            for (int l = 0; l < 3; ++l) {
                if (gp) {
                    Poly v = ctx.combo3((*gp)[l], tmp[3 * i + 0], (*gp)[3 + l], tmp[3 * i + 1],
                                        (*gp)[6 + l], tmp[3 * i + 2]);
                    images[3 * i + l] = v;
                } else {
                    images[3 * i + l] = tmp[3 * i + l];
                }
            }
        return images;
    };

    std::set<std::string> set_keys;
    std::set<std::string> pool_keys;
    std::vector<Poly> pool = cond_i;
    for (const auto& g : cond_i) pool_keys.insert(g.str());
    auto add_substituted = [&](const Mat2* g, const Mat3* gp) {
        ++out.substitutions;
        std::vector<Poly> sub;
        std::vector<std::string> strs;
        for (const auto& f : Jsmall) {
            Poly h = R->normal_form(
                poly::substitute(f, R->poly_ring(), subst_images(g, gp)));
            if (h.is_zero()) continue;
            h = h.monic();
            strs.push_back(h.str());
            sub.push_back(std::move(h));
        }
        if (!set_keys.insert(canonical_set_key(strs)).second) return;
        for (size_t i = 0; i < sub.size(); ++i)
            if (pool_keys.insert(strs[i]).second) pool.push_back(sub[i]);
    };

    auto gl3 = all_gl3(p);
    if (full_group_sum) {
        auto gl2 = all_gl2(p);
        for (const auto& g : gl2)
            for (const auto& gp : gl3) add_substituted(&g, &gp);
    } else {
        for (const auto& gp : gl3) add_substituted(nullptr, &gp);
    }
    out.distinct_sets = set_keys.size();
    log("pool: " + std::to_string(pool.size()) + " generators from " +
        std::to_string(out.distinct_sets) + " distinct substituted sets");

    auto rows = quot::ideal_row_space(ctx.fq, pool);
    out.rank = static_cast<int64_t>(ctx.fq.dim()) - static_cast<int64_t>(rows.rank());
    out.gens = pool;
    out.small_gens = quot::shrink_generators(ctx.fq, pool);
    log("rank " + std::to_string(out.rank) + ", expected " + std::to_string(out.expected));

    // invariance of the assembled ideal under the two actions (verified on
    // generating sets of GL_2 and GL_3)
    auto contained_after = [&](const Mat2* g, const Mat3* gp) {
        for (const auto& f : out.small_gens) {
            Poly h = R->normal_form(
                poly::substitute(f, R->poly_ring(), subst_images(g, gp)));
            if (!rows.contains(ctx.fq.to_vector(h))) return false;
        }
        return true;
    };
    std::vector<Mat2> gl2_gens = {{1, 1, 0, 1}, {1, 0, 1, 1}};
    std::vector<Mat3> gl3_gens = {{1, 1, 0, 0, 1, 0, 0, 0, 1},   // transvection
                                  {0, 1, 0, 0, 0, 1, 1, 0, 0},   // 3-cycle
                                  {0, 1, 0, 1, 0, 0, 0, 0, 1}};  // swap
    if (p > 2) {
        gl2_gens.push_back({2, 0, 0, 1});
        gl3_gens.push_back({2, 0, 0, 0, 1, 0, 0, 0, 1});
    }
    out.left_invariant = true;
    for (const auto& g : gl2_gens)
        if (!contained_after(&g, nullptr)) out.left_invariant = false;
    out.right_invariant = true;
    for (const auto& gp : gl3_gens)
        if (!contained_after(nullptr, &gp)) out.right_invariant = false;
    return out;
}

G3Report g3_candidate_rank(int64_t p, bool include_dual, const ProgressFn& progress) {
    if (p != 2 && p != 3) throw Error("g3_candidate_rank: p in {2, 3}");
    auto log = [&](const std::string& s) {
        if (progress) progress(s);
    };
    G3Report rep;
    rep.p = p;
    rep.include_dual = include_dual;
    rep.gl3 = gl3_order(p);
    rep.ambient = 1;
    for (int i = 0; i < 9; ++i) rep.ambient *= p;

    PartialLevel partial = partial_level_ideal(p, false, progress);
    if (!partial.left_invariant || !partial.right_invariant)
        throw Error("g3_candidate_rank: partial ideal is not GL_2 x GL_3 invariant");

    auto F = CoeffRing::fp(p);
    Chart chart = Chart::fiber(p, F, F->one(), F->zero());
    std::vector<std::string> names;
    for (int i = 1; i <= 3; ++i)
        for (int l = 1; l <= 3; ++l)
            names.push_back("a" + std::to_string(i) + std::to_string(l));
    Ctx ctx(ot::universal_hom_ring(chart, names));
    const auto& R = ctx.U.ring;
    auto A = [&](int i, int l) { return ctx.U.points[3 * i + l]; };

    // every 2x3 block of every transform g h g' reduces, by the verified
    // left and right invariances, to one substitution per row space
    auto reps = row_space_reps(p);
    log("row spaces: " + std::to_string(reps.size()));
    std::set<std::string> pool_keys;
    std::vector<Poly> pool;
    size_t step = 0;
    for (const auto& V : reps) {
        for (int transpose = 0; transpose < (include_dual ? 2 : 1); ++transpose) {
            std::vector<Poly> images(6, Poly::zero(R->poly_ring()));
            for (int i = 0; i < 2; ++i)
                for (int l = 0; l < 3; ++l) {
                    auto entry = [&](int j) { return transpose ? A(l, j) : A(j, l); };
                    images[3 * i + l] = ctx.combo3(V[3 * i + 0], entry(0), V[3 * i + 1],
                                                   entry(1), V[3 * i + 2], entry(2));
                }
            for (const auto& f : partial.small_gens) {
                Poly h = R->normal_form(poly::substitute(f, R->poly_ring(), images));
                if (h.is_zero()) continue;
                h = h.monic();
                if (pool_keys.insert(h.str()).second) pool.push_back(std::move(h));
            }
        }
        log("block " + std::to_string(++step) + "/" + std::to_string(reps.size()) +
            ": pool " + std::to_string(pool.size()));
    }
    rep.pool_size = pool.size();
    rep.rank = quot::quotient_dimension_linear(ctx.fq, pool);
    log("rank " + std::to_string(rep.rank));
    return rep;
}

}  // namespace levelforge::ext3
