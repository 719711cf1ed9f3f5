#include "levelforge/level.hpp"

#include <chrono>
#include <future>
#include <sstream>

namespace levelforge::level {

using arith::CoeffRing;
using poly::PolyRing;
using poly::PresentedRing;
using poly::PresentedRingPtr;
using poly::RingMap;

namespace {

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

Poly combine(const UniversalRing& U, const Poly& x, const Poly& y, bool use_dotplus) {
    if (use_dotplus) return ot::dotplus(U, x, y);
    return U.ring->normal_form(x + y);
}

Poly scaled(const UniversalRing& U, int64_t m, const Poly& v) {
    return v.mul_scalar(U.chart.coeff->from_int(m));
}

}  // namespace

std::vector<TaggedGenerator> level_generators(const UniversalRing& U, const Poly& a, const Poly& b,
                                              const Poly& c, const Poly& d, bool use_dotplus) {
    const int64_t p = U.chart.p;
    std::vector<TaggedGenerator> out;
    for (int64_t m = 0; m < p; ++m) {
        for (int64_t n = 0; n < p; ++n) {
            if (m == 0 && n == 0) continue;
            auto prim_pair = [&](const Poly& u, const Poly& v) {
                Poly cu = combine(U, scaled(U, m, u), scaled(U, n, v), use_dotplus);
                return cu.pow(static_cast<uint64_t>(p - 1)) - U.t;
            };
            Poly row = prim_pair(a, b) * prim_pair(c, d);
            Poly col = prim_pair(a, c) * prim_pair(b, d);
            out.push_back({m, n, true, U.ring->normal_form(row)});
            out.push_back({m, n, false, U.ring->normal_form(col)});
        }
    }
    return out;
}

namespace {

LevelIdeal build_level_ideal(const Chart& chart, bool use_dotplus) {
    LevelIdeal L;
    L.uring = ot::universal_hom_ring(chart);
    L.tagged = level_generators(L.uring, L.uring.points[0], L.uring.points[1], L.uring.points[2],
                                L.uring.points[3], use_dotplus);
    std::vector<Poly> gens;
    gens.reserve(L.tagged.size());
    for (const auto& t : L.tagged) gens.push_back(t.gen);
    L.ideal = Ideal(L.uring.ring, std::move(gens));
    return L;
}

}  // namespace

LevelIdeal full_level_ideal(const Chart& chart) { return build_level_ideal(chart, true); }

LevelIdeal full_level_ideal_plain(const Chart& chart) { return build_level_ideal(chart, false); }

int64_t gl2_order(int64_t p) { return (p * p - 1) * (p * p - p); }

int64_t fiber_rank(int64_t p, const CoeffRingPtr& F, const Scalar& s, const Scalar& t,
                   const Budget& budget) {
    Chart chart = Chart::fiber(p, F, s, t);
    LevelIdeal L = full_level_ideal(chart);
    return gro::quotient_dimension(L.ideal, budget).count;
}

FlatnessReport verify_flatness(int64_t p, int64_t q, const Budget& budget, int jobs) {
    if (q != p && q != p * p) throw Error("verify_flatness: q must be p or p^2");
    auto t0 = std::chrono::steady_clock::now();
    FlatnessReport rep;
    rep.p = p;
    rep.q = q;
    rep.expected = gl2_order(p);
    CoeffRingPtr F = q == p ? CoeffRing::fp(p) : CoeffRing::fq(p, 2);

    std::vector<std::pair<Scalar, Scalar>> pts;
    for (const auto& sigma : F->all_elements()) pts.emplace_back(sigma, F->zero());
    for (const auto& tau : F->all_elements())
        if (!F->is_zero(tau)) pts.emplace_back(F->zero(), tau);

    auto run_fiber = [&](size_t i) {
        auto f0 = std::chrono::steady_clock::now();
        FiberRank fr;
        fr.point = "(s,t)=(" + F->str(pts[i].first) + "," + F->str(pts[i].second) + ")";
        fr.rank = fiber_rank(p, F, pts[i].first, pts[i].second, budget);
        fr.ms = ms_since(f0);
        return fr;
    };

    rep.fibers.resize(pts.size());
    if (jobs > 1) {
        std::vector<std::future<FiberRank>> futs;
        for (size_t i = 0; i < pts.size(); ++i)
            futs.push_back(std::async(std::launch::async, run_fiber, i));
        for (size_t i = 0; i < pts.size(); ++i) rep.fibers[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < pts.size(); ++i) rep.fibers[i] = run_fiber(i);
    }

    bool ok = true;
    for (const auto& f : rep.fibers) ok = ok && f.rank == rep.expected;
    if (p == 2) {
        rep.char0_checked = true;
        LevelIdeal L = full_level_ideal(Chart::rational_p2(1, 2));
        rep.char0_rank = gro::quotient_dimension(L.ideal, budget).count;
        ok = ok && rep.char0_rank == rep.expected;
    }
    rep.pass = ok;
    rep.total_ms = ms_since(t0);
    return rep;
}

namespace {

std::vector<std::array<int64_t, 4>> gl2_generators(int64_t p) {
    std::vector<std::array<int64_t, 4>> gens = {{1, 1, 0, 1}, {1, 0, 1, 1}};
    if (p > 2) {
        // smallest primitive root mod p
        for (int64_t r = 2; r < p; ++r) {
            int64_t x = 1;
            bool primitive = true;
            for (int64_t k = 1; k < p - 1; ++k) {
                x = x * r % p;
                if (x == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                gens.push_back({r, 0, 0, 1});
                break;
            }
        }
    }
    return gens;
}

// precomposition by g: the point matrix (rows (a,b) and (c,d)) maps to g^t M
std::vector<Poly> precompose_images(const UniversalRing& U, const std::array<int64_t, 4>& g) {
    const Poly &a = U.points[0], &b = U.points[1], &c = U.points[2], &d = U.points[3];
    auto comb = [&](int64_t m, const Poly& x, int64_t n, const Poly& y) {
        return ot::dotplus(U, scaled(U, m, x), scaled(U, n, y));
    };
    std::vector<Poly> images = {comb(g[0], a, g[2], c), comb(g[0], b, g[2], d),
                                comb(g[1], a, g[3], c), comb(g[1], b, g[3], d)};
    for (int v = 4; v < U.ring->nvars(); ++v) images.push_back(U.ring->var(v));
    return images;
}

}  // namespace

bool gl2_precompose_invariance(const Chart& chart, const Budget& budget) {
    LevelIdeal L = full_level_ideal(chart);
    for (const auto& g : gl2_generators(chart.p)) {
        std::vector<Poly> images = precompose_images(L.uring, g);
        for (const auto& tg : L.tagged) {
            Poly image = poly::substitute(tg.gen, L.uring.ring->poly_ring(), images);
            if (!L.ideal.contains(image, budget)) return false;
        }
    }
    return true;
}

UnitFactorization unit_factorization_check(int64_t p) {
    UnitFactorization result;
    Chart chart = Chart::symbolic_char_p(p);
    auto U = ot::universal_hom_ring(chart, {"a", "b"});
    const Poly &a = U.points[0], &b = U.points[1];
    const auto& R = U.ring;

    // g(x, y) = sum_i x^i y^{p-i} / (i! (p-i)!) in the free ring F_p[x, y]
    auto free2 = PolyRing::make(chart.coeff, {"x", "y"});
    Poly g = Poly::zero(free2);
    for (int64_t i = 1; i < p; ++i) {
        int64_t fi = 1, fpi = 1;
        for (int64_t k = 2; k <= i; ++k) fi = fi * k % p;
        for (int64_t k = 2; k <= p - i; ++k) fpi = fpi * k % p;
        Scalar coef = chart.coeff->from_int(arith::mod_inv(fi * fpi % p, p));
        g = g + (Poly::variable(free2, 0).pow(static_cast<uint64_t>(i)) *
                 Poly::variable(free2, 1).pow(static_cast<uint64_t>(p - i)))
                    .mul_scalar(coef);
    }
    Poly gprime(free2);
    if (p > 2) gprime = gb::exact_divide(g, Poly::variable(free2, 0) + Poly::variable(free2, 1));

    for (int64_t m = 0; m < p; ++m) {
        for (int64_t n = 0; n < p; ++n) {
            if (m == 0 && n == 0) continue;
            Poly ma = scaled(U, m, a), nb = scaled(U, n, b);
            Poly u(R->poly_ring());
            if (p == 2) {
                u = R->from_int(1) + U.s * ma;
            } else {
                Poly gsub = poly::substitute(gprime, R->poly_ring(), {ma, nb});
                u = R->from_int(1) + U.s * gsub;
            }
            if (!R->equal(u.pow(static_cast<uint64_t>(p)), R->from_int(1)))
                result.unit_power_ok = false;
            Poly lhs = ot::dotplus(U, ma, nb).pow(static_cast<uint64_t>(p - 1)) - U.t;
            Poly rhs = u.pow(static_cast<uint64_t>(p - 1)) *
                       (R->normal_form(ma + nb).pow(static_cast<uint64_t>(p - 1)) - U.t);
            if (!R->equal(lhs, rhs)) result.factorization_ok = false;
        }
    }
    return result;
}

bool s_independence_check(int64_t p, const Budget& budget) {
    Chart chart = Chart::symbolic_char_p(p);
    LevelIdeal dot = full_level_ideal(chart);
    LevelIdeal plain = full_level_ideal_plain(chart);
    return gro::ideal_equal(dot.ideal, plain.ideal, budget);
}

namespace {

int64_t quotient_dim_auto(const PresentedRingPtr& R, const std::vector<Poly>& gens,
                          const Budget& budget) {
    if (R->is_finite_dimensional() && R->dimension() > 500 &&
        R->coeff()->kind() == CoeffRing::Kind::prime_field) {
        try {
            quot::FiniteQuotient fq(R);
            return quot::quotient_dimension_linear(fq, gens);
        } catch (const Error&) {
            // fall through to the Groebner route
        }
    }
    return gro::quotient_dimension(Ideal(R, gens), budget).count;
}

}  // namespace

TruncatedResult truncated_level_rank(int64_t p, int l, TruncatedFlavor flavor,
                                     const Budget& budget) {
    if (l < 1 || l > 2) throw Error("truncated_level_rank: l in {1, 2}");
    TruncatedResult res;
    int64_t pl = l == 1 ? p : p * p;
    res.expected = ot::gl2_order_mod(pl);
    auto F = CoeffRing::fp(p);
    const std::vector<std::string> slots = {"a", "b", "c", "d"};

    // level ideal of G[p]^2 in its own model (mu_p as group-likes, or the
    // etale chart for the constant scheme)
    std::vector<std::string> zvars;
    for (const auto& s : slots) zvars.push_back("z" + s);
    std::vector<std::string> zrels;
    for (const auto& v : zvars)
        zrels.push_back(flavor == TruncatedFlavor::multiplicative
                            ? v + "^" + std::to_string(p) + " - 1"
                            : v + "^" + std::to_string(p) + " - " + v);
    auto Zr = PresentedRing::create(F, zvars, zrels);

    auto prim_factor = [&](const Poly& w) {
        // multiplicative: Phi_p(w) = 1 + w + ... + w^{p-1}; etale: w^{p-1} - 1
        if (flavor == TruncatedFlavor::multiplicative) {
            Poly acc = Poly::from_int(Zr->poly_ring(), 1);
            for (int64_t i = 1; i < p; ++i) acc = acc + w.pow(static_cast<uint64_t>(i));
            return acc;
        }
        return w.pow(static_cast<uint64_t>(p - 1)) - Poly::from_int(Zr->poly_ring(), 1);
    };
    auto combo = [&](const Poly& u, int64_t m, const Poly& v, int64_t n) {
        // [m]P .+ [n]Q: coordinates multiply for group-likes, add in the
        // etale chart
        if (flavor == TruncatedFlavor::multiplicative)
            return u.pow(static_cast<uint64_t>(m)) * v.pow(static_cast<uint64_t>(n));
        return u.mul_scalar(F->from_int(m)) + v.mul_scalar(F->from_int(n));
    };

    std::vector<Poly> zgens;
    Poly za = Zr->var(0), zb = Zr->var(1), zc = Zr->var(2), zd = Zr->var(3);
    for (int64_t m = 0; m < p; ++m) {
        for (int64_t n = 0; n < p; ++n) {
            if (m == 0 && n == 0) continue;
            zgens.push_back(Zr->normal_form(prim_factor(combo(za, m, zb, n)) *
                                            prim_factor(combo(zc, m, zd, n))));
            zgens.push_back(Zr->normal_form(prim_factor(combo(za, m, zc, n)) *
                                            prim_factor(combo(zb, m, zd, n))));
        }
    }

    // O(G^4) and the co-map of the quadruple p^{l-1} power map
    PresentedRingPtr G4;
    std::vector<Poly> images;
    if (flavor == TruncatedFlavor::multiplicative) {
        std::vector<std::string> yvars, yrels;
        for (const auto& s : slots) yvars.push_back("y" + s);
        for (const auto& v : yvars) yrels.push_back(v + "^" + std::to_string(pl) + " - 1");
        G4 = PresentedRing::create(F, yvars, yrels);
        int64_t e = l == 1 ? 1 : p;  // p^{l-1}
        for (int i = 0; i < 4; ++i) images.push_back(G4->var(i).pow(static_cast<uint64_t>(e)));
    } else {
        std::vector<std::string> uvars, urels;
        for (const auto& s : slots) {
            uvars.push_back("u" + s);
            if (l == 2) uvars.push_back("v" + s);
        }
        for (const auto& v : uvars) urels.push_back(v + "^" + std::to_string(p) + " - " + v);
        G4 = PresentedRing::create(F, uvars, urels);
        // the digit coordinate u pulls back the Z/p coordinate along [p^{l-1}]
        for (int i = 0; i < 4; ++i) images.push_back(G4->var(l == 2 ? 2 * i : i));
    }
    RingMap pullback(Zr, G4, images);  // WellDefinednessError on a bad map

    std::vector<Poly> gens;
    gens.reserve(zgens.size());
    for (const auto& g : zgens) gens.push_back(pullback.apply(g));
    res.rank = quotient_dim_auto(G4, gens, budget);
    return res;
}

StackReport stack_counterexample(int64_t p, const Budget& budget) {
    StackReport rep;
    rep.p = p;
    rep.q = p * p;
    auto F = CoeffRing::fq(p, 2);
    Chart chart = Chart::fiber(p, F, F->zero(), F->zero());  // alpha_p x alpha_p
    LevelIdeal L = full_level_ideal(chart);
    const auto& R = L.uring.ring;

    auto subst_gens_in_ideal = [&](const std::vector<Poly>& images) {
        for (const auto& tg : L.tagged) {
            Poly image = poly::substitute(tg.gen, R->poly_ring(), images);
            if (!L.ideal.contains(image, budget)) return false;
        }
        return true;
    };
    auto matrix_str = [&](const std::array<Scalar, 4>& g) {
        std::ostringstream os;
        os << "[[" << F->str(g[0]) << "," << F->str(g[1]) << "],[" << F->str(g[2]) << ","
           << F->str(g[3]) << "]]";
        return os.str();
    };
    const Poly &a = L.uring.points[0], &b = L.uring.points[1], &c = L.uring.points[2],
               &d = L.uring.points[3];
    auto right_images = [&](const std::array<Scalar, 4>& g) {
        // (a, b; c, d) * g
        std::vector<Poly> im = {a.mul_scalar(g[0]) + b.mul_scalar(g[2]),
                                a.mul_scalar(g[1]) + b.mul_scalar(g[3]),
                                c.mul_scalar(g[0]) + d.mul_scalar(g[2]),
                                c.mul_scalar(g[1]) + d.mul_scalar(g[3])};
        return im;
    };
    auto left_images = [&](const std::array<Scalar, 4>& g) {
        // g * (a, b; c, d)
        std::vector<Poly> im = {a.mul_scalar(g[0]) + c.mul_scalar(g[1]),
                                b.mul_scalar(g[0]) + d.mul_scalar(g[1]),
                                a.mul_scalar(g[2]) + c.mul_scalar(g[3]),
                                b.mul_scalar(g[2]) + d.mul_scalar(g[3])};
        return im;
    };

    // try the off-diagonal transvection with the field generator first
    std::vector<std::array<Scalar, 4>> candidates;
    candidates.push_back({F->one(), F->generator(), F->zero(), F->one()});
    for (const auto& g11 : F->all_elements())
        for (const auto& g12 : F->all_elements())
            for (const auto& g21 : F->all_elements())
                for (const auto& g22 : F->all_elements()) {
                    Scalar det = F->sub(F->mul(g11, g22), F->mul(g12, g21));
                    if (!F->is_zero(det)) candidates.push_back({g11, g12, g21, g22});
                }

    for (const auto& g : candidates) {
        ++rep.searched;
        if (!subst_gens_in_ideal(right_images(g))) {
            rep.witness_found = true;
            rep.witness = matrix_str(g);
            // confirm with a full reduced-basis comparison
            std::vector<Poly> sgens;
            for (const auto& tg : L.tagged)
                sgens.push_back(poly::substitute(tg.gen, R->poly_ring(), right_images(g)));
            if (gro::ideal_equal(L.ideal, Ideal(R, sgens), budget))
                throw Error("stack_counterexample: containment and basis comparison disagree");
            break;
        }
    }
    for (const auto& g : candidates) {
        if (!subst_gens_in_ideal(left_images(g))) {
            rep.left_witness_found = true;
            rep.left_witness = matrix_str(g);
            break;
        }
    }

    rep.scalars_preserve = true;
    for (const auto& lam : F->all_elements()) {
        if (F->is_zero(lam)) continue;
        std::array<Scalar, 4> g = {lam, F->zero(), F->zero(), lam};
        if (!subst_gens_in_ideal(right_images(g))) rep.scalars_preserve = false;
    }
    rep.precompose_invariant = gl2_precompose_invariance(chart, budget);
    return rep;
}

}  // namespace levelforge::level
