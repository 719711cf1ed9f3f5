#include "levelforge/km.hpp"

#include <map>
#include <set>

#include "levelforge/quotient_space.hpp"

namespace levelforge::km {

using arith::CoeffRing;
using arith::Scalar;
using poly::Monomial;
using poly::PolyRing;
using poly::PresentedRing;
using poly::Term;

namespace {

// express f in the given basis of the quotient (solved by elimination so
// that non-monomial bases work too)
std::vector<Scalar> coords_on_basis(const PresentedRingPtr& R, const std::vector<Poly>& basis,
                                    const Poly& f) {
    const auto& k = R->coeff();
    const auto& mons = R->standard_monomials();
    auto mono_index = [&](const Monomial& m) {
        for (size_t i = 0; i < mons.size(); ++i)
            if (mons[i] == m) return i;
        throw Error("coords_on_basis: not a standard monomial");
    };
    const size_t n = mons.size();
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n + 1, k->zero()));
    for (size_t j = 0; j < n; ++j) {
        Poly bj = R->normal_form(basis[j]);
        for (const auto& t : bj.terms()) m[mono_index(t.m)][j] = t.c;
    }
    {
        Poly fn = R->normal_form(f);
        for (const auto& t : fn.terms()) m[mono_index(t.m)][n] = t.c;
    }
    std::vector<int> pivot_col(n, -1);
    size_t rank = 0;
    for (size_t c = 0; c < n && rank < n; ++c) {
        size_t pr = n;
        for (size_t r = rank; r < n; ++r)
            if (!k->is_zero(m[r][c])) {
                pr = r;
                break;
            }
        if (pr == n) continue;
        std::swap(m[rank], m[pr]);
        auto inv = k->inv(m[rank][c]);
        for (size_t c2 = 0; c2 <= n; ++c2) m[rank][c2] = k->mul(m[rank][c2], *inv);
        for (size_t r = 0; r < n; ++r) {
            if (r == rank || k->is_zero(m[r][c])) continue;
            Scalar f2 = m[r][c];
            for (size_t c2 = 0; c2 <= n; ++c2)
                m[r][c2] = k->sub(m[r][c2], k->mul(f2, m[rank][c2]));
        }
        pivot_col[rank] = static_cast<int>(c);
        ++rank;
    }
    if (rank != n) throw Error("coords_on_basis: the given family is not a basis");
    std::vector<Scalar> x(n, k->zero());
    for (size_t r = 0; r < n; ++r) x[pivot_col[r]] = m[r][n];
    return x;
}

// determinant by column-subset dynamic programming, expanding row by row;
// when `reduce` is given every accumulated minor is normal-formed against it
Poly poly_det(const PolyRingPtr& ring, const std::vector<std::vector<Poly>>& M,
              const PresentedRing* reduce = nullptr) {
    const size_t n = M.size();
    std::map<uint32_t, Poly> minors;
    minors[0] = Poly::from_int(ring, 1);
    for (size_t k = 0; k < n; ++k) {
        std::map<uint32_t, Poly> next;
        for (const auto& [mask, det] : minors) {
            if (det.is_zero()) continue;
            int pos = 0;
            for (size_t j = 0; j < n; ++j) {
                if (mask & (1u << j)) {
                    ++pos;
                    continue;
                }
                // expand along row k; sign (-1)^{k + idx} with idx the
                // position of j among the chosen columns
                Poly contrib = M[k][j] * det;
                if ((k + pos) % 2) contrib = -contrib;
                uint32_t nm = mask | (1u << j);
                auto it = next.find(nm);
                if (it == next.end())
                    next.emplace(nm, std::move(contrib));
                else
                    it->second = it->second + contrib;
                if (reduce) next[nm] = reduce->normal_form(next[nm]);
            }
        }
        minors = std::move(next);
    }
    uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
    return minors.at(full);
}

}  // namespace

NormForm norm_form_ring(const PresentedRingPtr& R, std::vector<Poly> basis) {
    NormForm nf;
    if (R->num_base_vars() != 0) throw Error("norm_form: fiber algebras only");
    if (!R->is_finite_dimensional()) throw Error("norm_form: O_H must be finite free");
    if (basis.empty()) {
        for (const auto& m : R->standard_monomials())
            basis.push_back(Poly::monomial(R->poly_ring(), m, R->coeff()->one()));
    }
    const size_t n = basis.size();
    if (static_cast<int64_t>(n) != R->dimension()) throw Error("norm_form: basis size mismatch");
    nf.basis = basis;

    std::vector<std::string> uvars;
    for (size_t j = 1; j <= n; ++j) uvars.push_back("u" + std::to_string(j));
    nf.u_ring = PolyRing::make(R->coeff(), uvars);

    // mult matrix: f * e_i = sum_j M[i][j] e_j with M[i][j] linear in u
    std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n, Poly::zero(nf.u_ring)));
    for (size_t l = 0; l < n; ++l) {
        for (size_t i = 0; i < n; ++i) {
            auto coords = coords_on_basis(R, basis, basis[l] * basis[i]);
            for (size_t j = 0; j < n; ++j) {
                if (R->coeff()->is_zero(coords[j])) continue;
                M[i][j] = M[i][j] +
                          Poly::variable(nf.u_ring, static_cast<int>(l)).mul_scalar(coords[j]);
            }
        }
    }
    nf.norm = poly_det(nf.u_ring, M);

    // N(1) = 1 at the coordinates of 1
    auto one_coords = coords_on_basis(R, basis, R->from_int(1));
    std::vector<Poly> images;
    for (size_t j = 0; j < n; ++j) images.push_back(Poly::constant(nf.u_ring, one_coords[j]));
    if (!(poly::substitute(nf.norm, nf.u_ring, images) == Poly::from_int(nf.u_ring, 1)))
        throw Error("norm_form: N(1) != 1");
    return nf;
}

NormForm norm_form(const HopfPtr& H, std::vector<Poly> basis) {
    NormForm nf = norm_form_ring(H->ring(), std::move(basis));
    nf.host = H;
    return nf;
}

namespace {

// group the terms of D by their u-part; each u-monomial coefficient is a
// generator in U
std::vector<Poly> coefficient_generators(const PresentedRingPtr& U, const Poly& D, int n_u) {
    const int nu_start = U->nvars();
    std::map<std::string, std::vector<Term>> groups;
    for (const auto& t : D.terms()) {
        Monomial umono = Monomial::unit(n_u);
        Monomial rest = Monomial::unit(U->nvars());
        for (int v = 0; v < U->nvars(); ++v) {
            rest.e[v] = t.m.e[v];
            rest.deg += t.m.e[v];
        }
        for (int v = 0; v < n_u; ++v) umono.e[v] = t.m.e[nu_start + v];
        std::string key(reinterpret_cast<const char*>(umono.e.data()),
                        sizeof(uint16_t) * static_cast<size_t>(n_u));
        groups[key].push_back({rest, t.c});
    }
    std::vector<Poly> gens;
    std::set<std::string> seen;
    for (auto& [key, terms] : groups) {
        Poly g = U->normal_form(Poly::from_terms(U->poly_ring(), std::move(terms)));
        if (g.is_zero()) continue;
        g = g.monic();
        if (seen.insert(g.str()).second) gens.push_back(std::move(g));
    }
    return gens;
}

}  // namespace

KMIdeal km_ideal_for_points(const HopfPtr& H, const PresentedRingPtr& U,
                            const std::vector<GroupPoint>& points, std::vector<Poly> basis,
                            bool force_symbolic) {
    NormForm nf = norm_form(H, std::move(basis));
    const size_t n = nf.basis.size();
    if (points.size() != n)
        throw Error("km_ideal: point count " + std::to_string(points.size()) +
                    " does not match rank " + std::to_string(n) + " of O_H");

    // extended ring U[u_1..u_n]
    std::vector<std::string> vars = U->vars();
    for (size_t j = 1; j <= n; ++j) vars.push_back("u" + std::to_string(j));
    auto ext_poly = PolyRing::make(U->coeff(), vars);
    auto lift_U = [&](const Poly& f) {
        std::vector<Term> ts;
        for (const auto& t : f.terms()) {
            Monomial m = Monomial::unit(static_cast<int>(vars.size()));
            for (int v = 0; v < U->nvars(); ++v) m.e[v] = t.m.e[v];
            m.deg = t.m.deg;
            ts.push_back({m, t.c});
        }
        return Poly::from_terms(ext_poly, std::move(ts));
    };
    auto lift_u = [&](const Poly& f) {
        std::vector<Term> ts;
        for (const auto& t : f.terms()) {
            Monomial m = Monomial::unit(static_cast<int>(vars.size()));
            for (size_t v = 0; v < n; ++v) {
                m.e[U->nvars() + v] = t.m.e[v];
                m.deg += t.m.e[v];
            }
            ts.push_back({m, t.c});
        }
        return Poly::from_terms(ext_poly, std::move(ts));
    };
    std::vector<Poly> ext_rels;
    for (const auto& r : U->relations()) ext_rels.push_back(lift_U(r));
    auto Ext = PresentedRing::make(ext_poly, std::move(ext_rels), 0);

    // dense route over small prime-field quotients: represent the product as
    // a map u-monomial -> dense algebra element
    if (!force_symbolic && U->coeff()->kind() == CoeffRing::Kind::prime_field) {
        try {
            quot::FiniteQuotient fq(U);
            if (fq.dim() <= 4096) {
                const size_t dim = fq.dim();
                const int64_t p = fq.p();
                // basis multiplication table
                std::vector<std::pair<uint32_t, uint8_t>> table(dim * dim);
                for (size_t i = 0; i < dim; ++i)
                    for (size_t j = 0; j < dim; ++j) {
                        auto [k2, c2] = fq.mul_basis(i, j);
                        table[i * dim + j] = {static_cast<uint32_t>(k2), c2};
                    }
                auto dense_mul = [&](const std::vector<uint8_t>& a,
                                     const std::vector<uint8_t>& b) {
                    std::vector<uint8_t> out(dim, 0);
                    for (size_t i = 0; i < dim; ++i) {
                        if (a[i] == 0) continue;
                        const auto* row = table.data() + i * dim;
                        for (size_t j = 0; j < dim; ++j) {
                            if (b[j] == 0) continue;
                            const auto& [k2, c2] = row[j];
                            if (c2 == 0) continue;
                            out[k2] = static_cast<uint8_t>((out[k2] + a[i] * b[j] % p * c2) % p);
                        }
                    }
                    return out;
                };
                std::vector<std::vector<std::vector<uint8_t>>> evals;
                for (const auto& P : points) {
                    std::vector<std::vector<uint8_t>> row;
                    for (size_t j = 0; j < n; ++j)
                        row.push_back(fq.to_vector(
                            poly::substitute(nf.basis[j], U->poly_ring(), P.coords)));
                    evals.push_back(std::move(row));
                }
                std::map<std::vector<uint8_t>, std::vector<uint8_t>> cur;
                std::vector<uint8_t> unit(dim, 0);
                unit[0] = 1;
                cur.emplace(std::vector<uint8_t>(n, 0), std::move(unit));
                for (size_t x = 0; x < points.size(); ++x) {
                    std::map<std::vector<uint8_t>, std::vector<uint8_t>> next;
                    for (const auto& [key, vec] : cur) {
                        for (size_t j = 0; j < n; ++j) {
                            if (std::all_of(evals[x][j].begin(), evals[x][j].end(),
                                            [](uint8_t v) { return v == 0; }))
                                continue;
                            auto prod = dense_mul(vec, evals[x][j]);
                            std::vector<uint8_t> nk = key;
                            ++nk[j];
                            auto it = next.find(nk);
                            if (it == next.end()) {
                                next.emplace(std::move(nk), std::move(prod));
                            } else {
                                for (size_t i = 0; i < dim; ++i)
                                    it->second[i] = static_cast<uint8_t>(
                                        (it->second[i] + prod[i]) % p);
                            }
                        }
                    }
                    cur = std::move(next);
                }
                // subtract the norm: constants in U at the unit basis index
                for (const auto& t : nf.norm.terms()) {
                    std::vector<uint8_t> key(n, 0);
                    uint32_t deg = 0;
                    for (size_t v = 0; v < n; ++v) {
                        key[v] = static_cast<uint8_t>(t.m.e[v]);
                        deg += t.m.e[v];
                    }
                    if (deg != n) throw Error("km_ideal: norm not homogeneous");
                    auto it = cur.find(key);
                    if (it == cur.end())
                        it = cur.emplace(std::move(key), std::vector<uint8_t>(dim, 0)).first;
                    int64_t c2 = t.c.residue();
                    it->second[0] =
                        static_cast<uint8_t>(((it->second[0] - c2) % p + p) % p);
                }
                KMIdeal out;
                std::set<std::string> seen;
                std::vector<Poly> gens;
                for (const auto& [key, vec] : cur) {
                    Poly g = fq.to_poly(vec);
                    if (g.is_zero()) continue;
                    ++out.raw_generators;
                    g = g.monic();
                    if (seen.insert(g.str()).second) gens.push_back(std::move(g));
                }
                out.ideal = Ideal(U, std::move(gens));
                return out;
            }
        } catch (const Error&) {
            // structure unsuitable; fall through to the symbolic route
        }
    }

    // product over all points of f(h(x)) = sum_j u_j e_j(h(x))
    Poly Q = Poly::from_int(ext_poly, 1);
    for (const auto& P : points) {
        Poly factor = Poly::zero(ext_poly);
        for (size_t j = 0; j < n; ++j) {
            Poly ev = U->normal_form(poly::substitute(nf.basis[j], U->poly_ring(), P.coords));
            factor = factor +
                     lift_U(ev) * Poly::variable(ext_poly, U->nvars() + static_cast<int>(j));
        }
        Q = Ext->normal_form(Q * factor);
    }
    Poly D = Ext->normal_form(Q - lift_u(nf.norm));

    // degree bookkeeping: both sides are homogeneous of degree n in u
    for (const auto& t : D.terms()) {
        uint32_t udeg = 0;
        for (size_t v = 0; v < n; ++v) udeg += t.m.e[U->nvars() + v];
        if (udeg != n) throw Error("km_ideal: difference not homogeneous in u");
    }

    KMIdeal out;
    auto gens = coefficient_generators(U, D, static_cast<int>(n));
    out.raw_generators = gens.size();
    out.ideal = Ideal(U, std::move(gens));
    return out;
}

KMIdeal km_ideal(const HopfPtr& H, int g) {
    const auto& R = H->ring();
    int64_t n = R->dimension();
    // O_H must be free of rank p^g over the fiber
    int64_t p = 0;
    if (R->coeff()->kind() == CoeffRing::Kind::rationals) {
        for (int64_t q = 2; q <= n; ++q) {
            if (!arith::is_prime(q)) continue;
            int64_t qg = 1;
            for (int i = 0; i < g; ++i) qg *= q;
            if (qg == n) {
                p = q;
                break;
            }
        }
    } else {
        p = R->coeff()->p();
        int64_t pg = 1;
        for (int i = 0; i < g; ++i) pg *= p;
        if (pg != n) p = 0;
    }
    if (p == 0) throw Error("km_ideal: rank of O_H is not p^g");

    auto T = poly::tensor_power(R, g);
    auto U = T.ring;
    std::vector<GroupPoint> gens_pts;
    for (int i = 0; i < g; ++i)
        gens_pts.push_back(hopf::make_point(H, U, T.inclusions[i].images()));

    std::vector<GroupPoint> points;
    int64_t total = 1;
    for (int i = 0; i < g; ++i) total *= p;
    for (int64_t mask = 0; mask < total; ++mask) {
        int64_t m = mask;
        GroupPoint acc = hopf::identity_point(H, U, {});
        for (int i = 0; i < g; ++i) {
            int64_t digit = m % p;
            m /= p;
            if (digit > 0) acc = hopf::point_add(acc, hopf::point_scale(digit, gens_pts[i]));
        }
        points.push_back(std::move(acc));
    }
    return km_ideal_for_points(H, U, points);
}

KmdResult kmd_rank_alpha2(const Budget& budget) {
    auto F2 = CoeffRing::fp(2);
    auto chart = ot::Chart::fiber(2, F2, F2->zero(), F2->zero());
    auto G = ot::ot_group(chart);
    auto H = hopf::tensor_power_hopf(G, 2, "alpha_2^2");
    auto T = poly::tensor_power(H->ring(), 2);
    auto U = T.ring;

    auto combos = [&](const GroupPoint& P1, const GroupPoint& P2) {
        std::vector<GroupPoint> pts;
        for (int64_t x2 = 0; x2 < 2; ++x2)
            for (int64_t x1 = 0; x1 < 2; ++x1) {
                GroupPoint acc = hopf::identity_point(H, U, {});
                if (x1) acc = hopf::point_add(acc, P1);
                if (x2) acc = hopf::point_add(acc, P2);
                pts.push_back(std::move(acc));
            }
        return pts;
    };

    GroupPoint P1 = hopf::make_point(H, U, T.inclusions[0].images());
    GroupPoint P2 = hopf::make_point(H, U, T.inclusions[1].images());
    KMIdeal direct = km_ideal_for_points(H, U, combos(P1, P2));

    // naive reading: the transposed matrix as another (Z/2)^2 -> alpha_2^2
    GroupPoint P1t = hopf::make_point(H, U, {U->var(0), U->var(2)});
    GroupPoint P2t = hopf::make_point(H, U, {U->var(1), U->var(3)});
    KMIdeal transposed = km_ideal_for_points(H, U, combos(P1t, P2t));

    // Cartier dual: h^D : alpha_2^2 -> mu_2^2 with z_l pulling back to
    // prod_i (1 + x_i M_{l i}) through the self-pairing <x, y> = 1 + x y.
    // Its x-hom condition is N_{O(alpha^2) (x) U}(pullback f) = N_{O(mu^2)}(f).
    std::vector<std::string> wvars = {"x1", "x2"};
    for (const auto& v : U->vars()) wvars.push_back(v);
    for (int j = 1; j <= 4; ++j) wvars.push_back("u" + std::to_string(j));
    auto wpoly = PolyRing::make(F2, wvars);
    std::vector<Poly> wrels;
    for (int v = 0; v < 2 + U->nvars(); ++v) {
        Poly x = Poly::variable(wpoly, v);
        wrels.push_back(x * x);
    }
    auto W = PresentedRing::make(wpoly, std::move(wrels), 0);
    Poly x1 = W->var(0), x2 = W->var(1);
    Poly a = W->var(2), b = W->var(3), c = W->var(4), d = W->var(5);
    Poly one = W->from_int(1);
    Poly pb1 = W->normal_form((one + x1 * a) * (one + x2 * b));
    Poly pb2 = W->normal_form((one + x1 * c) * (one + x2 * d));
    std::vector<Poly> pullbacks = {one, pb1, pb2, W->normal_form(pb1 * pb2)};
    Poly Fgen = Poly::zero(wpoly);
    for (int j = 0; j < 4; ++j)
        Fgen = Fgen + pullbacks[j] * Poly::variable(wpoly, 2 + U->nvars() + j);
    Fgen = W->normal_form(Fgen);

    // multiplication matrix of Fgen over the x-basis {1, x1, x2, x1 x2}
    std::vector<std::pair<uint16_t, uint16_t>> xbasis = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    auto split_x = [&](const Poly& f) {
        // coefficients of f on the x-basis, as x-free polynomials
        std::vector<Poly> out(4, Poly::zero(wpoly));
        std::vector<std::vector<Term>> buckets(4);
        for (const auto& t : f.terms()) {
            int idx = -1;
            for (int i = 0; i < 4; ++i)
                if (t.m.e[0] == xbasis[i].first && t.m.e[1] == xbasis[i].second) idx = i;
            Monomial m = t.m;
            m.deg -= m.e[0] + m.e[1];
            m.e[0] = m.e[1] = 0;
            buckets[idx].push_back({m, t.c});
        }
        for (int i = 0; i < 4; ++i) out[i] = Poly::from_terms(wpoly, std::move(buckets[i]));
        return out;
    };
    std::vector<std::vector<Poly>> M(4, std::vector<Poly>(4, Poly::zero(wpoly)));
    for (int i = 0; i < 4; ++i) {
        Poly basis_elt = one;
        if (xbasis[i].first) basis_elt = basis_elt * x1;
        if (xbasis[i].second) basis_elt = basis_elt * x2;
        auto coords = split_x(W->normal_form(Fgen * basis_elt));
        for (int j = 0; j < 4; ++j) M[i][j] = coords[j];
    }
    Poly detA = poly_det(wpoly, M, W.get());

    // norm over O(mu_2^2) = F_2[z1,z2]/(z_i^2 - 1), lifted into W's u-slots
    auto mu2sq = PresentedRing::create(F2, {"z1", "z2"}, {"z1^2 - 1", "z2^2 - 1"});
    NormForm nb = norm_form_ring(mu2sq);
    std::vector<Term> lifted;
    for (const auto& t : nb.norm.terms()) {
        Monomial m = Monomial::unit(W->nvars());
        for (int v = 0; v < 4; ++v) {
            m.e[2 + U->nvars() + v] = t.m.e[v];
            m.deg += t.m.e[v];
        }
        lifted.push_back({m, t.c});
    }
    Poly D = W->normal_form(detA - Poly::from_terms(wpoly, lifted));

    // D is x-free; extract u-coefficients as generators in U
    std::vector<Poly> dual_gens;
    {
        std::map<std::string, std::vector<Term>> groups;
        for (const auto& t : D.terms()) {
            if (t.m.e[0] != 0 || t.m.e[1] != 0) throw Error("kmd: norm not x-free");
            Monomial umono = Monomial::unit(4);
            Monomial rest = Monomial::unit(U->nvars());
            for (int v = 0; v < U->nvars(); ++v) {
                rest.e[v] = t.m.e[2 + v];
                rest.deg += t.m.e[2 + v];
            }
            for (int v = 0; v < 4; ++v) umono.e[v] = t.m.e[2 + U->nvars() + v];
            std::string key(reinterpret_cast<const char*>(umono.e.data()), sizeof(uint16_t) * 4);
            groups[key].push_back({rest, t.c});
        }
        std::set<std::string> seen;
        for (auto& [key, terms] : groups) {
            Poly g = U->normal_form(Poly::from_terms(U->poly_ring(), std::move(terms)));
            if (g.is_zero()) continue;
            if (seen.insert(g.str()).second) dual_gens.push_back(std::move(g));
        }
    }

    KmdResult res;
    res.km_only_rank = gro::quotient_dimension(direct.ideal, budget).count;
    res.rank_transpose =
        gro::quotient_dimension(gro::ideal_sum(direct.ideal, transposed.ideal), budget).count;
    Ideal kmd = gro::ideal_sum(direct.ideal, Ideal(U, dual_gens));
    res.rank = gro::quotient_dimension(kmd, budget).count;
    return res;
}

std::vector<KmFiberReport> km_vs_primitive(int64_t p, const Budget& budget) {
    auto F = CoeffRing::fp(p);
    std::vector<std::tuple<std::string, Scalar, Scalar>> fibers = {
        {"mu_p^2 (s,t)=(1,0)", F->one(), F->zero()},
        {"alpha_p^2 (s,t)=(0,0)", F->zero(), F->zero()},
        {"etale (s,t)=(0,1)", F->zero(), F->one()},
    };
    std::vector<KmFiberReport> out;
    for (const auto& [label, s, t] : fibers) {
        KmFiberReport rep;
        rep.fiber = label;
        auto G = ot::ot_group(ot::Chart::fiber(p, F, s, t));
        auto H = hopf::tensor_power_hopf(G, 2);
        KMIdeal ki = km_ideal(H, 2);
        rep.km_rank = gro::quotient_dimension(ki.ideal, budget).count;
        rep.primitive_rank = level::fiber_rank(p, F, s, t, budget);
        rep.km_matches_expected = rep.km_rank == level::gl2_order(p);
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace levelforge::km
