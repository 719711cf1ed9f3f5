#include "levelforge/hopf.hpp"

#include <algorithm>

namespace levelforge::hopf {

using poly::Monomial;
using poly::substitute;
using poly::Term;

namespace {

// rename a base-ring polynomial into the full ring (base vars sit last)
Poly base_to_ring(const Poly& f, const PresentedRingPtr& R) {
    const int nf = R->nvars() - R->num_base_vars();
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
        Monomial m = Monomial::unit(R->nvars());
        for (int b = 0; b < R->num_base_vars(); ++b) {
            m.e[nf + b] = t.m.e[b];
            m.deg += t.m.e[b];
        }
        ts.push_back({m, t.c});
    }
    return Poly::from_terms(R->poly_ring(), std::move(ts));
}

}  // namespace

HopfPtr HopfAlgebra::create(PresentedRingPtr ring, std::vector<Poly> comult_images,
                            std::vector<Poly> counit_images, std::string name) {
    auto H = std::shared_ptr<HopfAlgebra>(new HopfAlgebra());
    H->ring_ = std::move(ring);
    H->name_ = std::move(name);
    const auto& R = H->ring_;
    const int nb = R->num_base_vars();
    const int nf = R->nvars() - nb;
    if (static_cast<int>(comult_images.size()) != nf ||
        static_cast<int>(counit_images.size()) != nf)
        throw Error("hopf_create: one comultiplication and counit image per module variable");

    H->base_ = R->base_ring();
    H->square_ = poly::tensor_power(R, 2);
    const auto& S = H->square_.ring;

    // comultiplication ring -> square (images may come from the caller's own
    // tensor-square instance; rebase them onto ours)
    std::vector<Poly> dm;
    for (int v = 0; v < nf; ++v) dm.push_back(comult_images[v].converted_to(S->poly_ring()));
    for (int b = 0; b < nb; ++b) dm.push_back(S->var(2 * nf + b));
    try {
        H->comult_ = RingMap(R, S, std::move(dm));
    } catch (const WellDefinednessError& e) {
        throw HopfAxiomError("comultiplication is not a ring map: " + std::string(e.what()),
                             "comultiplication", e.relation);
    }

    // counit ring -> base
    std::vector<Poly> em;
    for (int v = 0; v < nf; ++v)
        em.push_back(counit_images[v].converted_to(H->base_->poly_ring()));
    for (int b = 0; b < nb; ++b) em.push_back(H->base_->var(b));
    try {
        H->counit_ = RingMap(R, H->base_, std::move(em));
    } catch (const WellDefinednessError& e) {
        throw HopfAxiomError("counit is not a ring map: " + std::string(e.what()), "counit",
                             e.relation);
    }

    // coassociativity on generators: (D (x) id) o D = (id (x) D) o D
    auto T3 = poly::tensor_power(R, 3);
    auto slot_var = [&](int slot, int v) { return T3.ring->var(slot * nf + v); };
    auto reroute = [&](int si, int sj) {
        std::vector<Poly> imgs;
        for (int v = 0; v < nf; ++v) imgs.push_back(slot_var(si, v));
        for (int v = 0; v < nf; ++v) imgs.push_back(slot_var(sj, v));
        for (int b = 0; b < nb; ++b) imgs.push_back(T3.ring->var(3 * nf + b));
        return RingMap(S, T3.ring, std::move(imgs), false);
    };
    RingMap route01 = reroute(0, 1), route12 = reroute(1, 2);
    std::vector<Poly> dxi_imgs, ixd_imgs;
    for (int v = 0; v < nf; ++v) dxi_imgs.push_back(route01.apply(H->comult_.images()[v]));
    for (int v = 0; v < nf; ++v) dxi_imgs.push_back(slot_var(2, v));
    for (int b = 0; b < nb; ++b) dxi_imgs.push_back(T3.ring->var(3 * nf + b));
    RingMap dxi(S, T3.ring, std::move(dxi_imgs), false);
    for (int v = 0; v < nf; ++v) ixd_imgs.push_back(slot_var(0, v));
    for (int v = 0; v < nf; ++v) ixd_imgs.push_back(route12.apply(H->comult_.images()[v]));
    for (int b = 0; b < nb; ++b) ixd_imgs.push_back(T3.ring->var(3 * nf + b));
    RingMap ixd(S, T3.ring, std::move(ixd_imgs), false);
    for (int v = 0; v < nf; ++v) {
        Poly dv = H->comult_.images()[v];
        if (!(dxi.apply(dv) == ixd.apply(dv)))
            throw HopfAxiomError("coassociativity fails on generator " + R->vars()[v],
                                 "coassociativity", R->vars()[v]);
    }

    // counit axioms: (eps (x) id) o D = id = (id (x) eps) o D
    auto counit_slot = [&](bool eps_first) {
        std::vector<Poly> imgs;
        for (int v = 0; v < nf; ++v) {
            Poly ev = base_to_ring(H->counit_.images()[v], R);
            imgs.push_back(eps_first ? ev : R->var(v));
        }
        for (int v = 0; v < nf; ++v) {
            Poly ev = base_to_ring(H->counit_.images()[v], R);
            imgs.push_back(eps_first ? R->var(v) : ev);
        }
        for (int b = 0; b < nb; ++b) imgs.push_back(R->var(nf + b));
        return RingMap(S, R, std::move(imgs), false);
    };
    RingMap eps_left = counit_slot(true), eps_right = counit_slot(false);
    for (int v = 0; v < nf; ++v) {
        Poly dv = H->comult_.images()[v];
        if (!(eps_left.apply(dv) == R->normal_form(R->var(v))))
            throw HopfAxiomError("left counit axiom fails on generator " + R->vars()[v], "counit",
                                 R->vars()[v]);
        if (!(eps_right.apply(dv) == R->normal_form(R->var(v))))
            throw HopfAxiomError("right counit axiom fails on generator " + R->vars()[v], "counit",
                                 R->vars()[v]);
    }
    return H;
}

Poly HopfAlgebra::counit_in_ring(int v) const { return base_to_ring(counit_.images()[v], ring_); }

GroupPoint make_point(HopfPtr host, PresentedRingPtr target, std::vector<Poly> coords,
                      bool verify) {
    // the RingMap constructor performs the relation check
    RingMap check(host->ring(), target, coords, verify);
    return GroupPoint{std::move(host), std::move(target), check.images()};
}

GroupPoint identity_point(const HopfPtr& host, const PresentedRingPtr& target,
                          const std::vector<Poly>& base_coords) {
    const auto& R = host->ring();
    const int nb = R->num_base_vars();
    const int nf = R->nvars() - nb;
    if (static_cast<int>(base_coords.size()) != nb)
        throw Error("identity_point: one coordinate per base variable");
    std::vector<Poly> coords;
    for (int v = 0; v < nf; ++v)
        coords.push_back(substitute(host->counit().images()[v], target->poly_ring(), base_coords));
    for (int b = 0; b < nb; ++b) coords.push_back(base_coords[b]);
    return make_point(host, target, std::move(coords));
}

GroupPoint point_add(const GroupPoint& P, const GroupPoint& Q) {
    if (P.host.get() != Q.host.get()) throw Error("point_add: host mismatch");
    if (!P.target->same(*Q.target)) throw Error("point_add: target mismatch");
    const auto& R = P.host->ring();
    const int nb = R->num_base_vars();
    const int nf = R->nvars() - nb;
    for (int b = 0; b < nb; ++b)
        if (!P.target->equal(P.coords[nf + b], Q.coords[nf + b]))
            throw Error("point_add: points disagree on the base coordinates");
    std::vector<Poly> sq_images;  // square vars: copy0, copy1, base
    for (int v = 0; v < nf; ++v) sq_images.push_back(P.coords[v]);
    for (int v = 0; v < nf; ++v) sq_images.push_back(Q.coords[v]);
    for (int b = 0; b < nb; ++b) sq_images.push_back(P.coords[nf + b]);
    std::vector<Poly> coords;
    for (int v = 0; v < nf; ++v) {
        Poly img = substitute(P.host->comult().images()[v], P.target->poly_ring(), sq_images);
        coords.push_back(P.target->normal_form(img));
    }
    for (int b = 0; b < nb; ++b) coords.push_back(P.coords[nf + b]);
    return make_point(P.host, P.target, std::move(coords));
}

GroupPoint point_scale(int64_t m, const GroupPoint& P) {
    if (m < 0) throw Error("point_scale: m must be nonnegative");
    const auto& R = P.host->ring();
    const int nb = R->num_base_vars();
    const int nf = R->nvars() - nb;
    std::vector<Poly> base_coords(P.coords.begin() + nf, P.coords.end());
    GroupPoint acc = identity_point(P.host, P.target, base_coords);
    for (int64_t i = 0; i < m; ++i) acc = point_add(acc, P);
    return acc;
}

bool points_equal(const GroupPoint& P, const GroupPoint& Q) {
    if (P.host.get() != Q.host.get() || !P.target->same(*Q.target)) return false;
    for (size_t i = 0; i < P.coords.size(); ++i)
        if (!P.target->equal(P.coords[i], Q.coords[i])) return false;
    return true;
}

Ideal augmentation_ideal(const HopfPtr& H) {
    const auto& R = H->ring();
    const int nf = H->num_module_vars();
    std::vector<Poly> gens;
    for (int v = 0; v < nf; ++v) gens.push_back(R->var(v) - H->counit_in_ring(v));
    return Ideal(R, std::move(gens));
}

Ideal primitive_ideal(const HopfPtr& H, const Budget& budget) {
    return gro::annihilator(H->ring(), augmentation_ideal(H), budget);
}

HopfPtr tensor_power_hopf(const HopfPtr& H, int n, const std::string& name) {
    if (n == 1) return H;
    const auto& R = H->ring();
    const int nb = R->num_base_vars();
    const int nf = R->nvars() - nb;
    auto P = poly::tensor_power(R, n);
    auto PS = poly::tensor_power(P.ring, 2);
    const auto& S = H->square();
    // route H's comultiplication into the square of the power ring, factor i
    std::vector<Poly> comult_images, counit_images;
    for (int i = 0; i < n; ++i) {
        std::vector<Poly> imgs;
        for (int v = 0; v < nf; ++v) imgs.push_back(PS.ring->var(i * nf + v));
        for (int v = 0; v < nf; ++v) imgs.push_back(PS.ring->var(n * nf + i * nf + v));
        for (int b = 0; b < nb; ++b) imgs.push_back(PS.ring->var(2 * n * nf + b));
        RingMap route(S, PS.ring, std::move(imgs), false);
        for (int v = 0; v < nf; ++v) {
            comult_images.push_back(route.apply(H->comult().images()[v]));
            counit_images.push_back(H->counit().images()[v]);
        }
    }
    return HopfAlgebra::create(P.ring, std::move(comult_images), std::move(counit_images),
                               name.empty() ? H->name() + "^" + std::to_string(n) : name);
}

}  // namespace levelforge::hopf
