/**
 * @file ot.hpp
 * @brief Oort-Tate rank-p group schemes on the (s,t)-chart: the closed-form
 *        group law, the universal homomorphism ring, the chi-identities and
 *        solved group constants, and the constant-scheme isomorphism.
 */
#ifndef LEVELFORGE_OT_HPP
#define LEVELFORGE_OT_HPP

#include "levelforge/hopf.hpp"

namespace levelforge::ot {

using arith::CoeffRingPtr;
using arith::Scalar;
using gro::Budget;
using hopf::HopfPtr;
using poly::Poly;
using poly::PresentedRingPtr;
using poly::RingMap;

enum class WMode { char_p, p2_exact, solved };

/// An (s, t) specification: symbolic over F_p[s,t]/(st), a concrete fiber in
/// characteristic p, the exact p = 2 chart over Q (w = (1, 2)), or the
/// (u, v) = (1, w_p) model over Z/p^N with solved constants.
struct Chart {
    int64_t p = 2;
    CoeffRingPtr coeff;
    bool symbolic = false;
    Scalar s, t;  // fiber values when not symbolic
    WMode wmode = WMode::char_p;
    int N = 1;

    static Chart symbolic_char_p(int64_t p);
    static Chart fiber(int64_t p, CoeffRingPtr F, Scalar s_val, Scalar t_val);
    static Chart rational_p2(int64_t s_val, int64_t t_val);  // s*t must be 2
    static Chart solved(int64_t p, int N);                   // t = 1, s = w_p via constants

    std::string describe() const;
};

/// w-constants wrapper: w_i = i! in characteristic p; (1, 2) for the exact
/// p = 2 chart; for the solved chart the packaged constants c_i stand in.
struct OTParams {
    Chart chart;
    std::vector<Scalar> w;  // empty in solved mode
};

OTParams ot_params(const Chart& chart);

/// c_1..c_{p-1} with chi(j+k) = chi(j) + chi(k) + sum_i c_i chi(j)^i chi(k)^{p-i}
/// mod p^N, solved as a linear system over Z/p^N.
struct GroupConstants {
    int64_t p = 0;
    int N = 0;
    std::vector<Scalar> c;  // index i-1 holds c_i, elements of Z/p^N
};

GroupConstants solve_group_constants(int64_t p, int N);

/// The universal homomorphism ring over a chart: point variables with
/// relations v^p = t*v (plus the base s*t = 0 when symbolic).
struct UniversalRing {
    Chart chart;
    PresentedRingPtr ring;
    std::vector<Poly> points;  // the universal point coordinates
    Poly s, t;                 // chart parameters as ring elements
};

UniversalRing universal_hom_ring(const Chart& chart,
                                 const std::vector<std::string>& point_vars = {"a", "b", "c",
                                                                               "d"});

/// Closed-form group law f dot+ g = f + g + (1/(1-p)) sum_i s f^i g^{p-i} / (w_i w_{p-i});
/// both arguments must satisfy the point condition f^p = t f.
Poly dotplus(const UniversalRing& U, const Poly& f, const Poly& g);

/// [m] f by iterated dot-plus (m >= 0).
Poly scale_point(const UniversalRing& U, int64_t m, const Poly& f);

/// The Hopf algebra F[x]/(x^p - t x) with the Oort-Tate comultiplication.
HopfPtr ot_group(const Chart& chart, const std::string& var = "x");

/// [m] a = chi(m) a on the universal point (chi(m) = m in characteristic p).
bool verify_scalar_identity(const Chart& chart, int64_t m);

/// The §3-example isomorphism between Z/p^N[x]/(x^p - x) and the function
/// ring (Z/p^N)^{Z/p}: x maps to sum chi(i) e_i, e_i maps to
/// lambda(i) prod_{j != i} (x - chi(j)).
struct ConstantIso {
    HopfPtr torsor;    // Z/p^N[x]/(x^p - x) with the solved comultiplication
    HopfPtr functions; // idempotent presentation of (Z/p^N)^{Z/p}
    RingMap fwd;       // torsor -> functions
    RingMap bwd;       // functions -> torsor
    bool round_trip = false;
    bool comult_ok = false;
    bool counit_ok = false;
    bool verified() const { return round_trip && comult_ok && counit_ok; }
};

ConstantIso constant_iso(int64_t p, int N);

/// Sanity count: |GL_2(Z/m)| by enumeration.
int64_t gl2_order_mod(int64_t m);

}  // namespace levelforge::ot

#endif
