#include "levelforge/ot.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace levelforge::ot {

using arith::CoeffRing;
using arith::teichmuller;
using hopf::HopfAlgebra;
using poly::MonomialOrder;
using poly::PolyRing;
using poly::PresentedRing;

namespace {

int64_t factorial_mod(int64_t n, int64_t m) {
    int64_t r = 1 % m;
    for (int64_t i = 2; i <= n; ++i) r = static_cast<int64_t>((static_cast<unsigned __int128>(r) * i) % m);
    return r;
}

}  // namespace

Chart Chart::symbolic_char_p(int64_t p) {
    Chart c;
    c.p = p;
    c.coeff = CoeffRing::fp(p);
    c.symbolic = true;
    c.wmode = WMode::char_p;
    return c;
}

Chart Chart::fiber(int64_t p, CoeffRingPtr F, Scalar s_val, Scalar t_val) {
    if (F->characteristic() != p) throw Error("fiber chart: coefficient characteristic must be p");
    if (!F->is_zero(F->mul(s_val, t_val)))
        throw Error("fiber chart: s*t must vanish in characteristic p");
    Chart c;
    c.p = p;
    c.coeff = std::move(F);
    c.s = s_val;
    c.t = t_val;
    c.wmode = WMode::char_p;
    return c;
}

Chart Chart::rational_p2(int64_t s_val, int64_t t_val) {
    if (s_val * t_val != 2) throw Error("p = 2 chart over Q needs s*t = w_2 = 2");
    Chart c;
    c.p = 2;
    c.coeff = CoeffRing::rationals();
    c.s = c.coeff->from_int(s_val);
    c.t = c.coeff->from_int(t_val);
    c.wmode = WMode::p2_exact;
    return c;
}

Chart Chart::solved(int64_t p, int N) {
    if (N > 6) throw Error("solved chart: N <= 6");
    Chart c;
    c.p = p;
    c.coeff = CoeffRing::zmod(p, N);
    c.t = c.coeff->one();  // the (u, v) = (1, w_p) model
    c.s = c.coeff->zero();
    c.wmode = WMode::solved;
    c.N = N;
    return c;
}

std::string Chart::describe() const {
    std::ostringstream os;
    if (symbolic) {
        os << "symbolic (s,t), " << coeff->name();
    } else if (wmode == WMode::solved) {
        os << "(u,v)=(1,w_p), " << coeff->name();
    } else {
        os << "(s,t)=(" << coeff->str(s) << "," << coeff->str(t) << "), " << coeff->name();
    }
    return os.str();
}

OTParams ot_params(const Chart& chart) {
    OTParams params;
    params.chart = chart;
    switch (chart.wmode) {
        case WMode::char_p:
            for (int64_t i = 1; i <= chart.p; ++i)
                params.w.push_back(chart.coeff->from_int(factorial_mod(i, chart.p)));
            break;
        case WMode::p2_exact:
            params.w = {chart.coeff->from_int(1), chart.coeff->from_int(2)};
            break;
        case WMode::solved:
            break;  // the solved constants c_i package 1/(1-p) * w_p/(w_i w_{p-i})
    }
    return params;
}

GroupConstants solve_group_constants(int64_t p, int N) {
    if (!arith::is_prime(p)) throw Error("solve_group_constants: p must be prime");
    if (N < 1 || N > 6) throw Error("solve_group_constants: N in [1,6]");
    int64_t pn = 1;
    for (int i = 0; i < N; ++i) pn *= p;
    auto chi = [&](int64_t j) { return teichmuller(((j % p) + p) % p, p, N); };
    const int n = static_cast<int>(p - 1);

    // rows: for each (j,k) in [1,p-1]^2, sum_i c_i chi(j)^i chi(k)^{p-i}
    //       = chi(j+k) - chi(j) - chi(k)
    std::vector<std::vector<int64_t>> rows;
    for (int64_t j = 1; j < p; ++j) {
        for (int64_t k = 1; k < p; ++k) {
            std::vector<int64_t> row(n + 1, 0);
            for (int64_t i = 1; i < p; ++i) {
                int64_t a = arith::mod_pow(chi(j), static_cast<uint64_t>(i), pn);
                int64_t b = arith::mod_pow(chi(k), static_cast<uint64_t>(p - i), pn);
                row[i - 1] = static_cast<int64_t>((static_cast<unsigned __int128>(a) * b) % pn);
            }
            row[n] = ((chi(j + k) - chi(j) - chi(k)) % pn + pn) % pn;
            rows.push_back(std::move(row));
        }
    }

    // Gaussian elimination over Z/p^N with unit pivots
    std::vector<std::vector<int64_t>> work = rows;
    std::vector<int> pivot_row(n, -1);
    int next = 0;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int r = next; r < static_cast<int>(work.size()); ++r)
            if (work[r][col] % p != 0) {
                pr = r;
                break;
            }
        if (pr < 0) throw InconsistentSystem("no unit pivot for c_" + std::to_string(col + 1));
        std::swap(work[pr], work[next]);
        int64_t inv = arith::mod_inv(work[next][col], pn);
        for (auto& v : work[next])
            v = static_cast<int64_t>((static_cast<unsigned __int128>(v) * inv) % pn);
        for (int r = 0; r < static_cast<int>(work.size()); ++r) {
            if (r == next || work[r][col] == 0) continue;
            int64_t f = work[r][col];
            for (int c2 = 0; c2 <= n; ++c2) {
                unsigned __int128 sub = static_cast<unsigned __int128>(f) * work[next][c2] % pn;
                work[r][c2] = static_cast<int64_t>(((work[r][c2] - static_cast<int64_t>(sub)) % pn + pn) % pn);
            }
        }
        pivot_row[col] = next;
        ++next;
    }
    for (int r = next; r < static_cast<int>(work.size()); ++r)
        if (work[r][n] != 0)
            throw InconsistentSystem("the chi-addition system is inconsistent mod p^N");

    std::vector<int64_t> c(n);
    for (int col = 0; col < n; ++col) c[col] = work[pivot_row[col]][n];

    // verify every original equation
    for (const auto& row : rows) {
        unsigned __int128 acc = 0;
        for (int i = 0; i < n; ++i) acc = (acc + static_cast<unsigned __int128>(row[i]) * c[i]) % pn;
        if (static_cast<int64_t>(acc) != row[n])
            throw InconsistentSystem("solved constants fail an equation");
    }
    // symmetry c_i = c_{p-i}
    for (int i = 1; i < p; ++i)
        if (c[i - 1] != c[p - i - 1]) throw InconsistentSystem("constants are not symmetric");
    // w_p lies in p Z_p: c_i = 0 mod p, and for N >= 2 the unit parts match
    // w_p = p w_{p-1}: c_i * i! (p-i)! = -p mod p^2
    for (int i = 1; i < p; ++i) {
        if (c[i - 1] % p != 0) throw InconsistentSystem("c_i not divisible by p");
        if (N >= 2) {
            int64_t p2 = p * p;
            int64_t lhs = static_cast<int64_t>(
                (static_cast<unsigned __int128>(((c[i - 1] % p2) + p2) % p2) *
                 (factorial_mod(i, p2) * factorial_mod(p - i, p2) % p2)) %
                p2);
            if (lhs != ((-p) % p2 + p2) % p2)
                throw InconsistentSystem("c_i * i!(p-i)! != -p mod p^2");
        }
    }

    GroupConstants out;
    out.p = p;
    out.N = N;
    auto zn = CoeffRing::zmod(p, N);
    for (int i = 0; i < n; ++i) out.c.push_back(zn->from_int(c[i]));
    return out;
}

UniversalRing universal_hom_ring(const Chart& chart, const std::vector<std::string>& point_vars) {
    UniversalRing U;
    U.chart = chart;
    std::vector<std::string> vars = point_vars;
    int nb = 0;
    if (chart.symbolic) {
        vars.push_back("s");
        vars.push_back("t");
        nb = 2;
    }
    auto pring = PolyRing::make(chart.coeff, vars);
    std::vector<Poly> rels;
    const int np = static_cast<int>(point_vars.size());
    Poly t_elem = chart.symbolic ? Poly::variable(pring, np + 1)
                                 : Poly::constant(pring, chart.t);
    Poly s_elem = chart.symbolic ? Poly::variable(pring, np)
                                 : Poly::constant(pring, chart.s);
    if (chart.symbolic) rels.push_back(s_elem * t_elem);
    for (int v = 0; v < np; ++v) {
        Poly x = Poly::variable(pring, v);
        rels.push_back(x.pow(static_cast<uint64_t>(chart.p)) - t_elem * x);
    }
    U.ring = PresentedRing::make(pring, std::move(rels), nb);
    for (int v = 0; v < np; ++v) U.points.push_back(U.ring->var(v));
    U.s = s_elem;
    U.t = t_elem;
    return U;
}

namespace {

// fold the law's middle sum: sum_i coef_i * s * f^i g^{p-i}
Poly law_tail(const Chart& chart, const PresentedRingPtr& R, const Poly& s_elem, const Poly& f,
              const Poly& g) {
    const int64_t p = chart.p;
    Poly acc = Poly::zero(R->poly_ring());
    switch (chart.wmode) {
        case WMode::char_p: {
            for (int64_t i = 1; i < p; ++i) {
                int64_t denom = factorial_mod(i, p) * factorial_mod(p - i, p) % p;
                Scalar coef = chart.coeff->from_int(arith::mod_inv(denom, p));
                acc = acc + (s_elem * f.pow(static_cast<uint64_t>(i)) *
                             g.pow(static_cast<uint64_t>(p - i)))
                                .mul_scalar(coef);
            }
            break;
        }
        case WMode::p2_exact:
            // 1/(1-2) * s f g / (w_1 w_1) = -s f g
            acc = -(s_elem * f * g);
            break;
        case WMode::solved: {
            GroupConstants gc = solve_group_constants(chart.p, chart.N);
            for (int64_t i = 1; i < p; ++i)
                acc = acc + (f.pow(static_cast<uint64_t>(i)) * g.pow(static_cast<uint64_t>(p - i)))
                                .mul_scalar(gc.c[static_cast<size_t>(i - 1)]);
            break;
        }
    }
    return acc;
}

}  // namespace

Poly dotplus(const UniversalRing& U, const Poly& f, const Poly& g) {
    const auto& R = U.ring;
    for (const Poly* h : {&f, &g}) {
        if (!R->equal(h->pow(static_cast<uint64_t>(U.chart.p)), U.t * (*h)))
            throw PointConditionError("dotplus: argument " + h->str() +
                                      " does not satisfy f^p = t f");
    }
    return R->normal_form(f + g + law_tail(U.chart, R, U.s, f, g));
}

Poly scale_point(const UniversalRing& U, int64_t m, const Poly& f) {
    if (m < 0) throw Error("scale_point: m must be nonnegative");
    Poly acc = Poly::zero(U.ring->poly_ring());
    for (int64_t i = 0; i < m; ++i) acc = dotplus(U, acc, f);
    return acc;
}

HopfPtr ot_group(const Chart& chart, const std::string& var) {
    std::vector<std::string> vars = {var};
    int nb = 0;
    if (chart.symbolic) {
        vars.push_back("s");
        vars.push_back("t");
        nb = 2;
    }
    auto pring = PolyRing::make(chart.coeff, vars);
    Poly x = Poly::variable(pring, 0);
    Poly t_elem = chart.symbolic ? Poly::variable(pring, 2) : Poly::constant(pring, chart.t);
    Poly s_elem = chart.symbolic ? Poly::variable(pring, 1) : Poly::constant(pring, chart.s);
    std::vector<Poly> rels;
    if (chart.symbolic) rels.push_back(s_elem * t_elem);
    rels.push_back(x.pow(static_cast<uint64_t>(chart.p)) - t_elem * x);
    auto R = PresentedRing::make(pring, std::move(rels), nb);

    auto T = poly::tensor_power(R, 2);
    Poly xp = T.ring->var(0), xq = T.ring->var(1);
    Poly s_sq = chart.symbolic ? T.ring->var(2) : Poly::constant(T.ring->poly_ring(), chart.s);
    Poly dx = xp + xq + law_tail(chart, T.ring, s_sq, xp, xq);

    auto base = R->base_ring();
    Poly eps = Poly::zero(base->poly_ring());

    std::ostringstream nm;
    nm << "OT(p=" << chart.p << ", " << chart.describe() << ")";
    return HopfAlgebra::create(R, {dx}, {eps}, nm.str());
}

bool verify_scalar_identity(const Chart& chart, int64_t m) {
    auto U = universal_hom_ring(chart);
    const Poly& a = U.points[0];
    Poly lhs = scale_point(U, m, a);
    Scalar chi_m;
    switch (chart.wmode) {
        case WMode::char_p:
        case WMode::p2_exact:
            chi_m = chart.coeff->from_int(m % chart.p);
            break;
        case WMode::solved:
            chi_m = Scalar(teichmuller(((m % chart.p) + chart.p) % chart.p, chart.p, chart.N));
            break;
    }
    return U.ring->equal(lhs, a.mul_scalar(chi_m));
}

ConstantIso constant_iso(int64_t p, int N) {
    ConstantIso iso;
    Chart chart = Chart::solved(p, N);
    iso.torsor = ot_group(chart, "x");
    const auto& R1 = iso.torsor->ring();
    auto zn = chart.coeff;
    auto chi = [&](int64_t j) { return zn->from_int(teichmuller(j % p, p, N)); };

    // idempotent presentation of the function ring on Z/p
    std::vector<std::string> evars;
    for (int64_t i = 0; i < p; ++i) evars.push_back("e" + std::to_string(i));
    auto ering = PolyRing::make(zn, evars);
    std::vector<Poly> erels;
    for (int64_t i = 0; i < p; ++i)
        for (int64_t j = i + 1; j < p; ++j)
            erels.push_back(Poly::variable(ering, i) * Poly::variable(ering, j));
    for (int64_t i = 0; i < p; ++i) {
        Poly e = Poly::variable(ering, i);
        erels.push_back(e * e - e);
    }
    Poly unit_sum = Poly::zero(ering);
    for (int64_t i = 0; i < p; ++i) unit_sum = unit_sum + Poly::variable(ering, i);
    erels.push_back(unit_sum - Poly::from_int(ering, 1));
    auto R2 = PresentedRing::make(ering, std::move(erels), 0);

    auto T2 = poly::tensor_power(R2, 2);
    std::vector<Poly> comult;
    for (int64_t i = 0; i < p; ++i) {
        Poly di = Poly::zero(T2.ring->poly_ring());
        for (int64_t j = 0; j < p; ++j) {
            int64_t k = ((i - j) % p + p) % p;
            di = di + T2.ring->var(j) * T2.ring->var(p + k);
        }
        comult.push_back(di);
    }
    auto ebase = R2->base_ring();
    std::vector<Poly> counit;
    for (int64_t i = 0; i < p; ++i) counit.push_back(Poly::from_int(ebase->poly_ring(), i == 0 ? 1 : 0));
    iso.functions = HopfAlgebra::create(R2, std::move(comult), std::move(counit),
                                        "Z/p functions (p=" + std::to_string(p) + ")");

    // x -> sum chi(i) e_i
    Poly fwd_img = Poly::zero(ering);
    for (int64_t i = 0; i < p; ++i) fwd_img = fwd_img + Poly::variable(ering, i).mul_scalar(chi(i));
    try {
        iso.fwd = RingMap(R1, R2, {R2->normal_form(fwd_img)});
    } catch (const WellDefinednessError& e) {
        throw VerificationFailed("x-image is not a ring map: " + std::string(e.what()), "x");
    }

    // e_i -> lambda(i) prod_{j != i} (x - chi(j)), lambda(0) = -1, else 1/(p-1)
    std::vector<Poly> bwd_imgs;
    Scalar lam_other = zn->div(zn->one(), zn->from_int(p - 1));
    for (int64_t i = 0; i < p; ++i) {
        Poly prod = Poly::from_int(R1->poly_ring(), 1);
        for (int64_t j = 0; j < p; ++j) {
            if (j == i) continue;
            prod = prod * (R1->var(0) - Poly::constant(R1->poly_ring(), chi(j)));
        }
        Scalar lam = i == 0 ? zn->neg(zn->one()) : lam_other;
        bwd_imgs.push_back(R1->normal_form(prod.mul_scalar(lam)));
    }
    try {
        iso.bwd = RingMap(R2, R1, std::move(bwd_imgs));
    } catch (const WellDefinednessError& e) {
        throw VerificationFailed("e_i-image is not a ring map: " + std::string(e.what()),
                                 e.relation);
    }

    // round trips on generators
    iso.round_trip = true;
    if (!(iso.bwd.apply(iso.fwd.apply(R1->var(0))) == R1->normal_form(R1->var(0))))
        iso.round_trip = false;
    for (int64_t i = 0; i < p && iso.round_trip; ++i)
        if (!(iso.fwd.apply(iso.bwd.apply(R2->var(i))) == R2->normal_form(R2->var(i))))
            iso.round_trip = false;

    // comultiplication intertwined: (fwd (x) fwd) o D_1 = D_2 o fwd
    const auto& S1 = iso.torsor->square();
    const auto& S2 = iso.functions->square();
    std::vector<Poly> lift_imgs;
    lift_imgs.push_back(iso.functions->square_inclusions()[0].apply(iso.fwd.images()[0]));
    lift_imgs.push_back(iso.functions->square_inclusions()[1].apply(iso.fwd.images()[0]));
    RingMap lift(S1, S2, std::move(lift_imgs), false);
    Poly lhs = lift.apply(iso.torsor->comult().images()[0]);
    Poly rhs = iso.functions->comult().apply(iso.fwd.images()[0].converted_to(R2->poly_ring()));
    iso.comult_ok = (lhs == rhs);

    // counit compatibility on the generator
    Poly ce1 = iso.torsor->counit().images()[0];
    Poly ce2 = iso.functions->counit().apply(iso.fwd.images()[0].converted_to(R2->poly_ring()));
    iso.counit_ok = (ce1.converted_to(ce2.ring()) == ce2);
    return iso;
}

int64_t gl2_order_mod(int64_t m) {
    int64_t count = 0;
    for (int64_t a = 0; a < m; ++a)
        for (int64_t b = 0; b < m; ++b)
            for (int64_t c = 0; c < m; ++c)
                for (int64_t d = 0; d < m; ++d) {
                    int64_t det = ((a * d - b * c) % m + m) % m;
                    if (std::gcd(det, m) == 1) ++count;
                }
    return count;
}

}  // namespace levelforge::ot
