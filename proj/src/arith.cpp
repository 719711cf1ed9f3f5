#include "levelforge/arith.hpp"

#include <algorithm>
#include <sstream>

namespace levelforge::arith {

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int64_t mod_pow(int64_t b, uint64_t e, int64_t m) {
    b %= m;
    if (b < 0) b += m;
    unsigned __int128 acc = 1, base = static_cast<unsigned __int128>(b);
    while (e) {
        if (e & 1) acc = acc * base % static_cast<unsigned __int128>(m);
        base = base * base % static_cast<unsigned __int128>(m);
        e >>= 1;
    }
    return static_cast<int64_t>(acc);
}

int64_t mod_inv(int64_t a, int64_t m) {
    int64_t r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw Error("mod_inv: element not invertible");
    return ((s0 % m) + m) % m;
}

int64_t teichmuller(int64_t j, int64_t p, int N) {
    if (!is_prime(p)) throw Error("teichmuller: p must be prime");
    if (j < 0 || j >= p) throw Error("teichmuller: j must lie in [0, p)");
    if (N < 1) throw Error("teichmuller: N must be >= 1");
    int64_t pn = 1;
    for (int i = 0; i < N; ++i) pn *= p;
    // w <- w^p stabilizes after at most N iterations
    int64_t w = j % pn;
    for (int i = 0; i < N; ++i) {
        int64_t next = mod_pow(w, static_cast<uint64_t>(p), pn);
        if (next == w) break;
        w = next;
    }
    return w;
}

namespace {

int64_t checked_pow(int64_t p, int k) {
    int64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > kMaxFieldSize) throw Error("coefficient ring size exceeds the 2^20 cap");
        r *= p;
    }
    return r;
}

// ---- dense F_p[x] helpers for the extension-field layer ----

using FpPoly = std::vector<int64_t>;  // coefficients low to high, may have high zeros

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(c);
    return c;
}

// a mod m, m monic
FpPoly fp_rem(FpPoly a, const FpPoly& m, int64_t p) {
    fp_trim(a);
    while (a.size() >= m.size()) {
        int64_t c = a.back();
        size_t shift = a.size() - m.size();
        if (c != 0)
            for (size_t i = 0; i < m.size(); ++i)
                a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
        a.pop_back();
        fp_trim(a);
        if (a.size() < m.size()) break;
    }
    return a;
}

FpPoly fp_powmod(FpPoly a, int64_t e, const FpPoly& m, int64_t p) {
    FpPoly r{1};
    a = fp_rem(std::move(a), m, p);
    while (e) {
        if (e & 1) r = fp_rem(fp_mul(r, a, p), m, p);
        a = fp_rem(fp_mul(a, a, p), m, p);
        e >>= 1;
    }
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, int64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // make b monic before using it as a divisor
        int64_t lead_inv = mod_inv(b.back(), p);
        for (auto& c : b) c = c * lead_inv % p;
        a = fp_rem(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

bool fp_irreducible(const FpPoly& f, int64_t p) {
    int k = static_cast<int>(f.size()) - 1;
    if (k <= 0) return false;
    if (k == 1) return true;
    if (k <= 3) {
        // reducible of degree <= 3 has a root
        for (int64_t r = 0; r < p; ++r) {
            int64_t v = 0;
            for (int i = k; i >= 0; --i) v = (v * r + f[i]) % p;
            if (v == 0) return false;
        }
        return true;
    }
    // no irreducible factor of degree d <= k/2: gcd(x^{p^d} - x, f) = 1
    FpPoly x{0, 1};
    FpPoly xp = x;
    for (int d = 1; d <= k / 2; ++d) {
        xp = fp_powmod(xp, p, f, p);  // x^{p^d} mod f
        FpPoly diff = xp;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        fp_trim(diff);
        FpPoly g = fp_gcd(diff, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

FpPoly least_irreducible(int64_t p, int k) {
    int64_t count = checked_pow(p, k);
    for (int64_t m = 0; m < count; ++m) {
        FpPoly f(k + 1, 0);
        int64_t v = m;
        for (int i = 0; i < k; ++i) {
            f[i] = v % p;
            v /= p;
        }
        f[k] = 1;
        if (fp_irreducible(f, p)) return f;
    }
    throw Error("no irreducible polynomial found");  // unreachable for k >= 1
}

}  // namespace

std::shared_ptr<const CoeffRing> CoeffRing::fp(int64_t p) {
    if (!is_prime(p) || p > kMaxPrime) throw Error("F_p requires a prime p <= 97");
    auto r = std::shared_ptr<CoeffRing>(new CoeffRing());
    r->kind_ = Kind::prime_field;
    r->p_ = p;
    r->k_ = 1;
    r->modn_ = p;
    return r;
}

std::shared_ptr<const CoeffRing> CoeffRing::fq(int64_t p, int k) {
    if (!is_prime(p) || p > kMaxPrime) throw Error("F_{p^k} requires a prime p <= 97");
    if (k < 1) throw Error("extension degree must be >= 1");
    if (k == 1) return fp(p);
    auto r = std::shared_ptr<CoeffRing>(new CoeffRing());
    r->kind_ = Kind::ext_field;
    r->p_ = p;
    r->k_ = k;
    r->modn_ = checked_pow(p, k);
    r->modulus_ = least_irreducible(p, k);
    return r;
}

std::shared_ptr<const CoeffRing> CoeffRing::zmod(int64_t p, int N) {
    if (!is_prime(p) || p > kMaxPrime) throw Error("Z/p^N requires a prime p <= 97");
    if (N < 1) throw Error("precision must be >= 1");
    auto r = std::shared_ptr<CoeffRing>(new CoeffRing());
    r->kind_ = Kind::padic_ring;
    r->p_ = p;
    r->N_ = N;
    r->modn_ = 1;
    for (int i = 0; i < N; ++i) {
        if (r->modn_ > (int64_t(1) << 45)) throw Error("p^N too large");
        r->modn_ *= p;
    }
    return r;
}

std::shared_ptr<const CoeffRing> CoeffRing::rationals() {
    static std::shared_ptr<const CoeffRing> q = [] {
        auto r = std::shared_ptr<CoeffRing>(new CoeffRing());
        r->kind_ = Kind::rationals;
        return std::shared_ptr<const CoeffRing>(r);
    }();
    return q;
}

int64_t CoeffRing::characteristic() const {
    switch (kind_) {
        case Kind::prime_field:
        case Kind::ext_field: return p_;
        case Kind::padic_ring: return modn_;
        case Kind::rationals: return 0;
    }
    return 0;
}

bool CoeffRing::is_field() const {
    switch (kind_) {
        case Kind::prime_field:
        case Kind::ext_field:
        case Kind::rationals: return true;
        case Kind::padic_ring: return N_ == 1;
    }
    return false;
}

int64_t CoeffRing::size() const {
    if (kind_ == Kind::rationals) throw Error("Q is not finite");
    return modn_;
}

Scalar CoeffRing::zero() const {
    switch (kind_) {
        case Kind::ext_field: return Scalar(std::vector<int64_t>(k_, 0));
        case Kind::rationals: return Scalar(Rational(0));
        default: return Scalar(int64_t{0});
    }
}

Scalar CoeffRing::one() const { return from_int(1); }

Scalar CoeffRing::from_int(int64_t n) const {
    switch (kind_) {
        case Kind::prime_field:
        case Kind::padic_ring: {
            int64_t r = n % modn_;
            if (r < 0) r += modn_;
            return Scalar(r);
        }
        case Kind::ext_field: {
            std::vector<int64_t> c(k_, 0);
            c[0] = ((n % p_) + p_) % p_;
            return Scalar(std::move(c));
        }
        case Kind::rationals: return Scalar(Rational(n));
    }
    return zero();
}

Scalar CoeffRing::from_rational(const Rational& q) const {
    if (kind_ != Kind::rationals) throw Error("from_rational: not the rational ring");
    return Scalar(q);
}

Scalar CoeffRing::generator() const {
    if (kind_ == Kind::prime_field) return from_int(1);
    if (kind_ != Kind::ext_field) throw Error("generator: not an extension field");
    std::vector<int64_t> c(k_, 0);
    c[1] = 1;
    return Scalar(std::move(c));
}

Scalar CoeffRing::add(const Scalar& a, const Scalar& b) const {
    switch (kind_) {
        case Kind::prime_field:
        case Kind::padic_ring: {
            int64_t r = a.residue() + b.residue();
            if (r >= modn_) r -= modn_;
            return Scalar(r);
        }
        case Kind::ext_field: {
            std::vector<int64_t> c(k_);
            for (int i = 0; i < k_; ++i) {
                c[i] = a.coeffs()[i] + b.coeffs()[i];
                if (c[i] >= p_) c[i] -= p_;
            }
            return Scalar(std::move(c));
        }
        case Kind::rationals: return Scalar(a.rational() + b.rational());
    }
    return zero();
}

Scalar CoeffRing::neg(const Scalar& a) const {
    switch (kind_) {
        case Kind::prime_field:
        case Kind::padic_ring: {
            int64_t r = a.residue();
            return Scalar(r == 0 ? 0 : modn_ - r);
        }
        case Kind::ext_field: {
            std::vector<int64_t> c(k_);
            for (int i = 0; i < k_; ++i) c[i] = a.coeffs()[i] == 0 ? 0 : p_ - a.coeffs()[i];
            return Scalar(std::move(c));
        }
        case Kind::rationals: return Scalar(-a.rational());
    }
    return zero();
}

Scalar CoeffRing::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar CoeffRing::mul(const Scalar& a, const Scalar& b) const {
    switch (kind_) {
        case Kind::prime_field:
        case Kind::padic_ring: {
            unsigned __int128 r = static_cast<unsigned __int128>(a.residue()) * b.residue();
            return Scalar(static_cast<int64_t>(r % static_cast<unsigned __int128>(modn_)));
        }
        case Kind::ext_field: {
            FpPoly prod = fp_mul(a.coeffs(), b.coeffs(), p_);
            prod = fp_rem(std::move(prod), modulus_, p_);
            prod.resize(k_, 0);
            return Scalar(std::move(prod));
        }
        case Kind::rationals: return Scalar(a.rational() * b.rational());
    }
    return zero();
}

Scalar CoeffRing::pow(const Scalar& a, uint64_t e) const {
    Scalar acc = one(), base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::optional<Scalar> CoeffRing::inv(const Scalar& a) const {
    if (is_zero(a)) return std::nullopt;
    switch (kind_) {
        case Kind::prime_field: return Scalar(mod_inv(a.residue(), modn_));
        case Kind::padic_ring: {
            if (a.residue() % p_ == 0) return std::nullopt;
            return Scalar(mod_inv(a.residue(), modn_));
        }
        case Kind::ext_field: {
            // extended Euclid in F_p[x] against the modulus
            FpPoly r0 = modulus_, r1 = a.coeffs(), s0{}, s1{1};
            fp_trim(r1);
            while (!r1.empty()) {
                int64_t lead_inv = mod_inv(r1.back(), p_);
                FpPoly r1m = r1;
                for (auto& c : r1m) c = c * lead_inv % p_;
                // quotient of r0 by monic r1m
                FpPoly rem = r0, quot(std::max<size_t>(r0.size(), 1), 0);
                fp_trim(rem);
                while (rem.size() >= r1m.size() && !rem.empty()) {
                    int64_t c = rem.back();
                    size_t shift = rem.size() - r1m.size();
                    quot[shift] = (quot[shift] + c) % p_;
                    for (size_t i = 0; i < r1m.size(); ++i)
                        rem[shift + i] = ((rem[shift + i] - c * r1m[i]) % p_ + p_) % p_;
                    fp_trim(rem);
                }
                // undo the monic scaling: r0 = q * r1 + rem with q = quot * lead_inv
                for (auto& c : quot) c = c * lead_inv % p_;
                fp_trim(quot);
                FpPoly snew = s0;
                FpPoly qs = fp_mul(quot, s1, p_);
                snew.resize(std::max(snew.size(), qs.size()), 0);
                for (size_t i = 0; i < qs.size(); ++i)
                    snew[i] = ((snew[i] - qs[i]) % p_ + p_) % p_;
                fp_trim(snew);
                r0 = r1;
                r1 = rem;
                s0 = s1;
                s1 = snew;
            }
            if (r0.size() != 1) return std::nullopt;  // gcd not constant (cannot happen: modulus irreducible)
            int64_t lead_inv = mod_inv(r0[0], p_);
            for (auto& c : s0) c = c * lead_inv % p_;
            s0.resize(k_, 0);
            return Scalar(std::move(s0));
        }
        case Kind::rationals: return Scalar(Rational(1) / a.rational());
    }
    return std::nullopt;
}

Scalar CoeffRing::div(const Scalar& a, const Scalar& b) const {
    auto bi = inv(b);
    if (!bi) throw Error("division by a non-unit");
    return mul(a, *bi);
}

bool CoeffRing::is_zero(const Scalar& a) const {
    switch (kind_) {
        case Kind::prime_field:
        case Kind::padic_ring: return a.residue() == 0;
        case Kind::ext_field:
            return std::all_of(a.coeffs().begin(), a.coeffs().end(), [](int64_t c) { return c == 0; });
        case Kind::rationals: return a.rational() == 0;
    }
    return false;
}

bool CoeffRing::is_one(const Scalar& a) const { return a == one(); }

bool CoeffRing::is_unit(const Scalar& a) const {
    if (kind_ == Kind::padic_ring) return a.residue() % p_ != 0;
    return !is_zero(a);
}

std::vector<Scalar> CoeffRing::all_elements() const {
    std::vector<Scalar> out;
    switch (kind_) {
        case Kind::prime_field:
        case Kind::padic_ring:
            for (int64_t r = 0; r < modn_; ++r) out.push_back(Scalar(r));
            break;
        case Kind::ext_field:
            for (int64_t m = 0; m < modn_; ++m) {
                std::vector<int64_t> c(k_);
                int64_t v = m;
                for (int i = 0; i < k_; ++i) {
                    c[i] = v % p_;
                    v /= p_;
                }
                out.push_back(Scalar(std::move(c)));
            }
            break;
        case Kind::rationals: throw Error("Q is not finite");
    }
    return out;
}

std::string CoeffRing::str(const Scalar& a) const {
    switch (kind_) {
        case Kind::prime_field:
        case Kind::padic_ring: return std::to_string(a.residue());
        case Kind::rationals: {
            std::ostringstream os;
            os << a.rational();
            return os.str();
        }
        case Kind::ext_field: {
            std::ostringstream os;
            bool first = true;
            for (int i = k_ - 1; i >= 0; --i) {
                int64_t c = a.coeffs()[i];
                if (c == 0) continue;
                if (!first) os << "+";
                if (i == 0) {
                    os << c;
                } else {
                    if (c != 1) os << c << "*";
                    os << "g";
                    if (i > 1) os << "^" << i;
                }
                first = false;
            }
            if (first) os << "0";
            return os.str();
        }
    }
    return "?";
}

bool CoeffRing::same(const CoeffRing& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && k_ == o.k_ && N_ == o.N_;
}

std::string CoeffRing::name() const {
    switch (kind_) {
        case Kind::prime_field: return "F_" + std::to_string(p_);
        case Kind::ext_field: return "F_" + std::to_string(modn_);
        case Kind::padic_ring: return "Z/" + std::to_string(p_) + "^" + std::to_string(N_);
        case Kind::rationals: return "Q";
    }
    return "?";
}

Scalar teichmuller_scalar(int64_t j, const CoeffRingPtr& zpn) {
    if (zpn->kind() != CoeffRing::Kind::padic_ring && zpn->kind() != CoeffRing::Kind::prime_field)
        throw Error("teichmuller_scalar: ring must be Z/p^N");
    return Scalar(teichmuller(j, zpn->p(), zpn->precision()));
}

}  // namespace levelforge::arith
