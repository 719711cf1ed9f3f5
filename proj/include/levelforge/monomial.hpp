#ifndef LEVELFORGE_MONOMIAL_HPP
#define LEVELFORGE_MONOMIAL_HPP

#include <array>
#include <cstdint>
#include <string>

#include "levelforge/errors.hpp"

namespace levelforge::poly {

/// Exponent vector with a cached total degree.  Rings here never need more
/// than a handful of variables, so a fixed-size array keeps monomials cheap
/// to copy and compare.
struct Monomial {
    static constexpr int kMaxVars = 16;

    std::array<uint16_t, kMaxVars> e{};
    uint8_t n = 0;       // number of variables in the ambient ring
    uint32_t deg = 0;    // total degree

    static Monomial unit(int nvars) {
        if (nvars < 0 || nvars > kMaxVars) throw Error("too many variables (max 16)");
        Monomial m;
        m.n = static_cast<uint8_t>(nvars);
        return m;
    }

    static Monomial var(int nvars, int i, uint16_t exp = 1) {
        Monomial m = unit(nvars);
        m.e[i] = exp;
        m.deg = exp;
        return m;
    }

    bool is_unit() const { return deg == 0; }

    bool operator==(const Monomial& o) const {
        if (n != o.n || deg != o.deg) return false;
        for (int i = 0; i < n; ++i)
            if (e[i] != o.e[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (int i = 0; i < n; ++i) r.e[i] = static_cast<uint16_t>(r.e[i] + o.e[i]);
        r.deg += o.deg;
        return r;
    }

    bool divides(const Monomial& o) const {
        if (deg > o.deg) return false;
        for (int i = 0; i < n; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    /// o / this, assuming divisibility.
    Monomial quotient_into(const Monomial& o) const {
        Monomial r = o;
        for (int i = 0; i < n; ++i) r.e[i] = static_cast<uint16_t>(r.e[i] - e[i]);
        r.deg -= deg;
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r = *this;
        r.deg = 0;
        for (int i = 0; i < n; ++i) {
            r.e[i] = std::max(e[i], o.e[i]);
            r.deg += r.e[i];
        }
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (int i = 0; i < n; ++i)
            if (e[i] != 0 && o.e[i] != 0) return false;
        return true;
    }
};

/// Monomial orders: degrevlex, lex, and a block elimination order whose
/// leading block is the first `elim` variables (compared by degrevlex),
/// ties broken by degrevlex on the rest.
struct MonomialOrder {
    enum class Kind { degrevlex, lex, block };
    Kind kind = Kind::degrevlex;
    int elim = 0;

    static MonomialOrder degrevlex() { return {Kind::degrevlex, 0}; }
    static MonomialOrder lex() { return {Kind::lex, 0}; }
    static MonomialOrder block(int elim_vars) { return {Kind::block, elim_vars}; }

    bool operator==(const MonomialOrder& o) const { return kind == o.kind && elim == o.elim; }

    /// <0, 0, >0 as a is smaller, equal, larger than b.
    int compare(const Monomial& a, const Monomial& b) const;

    std::string name() const {
        switch (kind) {
            case Kind::degrevlex: return "degrevlex";
            case Kind::lex: return "lex";
            case Kind::block: return "block(" + std::to_string(elim) + ")";
        }
        return "?";
    }
};

}  // namespace levelforge::poly

#endif
