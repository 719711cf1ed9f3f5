/**
 * @file arith.hpp
 * @brief Exact coefficient arithmetic: prime fields F_p, extension fields
 *        F_{p^k}, truncated p-adic integers Z/p^N, rationals, and the
 *        Teichmuller character.
 */
#ifndef LEVELFORGE_ARITH_HPP
#define LEVELFORGE_ARITH_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levelforge/errors.hpp"

namespace levelforge::arith {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr int64_t kMaxPrime = 97;        // all paper computations need p in {2,3,5}
inline constexpr int64_t kMaxFieldSize = 1 << 20;

bool is_prime(int64_t n);

/// b^e mod m with 128-bit intermediates; m < 2^62.
int64_t mod_pow(int64_t b, uint64_t e, int64_t m);

/// Inverse of a mod m for gcd(a, m) = 1; throws Error otherwise.
int64_t mod_inv(int64_t a, int64_t m);

/// The unique w mod p^N with w^p = w and w = j (mod p), by Frobenius
/// fixed-point iteration.  chi(0) = 0.
int64_t teichmuller(int64_t j, int64_t p, int N);

/// An element of some coefficient ring.  Prime-field and Z/p^N values are
/// canonical residues stored as int64; extension-field values are length-k
/// coefficient vectors over F_p; rationals are exact.
class Scalar {
public:
    Scalar() : v_(int64_t{0}) {}
    explicit Scalar(int64_t r) : v_(r) {}
    explicit Scalar(std::vector<int64_t> coeffs) : v_(std::move(coeffs)) {}
    explicit Scalar(Rational q) : v_(std::move(q)) {}

    int64_t residue() const { return std::get<int64_t>(v_); }
    const std::vector<int64_t>& coeffs() const { return std::get<std::vector<int64_t>>(v_); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    bool holds_residue() const { return std::holds_alternative<int64_t>(v_); }
    bool holds_coeffs() const { return std::holds_alternative<std::vector<int64_t>>(v_); }
    bool holds_rational() const { return std::holds_alternative<Rational>(v_); }

    bool operator==(const Scalar& o) const { return v_ == o.v_; }

private:
    std::variant<int64_t, std::vector<int64_t>, Rational> v_;
};

/// Immutable coefficient-ring descriptor.  All element operations go through
/// the ring so that Scalar stays a plain value.
class CoeffRing {
public:
    enum class Kind { prime_field, ext_field, padic_ring, rationals };

    static std::shared_ptr<const CoeffRing> fp(int64_t p);
    /// F_{p^k} with the lexicographically least monic irreducible modulus.
    static std::shared_ptr<const CoeffRing> fq(int64_t p, int k);
    /// Z/p^N (exact truncated p-adic integers).
    static std::shared_ptr<const CoeffRing> zmod(int64_t p, int N);
    static std::shared_ptr<const CoeffRing> rationals();

    Kind kind() const { return kind_; }
    int64_t p() const { return p_; }
    int degree() const { return k_; }
    int precision() const { return N_; }
    /// p for F_p / F_{p^k}, p^N for Z/p^N, 0 for Q.
    int64_t characteristic() const;
    /// Modulus polynomial of the extension field, coefficients low to high,
    /// length k+1, monic.
    const std::vector<int64_t>& modulus() const { return modulus_; }

    bool is_field() const;
    bool is_finite() const { return kind_ != Kind::rationals; }
    int64_t size() const;  // number of elements; throws for Q

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(int64_t n) const;
    Scalar from_rational(const Rational& q) const;  // rationals only
    /// Extension-field generator (the class of x); F_p itself for k = 1.
    Scalar generator() const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar pow(const Scalar& a, uint64_t e) const;
    std::optional<Scalar> inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const;  // throws if b not invertible

    bool is_zero(const Scalar& a) const;
    bool is_one(const Scalar& a) const;
    bool is_unit(const Scalar& a) const;
    bool eq(const Scalar& a, const Scalar& b) const { return a == b; }

    /// Every element, in a deterministic order (finite rings only).
    std::vector<Scalar> all_elements() const;

    /// Canonical text form; extension-field elements use `g` for the
    /// generator, e.g. "2*g+1".
    std::string str(const Scalar& a) const;

    bool same(const CoeffRing& o) const;
    std::string name() const;

private:
    CoeffRing() = default;
    Kind kind_ = Kind::rationals;
    int64_t p_ = 0;
    int k_ = 1;
    int N_ = 1;
    int64_t modn_ = 0;                // p for F_p, p^N for Z/p^N
    std::vector<int64_t> modulus_;    // ext field only
};

using CoeffRingPtr = std::shared_ptr<const CoeffRing>;

/// Teichmuller lift as an element of Z/p^N.
Scalar teichmuller_scalar(int64_t j, const CoeffRingPtr& zpn);

}  // namespace levelforge::arith

#endif
