#include "levelforge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace levelforge::poly {

std::shared_ptr<const PolyRing> PolyRing::make(CoeffRingPtr coeff, std::vector<std::string> vars,
                                               MonomialOrder order) {
    if (static_cast<int>(vars.size()) > Monomial::kMaxVars)
        throw Error("too many variables (max 16)");
    for (size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].empty()) throw Error("empty variable name");
        if (vars[i] == "g" && coeff->kind() == CoeffRing::Kind::ext_field)
            throw Error("variable name 'g' collides with the field generator");
        for (size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw Error("duplicate variable name: " + vars[i]);
    }
    auto r = std::shared_ptr<PolyRing>(new PolyRing());
    r->coeff_ = std::move(coeff);
    r->vars_ = std::move(vars);
    r->order_ = order;
    return r;
}

int PolyRing::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    return -1;
}

std::shared_ptr<const PolyRing> PolyRing::with_order(MonomialOrder o) const {
    return make(coeff_, vars_, o);
}

std::shared_ptr<const PolyRing> PolyRing::with_elim_var(const std::string& name) const {
    std::vector<std::string> v;
    v.reserve(vars_.size() + 1);
    v.push_back(name);
    for (const auto& s : vars_) v.push_back(s);
    return make(coeff_, std::move(v), MonomialOrder::block(1));
}

Poly Poly::constant(const PolyRingPtr& r, const Scalar& c) {
    Poly p(r);
    if (!r->coeff()->is_zero(c)) p.terms_.push_back({Monomial::unit(r->nvars()), c});
    return p;
}

Poly Poly::from_int(const PolyRingPtr& r, int64_t n) { return constant(r, r->coeff()->from_int(n)); }

Poly Poly::variable(const PolyRingPtr& r, int i, uint16_t exp) {
    if (i < 0 || i >= r->nvars()) throw Error("variable index out of range");
    if (exp == 0) return from_int(r, 1);
    Poly p(r);
    p.terms_.push_back({Monomial::var(r->nvars(), i, exp), r->coeff()->one()});
    return p;
}

Poly Poly::monomial(const PolyRingPtr& r, const Monomial& m, const Scalar& c) {
    Poly p(r);
    if (!r->coeff()->is_zero(c)) p.terms_.push_back({m, c});
    return p;
}

Poly Poly::from_terms(const PolyRingPtr& r, std::vector<Term> terms) {
    Poly p(r);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

const Monomial& Poly::lm() const {
    if (terms_.empty()) throw Error("leading monomial of zero");
    return terms_.front().m;
}

const Scalar& Poly::lc() const {
    if (terms_.empty()) throw Error("leading coefficient of zero");
    return terms_.front().c;
}

const Term& Poly::lt() const {
    if (terms_.empty()) throw Error("leading term of zero");
    return terms_.front();
}

uint32_t Poly::total_degree_max() const {
    uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.deg);
    return d;
}

void Poly::normalize() {
    const auto& ord = ring_->order();
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.m, b.m) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    const auto& k = ring_->coeff();
    for (auto& t : terms_) {
        if (!out.empty() && out.back().m == t.m) {
            out.back().c = k->add(out.back().c, t.c);
        } else {
            out.push_back(std::move(t));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const Term& t) { return k->is_zero(t.c); }),
              out.end());
    terms_ = std::move(out);
}

Poly Poly::operator+(const Poly& o) const {
    const auto& k = ring_->coeff();
    const auto& ord = ring_->order();
    Poly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = ord.compare(terms_[i].m, o.terms_[j].m);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Scalar s = k->add(terms_[i].c, o.terms_[j].c);
            if (!k->is_zero(s)) r.terms_.push_back({terms_[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

Poly Poly::operator-() const {
    const auto& k = ring_->coeff();
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m, k->neg(t.c)});
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::mul_term(const Monomial& m, const Scalar& c) const {
    const auto& k = ring_->coeff();
    Poly r(ring_);
    if (k->is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Scalar s = k->mul(t.c, c);
        if (!k->is_zero(s)) r.terms_.push_back({t.m * m, std::move(s)});
    }
    return r;  // order is preserved by multiplying with a fixed monomial
}

Poly Poly::mul_scalar(const Scalar& c) const { return mul_term(Monomial::unit(ring_->nvars()), c); }

Poly Poly::operator*(const Poly& o) const {
    // accumulate into a map keyed by monomial; deterministic rebuild afterwards
    if (is_zero() || o.is_zero()) return Poly(ring_);
    const auto& k = ring_->coeff();
    const auto& ord = ring_->order();
    auto cmp = [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) > 0; };
    std::map<Monomial, Scalar, decltype(cmp)> acc(cmp);
    for (const auto& s : terms_) {
        for (const auto& t : o.terms_) {
            Monomial m = s.m * t.m;
            Scalar c = k->mul(s.c, t.c);
            auto it = acc.find(m);
            if (it == acc.end()) {
                acc.emplace(m, std::move(c));
            } else {
                it->second = k->add(it->second, c);
            }
        }
    }
    Poly r(ring_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!k->is_zero(c)) r.terms_.push_back({m, std::move(c)});
    return r;
}

Poly Poly::pow(uint64_t e) const {
    Poly acc = Poly::from_int(ring_, 1), base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        if (e >>= 1) base = base * base;
    }
    return acc;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].m == o.terms_[i].m) || !(terms_[i].c == o.terms_[i].c)) return false;
    return true;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    const auto& k = ring_->coeff();
    if (k->is_one(lc())) return *this;
    return mul_scalar(k->div(k->one(), lc()));
}

Poly Poly::converted_to(const PolyRingPtr& other) const {
    if (other->nvars() != ring_->nvars()) throw Error("converted_to: variable count mismatch");
    Poly r(other);
    r.terms_ = terms_;
    r.normalize();
    return r;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    const auto& k = ring_->coeff();
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        std::string cs = k->str(t.c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) {
                os << "-";
                cs = cs.substr(1);
            }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        bool coeff_is_one = (cs == "1");
        bool has_vars = !t.m.is_unit();
        bool wrap = cs.find('+') != std::string::npos || cs.find('-') != std::string::npos ||
                    cs.find('*') != std::string::npos;
        if (!has_vars) {
            os << (wrap ? "(" + cs + ")" : cs);
        } else {
            bool printed = false;
            if (!coeff_is_one) {
                os << (wrap ? "(" + cs + ")" : cs);
                printed = true;
            }
            for (int i = 0; i < t.m.n; ++i) {
                if (t.m.e[i] == 0) continue;
                if (printed) os << "*";
                os << ring_->vars()[i];
                if (t.m.e[i] > 1) os << "^" << t.m.e[i];
                printed = true;
            }
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Parser {
    const PolyRingPtr& ring;
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }

    int64_t parse_int() {
        skip();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw Error("expected integer at position " + std::to_string(start));
        return std::stoll(s.substr(start, i - start));
    }

    std::string parse_ident() {
        skip();
        size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                                s[i] == '\''))
            ++i;
        return s.substr(start, i - start);
    }

    Poly parse_factor() {
        char c = peek();
        if (c == '(') {
            ++i;
            Poly p = parse_sum();
            if (!eat(')')) throw Error("expected ')'");
            if (eat('^')) return p.pow(static_cast<uint64_t>(parse_int()));
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Poly p = Poly::from_int(ring, parse_int());
            if (eat('^')) return p.pow(static_cast<uint64_t>(parse_int()));
            return p;
        }
        std::string id = parse_ident();
        if (id.empty()) throw Error("unexpected character '" + std::string(1, c) + "' in polynomial");
        Poly base(ring);
        if (id == "g" && ring->coeff()->kind() == CoeffRing::Kind::ext_field) {
            base = Poly::constant(ring, ring->coeff()->generator());
        } else {
            int v = ring->var_index(id);
            if (v < 0) throw Error("undeclared variable '" + id + "'");
            base = Poly::variable(ring, v);
        }
        if (eat('^')) return base.pow(static_cast<uint64_t>(parse_int()));
        return base;
    }

    Poly parse_term() {
        Poly p = parse_factor();
        while (true) {
            skip();
            if (eat('*')) {
                p = p * parse_factor();
            } else {
                char c = peek();
                // implicit product as in "2x" or "x y"
                if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
                    p = p * parse_factor();
                } else {
                    break;
                }
            }
        }
        return p;
    }

    Poly parse_sum() {
        Poly p(ring);
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Poly t = parse_term();
        p = neg ? -t : t;
        while (true) {
            skip();
            if (eat('+')) {
                p = p + parse_term();
            } else if (eat('-')) {
                p = p - parse_term();
            } else {
                break;
            }
        }
        return p;
    }
};

}  // namespace

Poly parse_poly(const PolyRingPtr& ring, const std::string& text) {
    Parser p{ring, text};
    Poly r = p.parse_sum();
    p.skip();
    if (p.i != text.size())
        throw Error("trailing characters in polynomial: '" + text.substr(p.i) + "'");
    return r;
}

Poly substitute(const Poly& f, const PolyRingPtr& target, const std::vector<Poly>& images) {
    if (static_cast<int>(images.size()) != f.ring()->nvars())
        throw Error("substitute: one image per variable required");
    // cache powers of each image
    std::vector<std::vector<Poly>> pows(images.size());
    for (size_t v = 0; v < images.size(); ++v) pows[v].push_back(Poly::from_int(target, 1));
    auto power = [&](size_t v, uint16_t e) -> const Poly& {
        auto& pv = pows[v];
        while (pv.size() <= e) pv.push_back(pv.back() * images[v]);
        return pv[e];
    };
    Poly acc(target);
    for (const auto& t : f.terms()) {
        Poly term = Poly::constant(target, embed_scalar(t.c, f.ring()->coeff(), target->coeff()));
        for (int v = 0; v < t.m.n; ++v)
            if (t.m.e[v] > 0) term = term * power(static_cast<size_t>(v), t.m.e[v]);
        acc = acc + term;
    }
    return acc;
}

Scalar embed_scalar(const Scalar& c, const CoeffRingPtr& from, const CoeffRingPtr& to) {
    if (from->same(*to)) return c;
    using Kind = CoeffRing::Kind;
    if (from->kind() == Kind::prime_field && to->kind() == Kind::ext_field &&
        from->p() == to->p()) {
        std::vector<int64_t> v(to->degree(), 0);
        v[0] = c.residue();
        return Scalar(std::move(v));
    }
    if (from->kind() == Kind::prime_field &&
        (to->kind() == Kind::prime_field || to->kind() == Kind::padic_ring) &&
        from->p() == to->p()) {
        // F_p -> Z/p^N has no canonical ring section; only 0 and 1 pass through
        if (c.residue() == 0) return to->zero();
        if (c.residue() == 1) return to->one();
        throw Error("no canonical embedding F_p -> Z/p^N beyond 0,1");
    }
    throw Error("unsupported coefficient embedding: " + from->name() + " -> " + to->name());
}

}  // namespace levelforge::poly
