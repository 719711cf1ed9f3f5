#include "levelforge/quotient_space.hpp"

#include <algorithm>
#include <set>

namespace levelforge::quot {

using arith::CoeffRing;
using poly::Term;

FiniteQuotient::FiniteQuotient(PresentedRingPtr R) : R_(std::move(R)) {
    const auto& k = R_->coeff();
    if (k->kind() != CoeffRing::Kind::prime_field)
        throw Error("FiniteQuotient requires prime-field coefficients");
    p_ = k->p();
    if (p_ > 13) throw Error("FiniteQuotient supports p <= 13");
    int n = R_->nvars();
    caps_.assign(n, 0);
    rules_.assign(n, Rule{});
    for (const auto& g : R_->relation_basis()) {
        const Monomial& lm = g.lm();
        int v = -1;
        for (int i = 0; i < n; ++i) {
            if (lm.e[i] != 0) {
                if (v >= 0) throw Error("FiniteQuotient: relation lead involves several variables");
                v = i;
            }
        }
        if (v < 0) throw Error("FiniteQuotient: constant relation");
        if (caps_[v] != 0) throw Error("FiniteQuotient: duplicate rule for a variable");
        caps_[v] = lm.e[v];
        Rule rule;
        if (g.size() == 1) {
            rule.zero = true;
        } else if (g.size() == 2) {
            const Term& tail = g.terms()[1];
            for (int i = 0; i < n; ++i)
                if (tail.m.e[i] != 0 && i != v)
                    throw Error("FiniteQuotient: rule tail must be a power of the same variable");
            rule.zero = false;
            // basis elements are monic, so the stored tail carries a minus sign
            rule.coeff = static_cast<uint8_t>(k->neg(tail.c).residue());
            rule.exp = tail.m.e[v];
        } else {
            throw Error("FiniteQuotient: relation is not a two-term rule");
        }
        rules_[v] = rule;
    }
    dim_ = 1;
    stride_.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        if (caps_[v] == 0) throw Error("FiniteQuotient: no power rule for variable " + R_->vars()[v]);
        stride_[v] = dim_;
        dim_ *= caps_[v];
        if (dim_ > (size_t(1) << 26)) throw Error("FiniteQuotient: dimension too large");
    }
}

size_t FiniteQuotient::index_of(const Monomial& m) const {
    size_t idx = 0;
    for (int v = 0; v < R_->nvars(); ++v) {
        if (m.e[v] >= caps_[v]) throw Error("monomial outside the standard basis");
        idx += stride_[v] * m.e[v];
    }
    return idx;
}

Monomial FiniteQuotient::monomial_at(size_t idx) const {
    Monomial m = Monomial::unit(R_->nvars());
    for (int v = 0; v < R_->nvars(); ++v) {
        uint32_t e = static_cast<uint32_t>(idx / stride_[v] % caps_[v]);
        m.e[v] = static_cast<uint16_t>(e);
        m.deg += e;
    }
    return m;
}

std::vector<uint8_t> FiniteQuotient::to_vector(const Poly& f) const {
    Poly n = R_->normal_form(f);
    std::vector<uint8_t> v(dim_, 0);
    for (const auto& t : n.terms()) v[index_of(t.m)] = static_cast<uint8_t>(t.c.residue());
    return v;
}

Poly FiniteQuotient::to_poly(const std::vector<uint8_t>& v) const {
    std::vector<Term> ts;
    for (size_t i = 0; i < dim_; ++i)
        if (v[i] != 0) ts.push_back({monomial_at(i), poly::Scalar(int64_t(v[i]))});
    return Poly::from_terms(R_->poly_ring(), std::move(ts));
}

std::vector<uint8_t> FiniteQuotient::mul_var(const std::vector<uint8_t>& vec, int var) const {
    std::vector<uint8_t> out(dim_, 0);
    const size_t st = stride_[var];
    const uint32_t cap = caps_[var];
    const Rule& rule = rules_[var];
    for (size_t i = 0; i < dim_; ++i) {
        uint8_t c = vec[i];
        if (c == 0) continue;
        uint32_t e = static_cast<uint32_t>(i / st % cap);
        if (e + 1 < cap) {
            size_t j = i + st;
            out[j] = static_cast<uint8_t>((out[j] + c) % p_);
        } else if (!rule.zero) {
            size_t j = i - st * e + st * rule.exp;
            out[j] = static_cast<uint8_t>((out[j] + c * rule.coeff) % p_);
        }
    }
    return out;
}

std::pair<size_t, uint8_t> FiniteQuotient::mul_basis(size_t i, size_t j) const {
    // per-variable: exponents add, then each overflowing variable rewrites
    size_t idx = 0;
    int64_t coeff = 1;
    for (int v = 0; v < R_->nvars(); ++v) {
        uint32_t e = static_cast<uint32_t>(i / stride_[v] % caps_[v]) +
                     static_cast<uint32_t>(j / stride_[v] % caps_[v]);
        while (e >= caps_[v]) {
            const Rule& rule = rules_[v];
            if (rule.zero) return {0, 0};
            e = e - caps_[v] + rule.exp;
            coeff = coeff * rule.coeff % p_;
        }
        idx += stride_[v] * e;
    }
    return {idx, static_cast<uint8_t>(coeff)};
}

std::vector<uint8_t> FiniteQuotient::mul_dense(const std::vector<uint8_t>& a,
                                               const std::vector<uint8_t>& b) const {
    std::vector<uint8_t> out(dim_, 0);
    for (size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < dim_; ++j) {
            if (b[j] == 0) continue;
            auto [k, c] = mul_basis(i, j);
            if (c == 0) continue;
            out[k] = static_cast<uint8_t>((out[k] + a[i] * b[j] % p_ * c) % p_);
        }
    }
    return out;
}

RowSpace::RowSpace(int64_t p, size_t dim) : p_(p), dim_(dim) {}

namespace {

// a -= k * b (mod p) from position `from` on
void subtract_scaled(std::vector<uint8_t>& a, const std::vector<uint8_t>& b, int64_t k, int64_t p,
                     size_t from) {
    const int64_t m = (p - k) % p;  // add m*b instead
    if (m == 0) return;
    uint8_t* pa = a.data() + from;
    const uint8_t* pb = b.data() + from;
    size_t n = a.size() - from;
    if (p == 2) {
        for (size_t i = 0; i < n; ++i) pa[i] ^= pb[i];
    } else if (p == 3) {
        const uint8_t mm = static_cast<uint8_t>(m);
        for (size_t i = 0; i < n; ++i) {
            uint8_t v = static_cast<uint8_t>(pa[i] + mm * pb[i]);
            v = static_cast<uint8_t>(v >= 6 ? v - 6 : v);
            v = static_cast<uint8_t>(v >= 3 ? v - 3 : v);
            pa[i] = v;
        }
    } else {
        const uint8_t mm = static_cast<uint8_t>(m);
        const uint8_t pp = static_cast<uint8_t>(p);
        for (size_t i = 0; i < n; ++i)
            pa[i] = static_cast<uint8_t>((pa[i] + mm * pb[i]) % pp);
    }
}

}  // namespace

size_t RowSpace::reduce(std::vector<uint8_t>& row) const {
    size_t i = 0;
    while (i < dim_) {
        while (i < dim_ && row[i] == 0) ++i;
        if (i == dim_) return dim_;
        auto it = rows_.find(i);
        if (it == rows_.end()) return i;
        subtract_scaled(row, it->second, row[i], p_, i);
    }
    return dim_;
}

bool RowSpace::insert(std::vector<uint8_t> row) {
    size_t pivot = reduce(row);
    if (pivot == dim_) return false;
    if (row[pivot] != 1) {
        int64_t inv = arith::mod_inv(row[pivot], p_);
        for (size_t i = pivot; i < dim_; ++i)
            row[i] = static_cast<uint8_t>(row[i] * inv % p_);
    }
    rows_.emplace(pivot, std::move(row));
    return true;
}

bool RowSpace::contains(std::vector<uint8_t> row) const { return reduce(row) == dim_; }

namespace {

/// Row space of an ideal, kept closed under multiplication by the variables;
/// generators can be added incrementally.
class IdealSpan {
public:
    explicit IdealSpan(const FiniteQuotient& fq) : fq_(fq), rs_(fq.p(), fq.dim()) {}

    bool add(const Poly& g) { return add_vec(fq_.to_vector(g)); }

    bool add_vec(std::vector<uint8_t> v) {
        size_t before = rs_.rank();
        rs_.insert(std::move(v));
        if (rs_.rank() == before) return false;
        close();
        return true;
    }

    bool contains(const Poly& f) const { return rs_.contains(fq_.to_vector(f)); }
    const RowSpace& rows() const { return rs_; }
    size_t rank() const { return rs_.rank(); }

private:
    void close() {
        bool progress = true;
        while (progress) {
            progress = false;
            std::vector<std::pair<size_t, std::vector<uint8_t>>> fresh;
            for (const auto& [piv, row] : rs_.rows())
                if (!closed_.count(piv)) fresh.emplace_back(piv, row);
            for (auto& [piv, row] : fresh) {
                closed_.insert(piv);
                for (int v = 0; v < fq_.ring()->nvars(); ++v)
                    if (rs_.insert(fq_.mul_var(row, v))) progress = true;
            }
        }
    }

    const FiniteQuotient& fq_;
    RowSpace rs_;
    std::set<size_t> closed_;
};

}  // namespace

RowSpace ideal_row_space(const FiniteQuotient& fq, const std::vector<Poly>& gens) {
    IdealSpan span(fq);
    for (const auto& g : gens) span.add(g);
    return span.rows();
}

int64_t quotient_dimension_linear(const FiniteQuotient& fq, const std::vector<Poly>& gens) {
    RowSpace rs = ideal_row_space(fq, gens);
    return static_cast<int64_t>(fq.dim()) - static_cast<int64_t>(rs.rank());
}

std::vector<Poly> ideal_intersection_linear(const FiniteQuotient& fq,
                                            const std::vector<Poly>& gens_a,
                                            const std::vector<Poly>& gens_b) {
    RowSpace ra = ideal_row_space(fq, gens_a);
    RowSpace rb = ideal_row_space(fq, gens_b);
    const size_t n = fq.dim();
    // Zassenhaus: echelonize rows (a | a) and (b | 0); echelon rows with zero
    // left half have right halves spanning the intersection
    RowSpace big(fq.p(), 2 * n);
    for (const auto& [piv, row] : ra.rows()) {
        std::vector<uint8_t> r(2 * n, 0);
        std::copy(row.begin(), row.end(), r.begin());
        std::copy(row.begin(), row.end(), r.begin() + n);
        big.insert(std::move(r));
    }
    for (const auto& [piv, row] : rb.rows()) {
        std::vector<uint8_t> r(2 * n, 0);
        std::copy(row.begin(), row.end(), r.begin());
        big.insert(std::move(r));
    }
    std::vector<Poly> out;
    for (const auto& [piv, row] : big.rows()) {
        if (piv < n) continue;
        std::vector<uint8_t> right(row.begin() + n, row.end());
        out.push_back(fq.to_poly(right));
    }
    return out;
}

std::vector<Poly> shrink_generators(const FiniteQuotient& fq, const std::vector<Poly>& gens) {
    IdealSpan full(fq);
    for (const auto& g : gens) full.add(g);
    const size_t target = full.rank();
    std::vector<Poly> sorted = gens;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Poly& a, const Poly& b) { return a.size() < b.size(); });
    std::vector<Poly> picked;
    IdealSpan span(fq);
    for (const auto& g : sorted) {
        if (span.rank() == target) break;
        if (span.add(g)) picked.push_back(g);
    }
    if (span.rank() != target) throw Error("shrink_generators: closure mismatch");
    return picked;
}

bool ideal_member_linear(const FiniteQuotient& fq, const std::vector<Poly>& gens, const Poly& f) {
    RowSpace rs = ideal_row_space(fq, gens);
    return rs.contains(fq.to_vector(f));
}

bool ideal_equal_linear(const FiniteQuotient& fq, const std::vector<Poly>& gens_a,
                        const std::vector<Poly>& gens_b) {
    RowSpace ra = ideal_row_space(fq, gens_a);
    RowSpace rb = ideal_row_space(fq, gens_b);
    if (ra.rank() != rb.rank()) return false;
    for (const auto& [piv, row] : rb.rows())
        if (!ra.contains(row)) return false;
    return true;
}

}  // namespace levelforge::quot
