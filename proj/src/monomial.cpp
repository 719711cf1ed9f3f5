#include "levelforge/monomial.hpp"

namespace levelforge::poly {

namespace {

// degrevlex restricted to variables [lo, hi)
int degrevlex_range(const Monomial& a, const Monomial& b, int lo, int hi) {
    uint32_t da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
        da += a.e[i];
        db += b.e[i];
    }
    if (da != db) return da < db ? -1 : 1;
    // larger = smaller exponent in the last variable where they differ
    for (int i = hi - 1; i >= lo; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    switch (kind) {
        case Kind::degrevlex:
            return degrevlex_range(a, b, 0, a.n);
        case Kind::lex:
            for (int i = 0; i < a.n; ++i)
                if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
            return 0;
        case Kind::block: {
            int c = degrevlex_range(a, b, 0, elim);
            if (c != 0) return c;
            return degrevlex_range(a, b, elim, a.n);
        }
    }
    return 0;
}

}  // namespace levelforge::poly
