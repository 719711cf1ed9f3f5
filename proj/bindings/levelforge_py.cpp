// pybind11 module exposing the main verification operations.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levelforge/ext3.hpp"
#include "levelforge/km.hpp"

namespace py = pybind11;
using namespace levelforge;
using arith::CoeffRing;

namespace {

arith::CoeffRingPtr coeff_of(const std::string& spec) {
    if (spec == "q") return CoeffRing::rationals();
    if (spec.rfind("fp:", 0) == 0) return CoeffRing::fp(std::stoll(spec.substr(3)));
    if (spec.rfind("fq:", 0) == 0) {
        auto comma = spec.find(',', 3);
        return CoeffRing::fq(std::stoll(spec.substr(3, comma - 3)),
                             std::stoi(spec.substr(comma + 1)));
    }
    if (spec.rfind("zmod:", 0) == 0) {
        auto comma = spec.find(',', 5);
        return CoeffRing::zmod(std::stoll(spec.substr(5, comma - 5)),
                               std::stoi(spec.substr(comma + 1)));
    }
    throw Error("coefficient spec must be q, fp:P, fq:P,K or zmod:P,N");
}

}  // namespace

PYBIND11_MODULE(_levelforge, m) {
    m.doc() = "Exact rank-p group scheme level-structure computations";

    m.def("teichmuller", &arith::teichmuller, py::arg("j"), py::arg("p"), py::arg("n"),
          "Teichmuller lift of j mod p^n");

    m.def(
        "solve_group_constants",
        [](int64_t p, int n) {
            auto gc = ot::solve_group_constants(p, n);
            std::vector<int64_t> out;
            for (const auto& c : gc.c) out.push_back(c.residue());
            return out;
        },
        py::arg("p"), py::arg("n"));

    m.def(
        "constant_iso_verified",
        [](int64_t p, int n) { return ot::constant_iso(p, n).verified(); }, py::arg("p"),
        py::arg("n"));

    m.def(
        "fiber_rank",
        [](int64_t p, int64_t q, int64_t s, int64_t t) {
            auto F = q == p ? CoeffRing::fp(p) : CoeffRing::fq(p, 2);
            return level::fiber_rank(p, F, F->from_int(s), F->from_int(t));
        },
        py::arg("p"), py::arg("q"), py::arg("s"), py::arg("t"));

    m.def(
        "verify_flatness",
        [](int64_t p, int64_t q) {
            auto rep = level::verify_flatness(p, q);
            py::dict d;
            d["p"] = rep.p;
            d["q"] = rep.q;
            d["expected"] = rep.expected;
            d["pass"] = rep.pass;
            py::list fibers;
            for (const auto& f : rep.fibers) {
                py::dict fd;
                fd["point"] = f.point;
                fd["rank"] = f.rank;
                fibers.append(fd);
            }
            d["fibers"] = fibers;
            if (rep.char0_checked) d["char0_rank"] = rep.char0_rank;
            return d;
        },
        py::arg("p"), py::arg("q"));

    m.def("s_independence", [](int64_t p) { return level::s_independence_check(p); }, py::arg("p"));
    m.def(
        "unit_factorization",
        [](int64_t p) { return level::unit_factorization_check(p).pass(); }, py::arg("p"));
    m.def(
        "gl2_invariance",
        [](int64_t p) {
            return level::gl2_precompose_invariance(ot::Chart::symbolic_char_p(p));
        },
        py::arg("p"));

    m.def(
        "truncated_rank",
        [](int64_t p, int l, const std::string& flavor) {
            auto res = level::truncated_level_rank(
                p, l,
                flavor == "constant" ? level::TruncatedFlavor::constant
                                     : level::TruncatedFlavor::multiplicative);
            return py::make_tuple(res.rank, res.expected);
        },
        py::arg("p"), py::arg("l"), py::arg("flavor") = "multiplicative");

    m.def(
        "stack_counterexample",
        [](int64_t p) {
            auto sr = level::stack_counterexample(p);
            py::dict d;
            d["witness_found"] = sr.witness_found;
            d["witness"] = sr.witness;
            d["scalars_preserve"] = sr.scalars_preserve;
            d["precompose_invariant"] = sr.precompose_invariant;
            d["searched"] = sr.searched;
            return d;
        },
        py::arg("p"));

    m.def(
        "partial_rank",
        [](int64_t p) {
            auto part = ext3::partial_level_ideal(p);
            py::dict d;
            d["rank"] = part.rank;
            d["expected"] = part.expected;
            d["left_invariant"] = part.left_invariant;
            d["right_invariant"] = part.right_invariant;
            return d;
        },
        py::arg("p"));

    m.def(
        "g3_rank",
        [](int64_t p, bool dual) {
            auto rep = ext3::g3_candidate_rank(p, dual);
            py::dict d;
            d["rank"] = rep.rank;
            d["gl3"] = rep.gl3;
            d["ambient"] = rep.ambient;
            return d;
        },
        py::arg("p"), py::arg("dual") = false);

    m.def("kmd_rank", []() {
        auto res = km::kmd_rank_alpha2();
        py::dict d;
        d["rank"] = res.rank;
        d["km_only_rank"] = res.km_only_rank;
        d["rank_transpose"] = res.rank_transpose;
        return d;
    });

    m.def(
        "km_vs_primitive",
        [](int64_t p) {
            py::list out;
            for (const auto& r : km::km_vs_primitive(p)) {
                py::dict d;
                d["fiber"] = r.fiber;
                d["km_rank"] = r.km_rank;
                d["primitive_rank"] = r.primitive_rank;
                out.append(d);
            }
            return out;
        },
        py::arg("p"));

    m.def(
        "groebner_basis",
        [](const std::string& coeff, const std::vector<std::string>& vars,
           const std::vector<std::string>& rels, const std::vector<std::string>& gens,
           const std::string& order) {
            auto R = poly::PresentedRing::create(
                coeff_of(coeff), vars, rels,
                order == "lex" ? poly::MonomialOrder::lex() : poly::MonomialOrder::degrevlex());
            auto I = gro::Ideal::from_texts(R, gens);
            std::vector<std::string> out;
            for (const auto& g : I.groebner().elements) out.push_back(g.str());
            return out;
        },
        py::arg("coeff"), py::arg("vars"), py::arg("rels"), py::arg("gens"),
        py::arg("order") = "degrevlex");

    m.def(
        "quotient_dimension",
        [](const std::string& coeff, const std::vector<std::string>& vars,
           const std::vector<std::string>& rels, const std::vector<std::string>& gens) {
            auto R = poly::PresentedRing::create(coeff_of(coeff), vars, rels);
            return gro::quotient_dimension(gro::Ideal::from_texts(R, gens)).count;
        },
        py::arg("coeff"), py::arg("vars"), py::arg("rels"), py::arg("gens"));
}
